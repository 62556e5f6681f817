r"""
Adding a dataset
================

Map a new dataset onto existing standard labels, introduce a label the
taxonomy lacks, and save both files.
"""

import sys
import tempfile
from pathlib import Path

from soundtax import (
    MappingEntry,
    TaxonomyNode,
    load_seed,
    read_catalog,
    read_taxonomy,
    write_catalog,
    write_taxonomy,
)

tax, cat = load_seed()

# %%
# Existing labels are enough for most classes.
cat = cat.add_dataset(
    "MyCityDataset",
    [("klaxon", "car_horn"), ("ambulance", "siren"), ("barking", "dog_barking")],
    display_name="My City Dataset",
)
print(cat.counterparts("MyCityDataset", "klaxon"))

# %%
# One class needs a new standard label. Extend the taxonomy, rebind the
# catalog, then map the label.
tax = tax.add_node(TaxonomyNode("tram_bell", "Tram bell", ("bell", "rail_transport")))
cat = cat.rebind(tax).add_entry(MappingEntry("MyCityDataset", "tram bell", "tram_bell"))
print(cat.expanded_std_labels("MyCityDataset", "tram bell"))

# %%
out = Path(sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp())
write_taxonomy(tax, out / "taxonomy.json")
write_catalog(cat, out / "catalog.json")
again = read_catalog(out / "catalog.json", read_taxonomy(out / "taxonomy.json"))
print("round trip ok:", again == cat, "->", out)
