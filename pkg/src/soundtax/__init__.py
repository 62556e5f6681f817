"""Standardized sound-event label taxonomy engine.

Load a taxonomy and a mapping catalog, then query across datasets::

    >>> from soundtax import load_seed
    >>> tax, cat = load_seed()
    >>> cat.get_mapping_for_std_label("reverse_beeper")["SONYC"]
    ['reverse-beeper']
    >>> tax.ancestors("bird")
    ['animal', 'wild_animal']
"""

from importlib import resources

from .aggregation import (
    AggregatedRecord,
    AggregationReport,
    AnnotationManifest,
    AnnotationRecord,
    aggregate,
    catalog_stats,
    export_manifest,
    load_manifest,
    parse_export,
    read_manifest,
)
from .catalog import (
    MappingCatalog,
    MappingEntry,
    dumps_catalog,
    load_catalog,
    read_catalog,
    write_catalog,
)
from .dot import dot_hierarchy, dot_mapping
from .errors import *  # noqa: F401,F403
from .taxonomy import (
    Taxonomy,
    TaxonomyNode,
    dumps_taxonomy,
    is_std_label,
    load_taxonomy,
    normalize_label,
    read_taxonomy,
    write_taxonomy,
)

__version__ = "0.1.0"


def seed_path(name):
    """Filesystem path of a shipped seed file (``taxonomy.json`` or ``catalog.json``)."""
    return resources.files(__package__).joinpath("data", name)


def seed_taxonomy() -> Taxonomy:
    with seed_path("taxonomy.json").open("rb") as fh:
        return load_taxonomy(fh)


def seed_catalog(taxonomy=None) -> MappingCatalog:
    taxonomy = seed_taxonomy() if taxonomy is None else taxonomy
    with seed_path("catalog.json").open("rb") as fh:
        return load_catalog(fh, taxonomy)


def load_seed():
    """Return the shipped ``(taxonomy, catalog)`` pair."""
    tax = seed_taxonomy()
    return tax, seed_catalog(tax)
