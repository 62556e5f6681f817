r"""
Label search
============

Look up dataset labels from a standard label, and find the counterparts of a
dataset label in every other dataset.
"""

from pprint import pprint

from soundtax import load_seed

tax, cat = load_seed()

# %%
# Standard label -> original labels, grouped by dataset.
pprint(cat.get_mapping_for_std_label("reverse_beeper"))

# %%
# ``include_descendants`` also collects labels mapped below the standard label.
pprint(cat.get_mapping_for_std_label("motorcycle", include_descendants=True))
print(len(cat.get_mapping_for_std_label("vehicle")), "datasets map directly to vehicle,",
      len(cat.get_mapping_for_std_label("vehicle", include_descendants=True)), "including descendants")

# %%
# Dataset label -> its standard label and counterparts elsewhere.
print(cat.find_std_label("ReaLISED", "water tap"))
pprint(cat.counterparts("ReaLISED", "water tap"))

# %%
# Coarse labels stay coarse: this label covers two different events, so it
# only maps to ``dog``. Through the hierarchy it still counts for every
# ancestor.
print(cat.find_std_label("SONYC", "dog-barking-whining"))
print(cat.expanded_std_labels("SONYC", "dog-barking-whining"))
print(cat.expanded_std_labels("AudioSet", "Bird"))

# %%
# Matching is verbatim by default.
print(cat.find_std_label("AudioSet", "BIRD", case_insensitive=True))
