r"""
Exploring and extending the hierarchy
=====================================

Parents, children, siblings and full ancestry in a multi-parent taxonomy,
then a new standard label added without touching the original value.
"""

from soundtax import TaxonomyNode, normalize_label, seed_taxonomy

tax = seed_taxonomy()
print(tax)
print("roots:", tax.roots)

# %%
# A node can have several parents; siblings are gathered over all of them.
label = "accelerating_revving_vroom"
print("parents:  ", tax.parents(label))
print("siblings: ", tax.siblings(label))
print("ancestors:", tax.ancestors(label))

# %%
print("children of dog:", tax.children("dog"))
print("everything under animal:", tax.descendants("animal"))
print(tax.is_descendant("bird", "animal"), tax.is_descendant("animal", "bird"))

# %%
# Free text to a standard-label token.
for raw in ["Friction brake", "Vehicle horn, car horn, honking", "truck/compressor"]:
    print(f"{raw!r:36} -> {normalize_label(raw)}")

# %%
# Taxonomies are immutable; ``add_node`` returns a new one.
bigger = tax.add_node(TaxonomyNode(normalize_label("Friction brake"), "Friction brake", ("brake",)))
print("friction_brake" in tax, "friction_brake" in bigger)
print(bigger.ancestors("friction_brake"))
