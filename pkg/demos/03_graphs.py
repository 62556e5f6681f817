r"""
Graph export
============

Write DOT files for the hierarchy around a label and for the dataset labels
feeding a standard label. Render them with graphviz, e.g.
``dot -Tpng bird.dot -o bird.png``.
"""

import sys
from pathlib import Path

from soundtax import dot_hierarchy, dot_mapping, load_seed

tax, cat = load_seed()
out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "dot_out")
out_dir.mkdir(exist_ok=True)

# %%
# Full ancestry of ``bird`` plus its siblings.
text = dot_hierarchy(tax, "bird", siblings=True)
print(text)
(out_dir / "bird.dot").write_text(text)

# %%
# One level up from a dual-parent node shows both incoming edges.
(out_dir / "accelerating.dot").write_text(dot_hierarchy(tax, "accelerating_revving_vroom", up=1, down=0))

# %%
# Star graph of the dataset labels mapped to ``car_horn``.
text = dot_mapping(cat, "car_horn")
print(text)
(out_dir / "car_horn.dot").write_text(text)
print("wrote", sorted(p.name for p in out_dir.iterdir()))
