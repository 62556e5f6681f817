r"""
Aggregating datasets
====================

Pool annotations from several datasets under standard labels, export a
cross-dataset manifest and look at how much each dataset contributes to the
catalog.
"""

import io

from soundtax import aggregate, catalog_stats, export_manifest, load_manifest, load_seed

tax, cat = load_seed()

# %%
# Small manifests in the ``clip_id,label,onset,offset`` format.
audioset = load_manifest(io.StringIO(
    "clip_id,label,onset,offset\n"
    "Y01,Siren,0.0,4.5\n"
    "Y02,Reversing beeps,1.2,3.0\n"
    "Y03,Bird,,\n"
    "Y04,\"Water tap, faucet\",,\n"
    "Y05,Kazoo,,\n"
), "AudioSet")
sonyc = load_manifest(io.StringIO(
    "clip_id,label\n"
    "S01,siren\n"
    "S02,reverse-beeper\n"
    "S03,dog-barking-whining\n"
), "SONYC")
us8k = load_manifest(io.StringIO(
    "clip_id,label\n"
    "U01,siren\n"
    "U02,dog bark\n"
    "U03,car horn\n"
), "UrbanSound8K")
manifests = [audioset, sonyc, us8k]

# %%
# Emergency-signal collection: everything under ``alarm_signal``.
report = aggregate(cat, tax, ["alarm_signal", "dog", "dog_barking"], manifests, include_descendants=True)
for target, tally in report.targets.items():
    print(f"{target:14} {tally.total}  {tally.per_dataset}")
print("unmapped:", report.unmapped)

# %%
# Without descendants only direct mappings count.
flat = aggregate(cat, tax, ["alarm_signal"], manifests)
print("alarm_signal direct:", flat.count("alarm_signal"))

# %%
# Unified manifest for training on one dataset and testing on another.
print(export_manifest(report, "alarm_signal").decode())

# %%
# Each dataset's share of the catalog entries.
for row in catalog_stats(cat).rows:
    print(f"{cat.display_name(row.dataset):24} {row.entries:3d}  {row.percent}")
