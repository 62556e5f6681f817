import json
import warnings

import pytest

from soundtax import (
    AmbiguousLabel,
    DuplicateEntry,
    MappingCatalog,
    MappingEntry,
    TaxonomyNode,
    UnknownDataset,
    UnknownLabel,
    UnknownOriginalLabel,
    ValidationError,
    VersionMismatchWarning,
    dumps_catalog,
    load_catalog,
)

EXAMPLE_DATASETS = {
    "UrbanSound8K", "ESC-50", "AudioSet", "MAVD-traffic", "Urbansas", "FSD50K",
    "ReaLISED", "TUT_Sound_Events_2016", "SONYC", "Singapura",
}


def catalog_doc(entries, version="seed-1"):
    groups = {}
    for d, o, s in entries:
        groups.setdefault(d, []).append({"original": o, "std": s})
    return json.dumps(
        {"taxonomy_version": version, "datasets": [{"id": d, "entries": e} for d, e in groups.items()]}
    ).encode()


def test_seed_covers_example_datasets(cat):
    assert EXAMPLE_DATASETS <= set(cat.datasets)
    assert cat.display_name("SONYC") == "SONYC-UST"
    assert cat.display_name("TUT_Sound_Events_2016") == "TUT Sound Events 2016"
    assert cat.display_name("ReaLISED") == "ReaLISED"


def test_reverse_beeper_mapping(cat):
    assert cat.get_mapping_for_std_label("reverse_beeper") == {
        "AudioSet": ["Reversing beeps"],
        "AudioSet_strong": ["Reversing beeps"],
        "SONYC": ["reverse-beeper"],
        "Singapura": ["Reverse beeper"],
    }


def test_descendant_mapping(cat):
    direct = cat.get_mapping_for_std_label("dog")
    deep = cat.get_mapping_for_std_label("dog", include_descendants=True)
    assert "Bark" not in direct.get("AudioSet", [])
    assert {"Dog", "Bark", "Whimper (dog)"} <= set(deep["AudioSet"])
    assert deep["UrbanSound8K"] == ["dog bark"]


def test_empty_mapping(cat):
    assert cat.get_mapping_for_std_label("other") == {}
    with pytest.raises(UnknownLabel):
        cat.get_mapping_for_std_label("unicorn_sound")


def test_find_std_label(cat):
    assert cat.find_std_label("SONYC", "dog-barking-whining") == "dog"
    assert cat.find_std_label("AudioSet", "Railroad car, train wagon") == "railroad_car_or_train_wagon"
    with pytest.raises(UnknownOriginalLabel):
        cat.find_std_label("ESC-50", "banana")
    with pytest.raises(UnknownDataset):
        cat.find_std_label("NoSuchSet", "banana")


def test_case_insensitive_lookup(cat):
    with pytest.raises(UnknownOriginalLabel):
        cat.find_std_label("AudioSet", "bird")
    assert cat.find_std_label("AudioSet", "bird", case_insensitive=True) == "bird"
    amb = cat.add_entry(MappingEntry("X", "Bark", "dog_barking")).add_entry(MappingEntry("X", "bark", "tools"))
    assert amb.find_std_label("X", "bark", case_insensitive=True) == "tools"  # exact match wins
    with pytest.raises(AmbiguousLabel):
        amb.find_std_label("X", "BARK", case_insensitive=True)


def test_counterparts(cat):
    assert cat.counterparts("ReaLISED", "water tap") == {
        "AudioSet": ["Water tap, faucet"],
        "FSD50K": ["Water_tap_and_faucet"],
        "TUT_Sound_Events_2016": ["water tap running"],
    }
    horn = cat.counterparts("UrbanSound8K", "car horn")
    assert "car_horn" in horn["ESC-50"]
    assert "Vehicle horn, car horn, honking" in horn["AudioSet"]
    assert "UrbanSound8K" not in horn


def test_counterparts_keeps_same_dataset_siblings(cat):
    # other MAVD labels on the same std label are genuine counterparts
    others = cat.counterparts("MAVD-traffic", "motorcycle/engine_idling")
    assert others["MAVD-traffic"] == ["motorcycle/engine_accelerating", "motorcycle/wheel_rolling"]


def test_counterparts_unique(cat):
    assert cat.counterparts("MAVD-traffic", "truck/compressor") == {}


def test_expanded_std_labels(cat, tax):
    assert cat.expanded_std_labels("AudioSet", "Bird") == ["animal", "bird", "wild_animal"]
    assert cat.expanded_std_labels("SONYC", "dog-barking-whining") == ["animal", "dog", "domestic_animal"]
    assert cat.expanded_std_labels("AudioSet", "Animal") == ["animal"]
    assert cat.expanded_std_labels("AudioSet", "Bird", tax) == ["animal", "bird", "wild_animal"]


def test_add_entry_counterparts(cat):
    grown = cat.add_entry(MappingEntry("MyCityDataset", "klaxon", "car_horn"))
    assert "car horn" in grown.counterparts("MyCityDataset", "klaxon")["UrbanSound8K"]
    assert "klaxon" in grown.counterparts("UrbanSound8K", "car horn")["MyCityDataset"]
    assert "MyCityDataset" not in cat.datasets
    assert len(grown) == len(cat) + 1


def test_add_entry_errors(cat):
    with pytest.raises(DuplicateEntry):
        cat.add_entry(MappingEntry("ESC-50", "car_horn", "car"))
    with pytest.raises(UnknownLabel):
        cat.add_entry(MappingEntry("ESC-50", "unicorn", "unicorn_sound"))
    with pytest.raises(UnknownDataset):
        cat.add_entry(MappingEntry("Brand_New", "x", "car"), require_dataset=True)


def test_add_dataset(cat):
    grown = cat.add_dataset("MyCity", [("klaxon", "car_horn"), ("barking", "dog_barking")], display_name="My City")
    assert grown.display_name("MyCity") == "My City"
    assert grown.find_std_label("MyCity", "barking") == "dog_barking"
    empty = cat.add_dataset("Empty", [])
    assert "Empty" in empty.datasets and empty.entries_for("Empty") == []
    with pytest.raises(DuplicateEntry):
        cat.add_dataset("Twice", [("a", "car"), ("a", "bus")])


def test_round_trip_after_growth(cat, tax):
    tax2 = tax.add_node(TaxonomyNode("friction_brake", "Friction brake", ("brake",)))
    grown = cat.rebind(tax2).add_entry(MappingEntry("Singapura", "Friction brake", "friction_brake"))
    text = dumps_catalog(grown)
    again = load_catalog(text, tax2)
    assert again == grown
    assert dumps_catalog(again) == text


def test_load_rejects_unknown_std(tax):
    with pytest.raises(ValidationError) as ei:
        load_catalog(catalog_doc([("ESC-50", "horn", "unicorn_sound")]), tax)
    assert [v.kind for v in ei.value.violations] == ["unknown-std-label"]


def test_load_rejects_duplicate_pair(tax):
    data = catalog_doc([("ESC-50", "car_horn", "car_horn"), ("ESC-50", "car_horn", "car")])
    with pytest.raises(ValidationError) as ei:
        load_catalog(data, tax)
    assert [v.kind for v in ei.value.violations] == ["duplicate-entry"]


def test_load_reports_all_violations(tax):
    data = catalog_doc([("A", "x", "nope"), ("A", "y", "car"), ("A", "y", "bus"), ("A", "z", "nada")])
    with pytest.raises(ValidationError) as ei:
        load_catalog(data, tax)
    assert len(ei.value.violations) == 3


def test_version_mismatch(tax):
    data = catalog_doc([("A", "x", "car")], version="old")
    with pytest.warns(VersionMismatchWarning):
        load_catalog(data, tax)
    with pytest.raises(ValidationError) as ei:
        load_catalog(data, tax, strict=True)
    assert ei.value.violations[0].kind == "version-mismatch"
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        load_catalog(catalog_doc([("A", "x", "car")]), tax)


def test_dataset_id_whitespace_rejected(tax):
    with pytest.raises(ValidationError):
        load_catalog(catalog_doc([("TUT Sound Events 2016", "x", "car")]), tax)


def test_catalog_serialization_sorted(cat):
    doc = json.loads(dumps_catalog(cat))
    ids = [d["id"] for d in doc["datasets"]]
    assert ids == sorted(ids)
    for d in doc["datasets"]:
        originals = [e["original"] for e in d["entries"]]
        assert originals == sorted(originals)


def test_catalog_is_independent_of_taxonomy_mutation(cat, tax):
    tax.add_node(TaxonomyNode("new_thing", "New", ("other",)))
    assert "new_thing" not in cat.taxonomy
    assert isinstance(cat, MappingCatalog)
