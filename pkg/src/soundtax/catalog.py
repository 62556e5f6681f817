"""Mapping between per-dataset original labels and standard labels."""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass
from types import MappingProxyType

from .errors import (
    AmbiguousLabel,
    DuplicateEntry,
    InvalidId,
    UnknownDataset,
    UnknownLabel,
    UnknownOriginalLabel,
    ValidationError,
    VersionMismatchWarning,
    Violation,
)
from .taxonomy import Taxonomy, _expect, _parse_json, _read_text

__all__ = [
    "MappingCatalog",
    "MappingEntry",
    "dumps_catalog",
    "is_dataset_id",
    "load_catalog",
    "read_catalog",
    "write_catalog",
]

_DATASET_RE = re.compile(r"\S+")


def is_dataset_id(value) -> bool:
    return isinstance(value, str) and _DATASET_RE.fullmatch(value) is not None


@dataclass(frozen=True, order=True)
class MappingEntry:
    dataset: str
    original_label: str
    std_label: str


def _check_version(cat_version, tax, strict):
    if cat_version == tax.version:
        return None
    msg = f"catalog targets taxonomy version {cat_version!r}, loaded taxonomy is {tax.version!r}"
    if strict:
        return Violation("version-mismatch", msg)
    warnings.warn(msg, VersionMismatchWarning, stacklevel=3)
    return None


class MappingCatalog:
    """Immutable set of :class:`MappingEntry` bound to a taxonomy.

    Each (dataset, original label) pair maps to exactly one standard label;
    multi-level membership comes from the taxonomy's ancestor closure at
    query time.
    """

    def __init__(self, taxonomy: Taxonomy, entries=(), datasets=None, *, taxonomy_version=None, strict=False):
        self.taxonomy = taxonomy
        self.taxonomy_version = taxonomy.version if taxonomy_version is None else taxonomy_version
        violations = []
        v = _check_version(self.taxonomy_version, taxonomy, strict)
        if v:
            violations.append(v)

        display = dict(datasets or {})
        by_pair = {}
        by_std = {}
        for e in entries:
            if not is_dataset_id(e.dataset):
                violations.append(Violation("invalid-dataset", f"dataset id {e.dataset!r} is empty or has whitespace"))
                continue
            if not isinstance(e.original_label, str) or not e.original_label:
                violations.append(Violation("empty-original", f"empty original label in {e.dataset!r}"))
                continue
            if e.std_label not in taxonomy:
                violations.append(
                    Violation("unknown-std-label", f"({e.dataset}, {e.original_label!r}) -> {e.std_label!r} not in taxonomy")
                )
                continue
            key = (e.dataset, e.original_label)
            if key in by_pair:
                violations.append(Violation("duplicate-entry", f"({e.dataset}, {e.original_label!r}) is mapped more than once"))
                continue
            by_pair[key] = e.std_label
            by_std.setdefault(e.std_label, []).append(key)
            display.setdefault(e.dataset, None)
        for d in display:
            if not is_dataset_id(d):
                violations.append(Violation("invalid-dataset", f"dataset id {d!r} is empty or has whitespace"))
        if violations:
            raise ValidationError(violations)

        self._datasets = MappingProxyType(dict(sorted(display.items())))
        self._by_pair = by_pair
        self._by_std = {k: tuple(sorted(v)) for k, v in by_std.items()}
        self._folded = {}
        for (d, orig), std in by_pair.items():
            self._folded.setdefault((d, orig.casefold()), {})[orig] = std

    def __repr__(self):
        return f"MappingCatalog(datasets={len(self._datasets)}, entries={len(self._by_pair)})"

    def __eq__(self, other):
        if not isinstance(other, MappingCatalog):
            return NotImplemented
        return (
            self.taxonomy_version == other.taxonomy_version
            and dict(self._datasets) == dict(other._datasets)
            and self._by_pair == other._by_pair
        )

    def __len__(self):
        return len(self._by_pair)

    @property
    def datasets(self):
        """Mapping dataset id -> display name (or None), ordered by id."""
        return self._datasets

    def display_name(self, dataset):
        return self._datasets.get(dataset) or dataset

    @property
    def entries(self) -> list[MappingEntry]:
        return sorted(MappingEntry(d, o, s) for (d, o), s in self._by_pair.items())

    def entries_for(self, dataset) -> list[MappingEntry]:
        if dataset not in self._datasets:
            raise UnknownDataset(dataset)
        return [e for e in self.entries if e.dataset == dataset]

    def find_std_label(self, dataset, original, *, case_insensitive=False) -> str:
        """Standard label for a verbatim dataset label.

        Matching is exact unless ``case_insensitive``; in that mode an exact
        match still wins, and a casefold match that hits several entries with
        different targets raises :class:`AmbiguousLabel`.
        """
        if dataset not in self._datasets:
            raise UnknownDataset(dataset)
        std = self._by_pair.get((dataset, original))
        if std is not None:
            return std
        if case_insensitive:
            hits = self._folded.get((dataset, original.casefold()), {})
            targets = set(hits.values())
            if len(targets) == 1:
                return targets.pop()
            if len(targets) > 1:
                raise AmbiguousLabel(dataset, original, hits)
        raise UnknownOriginalLabel(dataset, original)

    def _resolve_original(self, dataset, original, case_insensitive):
        """Return (stored original label, std label)."""
        std = self.find_std_label(dataset, original, case_insensitive=case_insensitive)
        if (dataset, original) in self._by_pair:
            return original, std
        hits = self._folded[(dataset, original.casefold())]
        return sorted(hits)[0], std

    def _group(self, pairs, exclude=None):
        out = {}
        for d, orig in sorted(pairs):
            if (d, orig) == exclude:
                continue
            out.setdefault(d, []).append(orig)
        return out

    def get_mapping_for_std_label(self, std, include_descendants=False) -> dict[str, list[str]]:
        """Original labels per dataset that map to ``std``.

        With ``include_descendants`` labels mapped to any descendant of
        ``std`` are included too. Datasets without matches are omitted.
        """
        if std not in self.taxonomy:
            raise UnknownLabel(std)
        labels = [std]
        if include_descendants:
            labels += self.taxonomy.descendants(std)
        pairs = [p for s in labels for p in self._by_std.get(s, ())]
        return self._group(pairs)

    def counterparts(self, dataset, original, *, case_insensitive=False) -> dict[str, list[str]]:
        """Every other (dataset, label) pair sharing this label's standard label."""
        stored, std = self._resolve_original(dataset, original, case_insensitive)
        return self._group(self._by_std.get(std, ()), exclude=(dataset, stored))

    def expanded_std_labels(self, dataset, original, taxonomy=None, *, case_insensitive=False) -> list[str]:
        """The standard label plus all of its ancestors, sorted."""
        tax = self.taxonomy if taxonomy is None else taxonomy
        std = self.find_std_label(dataset, original, case_insensitive=case_insensitive)
        return sorted([std, *tax.ancestors(std)])

    def add_entry(self, entry: MappingEntry, *, require_dataset=False, display_name=None) -> MappingCatalog:
        if require_dataset and entry.dataset not in self._datasets:
            raise UnknownDataset(entry.dataset)
        return self._extend([entry], {entry.dataset: display_name} if display_name else {})

    def add_dataset(self, dataset, entries, display_name=None) -> MappingCatalog:
        """Register ``dataset`` with its entries, given as MappingEntry or (original, std) pairs."""
        if not is_dataset_id(dataset):
            raise InvalidId(f"dataset id {dataset!r} is empty or has whitespace")
        fixed = []
        for e in entries:
            if not isinstance(e, MappingEntry):
                e = MappingEntry(dataset, *e)
            elif e.dataset != dataset:
                raise ValueError(f"entry for {e.dataset!r} passed to add_dataset({dataset!r})")
            fixed.append(e)
        return self._extend(fixed, {dataset: display_name or self._datasets.get(dataset)})

    def _extend(self, new_entries, datasets):
        for e in new_entries:
            if not is_dataset_id(e.dataset):
                raise InvalidId(f"dataset id {e.dataset!r} is empty or has whitespace")
            if e.std_label not in self.taxonomy:
                raise UnknownLabel(e.std_label)
        seen = set(self._by_pair)
        for e in new_entries:
            key = (e.dataset, e.original_label)
            if key in seen:
                raise DuplicateEntry(*key)
            seen.add(key)
        merged = dict(self._datasets)
        for d, name in datasets.items():
            if name is not None or d not in merged:
                merged[d] = name
        return MappingCatalog(
            self.taxonomy, [*self.entries, *new_entries], merged, taxonomy_version=self.taxonomy_version
        )

    def rebind(self, taxonomy: Taxonomy, *, strict=False) -> MappingCatalog:
        """Validate the same entries against another taxonomy and adopt its version."""
        return MappingCatalog(taxonomy, self.entries, self._datasets, strict=strict)

    def subset(self, pairs) -> MappingCatalog:
        """Catalog restricted to the given (dataset, original) pairs."""
        keep = set(pairs)
        entries = [e for e in self.entries if (e.dataset, e.original_label) in keep]
        datasets = {e.dataset: self._datasets[e.dataset] for e in entries}
        return MappingCatalog(self.taxonomy, entries, datasets, taxonomy_version=self.taxonomy_version)

    def to_dict(self):
        groups = {d: [] for d in self._datasets}
        for e in self.entries:
            groups[e.dataset].append({"original": e.original_label, "std": e.std_label})
        datasets = []
        for d, name in self._datasets.items():
            item = {"id": d}
            if name is not None:
                item["display_name"] = name
            item["entries"] = groups[d]
            datasets.append(item)
        return {"taxonomy_version": self.taxonomy_version, "datasets": datasets}


_TOP_KEYS = {"taxonomy_version", "datasets"}
_DATASET_KEYS = {"id", "display_name", "entries"}
_ENTRY_KEYS = {"original", "std"}


def load_catalog(source, taxonomy: Taxonomy, *, strict=False, lenient=False) -> MappingCatalog:
    """Parse a catalog JSON document and validate it against ``taxonomy``.

    A taxonomy version mismatch is a :class:`VersionMismatchWarning`, or a
    violation when ``strict``. Unknown keys are rejected unless ``lenient``.
    """
    doc = _parse_json(_read_text(source))
    _expect(isinstance(doc, dict), "catalog document must be a JSON object")
    if not lenient:
        extra = set(doc) - _TOP_KEYS
        _expect(not extra, f"unknown top-level keys: {sorted(extra)}")
    version = doc.get("taxonomy_version", "")
    _expect(isinstance(version, str), "'taxonomy_version' must be a string")
    raw_sets = doc.get("datasets")
    _expect(isinstance(raw_sets, list), "'datasets' must be a list")

    entries = []
    datasets = {}
    dup_sets = []
    for i, raw in enumerate(raw_sets):
        where = f"datasets[{i}]"
        _expect(isinstance(raw, dict), f"{where} must be an object")
        if not lenient:
            extra = set(raw) - _DATASET_KEYS
            _expect(not extra, f"{where}: unknown keys {sorted(extra)}")
        did = raw.get("id")
        _expect(isinstance(did, str), f"{where}: 'id' must be a string")
        name = raw.get("display_name")
        _expect(name is None or isinstance(name, str), f"{where}: 'display_name' must be a string")
        raw_entries = raw.get("entries", [])
        _expect(isinstance(raw_entries, list), f"{where}: 'entries' must be a list")
        if did in datasets:
            dup_sets.append(Violation("duplicate-dataset", f"dataset {did!r} is listed more than once"))
        datasets[did] = name
        for j, re_ in enumerate(raw_entries):
            w = f"{where}.entries[{j}]"
            _expect(isinstance(re_, dict), f"{w} must be an object")
            if not lenient:
                extra = set(re_) - _ENTRY_KEYS
                _expect(not extra, f"{w}: unknown keys {sorted(extra)}")
            _expect(isinstance(re_.get("original"), str), f"{w}: 'original' must be a string")
            _expect(isinstance(re_.get("std"), str), f"{w}: 'std' must be a string")
            entries.append(MappingEntry(did, re_["original"], re_["std"]))

    try:
        cat = MappingCatalog(taxonomy, entries, datasets, taxonomy_version=version, strict=strict)
    except ValidationError as exc:
        raise ValidationError(dup_sets + exc.violations) from None
    if dup_sets:
        raise ValidationError(dup_sets)
    return cat


def dumps_catalog(cat: MappingCatalog) -> str:
    return json.dumps(cat.to_dict(), indent=2, ensure_ascii=False) + "\n"


def read_catalog(path, taxonomy, *, strict=False, lenient=False) -> MappingCatalog:
    with open(path, "rb") as fh:
        return load_catalog(fh, taxonomy, strict=strict, lenient=lenient)


def write_catalog(cat: MappingCatalog, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_catalog(cat))

