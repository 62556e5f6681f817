"""Merge per-dataset annotation manifests into per-standard-label collections."""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import MappingCatalog
from .errors import InvalidTimeSpan, ParseError, UnknownDataset, UnknownLabel, UnknownOriginalLabel
from .taxonomy import Taxonomy, _read_text

__all__ = [
    "AggregatedRecord",
    "AggregationReport",
    "AnnotationManifest",
    "AnnotationRecord",
    "CatalogStats",
    "DatasetShare",
    "LabelTally",
    "aggregate",
    "catalog_stats",
    "export_manifest",
    "load_manifest",
    "parse_export",
    "read_manifest",
]

MANIFEST_HEADER = ("clip_id", "label", "onset", "offset")
EXPORT_HEADER = ("dataset", "clip_id", "original_label", "std_label", "onset", "offset")


def _span_key(onset, offset):
    return (onset is not None, onset or 0.0, offset or 0.0)


@dataclass(frozen=True)
class AnnotationRecord:
    clip_id: str
    label: str
    onset: float | None = None
    offset: float | None = None

    def __post_init__(self):
        if not self.clip_id:
            raise ValueError("clip_id must be non-empty")
        if (self.onset is None) != (self.offset is None):
            raise ValueError("onset and offset must be given together")
        if self.onset is not None:
            if not (math.isfinite(self.onset) and math.isfinite(self.offset)):
                raise ValueError("onset/offset must be finite")
            if self.onset < 0 or self.offset <= self.onset:
                raise ValueError(f"bad time span [{self.onset}, {self.offset}]")


@dataclass(frozen=True)
class AnnotationManifest:
    dataset: str
    records: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))

    def __len__(self):
        return len(self.records)


def _parse_time(text, row, name):
    text = text.strip()
    if not text:
        return None
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"{name} {text!r} is not a number", row=row) from None
    if not math.isfinite(value):
        raise InvalidTimeSpan(row, f"{name} must be finite")
    return value


def load_manifest(source, dataset) -> AnnotationManifest:
    """Parse a ``clip_id,label,onset,offset`` CSV.

    The onset/offset columns may be absent or left empty. Row numbers in
    errors count the header as row 1.
    """
    text = _read_text(source)
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader, None)
        if header is None:
            raise ParseError("missing header", row=1)
        header = [h.strip() for h in header]
        if header[:2] != ["clip_id", "label"] or header[2:] not in ([], ["onset", "offset"]):
            raise ParseError(f"expected header {','.join(MANIFEST_HEADER)}, got {','.join(header)}", row=1)
        width = len(header)
        records = []
        for row in reader:
            rownum = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != width:
                raise ParseError(f"expected {width} fields, got {len(row)}", row=rownum)
            row = row + [""] * (4 - width)
            clip, label = row[0].strip(), row[1]
            if not clip:
                raise ParseError("empty clip_id", row=rownum)
            if not label:
                raise ParseError("empty label", row=rownum)
            onset = _parse_time(row[2], rownum, "onset")
            offset = _parse_time(row[3], rownum, "offset")
            if (onset is None) != (offset is None):
                raise InvalidTimeSpan(rownum, "onset and offset must be given together")
            if onset is not None and (onset < 0 or offset <= onset):
                raise InvalidTimeSpan(rownum, f"offset {offset} must exceed onset {onset} >= 0")
            records.append(AnnotationRecord(clip, label, onset, offset))
    except csv.Error as exc:
        raise ParseError(str(exc), row=reader.line_num) from None
    return AnnotationManifest(dataset, records)


def read_manifest(path, dataset) -> AnnotationManifest:
    with open(path, "rb") as fh:
        return load_manifest(fh, dataset)


@dataclass(frozen=True, order=True)
class AggregatedRecord:
    dataset: str
    clip_id: str
    original_label: str
    std_label: str
    onset: float | None = None
    offset: float | None = None

    def sort_key(self):
        return (self.dataset, self.clip_id, self.original_label, self.std_label, *_span_key(self.onset, self.offset))


@dataclass(frozen=True)
class LabelTally:
    total: int
    per_dataset: dict
    records: tuple


@dataclass(frozen=True)
class AggregationReport:
    """Per-target tallies plus the (dataset, original label, count) list of
    labels the catalog could not map."""

    targets: dict = field(default_factory=dict)
    unmapped: tuple = ()
    include_descendants: bool = False
    distinct_clips: bool = False

    def __getitem__(self, target) -> LabelTally:
        try:
            return self.targets[target]
        except KeyError:
            raise UnknownLabel(target) from None

    def count(self, target) -> int:
        return self[target].total

    def to_dict(self):
        return {
            "include_descendants": self.include_descendants,
            "distinct_clips": self.distinct_clips,
            "targets": {
                t: {"total": tally.total, "per_dataset": dict(tally.per_dataset)}
                for t, tally in self.targets.items()
            },
            "unmapped": [{"dataset": d, "label": l, "count": n} for d, l, n in self.unmapped],
        }


def aggregate(
    catalog: MappingCatalog,
    taxonomy: Taxonomy,
    targets,
    manifests,
    include_descendants=False,
    *,
    distinct_clips=False,
    strict=False,
    case_insensitive=False,
) -> AggregationReport:
    """Collect manifest records under each requested standard label.

    A record counts toward a target when its original label maps to the
    target, or (with ``include_descendants``) to a descendant of it. One
    record may count toward several targets. Records whose label is not in
    the catalog go to ``unmapped``. With ``distinct_clips`` each
    (dataset, clip, target) is counted once.
    """
    targets = sorted(set(targets))
    for t in targets:
        if t not in taxonomy:
            raise UnknownLabel(t)
    # which targets each std label feeds
    feeds = {}
    for t in targets:
        feeds.setdefault(t, set()).add(t)
        if include_descendants:
            for d in taxonomy.descendants(t):
                feeds.setdefault(d, set()).add(t)

    hits = {t: [] for t in targets}
    unmapped = Counter()
    for manifest in sorted(manifests, key=lambda m: m.dataset):
        known = manifest.dataset in catalog.datasets
        if not known and strict:
            raise UnknownDataset(manifest.dataset)
        resolved = {}
        for rec in manifest.records:
            if rec.label not in resolved:
                try:
                    resolved[rec.label] = catalog.find_std_label(
                        manifest.dataset, rec.label, case_insensitive=case_insensitive
                    ) if known else None
                except UnknownOriginalLabel:
                    resolved[rec.label] = None
            std = resolved[rec.label]
            if std is None:
                unmapped[(manifest.dataset, rec.label)] += 1
                continue
            for t in feeds.get(std, ()):
                hits[t].append(AggregatedRecord(manifest.dataset, rec.clip_id, rec.label, std, rec.onset, rec.offset))

    tallies = {}
    for t in targets:
        recs = sorted(hits[t], key=AggregatedRecord.sort_key)
        if distinct_clips:
            seen = set()
            kept = []
            for r in recs:
                if (r.dataset, r.clip_id) not in seen:
                    seen.add((r.dataset, r.clip_id))
                    kept.append(r)
            recs = kept
        per = Counter(r.dataset for r in recs)
        tallies[t] = LabelTally(len(recs), dict(sorted(per.items())), tuple(recs))
    return AggregationReport(
        targets=tallies,
        unmapped=tuple((d, l, n) for (d, l), n in sorted(unmapped.items())),
        include_descendants=include_descendants,
        distinct_clips=distinct_clips,
    )


def _fmt_time(value):
    return "" if value is None else repr(float(value))


def export_manifest(report: AggregationReport, target) -> bytes:
    """Unified CSV of every record collected under ``target``.

    ``std_label`` is the label each original maps to directly, which may be
    a descendant of ``target`` when the report includes descendants.
    """
    tally = report[target]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EXPORT_HEADER)
    for r in tally.records:
        writer.writerow([r.dataset, r.clip_id, r.original_label, r.std_label, _fmt_time(r.onset), _fmt_time(r.offset)])
    return buf.getvalue().encode("utf-8")


def parse_export(source) -> list[AggregatedRecord]:
    """Inverse of :func:`export_manifest`."""
    reader = csv.reader(io.StringIO(_read_text(source), newline=""))
    header = next(reader, None)
    if header is None or tuple(header) != EXPORT_HEADER:
        raise ParseError("not an aggregation export (bad header)", row=1)
    out = []
    for row in reader:
        if len(row) != len(EXPORT_HEADER):
            raise ParseError(f"expected {len(EXPORT_HEADER)} fields", row=reader.line_num)
        onset = _parse_time(row[4], reader.line_num, "onset")
        offset = _parse_time(row[5], reader.line_num, "offset")
        out.append(AggregatedRecord(row[0], row[1], row[2], row[3], onset, offset))
    return out


@dataclass(frozen=True)
class DatasetShare:
    dataset: str
    entries: int
    share: Fraction

    @property
    def percent(self) -> str:
        return f"{float(self.share * 100):.1f}%"


@dataclass(frozen=True)
class CatalogStats:
    total: int
    rows: tuple

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, dataset) -> DatasetShare:
        for row in self.rows:
            if row.dataset == dataset:
                return row
        raise UnknownDataset(dataset)


def catalog_stats(catalog: MappingCatalog) -> CatalogStats:
    """Entry count and share of all entries for every dataset in the catalog."""
    counts = Counter(e.dataset for e in catalog.entries)
    total = sum(counts.values())
    rows = tuple(
        DatasetShare(d, counts.get(d, 0), Fraction(counts.get(d, 0), total) if total else Fraction(0))
        for d in catalog.datasets
    )
    return CatalogStats(total, rows)
