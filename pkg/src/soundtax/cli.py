"""Command-line front end.

Exit codes: 0 success, 1 domain or validation error, 2 usage, I/O or parse
error. ``--format structured`` prints JSON; mapping results use the catalog
document layout so they can be fed back to ``load_catalog``.
"""

from __future__ import annotations

import argparse
import json
import os
import pprint
import sys
import warnings
from pathlib import Path

from . import seed_path
from .aggregation import aggregate, catalog_stats, export_manifest, read_manifest
from .catalog import MappingEntry, load_catalog, write_catalog
from .dot import dot_hierarchy, dot_mapping, hierarchy_subgraph
from .errors import ParseError, TaxonomyError, ValidationError, VersionMismatchWarning
from .taxonomy import TaxonomyNode, load_taxonomy, write_taxonomy


class UsageError(Exception):
    pass


def _depth(text):
    if text in ("all", "unlimited", "inf"):
        return None
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("depth must be >= 0")
    return value


def build_parser():
    p = argparse.ArgumentParser(prog="soundtax", description=__doc__.splitlines()[0])
    p.add_argument("--taxonomy", metavar="PATH", help="taxonomy JSON (default: shipped seed)")
    p.add_argument("--catalog", metavar="PATH", help="catalog JSON (default: shipped seed)")
    p.add_argument("--strict", action="store_true", help="version drift and unknown datasets are errors")
    p.add_argument("--case-insensitive", action="store_true", help="match original labels ignoring case")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("validate", help="check taxonomy and catalog, list every violation")

    s = sub.add_parser("search-std", help="dataset labels mapped to a standard label")
    s.add_argument("std_label")
    s.add_argument("--descendants", action="store_true")

    s = sub.add_parser("search-dataset", help="standard label and counterparts of a dataset label")
    s.add_argument("dataset")
    s.add_argument("original")

    for name, help_ in (("tree", "indented hierarchy around a label"), ("dot", "DOT graph")):
        s = sub.add_parser(name, help=help_)
        if name == "dot":
            s.add_argument("kind", choices=("hierarchy", "mapping"))
        s.add_argument("std_label")
        s.add_argument("--up", type=_depth, default=None, metavar="N", help="ancestor depth (default: all)")
        s.add_argument("--down", type=_depth, default=None, metavar="N", help="descendant depth (default: all)")
        s.add_argument("--siblings", action="store_true")
        if name == "dot":
            s.add_argument("-o", "--output", metavar="FILE")

    sub.add_parser("stats", help="per-dataset entry counts and shares")

    s = sub.add_parser("aggregate", help="merge annotation manifests by standard label")
    s.add_argument("--target", action="append", default=[], metavar="STD")
    s.add_argument("--all-targets", action="store_true", help="use every standard label as a target")
    s.add_argument("--manifest", action="append", default=[], metavar="DATASET=PATH")
    s.add_argument("--descendants", action="store_true")
    s.add_argument("--distinct-clips", action="store_true")
    s.add_argument("--export", metavar="DIR", help="write <target>.csv per target")

    s = sub.add_parser("add-mapping", help="add a dataset label, optionally with a new standard label")
    s.add_argument("dataset")
    s.add_argument("original")
    s.add_argument("std_label")
    s.add_argument("--new-node", nargs="+", metavar="PARENT", help="create std_label under these parents")
    s.add_argument("--name", help="display name for a new node (default: the original label)")
    s.add_argument("--description")
    s.add_argument("--display-name", help="display name for the dataset")
    s.add_argument("--output-catalog", metavar="PATH")
    s.add_argument("--output-taxonomy", metavar="PATH")
    s.add_argument("--in-place", action="store_true")
    return p


class Context:
    def __init__(self, args, out):
        self.args = args
        self.out = out
        self.structured = args.format == "structured"
        self._tax = self._cat = None

    @property
    def taxonomy_path(self):
        return self.args.taxonomy or seed_path("taxonomy.json")

    @property
    def catalog_path(self):
        return self.args.catalog or seed_path("catalog.json")

    def taxonomy(self):
        if self._tax is None:
            with open(self.taxonomy_path, "rb") as fh:
                self._tax = load_taxonomy(fh)
        return self._tax

    def catalog(self):
        if self._cat is None:
            tax = self.taxonomy()
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always", VersionMismatchWarning)
                with open(self.catalog_path, "rb") as fh:
                    self._cat = load_catalog(fh, tax, strict=self.args.strict)
            for w in caught:
                print(f"warning: version-mismatch: {w.message}", file=sys.stderr)
        return self._cat

    def emit(self, text):
        self.out.write(text if text.endswith("\n") else text + "\n")

    def emit_json(self, obj):
        self.emit(json.dumps(obj, indent=2, ensure_ascii=False))


def cmd_validate(ctx):
    problems = []
    try:
        tax = ctx.taxonomy()
    except ValidationError as exc:
        problems += [("taxonomy", v) for v in exc.violations]
        tax = None
    if tax is not None:
        try:
            ctx.catalog()
        except ValidationError as exc:
            problems += [("catalog", v) for v in exc.violations]
    if ctx.structured:
        ctx.emit_json({
            "valid": not problems,
            "violations": [{"source": s, "kind": v.kind, "message": v.message} for s, v in problems],
        })
    else:
        for source, v in problems:
            ctx.emit(f"{source}:{v.kind}: {v.message}")
        if not problems:
            cat = ctx.catalog()
            ctx.emit(
                f"ok: taxonomy {tax.version!r} with {len(tax)} labels, "
                f"catalog with {len(cat)} entries in {len(cat.datasets)} datasets"
            )
    return 1 if problems else 0


def _sub_catalog_doc(cat, mapping):
    pairs = [(d, o) for d, origs in mapping.items() for o in origs]
    return cat.subset(pairs).to_dict()


def cmd_search_std(ctx):
    cat = ctx.catalog()
    mapping = cat.get_mapping_for_std_label(ctx.args.std_label, ctx.args.descendants)
    if ctx.structured:
        ctx.emit_json(_sub_catalog_doc(cat, mapping))
    else:
        ctx.emit(pprint.pformat(mapping, width=100))
    return 0


def cmd_search_dataset(ctx):
    cat = ctx.catalog()
    a = ctx.args
    ci = a.case_insensitive
    std = cat.find_std_label(a.dataset, a.original, case_insensitive=ci)
    expanded = cat.expanded_std_labels(a.dataset, a.original, case_insensitive=ci)
    others = cat.counterparts(a.dataset, a.original, case_insensitive=ci)
    if ctx.structured:
        ctx.emit_json({
            "dataset": a.dataset,
            "original": a.original,
            "std": std,
            "expanded": expanded,
            "counterparts": _sub_catalog_doc(cat, others),
        })
    else:
        ctx.emit(f"std_label: {std}")
        ctx.emit(f"expanded: {', '.join(expanded)}")
        ctx.emit("counterparts:")
        ctx.emit(pprint.pformat(others, width=100))
    return 0


def _render_tree(focus, nodes, edges):
    kids = {n: [] for n in nodes}
    has_parent = set()
    for p, c in edges:
        kids[p].append(c)
        has_parent.add(c)
    lines = []

    def walk(n, depth):
        mark = "  *" if n == focus else ""
        lines.append(f"{'  ' * depth}{n}{mark}")
        for c in sorted(kids[n]):
            walk(c, depth + 1)

    for top in sorted(set(nodes) - has_parent):
        walk(top, 0)
    return "\n".join(lines)


def cmd_tree(ctx):
    a = ctx.args
    nodes, edges = hierarchy_subgraph(ctx.taxonomy(), a.std_label, a.up, a.down, a.siblings)
    if ctx.structured:
        ctx.emit_json({"focus": a.std_label, "nodes": nodes, "edges": [list(e) for e in edges]})
    else:
        ctx.emit(_render_tree(a.std_label, nodes, edges))
    return 0


def cmd_dot(ctx):
    a = ctx.args
    if a.kind == "hierarchy":
        text = dot_hierarchy(ctx.taxonomy(), a.std_label, a.up, a.down, a.siblings)
    else:
        text = dot_mapping(ctx.catalog(), a.std_label)
    if a.output:
        with open(a.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        ctx.out.write(text)
    return 0


def cmd_stats(ctx):
    cat = ctx.catalog()
    stats = catalog_stats(cat)
    if ctx.structured:
        ctx.emit_json({
            "total": stats.total,
            "datasets": [
                {
                    "id": r.dataset,
                    "display_name": cat.display_name(r.dataset),
                    "entries": r.entries,
                    "share": str(r.share),
                    "percent": r.percent,
                }
                for r in stats.rows
            ],
        })
        return 0
    width = max([len("dataset"), *(len(cat.display_name(r.dataset)) for r in stats.rows)])
    ctx.emit(f"{'dataset':<{width}}  entries  share")
    for r in stats.rows:
        ctx.emit(f"{cat.display_name(r.dataset):<{width}}  {r.entries:>7}  {r.percent:>6}")
    ctx.emit(f"{'total':<{width}}  {stats.total:>7}")
    return 0


def cmd_aggregate(ctx):
    a = ctx.args
    tax, cat = ctx.taxonomy(), ctx.catalog()
    manifests = []
    for spec in a.manifest:
        dataset, sep, path = spec.partition("=")
        if not sep or not dataset or not path:
            raise UsageError(f"--manifest expects DATASET=PATH, got {spec!r}")
        manifests.append(read_manifest(path, dataset))
    targets = list(tax) if a.all_targets else a.target
    report = aggregate(
        cat, tax, targets, manifests, a.descendants,
        distinct_clips=a.distinct_clips, strict=a.strict, case_insensitive=a.case_insensitive,
    )
    if a.export:
        os.makedirs(a.export, exist_ok=True)
        for t in report.targets:
            Path(a.export, f"{t}.csv").write_bytes(export_manifest(report, t))
    if ctx.structured:
        ctx.emit_json(report.to_dict())
        return 0
    for t, tally in report.targets.items():
        per = ", ".join(f"{d}: {n}" for d, n in tally.per_dataset.items())
        ctx.emit(f"{t}: {tally.total}" + (f" ({per})" if per else ""))
    if report.unmapped:
        ctx.emit("unmapped:")
        for d, label, n in report.unmapped:
            ctx.emit(f"  {d}: {label!r} x{n}")
    return 0


def _updated_path(given, default_name):
    if given is None:
        return Path.cwd() / default_name.replace(".json", ".updated.json")
    p = Path(given)
    return p.with_name(p.stem + ".updated.json")


def cmd_add_mapping(ctx):
    a = ctx.args
    if a.in_place and (a.catalog is None or (a.new_node and a.taxonomy is None)):
        raise UsageError("--in-place needs explicit --catalog (and --taxonomy with --new-node)")
    tax, cat = ctx.taxonomy(), ctx.catalog()
    if a.new_node:
        node = TaxonomyNode(a.std_label, a.name or a.original, tuple(a.new_node), a.description)
        tax = tax.add_node(node)
        cat = cat.rebind(tax)
    cat = cat.add_entry(MappingEntry(a.dataset, a.original, a.std_label), display_name=a.display_name)

    written = []
    if a.new_node:
        tax_out = a.taxonomy if a.in_place else (a.output_taxonomy or _updated_path(a.taxonomy, "taxonomy.json"))
        write_taxonomy(tax, tax_out)
        written.append(("taxonomy", str(tax_out)))
    cat_out = a.catalog if a.in_place else (a.output_catalog or _updated_path(a.catalog, "catalog.json"))
    write_catalog(cat, cat_out)
    written.append(("catalog", str(cat_out)))
    if ctx.structured:
        ctx.emit_json({kind: path for kind, path in written})
    else:
        for kind, path in written:
            ctx.emit(f"wrote {kind}: {path}")
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "search-std": cmd_search_std,
    "search-dataset": cmd_search_dataset,
    "tree": cmd_tree,
    "dot": cmd_dot,
    "stats": cmd_stats,
    "aggregate": cmd_aggregate,
    "add-mapping": cmd_add_mapping,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    ctx = Context(args, out)
    try:
        return COMMANDS[args.command](ctx)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ParseError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        for v in exc.violations:
            print(f"error: {v.kind}: {v.message}", file=sys.stderr)
        return 1
    except TaxonomyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
