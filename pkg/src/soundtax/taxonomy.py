"""Multi-parent label taxonomy: normalization, validation and hierarchy queries.

The hierarchy is a DAG. Top-level categories are ordinary nodes with no
parents; there is no synthetic super-root. A :class:`Taxonomy` is immutable,
so it can be shared between readers freely; :meth:`Taxonomy.add_node` returns
a new value.
"""

from __future__ import annotations

import io
import json
import re
import unicodedata
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType

from .errors import (
    DuplicateLabel,
    EmptyLabel,
    InvalidId,
    ParseError,
    UnknownLabel,
    ValidationError,
    Violation,
)

__all__ = [
    "STD_LABEL_RE",
    "Taxonomy",
    "TaxonomyNode",
    "dump_taxonomy",
    "dumps_taxonomy",
    "is_std_label",
    "load_taxonomy",
    "normalize_label",
    "read_taxonomy",
    "write_taxonomy",
]

STD_LABEL_RE = re.compile(r"[a-z0-9]+(?:_[a-z0-9]+)*")

# underscore is part of the separator class so that already-canonical input
# survives unchanged (idempotence)
_SEPARATORS = re.compile(r"[\s\-/,'’_]+")
_DROPPED = re.compile(r"[^a-z0-9\s\-/,'’_]")


def is_std_label(value) -> bool:
    return isinstance(value, str) and STD_LABEL_RE.fullmatch(value) is not None


def normalize_label(raw: str) -> str:
    """Turn a free-text label into a canonical standard-label token.

    >>> normalize_label("Car horn")
    'car_horn'
    >>> normalize_label("dog-barking-whining")
    'dog_barking_whining'

    Only syntax is handled here. Whether a composite label deserves an
    ``_or_`` join is an authoring decision that lives in the data.
    """
    if raw is None or not raw.strip():
        raise EmptyLabel("label is empty")
    # strip accents so "Café" keeps its letters
    text = unicodedata.normalize("NFKD", raw)
    text = "".join(ch for ch in text if not unicodedata.combining(ch)).lower()
    text = _DROPPED.sub("", text)
    text = _SEPARATORS.sub("_", text).strip("_")
    if not text:
        raise EmptyLabel(f"nothing left of {raw!r} after normalization")
    return text


@dataclass(frozen=True)
class TaxonomyNode:
    id: str
    name: str
    parents: tuple = ()
    description: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(sorted(self.parents)))

    @property
    def is_root(self):
        return not self.parents

    def to_dict(self):
        d = {"id": self.id, "name": self.name, "parents": list(self.parents)}
        if self.description is not None:
            d["description"] = self.description
        return d


def _find_cycles(parent_map):
    """Return every cycle reachable through parent edges, as id paths.

    Each cycle is reported once, rotated to start at its smallest id.
    """
    WHITE, GRAY, BLACK = 0, 1, 2
    color = dict.fromkeys(parent_map, WHITE)
    seen = set()
    cycles = []
    for start in sorted(parent_map):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(sorted(parent_map[start])))]
        path = [start]
        color[start] = GRAY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                color[node] = BLACK
                continue
            if nxt not in parent_map:
                continue
            if color[nxt] == GRAY:
                loop = path[path.index(nxt):]
                i = loop.index(min(loop))
                loop = tuple(loop[i:] + loop[:i])
                if loop not in seen:
                    seen.add(loop)
                    cycles.append(list(loop) + [loop[0]])
            elif color[nxt] == WHITE:
                color[nxt] = GRAY
                path.append(nxt)
                stack.append((nxt, iter(sorted(parent_map[nxt]))))
    return cycles


def _validate(nodes):
    violations = []
    by_id = {}
    for node in nodes:
        if not is_std_label(node.id):
            violations.append(Violation("invalid-id", f"{node.id!r} is not a canonical standard label"))
        if node.id in by_id:
            violations.append(Violation("duplicate-id", f"{node.id!r} is defined more than once"))
            continue
        by_id[node.id] = node

    for node in by_id.values():
        if len(set(node.parents)) != len(node.parents):
            violations.append(Violation("duplicate-parent", f"{node.id!r} lists a parent more than once"))
        for p in sorted(set(node.parents)):
            if p != node.id and p not in by_id:
                violations.append(Violation("dangling-parent", f"{node.id!r} has unknown parent {p!r}"))

    parent_map = {nid: set(n.parents) for nid, n in by_id.items()}
    for cycle in _find_cycles(parent_map):
        violations.append(Violation("cycle", " -> ".join(cycle)))

    # a node is rooted if it is a root or any existing parent is rooted
    rooted = {nid for nid, ps in parent_map.items() if not ps}
    changed = True
    while changed:
        changed = False
        for nid, ps in parent_map.items():
            if nid not in rooted and ps & rooted:
                rooted.add(nid)
                changed = True
    for nid in sorted(set(parent_map) - rooted):
        violations.append(Violation("unrooted", f"{nid!r} does not reach any root category"))
    return by_id, violations


class Taxonomy:
    """Validated, immutable set of :class:`TaxonomyNode` with derived indexes.

    Construction raises :class:`ValidationError` listing every problem found
    (non-canonical ids, duplicates, dangling parents, cycles).
    """

    def __init__(self, nodes, version=""):
        by_id, violations = _validate(list(nodes))
        if violations:
            raise ValidationError(violations)
        self.version = version
        self._nodes = MappingProxyType(dict(sorted(by_id.items())))

        children = {nid: [] for nid in self._nodes}
        for node in self._nodes.values():
            for p in node.parents:
                children[p].append(node.id)
        self._children = {k: tuple(sorted(v)) for k, v in children.items()}

        # parents before children, so each ancestor set is built from finished ones
        indeg = {nid: len(n.parents) for nid, n in self._nodes.items()}
        queue = deque(nid for nid, d in indeg.items() if d == 0)
        ancestors = {}
        while queue:
            nid = queue.popleft()
            acc = set()
            for p in self._nodes[nid].parents:
                acc.add(p)
                acc |= ancestors[p]
            ancestors[nid] = frozenset(acc)
            for c in self._children[nid]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        descendants = {nid: set() for nid in self._nodes}
        for nid, anc in ancestors.items():
            for a in anc:
                descendants[a].add(nid)
        self._ancestors = {k: tuple(sorted(v)) for k, v in ancestors.items()}
        self._ancestor_sets = ancestors
        self._descendants = {k: tuple(sorted(v)) for k, v in descendants.items()}

    def __repr__(self):
        return f"Taxonomy(version={self.version!r}, nodes={len(self._nodes)})"

    def __eq__(self, other):
        if not isinstance(other, Taxonomy):
            return NotImplemented
        return self.version == other.version and dict(self._nodes) == dict(other._nodes)

    def __hash__(self):
        return hash((self.version, tuple(self._nodes.values())))

    def __contains__(self, label):
        return label in self._nodes

    def __len__(self):
        return len(self._nodes)

    def __iter__(self):
        return iter(self._nodes)

    @property
    def nodes(self):
        """Read-only mapping id -> node, ordered by id."""
        return self._nodes

    def node(self, label) -> TaxonomyNode:
        try:
            return self._nodes[label]
        except KeyError:
            raise UnknownLabel(label) from None

    @property
    def roots(self):
        return [nid for nid, n in self._nodes.items() if n.is_root]

    def _check(self, label):
        if label not in self._nodes:
            raise UnknownLabel(label)

    def parents(self, label) -> list[str]:
        return list(self.node(label).parents)

    def children(self, label) -> list[str]:
        self._check(label)
        return list(self._children[label])

    def siblings(self, label) -> list[str]:
        """Children of any parent of ``label``, excluding ``label`` itself."""
        sibs = set()
        for p in self.node(label).parents:
            sibs.update(self._children[p])
        sibs.discard(label)
        return sorted(sibs)

    def ancestors(self, label) -> list[str]:
        self._check(label)
        return list(self._ancestors[label])

    def descendants(self, label) -> list[str]:
        self._check(label)
        return list(self._descendants[label])

    def is_descendant(self, candidate, ancestor) -> bool:
        """Strict relation: a label is never its own descendant."""
        self._check(candidate)
        self._check(ancestor)
        return ancestor in self._ancestor_sets[candidate]

    def ancestors_within(self, label, depth=None) -> list[str]:
        """Ancestors reachable in at most ``depth`` parent steps (None = all)."""
        return self._walk(label, depth, lambda n: self._nodes[n].parents)

    def descendants_within(self, label, depth=None) -> list[str]:
        return self._walk(label, depth, lambda n: self._children[n])

    def _walk(self, label, depth, step):
        self._check(label)
        if depth is not None and depth < 0:
            raise ValueError("depth must be >= 0 or None")
        seen = {label}
        frontier = [label]
        hops = 0
        while frontier and (depth is None or hops < depth):
            nxt = []
            for n in frontier:
                for m in step(n):
                    if m not in seen:
                        seen.add(m)
                        nxt.append(m)
            frontier = nxt
            hops += 1
        seen.discard(label)
        return sorted(seen)

    def add_node(self, node: TaxonomyNode) -> Taxonomy:
        """Return a new taxonomy that also contains ``node``."""
        if not is_std_label(node.id):
            raise InvalidId(f"{node.id!r} is not a canonical standard label")
        if node.id in self._nodes:
            raise DuplicateLabel(node.id)
        for p in node.parents:
            if p not in self._nodes:
                raise UnknownLabel(p)
        if len(set(node.parents)) != len(node.parents):
            raise ValidationError([Violation("duplicate-parent", f"{node.id!r} lists a parent more than once")])
        return Taxonomy([*self._nodes.values(), node], version=self.version)

    def to_dict(self):
        return {"version": self.version, "nodes": [n.to_dict() for n in self._nodes.values()]}


_NODE_KEYS = {"id", "name", "parents", "description"}
_TOP_KEYS = {"version", "nodes"}


def _read_text(source):
    data = source.read() if hasattr(source, "read") else source
    if isinstance(data, (bytes, bytearray)):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc.reason}") from None
    return data


def _parse_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None


def _expect(cond, message):
    if not cond:
        raise ParseError(message)


def load_taxonomy(source, *, lenient=False) -> Taxonomy:
    """Parse and validate a taxonomy JSON document.

    ``source`` is a binary or text stream (or the raw bytes/str). Unknown keys
    are rejected unless ``lenient`` is set.
    """
    doc = _parse_json(_read_text(source))
    _expect(isinstance(doc, dict), "taxonomy document must be a JSON object")
    if not lenient:
        extra = set(doc) - _TOP_KEYS
        _expect(not extra, f"unknown top-level keys: {sorted(extra)}")
    version = doc.get("version", "")
    _expect(isinstance(version, str), "'version' must be a string")
    raw_nodes = doc.get("nodes")
    _expect(isinstance(raw_nodes, list), "'nodes' must be a list")

    nodes = []
    for i, raw in enumerate(raw_nodes):
        where = f"nodes[{i}]"
        _expect(isinstance(raw, dict), f"{where} must be an object")
        if not lenient:
            extra = set(raw) - _NODE_KEYS
            _expect(not extra, f"{where}: unknown keys {sorted(extra)}")
        for key in ("id", "name"):
            _expect(isinstance(raw.get(key), str), f"{where}: {key!r} must be a string")
        parents = raw.get("parents", [])
        _expect(
            isinstance(parents, list) and all(isinstance(p, str) for p in parents),
            f"{where}: 'parents' must be a list of strings",
        )
        desc = raw.get("description")
        _expect(desc is None or isinstance(desc, str), f"{where}: 'description' must be a string")
        nodes.append(TaxonomyNode(raw["id"], raw["name"], tuple(parents), desc))
    return Taxonomy(nodes, version=version)


def dumps_taxonomy(tax: Taxonomy) -> str:
    return json.dumps(tax.to_dict(), indent=2, ensure_ascii=False) + "\n"


def dump_taxonomy(tax: Taxonomy, stream):
    text = dumps_taxonomy(tax)
    if isinstance(stream, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(stream, "mode", ""):
        stream.write(text.encode("utf-8"))
    else:
        stream.write(text)


def read_taxonomy(path, *, lenient=False) -> Taxonomy:
    with open(path, "rb") as fh:
        return load_taxonomy(fh, lenient=lenient)


def write_taxonomy(tax: Taxonomy, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_taxonomy(tax))
