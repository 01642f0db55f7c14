"""Time-varying graph data model.

Graphs here belong to the *growing* subclass: a node or edge exists from its
birth tick until the end of the lifetime, and crossing an edge takes no time
unless an explicit latency is given. Time is an integer tick (a year for the
knowledge-mobilization data this package was written for).
"""

from __future__ import annotations

import enum
import re
import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

__all__ = [
    "ActorType",
    "TemporalNode",
    "TemporalEdge",
    "Lifetime",
    "Window",
    "TimeVaryingGraph",
    "Footprint",
    "GraphError",
    "GraphWarning",
    "build_graph",
    "restrict_window",
    "snapshot",
    "footprint",
    "presence",
    "parse_actor_name",
]


class GraphError(ValueError):
    """Raised when input records violate the graph invariants."""


class GraphWarning(UserWarning):
    """Emitted when input is repaired instead of rejected."""


class ActorType(str, enum.Enum):
    HIA = "HIA"
    NHIA = "NHIA"
    NHMA = "NHMA"
    OA = "OA"
    UNKNOWN = "UNKNOWN"


# Letter prefixes of the Xi(yy) naming convention.
ACTOR_LETTERS: dict[str, tuple[ActorType, str]] = {
    "H": (ActorType.HIA, "human"),
    "L": (ActorType.NHMA, "lab"),
    "A": (ActorType.NHMA, "article"),
    "C": (ActorType.NHMA, "conference"),
    "J": (ActorType.NHMA, "journal"),
    "P": (ActorType.NHMA, "project"),
    "S": (ActorType.NHMA, "poster"),
    "I": (ActorType.NHMA, "invited oral"),
    "O": (ActorType.NHMA, "oral"),
    "M": (ActorType.NHIA, "material"),
    "G": (ActorType.OA, "organization"),
}

_NAME_RE = re.compile(r"^([A-Z])(\d+)\((\d{2})\)$")


def parse_actor_name(name: str, century: int = 2000) -> tuple[ActorType, str, int] | None:
    """Decode ``Xi(yy)`` into (actor type, subtype, birth year).

    Returns None when the name does not follow the convention or uses an
    unknown letter.
    """
    match = _NAME_RE.match(name.strip())
    if match is None or match.group(1) not in ACTOR_LETTERS:
        return None
    actor_type, subtype = ACTOR_LETTERS[match.group(1)]
    return actor_type, subtype, century + int(match.group(3))


@dataclass(frozen=True, order=True)
class Lifetime:
    """Closed integer interval ``[start, end]``."""

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise GraphError(f"lifetime start {self.start} is after end {self.end}")

    def __contains__(self, t: int) -> bool:
        return self.start <= t <= self.end

    def __str__(self) -> str:
        return f"[{self.start}, {self.end}]"

    @property
    def label(self) -> str:
        """Short ``[05-11]`` form used in report tables."""
        return f"[{self.start % 100:02d}-{self.end % 100:02d}]"


# A window is a lifetime sub-interval; the two share one representation.
Window = Lifetime


@dataclass(frozen=True)
class TemporalNode:
    id: str
    actor_type: ActorType = ActorType.UNKNOWN
    birth: int = 0
    subtype: str = ""


@dataclass(frozen=True)
class TemporalEdge:
    """Undirected edge; endpoints are stored in ascending id order."""

    u: str
    v: str
    birth: int
    latency: int = 0

    def __post_init__(self):
        if self.u == self.v:
            raise GraphError(f"self-loop on {self.u!r}")
        if self.latency < 0:
            raise GraphError(f"negative latency on edge {self.u!r}-{self.v!r}")
        if self.v < self.u:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    @property
    def key(self) -> tuple[str, str]:
        return (self.u, self.v)

    def other(self, node: str) -> str:
        if node == self.u:
            return self.v
        if node == self.v:
            return self.u
        raise KeyError(node)


def presence(e: TemporalEdge, t: int) -> bool:
    """Edge availability: once born, an edge stays."""
    return t >= e.birth


@dataclass(frozen=True, eq=False)
class TimeVaryingGraph:
    """Immutable growing time-varying graph.

    Build instances through :func:`build_graph`, which validates records and
    fills the derived indexes. ``adjacency[v]`` lists ``(birth, neighbor,
    edge)`` triples sorted by ``(birth, neighbor)``.
    """

    nodes: Mapping[str, TemporalNode]
    edges: tuple[TemporalEdge, ...]
    lifetime: Lifetime
    adjacency: Mapping[str, tuple[tuple[int, str, TemporalEdge], ...]] = field(repr=False)
    _edge_index: Mapping[tuple[str, str], TemporalEdge] = field(repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TimeVaryingGraph):
            return NotImplemented
        return (
            self.lifetime == other.lifetime
            and dict(self.nodes) == dict(other.nodes)
            and self.edges == other.edges
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def node_ids(self) -> list[str]:
        return list(self.nodes)

    def edge(self, a: str, b: str) -> TemporalEdge | None:
        key = (a, b) if a < b else (b, a)
        return self._edge_index.get(key)

    def births(self) -> list[int]:
        """Distinct node and edge birth ticks, ascending."""
        ticks = {n.birth for n in self.nodes.values()}
        ticks.update(e.birth for e in self.edges)
        return sorted(ticks)


def _assemble(nodes: dict[str, TemporalNode], edges: Iterable[TemporalEdge], lifetime: Lifetime) -> TimeVaryingGraph:
    ordered_nodes = {k: nodes[k] for k in sorted(nodes)}
    ordered_edges = tuple(sorted(edges, key=lambda e: (e.birth, e.u, e.v)))
    adj: dict[str, list[tuple[int, str, TemporalEdge]]] = {k: [] for k in ordered_nodes}
    for e in ordered_edges:
        adj[e.u].append((e.birth, e.v, e))
        adj[e.v].append((e.birth, e.u, e))
    adjacency = {k: tuple(sorted(lst, key=lambda item: (item[0], item[1]))) for k, lst in adj.items()}
    return TimeVaryingGraph(
        nodes=ordered_nodes,
        edges=ordered_edges,
        lifetime=lifetime,
        adjacency=adjacency,
        _edge_index={e.key: e for e in ordered_edges},
    )


def build_graph(
    nodes: Iterable[TemporalNode],
    edges: Iterable[TemporalEdge],
    lifetime: Lifetime | None = None,
) -> TimeVaryingGraph:
    """Validate records and build a graph.

    Duplicate edges keep the earliest birth. An edge endpoint missing from
    ``nodes`` is created with type UNKNOWN and the edge's birth, with a
    :class:`GraphWarning`. When ``lifetime`` is None it spans the earliest to
    the latest birth.
    """
    node_map: dict[str, TemporalNode] = {}
    for n in nodes:
        if n.id in node_map:
            raise GraphError(f"duplicate node {n.id!r}")
        node_map[n.id] = n

    best: dict[tuple[str, str], TemporalEdge] = {}
    for e in edges:
        kept = best.get(e.key)
        if kept is None or e.birth < kept.birth:
            best[e.key] = e

    for e in sorted(best.values(), key=lambda e: (e.birth, e.u, e.v)):
        for end in e.key:
            if end not in node_map:
                warnings.warn(f"edge {e.u}-{e.v} references unknown node {end!r}; created with birth {e.birth}",
                              GraphWarning, stacklevel=2)
                node_map[end] = TemporalNode(end, ActorType.UNKNOWN, e.birth)

    if lifetime is None:
        ticks = [n.birth for n in node_map.values()] + [e.birth for e in best.values()]
        lifetime = Lifetime(min(ticks), max(ticks)) if ticks else Lifetime(0, 0)

    for n in node_map.values():
        if n.birth not in lifetime:
            raise GraphError(f"node {n.id!r} born {n.birth} outside lifetime {lifetime}")
    for e in best.values():
        if e.birth not in lifetime:
            raise GraphError(f"edge {e.u}-{e.v} born {e.birth} outside lifetime {lifetime}")
        for end in e.key:
            if e.birth < node_map[end].birth:
                raise GraphError(
                    f"edge {e.u}-{e.v} born {e.birth} before its endpoint {end!r} (born {node_map[end].birth})")

    return _assemble(node_map, best.values(), lifetime)


def restrict_window(g: TimeVaryingGraph, window: Window) -> TimeVaryingGraph:
    """Keep only edges born inside ``window`` and the nodes they touch.

    Pre-window edges are dropped, not clamped. Node births are clamped to the
    window start so the result is a valid graph over ``window``.
    """
    if window.start not in g.lifetime:
        raise GraphError(f"window start {window.start} outside lifetime {g.lifetime}")
    if window.end > g.lifetime.end:
        raise GraphError(f"window end {window.end} beyond lifetime {g.lifetime}")
    kept = [e for e in g.edges if e.birth in window]
    touched = {x for e in kept for x in e.key}
    nodes = {}
    for nid in touched:
        n = g.nodes[nid]
        nodes[nid] = n if n.birth >= window.start else TemporalNode(n.id, n.actor_type, window.start, n.subtype)
    return _assemble(nodes, kept, Lifetime(window.start, window.end))


def snapshot(g: TimeVaryingGraph, t: int) -> TimeVaryingGraph:
    """Cumulative graph as it stood at tick ``t`` (everything born by ``t``)."""
    if t not in g.lifetime:
        raise GraphError(f"snapshot time {t} outside lifetime {g.lifetime}")
    nodes = {k: n for k, n in g.nodes.items() if n.birth <= t}
    kept = [e for e in g.edges if e.birth <= t]
    return _assemble(nodes, kept, Lifetime(g.lifetime.start, t))


@dataclass(frozen=True, eq=False)
class Footprint:
    """Static union graph with connected-component labels."""

    nodes: tuple[str, ...]
    adjacency: Mapping[str, tuple[str, ...]]
    edges: frozenset[tuple[str, str]]
    component: Mapping[str, int]
    component_sizes: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    def component_size(self, v: str) -> int:
        return self.component_sizes[self.component[v]]

    def adjustment(self, v: str) -> float:
        """Component-share coefficient n(v)/n."""
        return self.component_size(v) / self.n

    def largest_component(self) -> list[str]:
        if not self.nodes:
            return []
        best = max(range(len(self.component_sizes)), key=lambda c: (self.component_sizes[c], -c))
        return [v for v in self.nodes if self.component[v] == best]


def footprint(g: TimeVaryingGraph) -> Footprint:
    adjacency: dict[str, set[str]] = defaultdict(set)
    for e in g.edges:
        adjacency[e.u].add(e.v)
        adjacency[e.v].add(e.u)
    nodes = tuple(g.nodes)
    adj = {v: tuple(sorted(adjacency.get(v, ()))) for v in nodes}

    component: dict[str, int] = {}
    sizes: list[int] = []
    for root in nodes:
        if root in component:
            continue
        label = len(sizes)
        component[root] = label
        stack = [root]
        size = 0
        while stack:
            x = stack.pop()
            size += 1
            for y in adj[x]:
                if y not in component:
                    component[y] = label
                    stack.append(y)
        sizes.append(size)

    return Footprint(
        nodes=nodes,
        adjacency=adj,
        edges=frozenset(e.key for e in g.edges),
        component=component,
        component_sizes=tuple(sizes),
    )
