"""Static communities and focus-centred temporal communities.

The temporal variant replaces every foremost increasing journey that starts
or ends at a focus node by one directed edge, then runs directed weighted
modularity maximisation on the result. Interior nodes of those journeys are
ignored, which makes the method an approximation by design.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

import networkx as nx
from networkx.algorithms import community as nx_community

from .journeys import UNREACHABLE, earliest_increasing_arrival
from .static import to_networkx
from .tvg import Footprint, GraphError, TimeVaryingGraph

__all__ = [
    "Partition",
    "ProjectedDigraph",
    "modularity",
    "directed_modularity",
    "detect_communities",
    "project_temporal_neighborhood",
    "detect_temporal_communities",
    "journey_weight",
]


@dataclass(frozen=True)
class Partition:
    membership: Mapping[str, int]
    modularity: float

    @property
    def count(self) -> int:
        return len(set(self.membership.values()))

    def groups(self) -> list[list[str]]:
        out: dict[int, list[str]] = defaultdict(list)
        for v, c in self.membership.items():
            out[c].append(v)
        return [sorted(out[c]) for c in sorted(out)]


def _relabel(groups: Iterable[Iterable[str]]) -> dict[str, int]:
    """Dense community ids, numbered by each group's smallest member."""
    ordered = sorted((sorted(g) for g in groups if g), key=lambda g: g[0])
    return {v: i for i, g in enumerate(ordered) for v in g}


def modularity(edges: Iterable[tuple[str, str]], membership: Mapping[str, int]) -> float:
    """Newman modularity of an undirected unweighted graph.

    Q = sum over communities of L_c/m - (d_c / 2m)^2.
    """
    edges = list(edges)
    m = len(edges)
    if m == 0:
        return 0.0
    inside: dict[int, int] = defaultdict(int)
    degree: dict[int, int] = defaultdict(int)
    for a, b in edges:
        ca, cb = membership[a], membership[b]
        degree[ca] += 1
        degree[cb] += 1
        if ca == cb:
            inside[ca] += 1
    return sum(inside[c] / m - (degree[c] / (2 * m)) ** 2 for c in degree)


def directed_modularity(weights: Mapping[tuple[str, str], float], membership: Mapping[str, int]) -> float:
    """Leicht-Newman directed modularity for weighted arcs.

    Q = sum over communities of W_c/W - out_c * in_c / W^2.
    """
    total = sum(weights.values())
    if total == 0:
        return 0.0
    inside: dict[int, float] = defaultdict(float)
    out_w: dict[int, float] = defaultdict(float)
    in_w: dict[int, float] = defaultdict(float)
    for (a, b), w in sorted(weights.items()):
        ca, cb = membership[a], membership[b]
        out_w[ca] += w
        in_w[cb] += w
        if ca == cb:
            inside[ca] += w
    return sum(inside[c] / total - out_w[c] * in_w[c] / total ** 2 for c in set(out_w) | set(in_w))


def detect_communities(f: Footprint, seed: int = 0) -> Partition:
    """Louvain communities of the footprint, deterministic for a fixed seed.

    Isolated nodes form singleton communities.
    """
    if f.n == 0:
        return Partition({}, 0.0)
    if f.m == 0:
        membership = _relabel([[v] for v in f.nodes])
    else:
        groups = nx_community.louvain_communities(to_networkx(f), seed=seed)
        membership = _relabel(groups)
    return Partition(membership, modularity(sorted(f.edges), membership))


def journey_weight(arrival: int, start: int) -> float:
    """Tie strength of a projected journey; earlier arrival weighs more."""
    return 1.0 / (1 + arrival - start)


@dataclass(frozen=True)
class ProjectedDigraph:
    focus: str
    start: int
    arcs: Mapping[tuple[str, str], float]

    @property
    def nodes(self) -> list[str]:
        return sorted({x for arc in self.arcs for x in arc})


def project_temporal_neighborhood(g: TimeVaryingGraph, focus: str) -> ProjectedDigraph:
    """Collapse foremost increasing journeys from and to ``focus`` into arcs.

    ``g`` is expected to be already restricted to the window of interest.
    """
    if focus not in g.nodes:
        raise GraphError(f"focus {focus!r} not present in window {g.lifetime}")
    start = g.lifetime.start
    arcs: dict[tuple[str, str], float] = {}
    leaving = earliest_increasing_arrival(g, focus)
    for v, t in leaving.items():
        if v != focus and t is not UNREACHABLE:
            arcs[(focus, v)] = journey_weight(t, start)
    for v in g.nodes:
        if v == focus:
            continue
        t = earliest_increasing_arrival(g, v)[focus]
        if t is not UNREACHABLE:
            arcs[(v, focus)] = journey_weight(t, start)
    return ProjectedDigraph(focus, start, dict(sorted(arcs.items())))


def _detection_arcs(g: TimeVaryingGraph, proj: ProjectedDigraph) -> dict[tuple[str, str], float]:
    # A star around the focus has no community structure of its own, so the
    # one-edge journeys among projected nodes are added as reciprocal arcs.
    arcs = dict(proj.arcs)
    members = set(proj.nodes)
    for e in g.edges:
        if e.u in members and e.v in members and proj.focus not in e.key:
            w = journey_weight(e.birth, proj.start)
            arcs[(e.u, e.v)] = w
            arcs[(e.v, e.u)] = w
    return dict(sorted(arcs.items()))


def detect_temporal_communities(g: TimeVaryingGraph, focus: str) -> Partition:
    """Directed weighted greedy modularity communities around ``focus``.

    Nodes with no foremost increasing journey to or from ``focus`` are left
    out of the partition.
    """
    proj = project_temporal_neighborhood(g, focus)
    if not proj.arcs:
        return Partition({}, 0.0)
    arcs = _detection_arcs(g, proj)
    D = nx.DiGraph()
    D.add_nodes_from(proj.nodes)
    D.add_weighted_edges_from((a, b, w) for (a, b), w in arcs.items())
    groups = nx_community.greedy_modularity_communities(D, weight="weight")
    membership = _relabel(groups)
    return Partition(membership, directed_modularity(arcs, membership))
