"""Static centrality on footprints.

Betweenness sums over unordered pairs, so a path a-b-c gives b a score of 1.
The temporal measure in :mod:`tempus.temporal` uses the same convention, which
keeps the two directly comparable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Mapping

import networkx as nx

from .tvg import Footprint, Window

__all__ = [
    "CentralityVector",
    "SnapshotReport",
    "static_betweenness",
    "rank",
    "bfs_distances",
    "pagerank",
    "snapshot_report",
    "to_networkx",
]


@dataclass(frozen=True)
class CentralityVector:
    scores: Mapping[str, float]
    metric: str
    window: Window | None = None
    adjusted: bool = False

    def __getitem__(self, node: str) -> float:
        return self.scores[node]

    def __len__(self) -> int:
        return len(self.scores)

    def ranks(self) -> dict[str, int]:
        return rank(self)


def rank(v: CentralityVector | Mapping[str, float]) -> dict[str, int]:
    """Rank 1 for the highest score; equal scores are ordered by node id."""
    scores = v.scores if isinstance(v, CentralityVector) else v
    order = sorted(scores, key=lambda node: (-scores[node], node))
    return {node: i for i, node in enumerate(order, start=1)}


def to_networkx(f: Footprint) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(f.nodes)
    G.add_edges_from(sorted(f.edges))
    return G


def bfs_distances(f: Footprint, source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in f.adjacency[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def static_betweenness(f: Footprint, adjusted: bool = False, window: Window | None = None) -> CentralityVector:
    """Shortest-path betweenness by Brandes dependency accumulation.

    Each unordered pair is visited once from each end, so the accumulated
    dependencies are halved. ``adjusted`` scales every score by the share of
    nodes in its connected component.
    """
    score = dict.fromkeys(f.nodes, 0.0)
    for s in f.nodes:
        stack = []
        preds: dict[str, list[str]] = {s: []}
        sigma = {s: 1}
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in f.adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    sigma[w] = 0
                    preds[w] = []
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = dict.fromkeys(stack, 0.0)
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                score[w] += delta[w]
    for v in score:
        score[v] /= 2.0
        if adjusted:
            score[v] *= f.adjustment(v)
    return CentralityVector(score, "static-betweenness", window, adjusted)


def pagerank(f: Footprint, damping: float = 0.85, tol: float = 1e-12, max_iter: int = 10_000) -> dict[str, float]:
    """Power-iteration PageRank normalized to sum 1.

    Dangling nodes spread their mass uniformly. Stops when the L1 change
    between iterations drops below ``tol``.
    """
    n = f.n
    if n == 0:
        return {}
    rank_ = dict.fromkeys(f.nodes, 1.0 / n)
    for _ in range(max_iter):
        dangling = sum(rank_[v] for v in f.nodes if not f.adjacency[v])
        base = (1.0 - damping) / n + damping * dangling / n
        nxt = dict.fromkeys(f.nodes, base)
        for v in f.nodes:
            nbrs = f.adjacency[v]
            if nbrs:
                share = damping * rank_[v] / len(nbrs)
                for w in nbrs:
                    nxt[w] += share
        err = sum(abs(nxt[v] - rank_[v]) for v in f.nodes)
        rank_ = nxt
        if err < tol:
            break
    total = sum(rank_.values())
    return {v: x / total for v, x in rank_.items()}


def _eigenvector(f: Footprint, tol: float) -> dict[str, float]:
    nodes = f.largest_component()
    if len(nodes) < 2:
        return dict.fromkeys(f.nodes, 0.0)
    G = to_networkx(f).subgraph(nodes)
    # networkx iterates on A + I, so bipartite components still converge
    ev = nx.eigenvector_centrality(G, max_iter=100_000, tol=tol)
    top = max(ev.values())
    out = dict.fromkeys(f.nodes, 0.0)
    out.update({v: x / top for v, x in ev.items()})
    return out


@dataclass(frozen=True)
class SnapshotReport:
    n: int = 0
    m: int = 0
    avg_degree: float = 0.0
    diameter: int = 0
    density: float = 0.0
    community_count: int = 0
    modularity: float = 0.0
    avg_clustering: float = 0.0
    avg_path_length: float = 0.0
    avg_normalized_closeness: float = 0.0
    avg_eccentricity: float = 0.0
    avg_betweenness: float = 0.0
    avg_normalized_betweenness: float = 0.0
    avg_pagerank: float = 0.0
    avg_eigenvector: float = 0.0
    label: str = field(default="", compare=False)

    def as_dict(self) -> dict:
        return asdict(self)


# Row order and titles of the yearly statistics table.
REPORT_ROWS = [
    ("n", "#Nodes"),
    ("m", "#Edges"),
    ("avg_degree", "Ave. Degree"),
    ("diameter", "Diameter"),
    ("density", "Density"),
    ("community_count", "#Communities"),
    ("modularity", "Modularity"),
    ("avg_clustering", "Ave. Clustering Coefficient"),
    ("avg_path_length", "Ave. Path Length"),
    ("avg_normalized_closeness", "Ave. Normalized Closeness"),
    ("avg_eccentricity", "Ave. Eccentricity"),
    ("avg_betweenness", "Ave. Betweenness"),
    ("avg_normalized_betweenness", "Ave. Normalized Betweenness"),
    ("avg_pagerank", "Ave. Page Rank"),
    ("avg_eigenvector", "Ave. Eigenvector"),
]


def snapshot_report(
    f: Footprint,
    *,
    damping: float = 0.85,
    tol: float = 1e-12,
    seed: int = 0,
    label: str = "",
) -> SnapshotReport:
    """Classical whole-graph statistics for one footprint.

    Path-based averages skip disconnected pairs; diameter is taken over the
    largest component; closeness and eccentricity are measured inside each
    node's own component (isolated nodes score 0).
    """
    from .community import detect_communities

    n, m = f.n, f.m
    if n < 2:
        return SnapshotReport(n=n, m=m, avg_pagerank=1.0 if n == 1 else 0.0,
                              community_count=n, label=label)

    dists = {v: bfs_distances(f, v) for v in f.nodes}
    ecc = {v: max(d.values()) for v, d in dists.items()}
    largest = set(f.largest_component())
    diameter = max(ecc[v] for v in largest)

    pair_total = 0
    pair_count = 0
    closeness = []
    for v in f.nodes:
        far = sum(dists[v].values())
        reach = len(dists[v]) - 1
        pair_total += far
        pair_count += reach
        closeness.append(reach / far if far else 0.0)

    bc = static_betweenness(f)
    norm = (n - 1) * (n - 2) / 2
    partition = detect_communities(f, seed=seed)
    pr = pagerank(f, damping=damping, tol=tol)

    return SnapshotReport(
        n=n,
        m=m,
        avg_degree=2 * m / n,
        diameter=diameter,
        density=2 * m / (n * (n - 1)),
        community_count=partition.count,
        modularity=partition.modularity,
        avg_clustering=nx.average_clustering(to_networkx(f)),
        avg_path_length=pair_total / pair_count if pair_count else 0.0,
        avg_normalized_closeness=sum(closeness) / n,
        avg_eccentricity=sum(ecc.values()) / n,
        avg_betweenness=sum(bc.scores.values()) / n,
        avg_normalized_betweenness=(sum(bc.scores.values()) / norm / n) if norm else 0.0,
        avg_pagerank=sum(pr.values()) / n,
        avg_eigenvector=sum(_eigenvector(f, tol).values()) / n,
        label=label,
    )
