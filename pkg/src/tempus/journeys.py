"""Journeys, earliest arrivals and foremost increasing route counting.

A route is *increasing* when the birth ticks of its edges never decrease
along it. For a source ``u`` the foremost increasing arrival at ``w`` is the
smallest final-edge birth over all increasing routes ``u -> w``; the routes
achieving it are the foremost increasing routes counted here. Routes are
simple paths: with tick-granular births a same-tick cycle could otherwise be
repeated forever.

Every function in this module assumes zero latency, which is what the growing
graphs built by :mod:`tempus.tvg` carry unless told otherwise.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .tvg import GraphError, TemporalEdge, TimeVaryingGraph, presence

__all__ = [
    "UNREACHABLE",
    "Journey",
    "Route",
    "PairCounts",
    "RouteListing",
    "RouteLimitExceeded",
    "SearchBudgetExceeded",
    "is_valid_journey",
    "route_births",
    "is_increasing_route",
    "earliest_increasing_arrival",
    "earliest_arrival",
    "count_foremost_routes",
    "enumerate_foremost_routes",
    "foremost_counts_from",
]

UNREACHABLE = None

Route = tuple[str, ...]

REFERENCES = ("increasing", "all")


class RouteLimitExceeded(RuntimeError):
    """A pair has more foremost routes than the configured ceiling."""

    def __init__(self, source: str, target: str | None, ceiling: int, what: str = "foremost routes"):
        to = f" to {target!r}" if target is not None else ""
        super().__init__(f"more than {ceiling} {what} from {source!r}{to}")
        self.source = source
        self.target = target
        self.ceiling = ceiling


class SearchBudgetExceeded(RouteLimitExceeded):
    """Route enumeration expanded more prefixes than allowed."""

    def __init__(self, source: str, budget: int):
        super().__init__(source, None, budget, what="route prefixes explored")


@dataclass(frozen=True)
class Journey:
    """Sequence of ``(edge, time)`` crossings."""

    steps: tuple[tuple[TemporalEdge, int], ...]

    @property
    def departure(self) -> int:
        return self.steps[0][1]

    @property
    def arrival(self) -> int:
        edge, t = self.steps[-1]
        return t + edge.latency


class PairCounts(NamedTuple):
    total: int
    per_intermediate: dict[str, int]
    arrival: int | None


class RouteListing(NamedTuple):
    routes: list[Route]
    truncated: bool


def is_valid_journey(g: TimeVaryingGraph, j: Journey) -> bool:
    if not j.steps:
        return False
    positions: set[str] | None = None
    for i, (edge, t) in enumerate(j.steps):
        stored = g.edge(edge.u, edge.v)
        if stored is None or stored.birth != edge.birth or stored.latency != edge.latency:
            return False
        if t not in g.lifetime or not presence(stored, t):
            return False
        if i:
            prev_edge, prev_t = j.steps[i - 1]
            if t < prev_t + prev_edge.latency:
                return False
        if positions is None:
            positions = set(stored.key)
        else:
            # undirected walk: continue from any endpoint the previous step could have reached
            positions = {stored.other(p) for p in positions & set(stored.key)}
            if not positions:
                return False
    return True


def route_births(g: TimeVaryingGraph, route: Sequence[str]) -> list[int]:
    births = []
    for a, b in zip(route, route[1:]):
        e = g.edge(a, b)
        if e is None:
            raise GraphError(f"{a!r} and {b!r} are not adjacent")
        births.append(e.birth)
    return births


def is_increasing_route(g: TimeVaryingGraph, route: Sequence[str]) -> bool:
    births = route_births(g, route)
    return all(x <= y for x, y in zip(births, births[1:]))


def _require_zero_latency(g: TimeVaryingGraph) -> None:
    if any(e.latency for e in g.edges):
        raise GraphError("foremost route computations require zero-latency edges")


def _birth_groups(g: TimeVaryingGraph, reverse: bool = False):
    edges = sorted(g.edges, key=lambda e: (e.birth, e.u, e.v), reverse=reverse)
    return itertools.groupby(edges, key=lambda e: e.birth)


def earliest_increasing_arrival(g: TimeVaryingGraph, source: str) -> dict[str, int | None]:
    """Foremost arrival over increasing routes from ``source``.

    Edges are relaxed in birth order. Within one birth tick the edges are
    flooded from every node already labeled, since a route may chain any
    number of same-tick edges. A node keeps the first label it receives,
    which is the minimum because ticks are visited in ascending order.
    """
    if source not in g.nodes:
        raise KeyError(source)
    _require_zero_latency(g)
    label: dict[str, int | None] = dict.fromkeys(g.nodes, UNREACHABLE)
    label[source] = g.lifetime.start
    for birth, group in _birth_groups(g):
        adj: dict[str, list[str]] = defaultdict(list)
        for e in group:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        stack = [x for x in adj if label[x] is not UNREACHABLE]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if label[y] is UNREACHABLE:
                    label[y] = birth
                    stack.append(y)
    return label


def earliest_arrival(g: TimeVaryingGraph, source: str) -> dict[str, int | None]:
    """Foremost arrival over all journeys, increasing or not.

    With persistent edges a journey can wait at a node, so ``w`` is reached
    at the first tick where the cumulative graph connects it to ``source``.
    """
    if source not in g.nodes:
        raise KeyError(source)
    _require_zero_latency(g)
    parent = {v: v for v in g.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    label: dict[str, int | None] = dict.fromkeys(g.nodes, UNREACHABLE)
    label[source] = g.lifetime.start
    for birth, group in _birth_groups(g):
        for e in group:
            ru, rv = find(e.u), find(e.v)
            if ru != rv:
                parent[ru] = rv
        root = find(source)
        for v in g.nodes:
            if label[v] is UNREACHABLE and find(v) == root:
                label[v] = birth
    return label


def _arrivals(g: TimeVaryingGraph, source: str, reference: str) -> dict[str, int | None]:
    if reference == "increasing":
        return earliest_increasing_arrival(g, source)
    if reference == "all":
        return earliest_arrival(g, source)
    raise ValueError(f"reference must be one of {REFERENCES}, got {reference!r}")


def _latest_start(g: TimeVaryingGraph, target: str, horizon: int) -> dict[str, int | None]:
    """For each node, the latest birth an increasing route to ``target`` can
    start with, using only edges born no later than ``horizon``. Walk-based,
    so it over-approximates what simple routes can do."""
    latest: dict[str, int | None] = dict.fromkeys(g.nodes, UNREACHABLE)
    latest[target] = horizon
    for birth, group in _birth_groups(g, reverse=True):
        if birth > horizon:
            continue
        adj: dict[str, list[str]] = defaultdict(list)
        for e in group:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        stack = [x for x in adj if latest[x] is not UNREACHABLE and latest[x] >= birth]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if latest[y] is UNREACHABLE:
                    latest[y] = birth
                    stack.append(y)
    return latest


def count_foremost_routes(
    g: TimeVaryingGraph,
    u: str,
    w: str,
    arrivals: dict[str, int | None] | None = None,
    *,
    reference: str = "increasing",
    ceiling: int | None = None,
    budget: int | None = None,
) -> PairCounts:
    """Count the foremost increasing simple routes ``u -> w``.

    ``per_intermediate[v]`` is the number of those routes with ``v`` strictly
    inside. ``reference`` selects what "foremost" is measured against: the
    best increasing route (default) or the best journey of any shape, in
    which case the count is zero whenever no increasing route matches it.
    """
    if u == w:
        raise ValueError("source and target must differ")
    if arrivals is None:
        arrivals = _arrivals(g, u, reference)
    target_arrival = arrivals[w]
    if target_arrival is UNREACHABLE:
        return PairCounts(0, {}, UNREACHABLE)

    latest = _latest_start(g, w, target_arrival)
    adjacency = g.adjacency
    total = 0
    expanded = 0
    inter: dict[str, int] = defaultdict(int)
    path = [u]
    on_path = {u}

    def dfs(z: str, current: int) -> None:
        nonlocal total, expanded
        for birth, y, _ in adjacency[z]:
            if birth < current:
                continue
            if birth > target_arrival:
                break
            if y in on_path:
                continue
            if y == w:
                if birth == target_arrival:
                    total += 1
                    if ceiling is not None and total > ceiling:
                        raise RouteLimitExceeded(u, w, ceiling)
                    for v in path[1:]:
                        inter[v] += 1
                continue
            reach = latest[y]
            if reach is UNREACHABLE or reach < birth:
                continue
            expanded += 1
            if budget is not None and expanded > budget:
                raise SearchBudgetExceeded(u, budget)
            path.append(y)
            on_path.add(y)
            dfs(y, birth)
            on_path.discard(y)
            path.pop()

    dfs(u, g.lifetime.start)
    return PairCounts(total, dict(sorted(inter.items())), target_arrival)


def foremost_counts_from(
    g: TimeVaryingGraph,
    source: str,
    arrivals: dict[str, int | None] | None = None,
    *,
    reference: str = "increasing",
    ceiling: int | None = None,
    budget: int | None = None,
    targets: set[str] | None = None,
) -> dict[str, PairCounts]:
    """Foremost route counts from ``source`` to every reachable target at once.

    One depth-first pass enumerates the increasing simple routes leaving
    ``source``; a route ending at ``x`` with final birth equal to the foremost
    arrival of ``x`` is credited to ``x``. Restricting ``targets`` prunes the
    search to what those targets need. ``budget`` caps the number of route
    prefixes explored before :class:`SearchBudgetExceeded` is raised.
    """
    if arrivals is None:
        arrivals = _arrivals(g, source, reference)
    wanted = {x for x, a in arrivals.items() if a is not UNREACHABLE and x != source}
    if targets is not None:
        wanted &= set(targets)
    if not wanted:
        return {}
    horizon = max(arrivals[x] for x in wanted)

    # latest[y]: latest first-birth of an increasing walk from y that can still
    # finish foremost at some wanted target; prunes dead prefixes
    latest: dict[str, int | None] = dict.fromkeys(g.nodes, UNREACHABLE)
    for x in wanted:
        latest[x] = arrivals[x]
    for birth, group in _birth_groups(g, reverse=True):
        if birth > horizon:
            continue
        adj: dict[str, list[str]] = defaultdict(list)
        for e in group:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        stack = [x for x in adj if latest[x] is not UNREACHABLE and latest[x] >= birth]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if latest[y] is UNREACHABLE or latest[y] < birth:
                    latest[y] = birth
                    stack.append(y)

    adjacency = g.adjacency
    totals: dict[str, int] = defaultdict(int)
    inter: dict[str, dict[str, int]] = defaultdict(lambda: defaultdict(int))
    path = [source]
    on_path = {source}
    expanded = 0

    def dfs(z: str, current: int) -> None:
        nonlocal expanded
        for birth, y, _ in adjacency[z]:
            if birth < current:
                continue
            if birth > horizon:
                break
            if y in on_path:
                continue
            reach = latest[y]
            if reach is UNREACHABLE or reach < birth:
                continue
            if y in wanted and birth == arrivals[y]:
                totals[y] += 1
                if ceiling is not None and totals[y] > ceiling:
                    raise RouteLimitExceeded(source, y, ceiling)
                credit = inter[y]
                for v in path[1:]:
                    credit[v] += 1
            expanded += 1
            if budget is not None and expanded > budget:
                raise SearchBudgetExceeded(source, budget)
            path.append(y)
            on_path.add(y)
            dfs(y, birth)
            on_path.discard(y)
            path.pop()

    dfs(source, g.lifetime.start)
    return {
        x: PairCounts(totals[x], dict(sorted(inter[x].items())), arrivals[x])
        for x in sorted(totals)
    }


def enumerate_foremost_routes(
    g: TimeVaryingGraph,
    u: str,
    w: str,
    limit: int,
    *,
    reference: str = "increasing",
) -> RouteListing:
    """List foremost increasing routes ``u -> w``, shortest first then by id
    sequence, cut at ``limit``."""
    if limit <= 0:
        raise ValueError("limit must be positive")
    if u == w:
        raise ValueError("source and target must differ")
    target_arrival = _arrivals(g, u, reference)[w]
    if target_arrival is UNREACHABLE:
        return RouteListing([], False)

    routes: list[Route] = []
    path = [u]

    def dfs(z: str, current: int) -> None:
        for birth, y, _ in g.adjacency[z]:
            if birth < current or birth > target_arrival or y in path:
                continue
            if y == w:
                if birth == target_arrival:
                    routes.append(tuple(path) + (w,))
                continue
            path.append(y)
            dfs(y, birth)
            path.pop()

    dfs(u, g.lifetime.start)
    routes.sort(key=lambda r: (len(r), r))
    return RouteListing(routes[:limit], len(routes) > limit)
