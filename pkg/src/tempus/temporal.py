"""Foremost increasing betweenness over lifetime windows.

For every unordered pair ``{u, w}`` (``u`` the smaller id, journeys taken from
``u`` to ``w``) each interior node ``v`` receives the share of foremost
increasing routes that pass through it. Counts stay exact integers until the
single division per (pair, node).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .journeys import REFERENCES, foremost_counts_from
from .static import CentralityVector
from .tvg import Lifetime, TimeVaryingGraph, Window, footprint, restrict_window

__all__ = [
    "DEFAULT_ROUTE_CEILING",
    "DEFAULT_SEARCH_BUDGET",
    "TemporalBetweennessResult",
    "foremost_betweenness",
    "foremost_betweenness_sweep",
    "resolve_workers",
]

DEFAULT_ROUTE_CEILING = 10**7
# prefixes explored per source before giving up; roughly minutes of work
DEFAULT_SEARCH_BUDGET = 10**8

PairStat = tuple[int, int | None]  # (route count, arrival tick or None)


@dataclass(frozen=True)
class TemporalBetweennessResult:
    window: Window
    scores: CentralityVector
    raw: CentralityVector
    pair_stats: dict[tuple[str, str], PairStat] | None = None


def resolve_workers(workers: int | None) -> int:
    """Explicit value, else ``TEMPUS_THREADS``, else 1."""
    if workers is None:
        env = os.environ.get("TEMPUS_THREADS", "").strip()
        workers = int(env) if env else 1
    if workers < 1:
        raise ValueError("worker count must be at least 1")
    return workers


_shared: dict = {}


def _init_worker(g, options):
    _shared["args"] = (g, options)


def _source_task(source: str):
    g, options = _shared["args"]
    return _pairs_from(g, source, options)


def _pairs_from(g: TimeVaryingGraph, source: str, options: dict):
    later = {x for x in g.nodes if x > source}
    counts = foremost_counts_from(g, source, targets=later, **options)
    # unreachable pairs are listed too, with no routes and no arrival
    return [(source, w, counts[w].total, counts[w].arrival, counts[w].per_intermediate)
            if w in counts else (source, w, 0, None, {}) for w in sorted(later)]


def _pair_counts(g: TimeVaryingGraph, options: dict, workers: int):
    sources = list(g.nodes)
    if workers == 1 or len(sources) < 2:
        for s in sources:
            yield _pairs_from(g, s, options)
        return
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                             initargs=(g, options)) as pool:
        # map keeps submission order, so the reduction below is order-stable
        yield from pool.map(_source_task, sources, chunksize=max(1, len(sources) // (4 * workers)))


def foremost_betweenness(
    g: TimeVaryingGraph,
    window: Window | None = None,
    adjusted: bool = True,
    *,
    keep_pairs: bool = False,
    reference: str = "increasing",
    route_ceiling: int | None = DEFAULT_ROUTE_CEILING,
    search_budget: int | None = DEFAULT_SEARCH_BUDGET,
    workers: int | None = 1,
) -> TemporalBetweennessResult:
    """Foremost increasing betweenness of every node in ``window``.

    ``window`` defaults to the full lifetime. ``scores`` honours ``adjusted``
    (component-share scaling); ``raw`` is always unadjusted. Raises
    :class:`~tempus.journeys.RouteLimitExceeded` when a pair exceeds
    ``route_ceiling`` routes, or a source explores more than
    ``search_budget`` route prefixes.
    """
    if reference not in REFERENCES:
        raise ValueError(f"reference must be one of {REFERENCES}")
    window = window or g.lifetime
    wg = restrict_window(g, window)
    workers = resolve_workers(workers)
    raw = dict.fromkeys(wg.nodes, 0.0)
    pairs: dict[tuple[str, str], PairStat] | None = {} if keep_pairs else None
    options = {"reference": reference, "ceiling": route_ceiling, "budget": search_budget}
    for batch in _pair_counts(wg, options, workers):
        for u, w, total, arrival, inter in batch:
            if pairs is not None:
                pairs[(u, w)] = (total, arrival)
            if not total:
                continue
            for v, c in inter.items():
                raw[v] += c / total
    fp = footprint(wg)
    scaled = {v: s * fp.adjustment(v) for v, s in raw.items()} if adjusted else dict(raw)
    return TemporalBetweennessResult(
        window=window,
        scores=CentralityVector(scaled, "foremost-betweenness", window, adjusted),
        raw=CentralityVector(raw, "foremost-betweenness", window, False),
        pair_stats=pairs,
    )


def default_birthdates(g: TimeVaryingGraph) -> list[int]:
    return [t for t in g.births() if t in g.lifetime]


def foremost_betweenness_sweep(
    g: TimeVaryingGraph,
    birthdates: Iterable[int] | None = None,
    **kwargs,
) -> list[TemporalBetweennessResult]:
    """One result per window ``[x, end]``, ``x`` running over ``birthdates``
    (every distinct birth tick by default)."""
    ticks: Sequence[int] = sorted(set(birthdates)) if birthdates is not None else default_birthdates(g)
    return [foremost_betweenness(g, Lifetime(x, g.lifetime.end), **kwargs) for x in ticks]
