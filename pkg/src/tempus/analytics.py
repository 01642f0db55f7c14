"""Static versus temporal rank comparison and rapid/brook labelling."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .static import rank, static_betweenness
from .temporal import DEFAULT_ROUTE_CEILING, DEFAULT_SEARCH_BUDGET, default_birthdates, foremost_betweenness
from .tvg import Lifetime, TimeVaryingGraph, Window, footprint, restrict_window

__all__ = [
    "Flow",
    "ClassifierConfig",
    "RankRow",
    "RankComparison",
    "FlowClassification",
    "SweepReport",
    "SIGNIFICANCE_FLOOR",
    "compare_ranks",
    "classify",
    "classify_flows",
    "sweep_report",
]

SIGNIFICANCE_FLOOR = 1e-9


class Flow(str, enum.Enum):
    RAPID = "rapid"
    BROOK = "brook"
    INVISIBLE_RAPID = "invisible_rapid"
    INVISIBLE_BROOK = "invisible_brook"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class ClassifierConfig:
    top: int = 20
    low: int = 100

    def __post_init__(self):
        if not 1 <= self.top < self.low:
            raise ValueError(f"need 1 <= top < low, got top={self.top} low={self.low}")


@dataclass(frozen=True)
class RankRow:
    """One node's standing in a window.

    A rank of None means the score fell under the significance floor; for
    classification it counts as lower than any numbered rank.
    """

    node: str
    temporal_rank: int | None
    static_rank: int | None
    temporal_score: float
    static_score: float


@dataclass(frozen=True)
class RankComparison:
    window: Window
    rows: list[RankRow]
    floor: float = SIGNIFICANCE_FLOOR

    def row(self, node: str) -> RankRow | None:
        return next((r for r in self.rows if r.node == node), None)


@dataclass(frozen=True)
class FlowClassification:
    node: str
    window: Window
    label: Flow
    temporal_rank: int | None
    static_rank: int | None


def _significant_ranks(scores, floor):
    return rank({v: s for v, s in scores.items() if s >= floor})


def compare_ranks(
    g: TimeVaryingGraph,
    window: Window | None = None,
    *,
    floor: float = SIGNIFICANCE_FLOOR,
    adjusted: bool = True,
    route_ceiling: int | None = DEFAULT_ROUTE_CEILING,
    search_budget: int | None = DEFAULT_SEARCH_BUDGET,
    workers: int | None = 1,
) -> RankComparison:
    """Join temporal and static betweenness of one window.

    Only nodes with a score at or above ``floor`` are ranked, and a node is
    listed when at least one of its two scores is significant. Rows come in
    temporal-rank order, then static-rank order.
    """
    window = window or g.lifetime
    temporal = foremost_betweenness(g, window, adjusted, route_ceiling=route_ceiling,
                                    search_budget=search_budget, workers=workers).scores
    fp = footprint(restrict_window(g, window))
    static = static_betweenness(fp, adjusted, window)
    t_rank = _significant_ranks(temporal.scores, floor)
    s_rank = _significant_ranks(static.scores, floor)
    rows = [
        RankRow(v, t_rank.get(v), s_rank.get(v), temporal[v], static[v])
        for v in fp.nodes
        if v in t_rank or v in s_rank
    ]
    big = len(rows) + 1
    rows.sort(key=lambda r: (r.temporal_rank or big, r.static_rank or big, r.node))
    return RankComparison(window, rows, floor)


def classify(temporal_rank: int | None, static_rank: int | None, cfg: ClassifierConfig = ClassifierConfig()) -> Flow:
    t_top = temporal_rank is not None and temporal_rank <= cfg.top
    t_low = temporal_rank is None or temporal_rank >= cfg.low
    s_top = static_rank is not None and static_rank <= cfg.top
    s_low = static_rank is None or static_rank >= cfg.low
    if t_top and s_low:
        return Flow.INVISIBLE_RAPID
    if s_top and t_low:
        return Flow.INVISIBLE_BROOK
    if t_top:
        return Flow.RAPID
    if t_low:
        return Flow.BROOK
    return Flow.NEUTRAL


def classify_flows(rc: RankComparison, cfg: ClassifierConfig = ClassifierConfig()) -> list[FlowClassification]:
    return [
        FlowClassification(r.node, rc.window, classify(r.temporal_rank, r.static_rank, cfg),
                           r.temporal_rank, r.static_rank)
        for r in rc.rows
    ]


@dataclass
class SweepReport:
    windows: list[Window] = field(default_factory=list)
    comparisons: dict[Window, RankComparison] = field(default_factory=dict)
    classifications: dict[Window, list[FlowClassification]] = field(default_factory=dict)

    def trajectories(self) -> dict[str, list[tuple[Window, RankRow | None]]]:
        """Per node, its row in every window (None where it is not listed)."""
        nodes = sorted({r.node for rc in self.comparisons.values() for r in rc.rows})
        return {v: [(w, self.comparisons[w].row(v)) for w in self.windows] for v in nodes}

    def invisible(self) -> list[FlowClassification]:
        keep = (Flow.INVISIBLE_RAPID, Flow.INVISIBLE_BROOK)
        return [c for w in self.windows for c in self.classifications[w] if c.label in keep]


def sweep_report(
    g: TimeVaryingGraph,
    birthdates=None,
    cfg: ClassifierConfig = ClassifierConfig(),
    **kwargs,
) -> SweepReport:
    """Compare and classify every window ``[x, end]``."""
    ticks = sorted(set(birthdates)) if birthdates is not None else default_birthdates(g)
    report = SweepReport()
    for x in ticks:
        w = Lifetime(x, g.lifetime.end)
        rc = compare_ranks(g, w, **kwargs)
        report.windows.append(w)
        report.comparisons[w] = rc
        report.classifications[w] = classify_flows(rc, cfg)
    return report
