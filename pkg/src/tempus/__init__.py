"""Foremost increasing betweenness on time-varying graphs."""

from .analytics import (
    ClassifierConfig,
    Flow,
    FlowClassification,
    RankComparison,
    classify,
    classify_flows,
    compare_ranks,
    sweep_report,
)
from .community import detect_communities, detect_temporal_communities, project_temporal_neighborhood
from .io import GeneratorConfig, generate_synthetic, load_graph, save_graph
from .journeys import (
    UNREACHABLE,
    RouteLimitExceeded,
    count_foremost_routes,
    earliest_arrival,
    earliest_increasing_arrival,
    enumerate_foremost_routes,
)
from .static import CentralityVector, rank, snapshot_report, static_betweenness
from .temporal import foremost_betweenness, foremost_betweenness_sweep
from .tvg import (
    ActorType,
    Footprint,
    GraphError,
    Lifetime,
    TemporalEdge,
    TemporalNode,
    TimeVaryingGraph,
    Window,
    build_graph,
    footprint,
    presence,
    restrict_window,
    snapshot,
)

__version__ = "0.1.0"
