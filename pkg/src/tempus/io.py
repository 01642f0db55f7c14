"""CSV ingestion/serialization and the synthetic knowledge-network generator."""

from __future__ import annotations

import csv
import random
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .tvg import (
    ACTOR_LETTERS,
    ActorType,
    GraphError,
    GraphWarning,
    Lifetime,
    TemporalEdge,
    TemporalNode,
    TimeVaryingGraph,
    build_graph,
    parse_actor_name,
)

__all__ = [
    "LoadError",
    "GeneratorConfig",
    "load_graph",
    "save_graph",
    "generate_synthetic",
    "format_number",
]

NODE_HEADER = ["id", "type", "birth"]
EDGE_HEADER = ["src", "dst", "birth"]


class LoadError(GraphError):
    pass


def format_number(x: float) -> str:
    """Fixed 12-significant-digit rendering shared by every report."""
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def _parse_type(text: str) -> tuple[ActorType, str] | None:
    head, _, subtype = text.partition(":")
    try:
        return ActorType(head.strip().upper()), subtype.strip()
    except ValueError:
        return None


def _rows(path: Path, header: list[str]):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        first = next(reader, None)
        if first is None or [c.strip().lower() for c in first[: len(header)]] != header:
            raise LoadError(f"{path}:1: expected header {','.join(header)}")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < len(header):
                row = row + [""] * (len(header) - len(row))
            yield lineno, [c.strip() for c in row]


def _birth(text: str, where: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise LoadError(f"{where}: birth {text!r} is not an integer") from None


def load_graph(nodes_path: str | Path | None, edges_path: str | Path,
               lifetime: Lifetime | None = None) -> TimeVaryingGraph:
    """Read ``id,type,birth`` node rows and ``src,dst,birth`` edge rows.

    A blank type or birth is filled from an ``Xi(yy)`` style id when it has
    one. The node file is optional; edges then create their endpoints.
    """
    nodes: list[TemporalNode] = []
    if nodes_path is not None:
        for lineno, (nid, type_text, birth_text) in _rows(Path(nodes_path), NODE_HEADER):
            where = f"{nodes_path}:{lineno}"
            if not nid:
                raise LoadError(f"{where}: empty node id")
            derived = parse_actor_name(nid)
            if type_text:
                parsed = _parse_type(type_text)
                if parsed is None:
                    warnings.warn(f"{where}: unknown actor type {type_text!r}", GraphWarning, stacklevel=2)
                    parsed = (ActorType.UNKNOWN, type_text)
            elif derived is not None:
                parsed = derived[:2]
            else:
                parsed = (ActorType.UNKNOWN, "")
            if birth_text:
                birth = _birth(birth_text, where)
            elif derived is not None:
                birth = derived[2]
            else:
                raise LoadError(f"{where}: missing birth for {nid!r}")
            nodes.append(TemporalNode(nid, parsed[0], birth, parsed[1]))

    edges: list[TemporalEdge] = []
    for lineno, (src, dst, birth_text) in _rows(Path(edges_path), EDGE_HEADER):
        where = f"{edges_path}:{lineno}"
        if not src or not dst:
            raise LoadError(f"{where}: empty endpoint")
        try:
            edges.append(TemporalEdge(src, dst, _birth(birth_text, where)))
        except LoadError:
            raise
        except GraphError as exc:
            raise LoadError(f"{where}: {exc}") from None
    try:
        return build_graph(nodes, edges, lifetime)
    except LoadError:
        raise
    except GraphError as exc:
        raise LoadError(f"{edges_path}: {exc}") from None


def save_graph(g: TimeVaryingGraph, nodes_path: str | Path, edges_path: str | Path) -> None:
    with open(nodes_path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(NODE_HEADER)
        for n in g.nodes.values():
            kind = n.actor_type.value + (f":{n.subtype}" if n.subtype else "")
            out.writerow([n.id, kind, n.birth])
    with open(edges_path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(EDGE_HEADER)
        for e in g.edges:
            out.writerow([e.u, e.v, e.birth])


# Cumulative actor counts per year, 2005-2011. OA is held at 9 in the last
# year: the per-type rows only add up to the published totals that way.
KNOWLEDGE_NET_COUNTS: dict[ActorType, tuple[int, ...]] = {
    ActorType.HIA: (3, 22, 27, 46, 51, 76, 94),
    ActorType.NHIA: (0, 3, 6, 9, 9, 9, 15),
    ActorType.NHMA: (7, 25, 43, 87, 132, 194, 248),
    ActorType.OA: (0, 5, 5, 9, 9, 9, 9),
}
# Cumulative edges: 14 and 750 are published; the middle years follow the
# reported edges-per-node ratios.
KNOWLEDGE_NET_EDGES = (14, 73, 132, 278, 398, 582, 750)

NHMA_MIX = {"A": 0.30, "C": 0.25, "P": 0.10, "S": 0.10, "J": 0.10, "I": 0.075, "O": 0.075}
TYPE_LETTER = {ActorType.HIA: "H", ActorType.NHIA: "M", ActorType.OA: "G"}


@dataclass(frozen=True)
class GeneratorConfig:
    start_year: int = 2005
    counts: Mapping[ActorType, tuple[int, ...]] = field(default_factory=lambda: dict(KNOWLEDGE_NET_COUNTS))
    edge_totals: tuple[int, ...] = KNOWLEDGE_NET_EDGES
    hub_bias: float = 1.0
    peer_share: float = 0.3
    seed: int = 0

    @property
    def years(self) -> list[int]:
        return [self.start_year + i for i in range(len(self.edge_totals))]

    def node_totals(self) -> list[int]:
        return [sum(c[i] for c in self.counts.values()) for i in range(len(self.edge_totals))]


def _check(cfg: GeneratorConfig) -> None:
    span = len(cfg.edge_totals)
    for t, series in cfg.counts.items():
        if len(series) != span:
            raise ValueError(f"{t.value}: expected {span} yearly counts")
        if any(b < a for a, b in zip(series, series[1:])) or min(series) < 0:
            raise ValueError(f"{t.value}: cumulative counts must be non-negative and non-decreasing")
    if any(b < a for a, b in zip(cfg.edge_totals, cfg.edge_totals[1:])):
        raise ValueError("cumulative edge totals must be non-decreasing")
    prev_n = prev_m = 0
    for year, n, m in zip(cfg.years, cfg.node_totals(), cfg.edge_totals):
        new_n, new_m = n - prev_n, m - prev_m
        need = new_n - (1 if prev_n == 0 and new_n else 0)
        if new_m < need:
            raise ValueError(f"{year}: {new_m} new edges cannot attach {new_n} new nodes")
        # every edge of the year touches a node born that year
        room = new_n * (new_n - 1) // 2 + new_n * prev_n
        if new_m > room:
            raise ValueError(f"{year}: {new_m} new edges do not fit around {new_n} new nodes")
        prev_n, prev_m = n, m


def generate_synthetic(cfg: GeneratorConfig = GeneratorConfig()) -> TimeVaryingGraph:
    """Grow a knowledge-network-shaped graph year by year.

    The first node is a lab hub. Each new node attaches to an existing one
    picked with probability proportional to ``degree + hub_bias``. The rest
    of a year's edges also start at a node born that year, since relations
    are recorded when an actor appears: with probability ``peer_share`` the
    other end is another newcomer, otherwise a preferentially chosen node.
    """
    _check(cfg)
    rng = random.Random(cfg.seed)
    letters = list(NHMA_MIX)
    mix = list(NHMA_MIX.values())
    index: dict[str, int] = {}
    nodes: list[TemporalNode] = []
    degree: dict[str, int] = {}
    adjacent: set[tuple[str, str]] = set()
    edges: list[TemporalEdge] = []

    def name(letter: str, year: int) -> str:
        index[letter] = index.get(letter, 0) + 1
        return f"{letter}{index[letter]}({year % 100:02d})"

    def pick(pool: list[str]) -> str:
        weights = [degree[v] + cfg.hub_bias for v in pool]
        return rng.choices(pool, weights=weights)[0]

    def connect(a: str, b: str, year: int) -> None:
        key = (a, b) if a < b else (b, a)
        if a != b and key not in adjacent:
            adjacent.add(key)
            degree[a] += 1
            degree[b] += 1
            edges.append(TemporalEdge(a, b, year))

    prev = dict.fromkeys(cfg.counts, 0)
    for i, year in enumerate(cfg.years):
        fresh: list[TemporalNode] = []
        for actor_type, series in cfg.counts.items():
            for _ in range(series[i] - prev[actor_type]):
                if actor_type is ActorType.NHMA:
                    letter = "L" if "L" not in index else rng.choices(letters, weights=mix)[0]
                    subtype = ACTOR_LETTERS[letter][1]
                else:
                    letter = TYPE_LETTER.get(actor_type, "U")
                    subtype = ""
                fresh.append(TemporalNode(name(letter, year), actor_type, year, subtype))
            prev[actor_type] = series[i]
        # the hub goes first so everything else can attach to it
        fresh.sort(key=lambda n: (not n.id.startswith("L"), rng.random()))

        for n in fresh:
            pool = [x.id for x in nodes]
            nodes.append(n)
            degree[n.id] = 0
            if pool:
                connect(n.id, pick(pool), year)

        target = cfg.edge_totals[i]
        everyone = [x.id for x in nodes]
        newcomers = [x.id for x in fresh]
        attempts = 0
        while len(edges) < target:
            attempts += 1
            if attempts > 1000 * (target + 1):
                raise ValueError(f"{year}: could not place {target} edges")
            a = rng.choice(newcomers)
            b = rng.choice(newcomers) if rng.random() < cfg.peer_share else pick(everyone)
            connect(a, b, year)

    lifetime = Lifetime(cfg.years[0], cfg.years[-1])
    return build_graph(nodes, edges, lifetime)
