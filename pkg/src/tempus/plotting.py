"""Optional figures for sweep and classify reports.

Figures are written only when asked for; every tabular output stands on its
own without them.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .analytics import RankComparison, SweepReport  # noqa: E402

# no timestamp or version in the PNG so reruns give identical files
_PNG_META = {"Software": None}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=100, metadata=_PNG_META)
    plt.close(fig)
    return path


def rank_trajectories(report: SweepReport, path: str | Path, nodes: list[str] | None = None,
                      top: int = 8) -> Path:
    """Temporal (solid) and static (dashed) rank of a few nodes over the windows.

    Without ``nodes`` the ``top`` best temporal ranks of the first window are
    drawn. Windows where a node is unranked leave a gap.
    """
    labels = [w.label for w in report.windows]
    if nodes is None and report.windows:
        first = report.comparisons[report.windows[0]]
        nodes = [r.node for r in first.rows if r.temporal_rank is not None][:top]
    traj = report.trajectories()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for i, v in enumerate(nodes or []):
        rows = traj.get(v, [])
        color = f"C{i % 10}"
        t = [r.temporal_rank if r else None for _, r in rows]
        s = [r.static_rank if r else None for _, r in rows]
        ax.plot(labels, [x if x is not None else float("nan") for x in t], "o-", color=color, label=v)
        ax.plot(labels, [x if x is not None else float("nan") for x in s], "s--", color=color, alpha=0.6)
    ax.invert_yaxis()
    ax.set_xlabel("window")
    ax.set_ylabel("rank (solid temporal, dashed static)")
    if nodes:
        ax.legend(fontsize="small", ncol=2)
    fig.tight_layout()
    return _save(fig, Path(path))


def rank_scatter(rc: RankComparison, path: str | Path, top: int = 20, low: int = 100) -> Path:
    """Static rank against temporal rank for one window, thresholds marked."""
    fig, ax = plt.subplots(figsize=(5, 5))
    pts = [(r.static_rank, r.temporal_rank, r.node) for r in rc.rows
           if r.static_rank is not None and r.temporal_rank is not None]
    if pts:
        ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=12)
    for x in (top, low):
        ax.axvline(x, color="grey", lw=0.8, ls=":")
        ax.axhline(x, color="grey", lw=0.8, ls=":")
    ax.set_xlabel("static rank")
    ax.set_ylabel("temporal rank")
    ax.set_title(rc.window.label)
    fig.tight_layout()
    return _save(fig, Path(path))
