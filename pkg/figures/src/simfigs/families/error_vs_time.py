"""Error fraction against time since programming, one line per strategy.

The time axis is symlog so the fresh read at t = 0 keeps its place next
to the decade-spaced later reads.
"""

from __future__ import annotations

import numpy as np
from matplotlib import pyplot as plt

from ..tables import floats, group_indices, take


def render(kind: str, table: dict[str, list[str]]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    for (strategy,), idx in group_indices(table, "strategy"):
        t = floats(take(table["t_read"], idx))
        fraction = floats(take(table["fraction"], idx))
        order = np.argsort(t)
        ax.plot(t[order], fraction[order], marker="o", label=strategy)
    positive = floats(table["t_read"])
    positive = positive[positive > 0.0]
    if positive.size:
        ax.set_xscale("symlog", linthresh=float(positive.min()))
    ax.set_xlabel("time since programming (s)")
    ax.set_ylabel("error fraction")
    ax.set_ylim(bottom=0.0)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig
