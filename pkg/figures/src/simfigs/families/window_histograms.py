"""Programmed-conductance histograms per strategy and read time.

One panel per (strategy, settle time) condition; within a panel the
read times overlay, so drift between the fresh read and the aged read
shows up as the histogram walking away from its original position.
"""

from __future__ import annotations

import numpy as np
from matplotlib import pyplot as plt

from ..tables import floats, group_indices, take


def render(kind: str, table: dict[str, list[str]]) -> plt.Figure:
    conditions = group_indices(table, "strategy", "settle_time")
    bins = np.histogram_bin_edges(floats(table["g"]), bins=60)
    fig, axes = plt.subplots(len(conditions), 1, sharex=True,
                             figsize=(7.0, 2.6 * len(conditions)),
                             squeeze=False)
    for ax, ((strategy, settle_time), idx) in zip(axes[:, 0], conditions):
        g = take(table["g"], idx)
        for (t_read,), sub in group_indices(
                {"t_read": take(table["t_read"], idx)}, "t_read"):
            ax.hist(floats(take(g, sub)), bins=bins, alpha=0.55,
                    label=f"read at {float(t_read):g} s")
        title = strategy
        if float(settle_time) > 0.0:
            title += f", settle {float(settle_time):g} s"
        ax.set_title(title, fontsize="medium")
        ax.set_ylabel("cells")
        ax.legend(fontsize="small")
    axes[-1, 0].set_xlabel("conductance (µS)")
    fig.tight_layout()
    return fig
