"""Summed read-current distributions, split by active-operand count.

One panel per (strategy, n, read time) condition; overlaying the per-k
histograms shows how much daylight the reference currents have to work
with between neighbouring counts.
"""

from __future__ import annotations

import numpy as np
from matplotlib import pyplot as plt

from ..tables import floats, group_indices, take


def render(kind: str, table: dict[str, list[str]]) -> plt.Figure:
    conditions = group_indices(table, "strategy", "n", "t_read")
    fig, axes = plt.subplots(len(conditions), 1,
                             figsize=(7.0, 2.6 * len(conditions)),
                             squeeze=False)
    for ax, ((strategy, n, t_read), idx) in zip(axes[:, 0], conditions):
        currents = take(table["i_total"], idx)
        bins = np.histogram_bin_edges(floats(currents), bins=80)
        for (k,), sub in group_indices({"k": take(table["k"], idx)}, "k"):
            ax.hist(floats(take(currents, sub)), bins=bins, alpha=0.55,
                    label=f"k = {k}")
        ax.set_title(f"{strategy}, n = {n}, read at {float(t_read):g} s",
                     fontsize="medium")
        ax.set_ylabel("trials")
        ax.legend(fontsize="small", ncols=2)
    axes[-1, 0].set_xlabel("summed read current (µA)")
    fig.tight_layout()
    return fig
