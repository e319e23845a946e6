"""Calibrated reference currents against operand count.

One panel per strategy; the band between the low and high reference is
shaded since that is where the middle logic region lives.
"""

from __future__ import annotations

import numpy as np
from matplotlib import pyplot as plt

from ..tables import floats, group_indices, take


def render(kind: str, table: dict[str, list[str]]) -> plt.Figure:
    strategies = [key for (key,), _ in group_indices(table, "strategy")]
    fig, axes = plt.subplots(1, len(strategies), sharey=True,
                             figsize=(1.0 + 3.6 * len(strategies), 4.0),
                             squeeze=False)
    for ax, strategy in zip(axes[0], strategies):
        series: dict[str, tuple[np.ndarray, np.ndarray]] = {}
        for (quantity, s), idx in group_indices(table, "quantity",
                                                "strategy"):
            if s != strategy:
                continue
            n = floats(take(table["n"], idx))
            current = floats(take(table["current"], idx))
            order = np.argsort(n)
            series[quantity] = (n[order], current[order])
        for quantity in sorted(series):
            n, current = series[quantity]
            ax.plot(n, current, marker="o", label=quantity)
        if {"ref_low", "ref_high"} <= series.keys():
            n_low, low = series["ref_low"]
            n_high, high = series["ref_high"]
            if np.array_equal(n_low, n_high):
                ax.fill_between(n_low, low, high, alpha=0.15)
        ax.set_title(strategy, fontsize="medium")
        ax.set_xlabel("operand count")
        ax.legend(fontsize="small")
    axes[0, 0].set_ylabel("reference current (µA)")
    fig.tight_layout()
    return fig
