"""Fraction of correct gate evaluations as grouped bars.

Covers both sweep tables: the operand-count sweep groups bars by n, the
endurance sweep groups them by cycling decade.  One panel per strategy,
one bar colour per gate.
"""

from __future__ import annotations

import numpy as np
from matplotlib import pyplot as plt

from ..tables import group_indices

X_KEY = {"scouting_success": "n", "endurance": "decade"}
X_LABEL = {"scouting_success": "operand count",
           "endurance": "cycling decade (10^d set/reset cycles)"}


def success_table(kind: str, table: dict[str, list[str]]):
    """Fraction correct per (strategy, op, group) plus the axis orders.

    Returns ``(strategies, ops, groups, rates)`` where the first three
    preserve first-seen order (groups sorted numerically) and ``rates``
    maps ``(strategy, op, group)`` to a fraction in [0, 1].
    """
    x_key = X_KEY[kind]
    strategies: list[str] = []
    ops: list[str] = []
    groups: list[str] = []
    rates: dict[tuple[str, str, str], float] = {}
    for (strategy, op, x), idx in group_indices(table, "strategy", "op",
                                                x_key):
        for seen, value in ((strategies, strategy), (ops, op), (groups, x)):
            if value not in seen:
                seen.append(value)
        wins = sum(1 for i in idx if table["correct"][i] == "1")
        rates[(strategy, op, x)] = wins / len(idx)
    groups.sort(key=float)
    return strategies, ops, groups, rates


def render(kind: str, table: dict[str, list[str]]) -> plt.Figure:
    strategies, ops, groups, rates = success_table(kind, table)
    fig, axes = plt.subplots(1, len(strategies), sharey=True,
                             figsize=(1.2 + 3.4 * len(strategies), 4.0),
                             squeeze=False)
    width = 0.8 / len(ops)
    centers = np.arange(len(groups))
    for ax, strategy in zip(axes[0], strategies):
        for j, op in enumerate(ops):
            offsets = centers + (j - (len(ops) - 1) / 2) * width
            heights = [rates.get((strategy, op, x), np.nan) for x in groups]
            ax.bar(offsets, heights, width=width, label=op)
        ax.axhline(1.0, color="grey", linewidth=0.8, linestyle=":")
        ax.set_xticks(centers, groups)
        ax.set_xlabel(X_LABEL[kind])
        ax.set_title(strategy, fontsize="medium")
        ax.set_ylim(0.0, 1.05)
    axes[0, 0].set_ylabel("fraction correct")
    axes[0, -1].legend(fontsize="small")
    fig.tight_layout()
    return fig
