"""True sum against decoded sum for the multilevel adder tables.

One row-normalised confusion matrix per (strategy, read time)
condition; a perfect decode is a solid diagonal, drift shows up as mass
sliding into the adjacent off-diagonals.
"""

from __future__ import annotations

import numpy as np
from matplotlib import pyplot as plt

from ..tables import group_indices


def counts_matrix(table: dict[str, list[str]],
                  indices: list[int]) -> np.ndarray:
    """Trial counts indexed [true_sum, decoded_sum] over the given rows."""
    true = [int(table["true_sum"][i]) for i in indices]
    decoded = [int(table["decoded_sum"][i]) for i in indices]
    size = max(max(true), max(decoded)) + 1
    counts = np.zeros((size, size), dtype=np.int64)
    for t, d in zip(true, decoded):
        counts[t, d] += 1
    return counts


def render(kind: str, table: dict[str, list[str]]) -> plt.Figure:
    conditions = group_indices(table, "strategy", "t_read")
    fig, axes = plt.subplots(1, len(conditions),
                             figsize=(0.8 + 4.2 * len(conditions), 4.2),
                             squeeze=False, layout="constrained")
    image = None
    for ax, ((strategy, t_read), idx) in zip(axes[0], conditions):
        counts = counts_matrix(table, idx)
        share = counts / np.maximum(counts.sum(axis=1, keepdims=True), 1)
        image = ax.imshow(share, origin="lower", cmap="viridis",
                          vmin=0.0, vmax=1.0)
        ax.set_title(f"{strategy}, read at {float(t_read):g} s",
                     fontsize="medium")
        ax.set_xlabel("decoded sum")
        ax.set_ylabel("true sum")
    fig.colorbar(image, ax=list(axes[0]), label="share of trials",
                 fraction=0.046)
    return fig
