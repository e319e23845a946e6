"""Distribution of program-and-verify iteration counts per strategy."""

from __future__ import annotations

import numpy as np
from matplotlib import pyplot as plt

from ..tables import floats, group_indices, take


def render(kind: str, table: dict[str, list[str]]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    iterations = floats(table["iterations"])
    bins = np.arange(iterations.min(), iterations.max() + 2) - 0.5
    for (strategy,), idx in group_indices(table, "strategy"):
        converged = floats(take(table["converged"], idx))
        ax.hist(floats(take(table["iterations"], idx)), bins=bins,
                histtype="step", linewidth=1.6,
                label=f"{strategy} ({converged.mean():.1%} converged)")
    ax.set_xlabel("verify iterations until acceptance")
    ax.set_ylabel("cells")
    ax.legend()
    fig.tight_layout()
    return fig
