"""One rendering module per figure family.

A family is a chart layout; several table kinds can share one (the two
error-versus-time tables, the two adder tables, the two grouped-bar
sweeps).  Every module exposes ``render(kind, table) -> Figure`` taking
the column-major table from :func:`simfigs.tables.load_columns`.

The Agg backend is selected here, before pyplot is imported anywhere in
the package, so rendering behaves the same headless as interactively.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

from . import current_distributions  # noqa: E402
from . import error_vs_time  # noqa: E402
from . import iteration_histogram  # noqa: E402
from . import reference_lines  # noqa: E402
from . import success_bars  # noqa: E402
from . import sum_confusion  # noqa: E402
from . import window_histograms  # noqa: E402

FAMILY_BY_KIND = {
    "relaxation": window_histograms,
    "bec_iterations": iteration_histogram,
    "bec_time": error_vs_time,
    "retention": error_vs_time,
    "scouting_success": success_bars,
    "endurance": success_bars,
    "current_histogram": current_distributions,
    "adder": sum_confusion,
    "adder3": sum_confusion,
    "calibrate": reference_lines,
}
