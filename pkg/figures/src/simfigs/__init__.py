"""Figure rendering for the simulator's CSV result tables.

This package is strictly downstream of the CSV files: it never runs a
simulation and never imports the simulator.  Each table kind has a
pinned header; files that do not match are rejected with a column-level
diff before any drawing happens.
"""

from .tables import SCHEMAS, SchemaMismatch, TableError, load_columns

__all__ = ["SCHEMAS", "SchemaMismatch", "TableError", "load_columns"]
