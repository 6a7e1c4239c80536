"""Figure rendering for benchmark CSV output."""

from .charts import KINDS, SCHEMA, ChartSpec, SchemaError, load_rows, render

__all__ = ["ChartSpec", "KINDS", "SCHEMA", "SchemaError", "load_rows", "render"]
