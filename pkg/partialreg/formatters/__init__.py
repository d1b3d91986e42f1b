from partialreg.formatters.json_report import format_as_json
from partialreg.formatters.table import render_table

__all__ = ["format_as_json", "render_table"]
