"""CSV-driven figure renderer for catlab experiment artifacts."""

__version__ = "0.1.0"

from .render import FigureSpec, build_figure, checksum_of_columns, render
from .schemas import SchemaError
