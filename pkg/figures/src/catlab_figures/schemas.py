"""CSV schemas consumed by the renderer.

These mirror the producing side's documented column lists; the renderer
fails fast on any mismatch, naming the offending column, and never
recomputes science: it plots exactly the numbers the CSV carries.
"""
from __future__ import annotations

import csv
from pathlib import Path


class SchemaError(ValueError):
    def __init__(self, path: Path, column: str, problem: str):
        super().__init__(f"{path}: column {column!r} {problem}")
        self.column = column


# per-file schemas: column -> parser (None = keep as string)
FIG2 = {"distribution": None, "d_C": int, "p_succ": float, "ci95": float,
        "n_trials": int, "seed": int}
FIG3 = {"k": int, "fraction": float, "ci95": float, "n_pairs": int, "seed": int}
FIG4 = {"d_C": int, "q1": float, "q2": float, "q3": float, "class": None,
        "p_succ": float, "ci95": float}
FIG4_CDF = {"d_C": int, "p_succ": float, "cum_fraction": float}
BOUNDARY = {"set": None, "q1": float, "q2": float, "q3": float}
FIG5 = {"d_C": int, "p1": float, "p2": float, "p3": float, "f": float,
        "sampled": int, "in_S": int, "in_T": int, "in_D": int,
        "above_threshold": int}
FIG5_CDF = {"d_C": int, "f": float, "cum_fraction": float}
FIG6 = {"n_qubits": int, "r": float, "p1": float, "p2": float, "p3": float,
        "f": float, "sampled": int, "in_S": int, "in_T": int, "in_D": int,
        "above_threshold": int}
FIG6_CDF = {"n_qubits": int, "r": float, "f": float, "cum_fraction": float}


def read_table(path: str | Path, schema: dict) -> dict[str, list]:
    """Parse a CSV against a schema; raises SchemaError on any mismatch."""
    path = Path(path)
    with path.open(newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in schema:
            if column not in header:
                raise SchemaError(path, column, "is missing")
        table: dict[str, list] = {c: [] for c in schema}
        for row in reader:
            for column, parse in schema.items():
                raw = row[column]
                if parse is None:
                    table[column].append(raw)
                    continue
                try:
                    table[column].append(parse(raw))
                except (TypeError, ValueError) as exc:
                    raise SchemaError(path, column,
                                      f"has a non-{parse.__name__} value {raw!r}") from exc
    return table
