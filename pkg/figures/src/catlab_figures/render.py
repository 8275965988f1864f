"""Deterministic batch rendering of experiment CSVs.

Each figure kind declares which columns land on axes; exactly those columns
(in documented order) are hashed into a checksum written next to the image,
so a reviewer can verify that the plot shows the CSV's numbers and nothing
else.  Rendering is single-threaded and seedless: identical CSV bytes give
identical pixels (fixed backend, dpi and fonts).
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import schemas
from .schemas import read_table

DPI = 150

KINDS = ("fig2", "fig3", "fig4", "fig5", "fig6")

#: columns that reach the axes, per file role, in checksum order
PLOT_COLUMNS = {
    "fig2": {"main": ("distribution", "d_C", "p_succ", "ci95")},
    "fig3": {"main": ("k", "fraction", "ci95")},
    "fig4": {"main": ("d_C", "q1", "q2", "q3", "p_succ"),
             "cdf": ("d_C", "p_succ", "cum_fraction"),
             "boundary": ("set", "q1", "q2", "q3")},
    "fig5": {"main": ("d_C", "p1", "p2", "p3", "f"),
             "cdf": ("d_C", "f", "cum_fraction")},
    "fig6": {"main": ("n_qubits", "r", "p1", "p2", "p3", "f"),
             "cdf": ("n_qubits", "r", "f", "cum_fraction")},
}


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    csv_path: Path
    out_path: Path
    cdf_path: Path | None = None
    boundary_path: Path | None = None
    title: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")
        fmt = Path(self.out_path).suffix.lstrip(".").lower()
        if fmt not in ("png", "svg"):
            raise ValueError(f"unsupported image format {fmt!r}")


def checksum_of_columns(pairs) -> str:
    """sha256 over (column, values) pairs in order, via value reprs."""
    digest = hashlib.sha256()
    for column, values in pairs:
        for v in values:
            digest.update(f"{column}:{v!r};".encode())
    return digest.hexdigest()


def _tables_checksum(kind: str, tables: dict[str, dict[str, list]]) -> str:
    pairs = []
    for role in ("main", "cdf", "boundary"):
        if role in PLOT_COLUMNS[kind] and role in tables:
            table = tables[role]
            pairs.extend((c, table[c]) for c in PLOT_COLUMNS[kind][role])
    return checksum_of_columns(pairs)


def _bary_xy(q1, q2, q3):
    # barycentric axis mapping only; the plotted values stay untouched
    q2 = np.asarray(q2, dtype=float)
    q3 = np.asarray(q3, dtype=float)
    return q2 + 0.5 * q3, (np.sqrt(3.0) / 2.0) * q3


def _ternary_frame(ax):
    ax.plot([0, 1, 0.5, 0], [0, 0, np.sqrt(3) / 2, 0], color="black", lw=0.8)
    ax.set_aspect("equal")
    ax.axis("off")


def _ternary_scatter(ax, sub, cols, color_col):
    x, y = _bary_xy(sub[cols[0]], sub[cols[1]], sub[cols[2]])
    sc = ax.scatter(x, y, c=sub[color_col], s=9, vmin=0.0, vmax=1.0,
                    cmap="viridis", linewidths=0)
    _ternary_frame(ax)
    return sc


def _boundary_overlay(ax, table):
    for name, style in (("S", "--"), ("T", "-")):
        idx = [i for i, s in enumerate(table["set"]) if s == name]
        if not idx:
            continue
        pts = [(table["q1"][i], table["q2"][i], table["q3"][i]) for i in idx]
        pts.append(pts[0])
        x, y = _bary_xy([p[0] for p in pts], [p[1] for p in pts],
                        [p[2] for p in pts])
        ax.plot(x, y, style, color="crimson", lw=1.0)


def _subset(table, rows, columns):
    return {c: [table[c][i] for i in rows] for c in columns}


def _build_fig2(spec: FigureSpec):
    table = read_table(spec.csv_path, schemas.FIG2)
    names = sorted(set(table["distribution"]))
    fig, axes = plt.subplots(1, len(names), figsize=(4 * len(names), 3.2),
                             sharey=True)
    axes = np.atleast_1d(axes)
    for ax, name in zip(axes, names):
        idx = sorted((i for i, d in enumerate(table["distribution"]) if d == name),
                     key=lambda i: table["d_C"][i])
        x = [table["d_C"][i] for i in idx]
        p = np.array([table["p_succ"][i] for i in idx])
        c = np.array([table["ci95"][i] for i in idx])
        ax.plot(x, p, marker="o", ms=3)
        ax.fill_between(x, p - c, p + c, alpha=0.25)
        ax.set_xscale("log", base=2)
        ax.set_title(name)
        ax.set_xlabel("catalyst dimension")
        ax.set_ylim(-0.02, 1.02)
    axes[0].set_ylabel("success probability")
    return fig, _tables_checksum("fig2", {"main": table})


def _build_fig3(spec: FigureSpec):
    table = read_table(spec.csv_path, schemas.FIG3)
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    f = np.array(table["fraction"])
    c = np.array(table["ci95"])
    ax.plot(table["k"], f, marker="o", ms=3)
    ax.fill_between(table["k"], f - c, f + c, alpha=0.25)
    ax.set_xlabel("copies k")
    ax.set_ylabel("convertible share of activated pairs")
    return fig, _tables_checksum("fig3", {"main": table})


def _build_heat_and_cdf(spec: FigureSpec, kind, main_schema, cdf_schema,
                        panel_col, point_cols, value_col):
    if spec.cdf_path is None:
        raise ValueError(f"{kind} needs the companion cumulative CSV (--cdf)")
    table = read_table(spec.csv_path, main_schema)
    cdf = read_table(spec.cdf_path, cdf_schema)
    tables = {"main": table, "cdf": cdf}
    boundary = None
    if spec.boundary_path is not None:
        boundary = read_table(spec.boundary_path, schemas.BOUNDARY)
        tables["boundary"] = boundary
    panels = sorted(set(table[panel_col]))
    fig, axes = plt.subplots(1, len(panels) + 1,
                             figsize=(3.4 * (len(panels) + 1), 3.2))
    sc = None
    for ax, panel in zip(axes, panels):
        rows = [i for i, v in enumerate(table[panel_col]) if v == panel]
        sub = _subset(table, rows, (*point_cols, value_col))
        sc = _ternary_scatter(ax, sub, point_cols, value_col)
        if boundary is not None:
            _boundary_overlay(ax, boundary)
        ax.set_title(f"{panel_col} = {panel}")
    fig.colorbar(sc, ax=axes[:-1].tolist(), shrink=0.8)
    ax_cdf = axes[-1]
    for panel in panels:
        rows = [i for i, v in enumerate(cdf[panel_col]) if v == panel]
        ax_cdf.plot([cdf[value_col][i] for i in rows],
                    [cdf["cum_fraction"][i] for i in rows],
                    drawstyle="steps-post", label=f"{panel_col}={panel}")
    ax_cdf.set_xlabel(value_col)
    ax_cdf.set_ylabel("cumulative fraction")
    ax_cdf.legend(fontsize=7)
    return fig, _tables_checksum(kind, tables)


def _build_fig4(spec: FigureSpec):
    return _build_heat_and_cdf(spec, "fig4", schemas.FIG4, schemas.FIG4_CDF,
                               "d_C", ("q1", "q2", "q3"), "p_succ")


def _build_fig5(spec: FigureSpec):
    return _build_heat_and_cdf(spec, "fig5", schemas.FIG5, schemas.FIG5_CDF,
                               "d_C", ("p1", "p2", "p3"), "f")


def _build_fig6(spec: FigureSpec):
    if spec.cdf_path is None:
        raise ValueError("fig6 needs the companion cumulative CSV (--cdf)")
    table = read_table(spec.csv_path, schemas.FIG6)
    cdf = read_table(spec.cdf_path, schemas.FIG6_CDF)
    ns = sorted(set(table["n_qubits"]))
    rs = sorted(set(table["r"]))
    fig, axes = plt.subplots(len(rs), len(ns) + 1,
                             figsize=(3.0 * (len(ns) + 1), 2.8 * len(rs)),
                             squeeze=False)
    sc = None
    for row, r in enumerate(rs):
        for col, n in enumerate(ns):
            rows = [i for i in range(len(table["r"]))
                    if table["r"][i] == r and table["n_qubits"][i] == n]
            sub = _subset(table, rows, ("p1", "p2", "p3", "f"))
            sc = _ternary_scatter(axes[row][col], sub, ("p1", "p2", "p3"), "f")
            axes[row][col].set_title(f"n={n}, r={r}", fontsize=8)
        ax_cdf = axes[row][-1]
        for n in ns:
            rows = [i for i in range(len(cdf["r"]))
                    if cdf["r"][i] == r and cdf["n_qubits"][i] == n]
            ax_cdf.plot([cdf["f"][i] for i in rows],
                        [cdf["cum_fraction"][i] for i in rows],
                        drawstyle="steps-post", label=f"n={n}")
        ax_cdf.set_xlabel("f")
        ax_cdf.legend(fontsize=7)
    if sc is not None:
        fig.colorbar(sc, ax=[axes[r][c] for r in range(len(rs))
                             for c in range(len(ns))], shrink=0.7)
    return fig, _tables_checksum("fig6", {"main": table, "cdf": cdf})


_BUILDERS = {"fig2": _build_fig2, "fig3": _build_fig3, "fig4": _build_fig4,
             "fig5": _build_fig5, "fig6": _build_fig6}


def build_figure(spec: FigureSpec):
    """Build the matplotlib figure plus the checksum of the plotted values."""
    return _BUILDERS[spec.kind](spec)


def render(spec: FigureSpec) -> tuple[Path, str]:
    """Render to the requested file; writes ``<out>.checksum`` alongside."""
    fig, checksum = build_figure(spec)
    out = Path(spec.out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    try:
        fig.savefig(out, dpi=DPI)
    finally:
        plt.close(fig)
    Path(str(out) + ".checksum").write_text(checksum + "\n")
    return out, checksum
