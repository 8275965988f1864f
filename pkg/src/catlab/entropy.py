"""Entropies, Renyi divergences, generalized free energies and the embedding map.

Every entropic quantity is computed and reported in bits (log base 2); free
energies convert through ln 2 so that their unit is the energy unit of the
underlying level spacing.  A single base avoids mixed conventions when a
catalyst particle count is identified with the base-2 log of a dimension.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .simplex import DIM_CAP, CapError, ProbVec, _wrap

LN2 = math.log(2.0)

#: comparison slack for order checks on free energies
FREE_ENERGY_TOL = 1e-10


class SupportError(ValueError):
    """supp(p) must be contained in supp(q) for the requested quantity."""

    def __init__(self, index: int, what: str = "relative entropy"):
        super().__init__(
            f"support violation for {what}: p[{index}] > 0 while q[{index}] = 0")
        self.index = index


@dataclass(frozen=True)
class ThermalContext:
    """Energy levels, inverse temperature and the induced Gibbs weights.

    ``rational_form``, when present, is a pair (D, d) of a common denominator
    and positive integer numerators with sum(d) == D approximating the Gibbs
    weights as d_i / D.  Exact integer splittings are what the embedding map
    and the permutation dilation consume.
    """

    energies: np.ndarray
    beta: float
    gibbs: ProbVec
    log2_Z: float
    rational_form: tuple[int, tuple[int, ...]] | None = None

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        if e.flags.writeable:
            e = e.copy()
            e.flags.writeable = False
        object.__setattr__(self, "energies", e)
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if e.ndim != 1 or e.size != self.gibbs.dim:
            raise ValueError("energies must match the Gibbs vector dimension")
        if np.any(self.gibbs.entries <= 0.0):
            raise ValueError("Gibbs weights must be strictly positive")
        if self.rational_form is not None:
            D, d = self.rational_form
            if len(d) != self.gibbs.dim or any(di < 1 for di in d):
                raise ValueError("rational form needs one positive integer per level")
            if sum(d) != D:
                raise ValueError("rational form numerators must sum to the denominator")
            err = max(abs(di / D - gi) for di, gi in zip(d, self.gibbs.entries))
            if err > max(len(d) / D, 1e-9):
                raise ValueError(f"rational form deviates from Gibbs weights by {err}")

    @property
    def dim(self) -> int:
        return self.gibbs.dim

    @property
    def is_degenerate(self) -> bool:
        e = self.energies
        return bool(np.all(e == e[0]))

    @classmethod
    def from_energies(cls, energies, beta: float) -> "ThermalContext":
        e = np.asarray(energies, dtype=float)
        if beta <= 0:
            raise ValueError("beta must be positive")
        w = -beta * e
        ln_Z = _logsumexp(w)
        g = np.exp(w - ln_Z)
        return cls(e, beta, ProbVec(g), ln_Z / LN2)

    @classmethod
    def degenerate(cls, dim: int, beta: float = 1.0) -> "ThermalContext":
        """Fully degenerate Hamiltonian: uniform Gibbs weights."""
        if dim < 1:
            raise ValueError("dimension must be positive")
        ctx = cls(np.zeros(dim), beta, ProbVec.uniform(dim), math.log2(dim))
        return ctx

    @classmethod
    def from_rational(cls, d: tuple[int, ...], beta: float = 1.0) -> "ThermalContext":
        """Context whose Gibbs weights are exactly d_i / sum(d)."""
        D = sum(d)
        if any(di < 1 for di in d):
            raise ValueError("numerators must be positive")
        g = np.array([di / D for di in d])
        energies = -np.log(g) / beta
        return cls(energies, beta, ProbVec(g), 0.0, rational_form=(D, tuple(int(x) for x in d)))

    def tensor(self, other: "ThermalContext") -> "ThermalContext":
        if self.beta != other.beta:
            raise ValueError("cannot combine contexts at different inverse temperatures")
        energies = (self.energies[:, None] + other.energies[None, :]).reshape(-1)
        gibbs = _wrap(np.kron(self.gibbs.entries, other.gibbs.entries))
        return ThermalContext(energies, self.beta, gibbs, self.log2_Z + other.log2_Z)

    def tensor_power(self, k: int, cap: int = DIM_CAP) -> "ThermalContext":
        if k < 0:
            raise ValueError("tensor power requires k >= 0")
        if self.dim ** k > cap:
            raise CapError(f"context dimension {self.dim ** k} exceeds cap {cap}",
                           requested=self.dim ** k, cap=cap)
        out = ThermalContext.degenerate(1, beta=self.beta)
        for _ in range(k):
            out = out.tensor(self)
        return out


@dataclass(frozen=True)
class AlphaGrid:
    """Finite proxy for "all orders alpha >= 0": a sorted grid plus infinity."""

    values: tuple[float, ...]
    include_infinity: bool = True

    def __post_init__(self):
        vals = tuple(sorted(set(float(v) for v in self.values)))
        if any(not math.isfinite(v) or v < 0 for v in vals):
            raise ValueError("grid values must be finite and nonnegative")
        if 0.0 not in vals or 1.0 not in vals:
            raise ValueError("grid must include both 0 and 1")
        object.__setattr__(self, "values", vals)

    @classmethod
    def default(cls) -> "AlphaGrid":
        pts = {0.0, 1.0}
        pts.update(np.logspace(-3.0, 3.0, 120).tolist())
        return cls(tuple(sorted(pts)), include_infinity=True)

    def alphas(self):
        yield from self.values
        if self.include_infinity:
            yield math.inf


def _logsumexp(x: np.ndarray) -> float:
    m = float(np.max(x))
    return m + math.log(float(np.sum(np.exp(x - m))))


def shannon(p: ProbVec) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    e = p.entries[p.entries > 0]
    return float(-(e * np.log2(e)).sum())


def entropy_variance(p: ProbVec) -> float:
    """Variance of the surprisal -log2 p_i under p."""
    e = p.entries[p.entries > 0]
    s = -np.log2(e)
    h = float((e * s).sum())
    return float((e * (s - h) ** 2).sum())


def renyi_entropy(p: ProbVec, alpha: float) -> float:
    """Renyi entropy of order alpha >= 0 (math.inf for the min-entropy)."""
    if alpha < 0:
        raise ValueError("negative orders are out of scope")
    if alpha == math.inf:
        return float(-np.log2(np.max(p.entries)))
    if alpha == 0.0:
        return math.log2(int(np.count_nonzero(p.entries)))
    if alpha == 1.0:
        return shannon(p)
    e = p.entries[p.entries > 0]
    ln_s = _logsumexp(alpha * np.log(e))
    return ln_s / ((1.0 - alpha) * LN2)


def relative_entropy(p: ProbVec, q: ProbVec) -> float:
    """KL divergence in bits; requires supp(p) within supp(q)."""
    _check_support(p, q)
    mask = p.entries > 0
    pe, qe = p.entries[mask], q.entries[mask]
    return float((pe * (np.log2(pe) - np.log2(qe))).sum())


def relative_entropy_variance(p: ProbVec, q: ProbVec) -> float:
    _check_support(p, q)
    mask = p.entries > 0
    pe, qe = p.entries[mask], q.entries[mask]
    ll = np.log2(pe) - np.log2(qe)
    d = float((pe * ll).sum())
    return float((pe * (ll - d) ** 2).sum())


def _check_support(p: ProbVec, q: ProbVec, what: str = "relative entropy") -> None:
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    bad = (p.entries > 0) & (q.entries == 0)
    if np.any(bad):
        raise SupportError(int(np.argmax(bad)), what)


def renyi_divergence(p: ProbVec, q: ProbVec, alpha: float) -> float:
    """Renyi divergence of order alpha in bits.

    alpha = 1 gives the KL divergence, alpha = inf the max-relative entropy
    log2 max_i p_i/q_i.  Orders above 1 require supp(p) within supp(q);
    below 1 the overlap term simply drops the offending indices.
    """
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    if alpha < 0:
        raise ValueError("negative orders are out of scope")
    if alpha == math.inf:
        _check_support(p, q, "max-relative entropy")
        mask = p.entries > 0
        return float(np.log2(np.max(p.entries[mask] / q.entries[mask])))
    if alpha == 1.0:
        return relative_entropy(p, q)
    if alpha == 0.0:
        return float(-np.log2(q.entries[p.entries > 0].sum()))
    if alpha > 1.0:
        _check_support(p, q, f"order-{alpha} divergence")
        mask = p.entries > 0
    else:
        mask = (p.entries > 0) & (q.entries > 0)
        if not np.any(mask):
            return math.inf
    pe, qe = p.entries[mask], q.entries[mask]
    ln_s = _logsumexp(alpha * np.log(pe) + (1.0 - alpha) * np.log(qe))
    return ln_s / ((alpha - 1.0) * LN2)


def renyi_divergence_curve(p: ProbVec, q: ProbVec, grid: AlphaGrid) -> np.ndarray:
    """Vectorized divergences over a whole grid (infinity appended last).

    Requires supp(p) within supp(q) whenever the grid reaches beyond order 1,
    mirroring the scalar path.
    """
    alphas = np.asarray(grid.values)
    if grid.include_infinity or np.any(alphas > 1.0):
        _check_support(p, q, "divergence grid")
    mask = p.entries > 0
    ln_p = np.log(p.entries[mask])
    ln_q = np.log(q.entries[mask])
    out = np.empty(alphas.size + (1 if grid.include_infinity else 0))
    general = (alphas != 0.0) & (alphas != 1.0)
    a = alphas[general]
    x = a[:, None] * ln_p[None, :] + (1.0 - a)[:, None] * ln_q[None, :]
    m = x.max(axis=1)
    lse = m + np.log(np.exp(x - m[:, None]).sum(axis=1))
    out[: alphas.size][general] = lse / ((a - 1.0) * LN2)
    if not general.all():
        for i in np.flatnonzero(~general):
            out[i] = relative_entropy(p, q) if alphas[i] == 1.0 \
                else -math.log2(q.entries[mask].sum())
    if grid.include_infinity:
        out[-1] = np.log2(np.max(p.entries[mask] / q.entries[mask]))
    return out


def free_energy(p: ProbVec, ctx: ThermalContext, alpha: float) -> float:
    """Generalized free energy of order alpha, in energy units."""
    d = renyi_divergence(p, ctx.gibbs, alpha)
    return (LN2 / ctx.beta) * (d - ctx.log2_Z)


def embed(x: ProbVec, d: tuple[int, ...] | list[int], cap: int = DIM_CAP) -> ProbVec:
    """Split weight x_i into d_i equal parts (dimension sum(d) output).

    Maps a Gibbs state with exact rational weights d_i/D to the uniform
    distribution on D outcomes, turning the thermal order into plain
    majorization.
    """
    if len(d) != x.dim:
        raise ValueError(f"multiplicity list has length {len(d)}, state has {x.dim}")
    counts = [int(di) for di in d]
    if any(di < 1 for di in counts):
        raise ValueError("multiplicities must be positive integers")
    D = sum(counts)
    if D > cap:
        raise CapError(f"embedding dimension {D} exceeds cap {cap}", requested=D, cap=cap)
    arr = np.repeat(x.entries / np.asarray(counts, dtype=float), counts)
    return _wrap(arr)


def rationalize_gibbs(ctx: ThermalContext, max_denominator: int) -> ThermalContext:
    """Attach the best integer splitting d/D of the Gibbs weights, D <= cap.

    Exhaustive over denominators: for every D the optimal numerators under
    the max-error criterion are found by largest-remainder rounding (with the
    d_i >= 1 floor), and the best D wins.  Exact, no floating rounding of the
    result itself: ties prefer the smallest denominator.
    """
    dim = ctx.dim
    if max_denominator < dim:
        raise ValueError(f"denominator cap {max_denominator} below dimension {dim}")
    g = ctx.gibbs.entries
    best_err, best = None, None
    for D in range(dim, max_denominator + 1):
        d = _largest_remainder(g, D)
        err = float(np.max(np.abs(d / D - g)))
        if best_err is None or err < best_err:
            best_err, best = err, (D, tuple(int(x) for x in d))
    return ThermalContext(ctx.energies, ctx.beta, ctx.gibbs, ctx.log2_Z, rational_form=best)


def _largest_remainder(g: np.ndarray, D: int) -> np.ndarray:
    target = g * D
    d = np.maximum(np.floor(target), 1.0)
    deficit = D - int(d.sum())
    while deficit > 0:
        i = int(np.argmax(target - d))
        d[i] += 1.0
        deficit -= 1
    while deficit < 0:
        over = d - target
        over[d <= 1.0] = -np.inf  # keep every numerator positive
        i = int(np.argmax(over))
        d[i] -= 1.0
        deficit += 1
    return d.astype(np.int64)
