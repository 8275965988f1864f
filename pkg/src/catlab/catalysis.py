"""Catalysis machinery: order conditions, block catalysts, closed-form bounds.

The free-energy order conditions are checked on a finite grid of orders with
the minimum gap reported; margins close to zero are grid-resolution
sensitive and callers should surface that flag.  The block catalyst built
from mixed tensor powers of source and target turns a k-copy conversion into
an exact single-copy catalytic one; that implication is asserted, not merely
tested.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import entropy as ent
from .entropy import AlphaGrid, ThermalContext
from .majorization import thermo_majorizes
from .simplex import DIM_CAP, CapError, ProbVec, direct_sum, tensor, tensor_power

#: margins whose magnitude falls below this are flagged grid-resolution sensitive
GRID_SENSITIVITY = 1e-8


def is_grid_sensitive(margin: float) -> bool:
    return abs(margin) <= GRID_SENSITIVITY


def second_laws_holds(p: ProbVec, q: ProbVec, ctx: ThermalContext,
                      grid: AlphaGrid | None = None) -> tuple[bool, float]:
    """Does every generalized free energy of p dominate that of q?

    Returns (ok, margin).  The boolean checks every grid order including 0, 1
    and infinity (tolerance 1e-10 on free energies).  The margin is the
    minimum gap over strictly positive orders: at order zero the gap compares
    supports only and is identically zero whenever the supports agree, which
    would mask the meaningful minimum.
    """
    if grid is None:
        grid = AlphaGrid.default()
    d_p = ent.renyi_divergence_curve(p, ctx.gibbs, grid)
    d_q = ent.renyi_divergence_curve(q, ctx.gibbs, grid)
    gaps = (ent.LN2 / ctx.beta) * (d_p - d_q)
    ok = bool(np.all(gaps >= -ent.FREE_ENERGY_TOL))
    positive = np.array([a > 0 for a in grid.alphas()])
    margin = float(np.min(gaps[positive]))
    return ok, margin


@dataclass(frozen=True)
class DuanSpec:
    """Block catalyst for simulating a k-copy conversion with a single copy.

    Block i (i = 1..k) carries weight 1/k and the product of k-i copies of
    the target with i-1 copies of the source; the total dimension is
    k * d**(k-1).  Blocks stay symbolic until a materialization is required.
    """

    k: int
    source: ProbVec
    target: ProbVec

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.source.dim != self.target.dim:
            raise ValueError("source and target must share a dimension")

    @property
    def dim_single(self) -> int:
        return self.source.dim

    @property
    def total_dim(self) -> int:
        return self.k * self.dim_single ** (self.k - 1)

    def blocks(self):
        """Yield (weight, target_copies, source_copies) per block."""
        for i in range(1, self.k + 1):
            yield 1.0 / self.k, self.k - i, i - 1

    def materialize(self, cap: int = DIM_CAP) -> ProbVec:
        if self.total_dim > cap:
            raise CapError(f"catalyst dimension {self.total_dim} exceeds cap {cap}",
                           requested=self.total_dim, cap=cap)
        parts = []
        for w, n_q, n_p in self.blocks():
            block = tensor(tensor_power(self.target, n_q, cap=cap),
                           tensor_power(self.source, n_p, cap=cap), cap=cap)
            parts.append((w, block))
        return direct_sum(parts, cap=cap)

    def entropy_bits(self) -> float:
        """Shannon entropy of the materialized state, computed blockwise."""
        hp, hq = ent.shannon(self.source), ent.shannon(self.target)
        return math.log2(self.k) + (self.k - 1) / 2.0 * (hp + hq)


def duan_state(p: ProbVec, q: ProbVec, k: int, cap: int = DIM_CAP) -> DuanSpec:
    spec = DuanSpec(k, p, q)
    if spec.total_dim > cap:
        raise CapError(f"catalyst dimension {spec.total_dim} exceeds cap {cap}",
                       requested=spec.total_dim, cap=cap)
    return spec


def _duan_context(ctx: ThermalContext, k: int) -> ThermalContext:
    """Thermal context of the materialized block catalyst.

    Each block carries k-1 copies of the system Hamiltonian behind a
    degenerate k-valued flag, so the catalyst reference weight of a level in
    block i is g^{(k-1)}/k.  With this reference the k-copy conversion
    implies the catalytic one exactly; for degenerate contexts it reduces to
    the uniform reference.
    """
    return ThermalContext.degenerate(k, beta=ctx.beta).tensor(ctx.tensor_power(k - 1))


def duan_catalysis_check(p: ProbVec, q: ProbVec, k: int, ctx: ThermalContext,
                         cap: int = DIM_CAP) -> tuple[bool, bool]:
    """(k-copy convertible, single-copy catalytically convertible).

    The first coordinate implies the second; a violation is a bug in the
    order machinery and raises immediately.
    """
    pk = tensor_power(p, k, cap=cap)
    qk = tensor_power(q, k, cap=cap)
    kcopy_ok = thermo_majorizes(pk, qk, ctx.tensor_power(k, cap=cap))

    z = duan_state(p, q, k, cap=cap).materialize(cap=cap)
    joint_ctx = ctx.tensor(_duan_context(ctx, k))
    catalytic_ok = thermo_majorizes(tensor(p, z, cap=cap), tensor(q, z, cap=cap), joint_ctx)
    if kcopy_ok and not catalytic_ok:
        raise AssertionError(
            "k-copy conversion exists but the block catalyst failed: order machinery bug")
    return kcopy_ok, catalytic_ok


def min_k_copy(p: ProbVec, q: ProbVec, ctx: ThermalContext,
               k_max: int = 12, cap: int = DIM_CAP) -> int | None:
    """Smallest k <= k_max with a k-copy conversion, scanning every k.

    k-copy convertibility is not claimed monotone in k, so no early
    shortcut: each k is tested.  Cap breaches report the k reached.
    """
    pk = tensor_power(p, 0)
    qk = tensor_power(q, 0)
    ctx_k = ctx.tensor_power(0)
    for k in range(1, k_max + 1):
        try:
            pk = tensor(pk, p, cap=cap)
            qk = tensor(qk, q, cap=cap)
            ctx_k = ctx_k.tensor(ctx)
        except CapError as exc:
            raise CapError(f"copy scan hit the dimension cap at k={k}: {exc}",
                           requested=exc.requested, cap=exc.cap) from exc
        if thermo_majorizes(pk, qk, ctx_k):
            return k
    return None


def embezzlement_bound(d_S: int, d_C: int) -> float:
    """Error threshold separating embezzlement from genuine catalysis."""
    if d_S < 2 or d_C < 2:
        raise ValueError("both dimensions must be at least 2")
    return (d_S - 1) / (1.0 + (d_S - 1) * math.log2(d_C))


@dataclass(frozen=True)
class ConversionParams:
    """Inputs of the non-asymptotic multi-copy conversion rate."""

    kappa: float
    n: int
    source: ProbVec
    target: ProbVec
    ctx: ThermalContext

    def __post_init__(self):
        if not 0.0 < self.kappa < 1.0:
            raise ValueError("kappa must lie strictly inside (0, 1)")
        if self.n < 1:
            raise ValueError("n must be a positive integer")


@dataclass(frozen=True)
class ConversionRate:
    r_n: float
    m: int
    delta_bound: float
    v: float
    asymptotic: float
    clamped: bool


class DegenerateVarianceError(ValueError):
    """The second-order correction is undefined when a relative-entropy
    variance vanishes (for example a pure source)."""


def conversion_rate_between(source: ProbVec, source_ref: ProbVec,
                            target: ProbVec, target_ref: ProbVec,
                            n: int, kappa: float) -> ConversionRate:
    """Copies-per-input rate for converting source systems into target systems.

    The leading term is the ratio of relative entropies to the respective
    reference states; the finite-n correction involves the ratio v of
    normalized relative-entropy variances.  The rate is clamped to
    [0, asymptotic] and clamping is surfaced in the result.
    """
    d_src = ent.relative_entropy(source, source_ref)
    d_tgt = ent.relative_entropy(target, target_ref)
    if d_tgt <= 0.0:
        raise ValueError("target coincides with its reference: rate undefined")
    asymptotic = d_src / d_tgt
    delta_bound = math.exp(-float(n) ** kappa)
    same = (source.dim == target.dim
            and np.array_equal(source.entries, target.entries)
            and np.array_equal(source_ref.entries, target_ref.entries))
    if same:
        return ConversionRate(1.0, n, delta_bound, 1.0, 1.0, False)
    v_src = ent.relative_entropy_variance(source, source_ref)
    v_tgt = ent.relative_entropy_variance(target, target_ref)
    if v_src <= 0.0 or v_tgt <= 0.0:
        raise DegenerateVarianceError(
            "a relative-entropy variance vanishes; the finite-n correction is undefined")
    v = (v_src / d_src) / (v_tgt / d_tgt)
    correction = math.sqrt(2.0 * v_src / d_src) * abs(1.0 - 1.0 / math.sqrt(v))
    r_raw = asymptotic * (1.0 - correction / math.sqrt(float(n) ** (1.0 - kappa)))
    r_n = min(max(r_raw, 0.0), asymptotic)
    clamped = r_raw != r_n
    return ConversionRate(r_n, int(math.floor(n * max(r_n, 0.0))), delta_bound,
                          v, asymptotic, clamped)


def conversion_rate(params: ConversionParams) -> ConversionRate:
    g = params.ctx.gibbs
    return conversion_rate_between(params.source, g, params.target, g,
                                   params.n, params.kappa)


def catalyst_error_budget(delta: float, nu: float) -> float:
    """Total catalyst disturbance: twice the pre/post-processing error plus
    the conversion-step error."""
    if delta < 0 or nu < 0:
        raise ValueError("error terms must be nonnegative")
    return 2.0 * delta + nu


def copies_lower_bound(duan: DuanSpec, omega: ProbVec) -> float:
    """Copies of omega needed before one block catalyst can be distilled.

    Ratio of entropy deficits in bits: (log2 D - H(catalyst)) over
    (log2 d_C - H(omega)).  Callers ceil to an integer copy count.
    """
    denom = math.log2(omega.dim) - ent.shannon(omega)
    if denom <= 1e-12:
        raise ValueError("uniform catalyst state: the bound diverges")
    numer = math.log2(duan.total_dim) - duan.entropy_bits()
    return max(numer, 0.0) / denom
