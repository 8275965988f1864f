"""Exact and approximate thermal-order decision procedures.

The thermal order between two states is decided by comparing beta-ordered
piecewise-linear curves: the curve of the source must never dip below the
curve of the target.  Because the source curve is concave, it suffices to
compare at the target curve's elbows; the dense-grid comparison is kept as a
test oracle only.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import ThermalContext
from .simplex import DIM_CAP, INTERNAL_TOL, ProbVec, _wrap, tensor, trace_distance

TOL = INTERNAL_TOL


def _padded_sorted_cumsum(p: ProbVec, dim: int) -> np.ndarray:
    e = np.zeros(dim)
    e[: p.dim] = p.entries
    return np.cumsum(np.sort(e)[::-1])


def majorizes(p: ProbVec, q: ProbVec) -> bool:
    """Prefix-sum dominance of sorted entries; shorter vectors are zero-padded."""
    dim = max(p.dim, q.dim)
    cp = _padded_sorted_cumsum(p, dim)
    cq = _padded_sorted_cumsum(q, dim)
    return bool(np.all(cp >= cq - TOL))


def majorization_margin(p: ProbVec, q: ProbVec) -> float:
    """Minimum prefix-sum gap; negative when p does not majorize q."""
    dim = max(p.dim, q.dim)
    return float(np.min(_padded_sorted_cumsum(p, dim) - _padded_sorted_cumsum(q, dim)))


@dataclass(frozen=True)
class TMCurve:
    """Beta-ordered cumulative curve: elbows (sum of Gibbs weights, sum of
    probabilities) including (0, 0), concave by construction."""

    xs: np.ndarray
    ys: np.ndarray
    order: tuple[int, ...]

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.shape != ys.shape or xs.ndim != 1 or xs.size < 2:
            raise ValueError("curve needs matching 1-D elbow coordinates")
        if not np.all(np.diff(xs) > 0):
            raise ValueError("elbow abscissas must be strictly increasing")
        if np.any(np.diff(ys) < -TOL):
            raise ValueError("elbow ordinates must be nondecreasing")
        # concavity, division-free: slope_{i+1} <= slope_i as a cross product
        dy, dx = np.diff(ys), np.diff(xs)
        if np.any(dy[1:] * dx[:-1] - dy[:-1] * dx[1:] > TOL):
            raise ValueError("curve is not concave")
        for a in (xs, ys):
            a.flags.writeable = False
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def evaluate(self, x) -> np.ndarray:
        """Piecewise-linear value; clamps outside the elbow range."""
        return np.interp(x, self.xs, self.ys)


def tm_curve(p: ProbVec, ctx: ThermalContext) -> TMCurve:
    """Build the curve of p against ctx: sort indices by p_i/g_i nonincreasing
    (ties broken by ascending original index) and accumulate."""
    if p.dim != ctx.dim:
        raise ValueError(f"state dimension {p.dim} does not match context {ctx.dim}")
    g = ctx.gibbs.entries
    if np.any(g <= 0):
        raise ValueError("zero Gibbs weight")
    order = np.argsort(-(p.entries / g), kind="stable")
    xs = np.concatenate(([0.0], np.cumsum(g[order])))
    ys = np.concatenate(([0.0], np.cumsum(p.entries[order])))
    return TMCurve(xs, ys, tuple(int(i) for i in order))


def thermo_majorizes(p: ProbVec, q: ProbVec, ctx: ThermalContext) -> bool:
    """True iff the curve of p is nowhere below the curve of q.

    Checked at q's elbows only: p's curve is concave, so dominance at the
    endpoints of each linear segment of q's curve implies dominance on it.
    """
    cp = tm_curve(p, ctx)
    cq = tm_curve(q, ctx)
    return bool(np.all(cp.evaluate(cq.xs) >= cq.ys - TOL))


def tm_margin(p: ProbVec, q: ProbVec, ctx: ThermalContext) -> float:
    """Minimum gap curve_p - curve_q over q's elbows."""
    cp = tm_curve(p, ctx)
    cq = tm_curve(q, ctx)
    return float(np.min(cp.evaluate(cq.xs) - cq.ys))


def flattest_state(q: ProbVec, eps: float) -> ProbVec:
    """Most-flattened state within trace distance eps of q.

    Water-filling: the largest entries are lowered to a common cap removing
    total mass min(eps, saturation), the smallest are raised to a common
    floor absorbing the same mass; the middle is untouched.  Returned in q's
    original index order.  The construction is the standard approximate-
    majorization flattening; its optimality as a returned catalyst is gated
    by a brute-force oracle in the tests rather than assumed.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    d = q.dim
    idx = np.argsort(-q.entries, kind="stable")
    s = q.entries[idx].copy()
    saturation = float(np.maximum(s - 1.0 / d, 0.0).sum())
    move = min(float(eps), saturation)
    if move <= 0.0:
        return q
    prefix = np.cumsum(s)
    k = d
    cap = (prefix[-1] - move) / d
    for i in range(1, d):
        a = (prefix[i - 1] - move) / i
        if a >= s[i]:
            k, cap = i, a
            break
    suffix = np.cumsum(s[::-1])
    j = d
    floor = (suffix[-1] + move) / d
    for i in range(1, d):
        b = (suffix[i - 1] + move) / i
        if b <= s[d - 1 - i]:
            j, floor = i, b
            break
    s[:k] = cap
    s[d - j:] = floor
    out = np.empty(d)
    out[idx] = s
    return ProbVec(out)


def eps_catalytic_step(p: ProbVec, q: ProbVec, c: ProbVec, eps: float,
                       ctx: ThermalContext, cap: int = DIM_CAP) -> bool:
    """Can p with catalyst c reach q while returning the catalyst within eps?

    The returned catalyst is fixed to the flattest state of c at eps (the
    catalyst Hamiltonian is fully degenerate), and the joint conversion is
    decided by curve comparison.  This is a heuristic choice of the returned
    state, not a proven-optimal decision procedure.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError("eps must lie in [0, 1]")
    c_out = flattest_state(c, eps)
    joint = ctx.tensor(ThermalContext.degenerate(c.dim, beta=ctx.beta))
    return thermo_majorizes(tensor(p, c, cap=cap), tensor(q, c_out, cap=cap), joint)
