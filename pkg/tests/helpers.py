"""Shared test oracles: independent routes to the library's answers.

Everything here is deliberately simple and brute-force; nothing reuses the
code paths under test.
"""
from __future__ import annotations

from itertools import accumulate
from math import lcm

import numpy as np

from catlab.simplex import ProbVec


def dirichlet(rng: np.random.Generator, d: int) -> ProbVec:
    x = rng.exponential(size=d)
    return ProbVec(x / x.sum())


def dense_curve_dominates(p, q, ctx, n_points: int = 10_000, tol: float = 1e-12) -> bool:
    """Thermal-order oracle: compare both curves on a dense abscissa grid."""
    def curve(state):
        g = ctx.gibbs.entries
        order = np.argsort(-(state.entries / g), kind="stable")
        xs = np.concatenate(([0.0], np.cumsum(g[order])))
        ys = np.concatenate(([0.0], np.cumsum(state.entries[order])))
        return xs, ys

    xs = np.linspace(0.0, 1.0, n_points)
    xp, yp = curve(p)
    xq, yq = curve(q)
    return bool(np.all(np.interp(xs, xp, yp) >= np.interp(xs, xq, yq) - tol))


def simplex_grid(step: float = 0.01) -> np.ndarray:
    """All 3-dim probability vectors with entries on multiples of step."""
    n = round(1.0 / step)
    pts = [(a, b, n - a - b) for a in range(n + 1) for b in range(n + 1 - a)]
    return np.array(pts, dtype=float) / n


GRID_3 = simplex_grid(0.01)


def ball_grid_oracle(p, q, c, eps: float, step: float = 0.01,
                     covering_slack: float | None = None) -> bool:
    """Exhaustive search for a returned catalyst on the step grid inside the
    trace-distance ball around c (uniform references).

    ``covering_slack`` widens the ball by the grid's covering radius so that
    a cell partially inside the ball is still searched; None means no slack.
    """
    slack = 0.0 if covering_slack is None else covering_slack
    dist = 0.5 * np.abs(GRID_3 - c.entries[None, :]).sum(axis=1)
    cand = GRID_3[dist <= eps + slack + 1e-12]
    if cand.size == 0:
        return False
    pc = np.kron(p.entries, c.entries)
    cp = np.cumsum(np.sort(pc)[::-1])
    qx = (q.entries[None, :, None] * cand[:, None, :]).reshape(len(cand), -1)
    cq = np.cumsum(-np.sort(-qx, axis=1), axis=1)
    return bool(np.all(cp[None, :] >= cq - 1e-12, axis=1).any())


# ---------------------------------------------------------------------------
# exact integer arithmetic on unnormalized distributions
#
# An "int vector" is (nums, den) with sum(nums) == den; the represented
# distribution is nums/den.  All order checks cross-multiply, so they are
# exact for arbitrary denominators.

def int_vec(nums) -> tuple[tuple[int, ...], int]:
    nums = tuple(int(n) for n in nums)
    return nums, sum(nums)


def kron_int(a, b):
    an, ad = a
    bn, bd = b
    return tuple(x * y for x in an for y in bn), ad * bd


def power_int(a, k: int):
    out = ((1,), 1)
    for _ in range(k):
        out = kron_int(out, a)
    return out


def embed_int(a, mult: tuple[int, ...]):
    """Exact embedding against a rational reference with numerators mult."""
    nums, den = a
    scale = lcm(*mult)
    out = []
    for n, m in zip(nums, mult):
        out.extend([n * (scale // m)] * m)
    return tuple(out), den * scale


def majorizes_int(a, b) -> bool:
    """Exact prefix-sum dominance (arbitrary-precision, zero tolerance)."""
    an, ad = a
    bn, bd = b
    ca = accumulate(sorted(an, reverse=True))
    cb = accumulate(sorted(bn, reverse=True))
    return all(x * bd >= y * ad for x, y in zip(ca, cb))


def kcopy_convertible_int(p, q, mult, k: int) -> bool:
    ep, eq = embed_int(p, mult), embed_int(q, mult)
    return majorizes_int(power_int(ep, k), power_int(eq, k))


def duan_chain_int(p, q, mult, k: int) -> bool:
    """Exact single-copy catalytic check with the k-block catalyst."""
    ep, eq = embed_int(p, mult), embed_int(q, mult)
    sp, sq = ep[1], eq[1]
    common = (sp * sq) ** (k - 1)
    z_nums = []
    for i in range(1, k + 1):
        block = kron_int(power_int(eq, k - i), power_int(ep, i - 1))
        factor = common // block[1]
        z_nums.extend(n * factor for n in block[0])
    z = (tuple(z_nums), k * common)
    return majorizes_int(kron_int(ep, z), kron_int(eq, z))
