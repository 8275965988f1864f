"""Exact permutation dilation of a Gibbs-preserving stochastic channel.

A channel with exact rational transition probabilities r(j|i) that preserves
a rational Gibbs vector g = d/D can be realized as a permutation of an
energy shell in which level i owns s*d_i slots: block i sends exactly
n(j|i) = s * d_i * r(j|i) slots into block j, and both marginal constraints
sum_i n(j|i) = s*d_j and sum_j n(j|i) = s*d_i hold as integer identities.
Everything here is exact rational arithmetic with zero tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .simplex import CapError, ProbVec

RationalLike = Fraction | int | str

#: ceiling on shell sizes; permutations are materialized as index arrays
SHELL_CAP = 5_000_000


def as_fraction(x) -> Fraction:
    """Accept Fraction, int, 'a/b' strings, [num, den] pairs and floats
    (floats convert exactly: every float is a dyadic rational)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    return Fraction(x)


@dataclass(frozen=True)
class RationalChannel:
    """Column-stochastic rational matrix r[j][i] preserving a rational Gibbs
    vector exactly."""

    matrix: tuple[tuple[Fraction, ...], ...]
    gibbs: tuple[Fraction, ...]

    def __post_init__(self):
        d = len(self.gibbs)
        m = tuple(tuple(as_fraction(x) for x in row) for row in self.matrix)
        g = tuple(as_fraction(x) for x in self.gibbs)
        if len(m) != d or any(len(row) != d for row in m):
            raise ValueError("matrix must be square and match the Gibbs dimension")
        if any(x < 0 for row in m for x in row):
            raise ValueError("transition probabilities must be nonnegative")
        if any(gi <= 0 for gi in g) or sum(g) != 1:
            raise ValueError("Gibbs weights must be positive rationals summing to 1")
        for i in range(d):
            col = sum(m[j][i] for j in range(d))
            if col != 1:
                raise ValueError(f"column {i} sums to {col}, not 1")
        for j in range(d):
            out = sum(m[j][i] * g[i] for i in range(d))
            if out != g[j]:
                raise ValueError(
                    f"channel does not preserve the Gibbs vector at level {j}: "
                    f"{out} != {g[j]}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "gibbs", g)

    @property
    def dim(self) -> int:
        return len(self.gibbs)

    def apply(self, p: list[Fraction]) -> list[Fraction]:
        """Direct matrix-vector product (exact)."""
        d = self.dim
        if len(p) != d:
            raise ValueError("dimension mismatch")
        return [sum(self.matrix[j][i] * p[i] for i in range(d)) for j in range(d)]


def identity_channel(gibbs) -> RationalChannel:
    d = len(gibbs)
    m = tuple(tuple(Fraction(int(i == j)) for i in range(d)) for j in range(d))
    return RationalChannel(m, tuple(as_fraction(x) for x in gibbs))


def thermalizing_channel(gibbs) -> RationalChannel:
    """Every input is mapped to the Gibbs vector."""
    g = tuple(as_fraction(x) for x in gibbs)
    m = tuple(tuple(g[j] for _ in range(len(g))) for j in range(len(g)))
    return RationalChannel(m, g)


@dataclass(frozen=True)
class PermutationDilation:
    """Slot permutation realizing a channel on a single effective shell.

    Block i occupies ``block_sizes[i]`` consecutive slots starting at
    ``offsets[i]``; ``perm[s]`` is the destination of source slot s.  The
    assignment is the deterministic lexicographic fill (sources in block
    order, destinations in block order), one of the many bijections
    satisfying the slot counts.
    """

    channel: RationalChannel
    shell_size: int
    scale: int
    block_sizes: tuple[int, ...]
    offsets: tuple[int, ...]
    counts: tuple[tuple[int, ...], ...]
    perm: np.ndarray

    def inverse(self) -> np.ndarray:
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.perm.size)
        return inv


def build_dilation(ch: RationalChannel, cap: int = SHELL_CAP) -> PermutationDilation:
    """Choose n(j|i) = s*d_i*r(j|i) with the smallest integer scale s."""
    d = ch.dim
    D = lcm(*(g.denominator for g in ch.gibbs))
    d_i = [int(g * D) for g in ch.gibbs]
    s = 1
    for i in range(d):
        for j in range(d):
            s = lcm(s, (ch.matrix[j][i] * d_i[i]).denominator)
    shell = s * D
    if shell > cap:
        raise CapError(f"shell size {shell} exceeds cap {cap}", requested=shell, cap=cap)
    sizes = [s * di for di in d_i]
    offsets = [0] * d
    for i in range(1, d):
        offsets[i] = offsets[i - 1] + sizes[i - 1]
    counts = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            n = ch.matrix[j][i] * d_i[i] * s
            assert n.denominator == 1
            counts[j][i] = int(n)
    for i in range(d):
        if sum(counts[j][i] for j in range(d)) != sizes[i]:
            raise ValueError(f"slot counts out of block {i} do not add up")
    for j in range(d):
        if sum(counts[j][i] for i in range(d)) != sizes[j]:
            raise ValueError(f"slot counts into block {j} do not add up")
    perm = np.empty(shell, dtype=np.int64)
    fill = list(offsets)  # next free destination slot per target block
    for i in range(d):
        src = offsets[i]
        for j in range(d):
            n = counts[j][i]
            perm[src:src + n] = np.arange(fill[j], fill[j] + n)
            fill[j] += n
            src += n
    return PermutationDilation(ch, shell, s, tuple(sizes), tuple(offsets),
                               tuple(tuple(row) for row in counts), perm)


def shell_embed(dil: PermutationDilation, x: list[Fraction]) -> list[Fraction]:
    """Spread weight x_i uniformly over the slots of block i."""
    out = []
    for i, size in enumerate(dil.block_sizes):
        share = x[i] / size
        out.extend([share] * size)
    return out


def permute_shell(dil: PermutationDilation, slots: list[Fraction],
                  inverse: bool = False) -> list[Fraction]:
    perm = dil.inverse() if inverse else dil.perm
    out: list[Fraction] = [Fraction(0)] * dil.shell_size
    for src, dst in enumerate(perm):
        out[dst] = slots[src]
    return out


def system_marginal(dil: PermutationDilation, slots: list[Fraction]) -> list[Fraction]:
    out = []
    for i, size in enumerate(dil.block_sizes):
        start = dil.offsets[i]
        out.append(sum(slots[start:start + size], Fraction(0)))
    return out


def apply_dilation_exact(dil: PermutationDilation, p: list[Fraction]) -> list[Fraction]:
    """Route the input through the slot permutation and read block marginals."""
    if len(p) != dil.channel.dim:
        raise ValueError("dimension mismatch")
    slots = shell_embed(dil, p)
    return system_marginal(dil, permute_shell(dil, slots))


def apply_dilation(dil: PermutationDilation, p: ProbVec) -> ProbVec:
    """Exact rational evaluation, converted to floats at the boundary."""
    exact = apply_dilation_exact(dil, [as_fraction(float(x)) for x in p.entries])
    return ProbVec(np.array([float(x) for x in exact]))


def equal_error_distances(dil: PermutationDilation, p: list[Fraction],
                          q: list[Fraction]) -> tuple[Fraction, Fraction]:
    """Distance on the full shell versus distance on the system marginal.

    The shell output here is the block-averaged state left after the bath
    mixing that completes the dilation (each block's weight spread evenly
    over its slots); against the shell embedding of the target the two
    distances agree exactly, because the degeneracy factors cancel within
    each block.
    """
    out = apply_dilation_exact(dil, p)
    system = sum((abs(a - b) for a, b in zip(out, q)), Fraction(0)) / 2
    out_shell = shell_embed(dil, out)
    target_shell = shell_embed(dil, q)
    shell = sum((abs(a - b) for a, b in zip(out_shell, target_shell)), Fraction(0)) / 2
    return shell, system


def partial_thermalization(gibbs, a: int, b: int, lam: Fraction) -> RationalChannel:
    """Two-level partial thermalization: mixes levels a and b toward the
    Gibbs ratio with strength lam in [0, 1]; preserves the Gibbs vector."""
    g = tuple(as_fraction(x) for x in gibbs)
    d = len(g)
    lam = as_fraction(lam)
    if not 0 <= lam <= 1:
        raise ValueError("strength must lie in [0, 1]")
    if a == b or not (0 <= a < d and 0 <= b < d):
        raise ValueError("need two distinct valid levels")
    ga = g[a] / (g[a] + g[b])
    gb = g[b] / (g[a] + g[b])
    m = [[Fraction(int(i == j)) for i in range(d)] for j in range(d)]
    m[a][a] = 1 - lam + lam * ga
    m[a][b] = lam * ga
    m[b][a] = lam * gb
    m[b][b] = 1 - lam + lam * gb
    return RationalChannel(tuple(tuple(row) for row in m), g)


def compose(first: RationalChannel, second: RationalChannel) -> RationalChannel:
    """Channel applying ``first`` then ``second`` (exact matrix product)."""
    if first.gibbs != second.gibbs:
        raise ValueError("channels must share a Gibbs vector")
    d = first.dim
    m = tuple(tuple(sum(second.matrix[k][j] * first.matrix[j][i] for j in range(d))
                    for i in range(d)) for k in range(d))
    return RationalChannel(m, first.gibbs)


def random_channel(gibbs, rng: np.random.Generator, factors: int = 2,
                   strength_denominator: int = 6) -> RationalChannel:
    """Random Gibbs-preserving rational channel: a product of random
    two-level partial thermalizations with small rational strengths."""
    g = tuple(as_fraction(x) for x in gibbs)
    ch = identity_channel(g)
    d = len(g)
    for _ in range(factors):
        a, b = rng.choice(d, size=2, replace=False)
        lam = Fraction(int(rng.integers(0, strength_denominator + 1)),
                       strength_denominator)
        ch = compose(ch, partial_thermalization(g, int(a), int(b), lam))
    return ch
