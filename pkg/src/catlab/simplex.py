"""Probability-vector primitives shared by every other module.

All states are finite probability vectors (diagonal occupations of a
block-diagonal density operator).  Values are immutable after construction
and safe to share across threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Ingestion tolerance for "sums to one"; internal comparisons use 1e-12.
SUM_TOL = 1e-9
NEG_TOL = 1e-12
INTERNAL_TOL = 1e-12

# Default cap on vector length.  Tensor-power checks grow as d**k and must
# fail loudly instead of exhausting memory.
DIM_CAP = 2 ** 26


class CapError(Exception):
    """A requested object would exceed the configured dimension cap."""

    def __init__(self, message: str, requested: int = 0, cap: int = 0):
        super().__init__(message)
        self.requested = requested
        self.cap = cap


@dataclass(frozen=True)
class ProbVec:
    """Nonnegative vector summing to one.

    Entries in [-1e-12, 0) are clamped to zero; anything more negative is
    rejected.  The stored vector is renormalized so that the machine sum is
    exactly 1.0 (a single ulp-scale adjustment of the largest entry).
    """

    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.ndim != 1 or e.size == 0:
            raise ValueError("probability vector must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(e)):
            raise ValueError("probability vector entries must be finite")
        if np.any(e < -NEG_TOL):
            worst = int(np.argmin(e))
            raise ValueError(f"negative probability {e[worst]!r} at index {worst}")
        e[e < 0.0] = 0.0
        total = float(e.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1 within {SUM_TOL}")
        if total != 1.0:
            e /= total
        # fsum is the correctly-rounded true sum; at most two ulp-scale
        # corrections of the largest entry pin it to exactly 1
        for _ in range(2):
            residual = 1.0 - math.fsum(e)
            if residual == 0.0:
                break
            e[int(np.argmax(e))] += residual
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    @property
    def dim(self) -> int:
        return int(self.entries.size)

    @classmethod
    def uniform(cls, d: int) -> "ProbVec":
        if d < 1:
            raise ValueError("dimension must be positive")
        return _wrap(np.full(d, 1.0 / d))

    @classmethod
    def point(cls, d: int, index: int = 0) -> "ProbVec":
        e = np.zeros(d)
        e[index] = 1.0
        return _wrap(e)

    def __repr__(self):
        return f"ProbVec({list(self.entries)!r})"


def _wrap(entries: np.ndarray) -> ProbVec:
    """Build a ProbVec without validation or renormalization.

    Only for outputs that are guaranteed valid by construction (sorted or
    permuted copies, exact-arithmetic results); everything external goes
    through the validating constructor.
    """
    v = object.__new__(ProbVec)
    e = np.asarray(entries, dtype=float)
    if e.flags.writeable:
        e = e.copy()
        e.flags.writeable = False
    object.__setattr__(v, "entries", e)
    return v


@dataclass(frozen=True)
class Seed:
    """Counter-based seed: (root, stream) pairs give order-independent,
    reproducible per-trial generators."""

    root: int
    stream: int = 0

    def __post_init__(self):
        for name in ("root", "stream"):
            v = getattr(self, name)
            if not (0 <= int(v) < 2 ** 64):
                raise ValueError(f"{name} must be a 64-bit unsigned integer")

    def rng(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.root, spawn_key=(self.stream,))
        return np.random.default_rng(ss)

    def child(self, *keys: int) -> "Seed":
        """Derive an independent root for a sub-experiment, deterministically."""
        ss = np.random.SeedSequence(entropy=[self.root, self.stream, *map(int, keys)])
        return Seed(int(ss.generate_state(1, np.uint64)[0]), 0)


def tensor(a: ProbVec, b: ProbVec, cap: int = DIM_CAP) -> ProbVec:
    """Kronecker product of distributions; entry (i, j) = a_i * b_j."""
    requested = a.dim * b.dim
    if requested > cap:
        raise CapError(
            f"tensor product dimension {requested} exceeds cap {cap}",
            requested=requested, cap=cap,
        )
    return _wrap(np.kron(a.entries, b.entries))


def tensor_power(a: ProbVec, k: int, cap: int = DIM_CAP) -> ProbVec:
    if k < 0:
        raise ValueError("tensor power requires k >= 0")
    out = ProbVec(np.array([1.0]))
    for _ in range(k):
        out = tensor(out, a, cap=cap)
    return out


def direct_sum(blocks: list[tuple[float, ProbVec]], cap: int = DIM_CAP) -> ProbVec:
    """Weighted concatenation of blocks; weights must be a distribution."""
    if not blocks:
        raise ValueError("direct_sum requires at least one block")
    weights = np.array([w for w, _ in blocks], dtype=float)
    if np.any(weights < -NEG_TOL):
        raise ValueError("block weights must be nonnegative")
    if abs(weights.sum() - 1.0) > SUM_TOL:
        raise ValueError(f"block weights sum to {weights.sum()!r}, expected 1")
    total_dim = sum(b.dim for _, b in blocks)
    if total_dim > cap:
        raise CapError(f"direct sum dimension {total_dim} exceeds cap {cap}",
                       requested=total_dim, cap=cap)
    parts = [w * b.entries for w, b in blocks]
    return ProbVec(np.concatenate(parts))


def trace_distance(a: ProbVec, b: ProbVec) -> float:
    """Half the 1-norm of the difference; in [0, 1] for distributions."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return 0.5 * float(np.abs(a.entries - b.entries).sum())


def sort_desc(a: ProbVec) -> ProbVec:
    """Nonincreasing permutation of the entries; stable for equal entries."""
    order = np.argsort(-a.entries, kind="stable")
    return _wrap(a.entries[order])
