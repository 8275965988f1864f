"""Exact simulation of the register-swap mixing channel on product inputs.

The channel averages, with equal weight 1/(m+1), the identity and the m
swaps of the system register with each catalyst register.  Applied to
rho (x) sigma^(x m) the output approaches sigma^(x (m+1)) at a rate set by
the max-relative entropy of rho from sigma; the square of the trace distance
is bounded by 2^{D_inf(rho||sigma)} / m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import entropy as ent
from .catalysis import catalyst_error_budget, conversion_rate_between
from .simplex import CapError, ProbVec, _wrap, trace_distance

#: cap on the joint dimension d**(m+1) (m <= 14 for qubits, m <= 9 for qutrits)
MIX_DIM_CAP = 60_000


@dataclass(frozen=True)
class MixState:
    """Joint output of the mixing channel over m+1 registers (register 0 is
    the system).  The joint is symmetric under relabeling the registers."""

    m: int
    rho: ProbVec
    sigma: ProbVec
    joint: ProbVec


def _power_raw(v: ProbVec, k: int) -> np.ndarray:
    out = np.array([1.0])
    for _ in range(k):
        out = np.kron(out, v.entries)
    return out


def mix_channel(rho: ProbVec, sigma: ProbVec, m: int, cap: int = MIX_DIM_CAP) -> MixState:
    """Average of the m+1 register placements of rho among copies of sigma."""
    if rho.dim != sigma.dim:
        raise ValueError("system and catalyst copies must share a dimension")
    if m < 1:
        raise ValueError("m must be at least 1")
    d = rho.dim
    joint_dim = d ** (m + 1)
    if joint_dim > cap:
        raise CapError(f"joint dimension {joint_dim} exceeds cap {cap}",
                       requested=joint_dim, cap=cap)
    base = _power_raw(sigma, m + 1)
    lattice = (d,) * (m + 1)
    if np.all(sigma.entries[rho.entries > 0] > 0):
        # ratio form: joint = base * mean_i rho(a_i)/sigma(a_i); exact for
        # rho = sigma (the channel fixes product states of identical copies)
        ratio = np.divide(rho.entries, sigma.entries,
                          out=np.zeros(d), where=sigma.entries > 0)
        acc = np.zeros(lattice)
        for i in range(m + 1):
            shape = [1] * (m + 1)
            shape[i] = d
            acc += ratio.reshape(shape)
        acc /= m + 1
        joint = (base.reshape(lattice) * acc).reshape(-1)
    else:
        joint = np.zeros(joint_dim)
        for i in range(m + 1):
            term = np.array([1.0])
            for reg in range(m + 1):
                term = np.kron(term, rho.entries if reg == i else sigma.entries)
            joint += term
        joint /= m + 1
    return MixState(m, rho, sigma, _wrap(joint))


def register_marginal(state: MixState, register: int) -> np.ndarray:
    """Marginal of one register; equals (m sigma + rho)/(m+1) for every register."""
    m, d = state.m, state.rho.dim
    lattice = state.joint.entries.reshape((d,) * (m + 1))
    axes = tuple(i for i in range(m + 1) if i != register)
    return lattice.sum(axis=axes)


def convex_split_bound(rho: ProbVec, sigma: ProbVec, m: int) -> float:
    """sqrt(2^{D_inf(rho||sigma)} / m), capped at 1 for reporting.

    Raises on a support violation; the caller perturbs sigma explicitly when
    needed.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    d_inf = ent.renyi_divergence(rho, sigma, math.inf)
    return min(1.0, math.sqrt(2.0 ** d_inf / m))


@dataclass(frozen=True)
class SplitVerification:
    m: int
    empirical: float
    bound: float
    ok: bool


def verify_convex_split(rho: ProbVec, sigma: ProbVec, m: int,
                        cap: int = MIX_DIM_CAP) -> SplitVerification:
    """Compare the exact mixed output against the product target."""
    state = mix_channel(rho, sigma, m, cap=cap)
    target = _wrap(_power_raw(sigma, m + 1))
    empirical = trace_distance(state.joint, target)
    bound = convex_split_bound(rho, sigma, m)
    return SplitVerification(m, empirical, bound, empirical <= bound + 1e-12)


@dataclass(frozen=True)
class ErrorCurvePoint:
    n: int
    r_n: float
    m: int
    delta: float
    nu_bound: float
    eps_c_bound: float
    eps_s_bound: float
    vacuous: bool


def theorem1_error_curve(rho: ProbVec, sigma: ProbVec, omega: ProbVec,
                         n_list: list[int], kappa: float) -> list[ErrorCurvePoint]:
    """Per-n catalyst and system error bounds for the universal protocol.

    The n-copy catalyst omega is first converted into m = floor(n r_n) copies
    of the target sigma (degenerate references), the mixing channel performs
    the conversion, and the preprocessing is undone.  The catalyst bound is
    2 delta(n) + nu(n) with delta(n) = exp(-n^kappa) and nu(n) the mixing
    bound at m; the system bound adds the exact mixing back-action
    d(rho, sigma)/(m+1) to delta(n).  When the rate has not yet taken off
    (m < 1) the bounds are reported vacuous at 1.
    """
    u_omega = ProbVec.uniform(omega.dim)
    u_sigma = ProbVec.uniform(sigma.dim)
    rows = []
    for n in n_list:
        rate = conversion_rate_between(omega, u_omega, sigma, u_sigma, int(n), kappa)
        delta = rate.delta_bound
        if rate.m < 1:
            rows.append(ErrorCurvePoint(int(n), rate.r_n, rate.m, delta,
                                        1.0, 1.0, 1.0, True))
            continue
        nu = convex_split_bound(rho, sigma, rate.m)
        eps_c = catalyst_error_budget(delta, nu)
        eps_s = delta + trace_distance(rho, sigma) / (rate.m + 1)
        rows.append(ErrorCurvePoint(int(n), rate.r_n, rate.m, delta,
                                    nu, eps_c, eps_s, False))
    return rows
