"""Monte Carlo studies: random-catalyst success rates, reachability sets,
copy-count coverage and multi-copy qubit catalysts.

Every estimator is a pure function of (config, seed): trials are keyed by a
counter-based stream so serial and parallel runs agree bitwise.  CSV
artifacts are byte-identical across reruns with the same config; wall times
are therefore reported only in the summary JSON, never in the CSVs.

CSV schemas (column order is part of the interface):

  fig2.csv      distribution,d_C,p_succ,ci95,n_trials,seed
  fig3.csv      k,fraction,ci95,n_pairs,seed
  fig4.csv      d_C,q1,q2,q3,class,p_succ,ci95
  fig4_cdf.csv  d_C,p_succ,cum_fraction
  boundary.csv  set,q1,q2,q3
  fig5.csv      d_C,p1,p2,p3,f,sampled,in_S,in_T,in_D,above_threshold
  fig5_cdf.csv  d_C,f,cum_fraction
  fig6.csv      n_qubits,r,p1,p2,p3,f,sampled,in_S,in_T,in_D,above_threshold
  fig6_cdf.csv  n_qubits,r,f,cum_fraction
"""
from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from .catalysis import embezzlement_bound, is_grid_sensitive, min_k_copy, second_laws_holds
from .entropy import AlphaGrid, ThermalContext
from .majorization import eps_catalytic_step, thermo_majorizes
from .simplex import CapError, ProbVec, Seed

SAMPLER_KINDS = ("rayleigh", "uniform", "exponential", "dirichlet_flat", "multicopy")

THREADS_ENV = "CATLAB_THREADS"


@dataclass(frozen=True)
class SamplerKind:
    """Catalyst sampling law.  The three random laws draw i.i.d. positives
    and normalize; ``multicopy`` is the deterministic n-qubit product of
    (1-r, r) factors."""

    kind: str
    r: float | None = None
    n_qubits: int | None = None

    def __post_init__(self):
        if self.kind not in SAMPLER_KINDS:
            raise ValueError(f"unknown sampler kind {self.kind!r}")
        if self.kind == "multicopy":
            if self.r is None or self.n_qubits is None:
                raise ValueError("multicopy sampler needs r and n_qubits")
            if not 0.0 <= self.r < 0.5:
                raise ValueError("multicopy r must lie in [0, 0.5)")
            if self.n_qubits < 1:
                raise ValueError("multicopy needs at least one qubit")
        elif self.r is not None or self.n_qubits is not None:
            raise ValueError(f"{self.kind} sampler takes no parameters")

    def dim(self, d_C: int) -> int:
        return 2 ** self.n_qubits if self.kind == "multicopy" else d_C

    @classmethod
    def parse(cls, text: str) -> "SamplerKind":
        parts = text.split(":")
        if parts[0] == "multicopy":
            if len(parts) != 3:
                raise ValueError("multicopy sampler syntax: multicopy:<r>:<n_qubits>")
            return cls("multicopy", r=float(parts[1]), n_qubits=int(parts[2]))
        if len(parts) != 1:
            raise ValueError(f"sampler {parts[0]!r} takes no parameters")
        return cls(parts[0])

    def label(self) -> str:
        if self.kind == "multicopy":
            return f"multicopy:{self.r!r}:{self.n_qubits}"
        return self.kind


def sample_catalyst(kind: SamplerKind, d_C: int, seed: Seed) -> ProbVec:
    """Draw one catalyst state of dimension d_C (or 2**n for multicopy).

    Normalized i.i.d. exponentials are exactly the flat simplex measure, so
    ``exponential`` and ``dirichlet_flat`` coincide by construction.
    """
    if kind.kind == "multicopy":
        single = np.array([1.0 - kind.r, kind.r])
        out = np.array([1.0])
        for _ in range(kind.n_qubits):
            out = np.kron(out, single)
        return ProbVec(out)
    if d_C < 2:
        raise ValueError("catalyst dimension must be at least 2")
    rng = seed.rng()
    if kind.kind == "rayleigh":
        x = rng.rayleigh(scale=1.0, size=d_C)
    elif kind.kind == "uniform":
        x = rng.random(size=d_C)
    else:  # exponential / dirichlet_flat
        x = rng.exponential(scale=1.0, size=d_C)
    total = x.sum()
    if total <= 0.0:
        x = np.full(d_C, 1.0)
        total = float(d_C)
    return ProbVec(x / total)


def dirichlet_state(d: int, seed: Seed) -> ProbVec:
    """Uniform draw from the probability simplex."""
    return sample_catalyst(SamplerKind("dirichlet_flat"), d, seed)


def ci95_half_width(p_hat: float, n: int) -> float:
    return 1.96 * np.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / n)


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_trials(fn, items):
    """Order-stable map over independent trials, threaded when requested."""
    workers = _thread_count()
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class ExperimentConfig:
    """Shared experiment parameters; per-study extras have defaults resolved
    by the individual runners."""

    d_S: int = 3
    d_C: int = 256
    mu: float = 0.1
    gamma_thd: float = 0.9
    N_C: int = 500
    N_S: int = 2000
    sampler: SamplerKind = field(default_factory=lambda: SamplerKind("exponential"))
    seed_root: int = 0
    beta: float = 1.0
    energies: tuple[float, ...] | None = None  # None = degenerate
    d_C_list: tuple[int, ...] | None = None
    k_max: int = 8
    n_initial: int = 60
    target_mode: str = "sample"  # sample | grid
    grid_step: float = 0.02
    multicopy_n_list: tuple[int, ...] = (4, 8, 10)
    multicopy_r_list: tuple[float, ...] = (0.0, 0.1, 0.2, 0.3, 0.4)

    def __post_init__(self):
        if self.d_S < 2:
            raise ValueError("system dimension must be at least 2")
        if not 0.0 <= self.mu < 1.0:
            raise ValueError("mu must lie in [0, 1) to stay below the embezzlement line")
        if not 0.0 < self.gamma_thd <= 1.0:
            raise ValueError("gamma_thd must lie in (0, 1]")
        if self.N_C < 1 or self.N_S < 1:
            raise ValueError("trial counts must be positive")
        if self.target_mode not in ("sample", "grid"):
            raise ValueError("target_mode must be 'sample' or 'grid'")

    def ctx(self) -> ThermalContext:
        if self.energies is None:
            return ThermalContext.degenerate(self.d_S, beta=self.beta)
        return ThermalContext.from_energies(np.asarray(self.energies), self.beta)

    def seed(self) -> Seed:
        return Seed(self.seed_root)

    def to_json_dict(self) -> dict:
        d = {
            "d_S": self.d_S, "d_C": self.d_C, "mu": self.mu,
            "gamma_thd": self.gamma_thd, "N_C": self.N_C, "N_S": self.N_S,
            "sampler": self.sampler.label(), "seed": self.seed_root,
            "beta": self.beta, "k_max": self.k_max, "n_initial": self.n_initial,
            "target_mode": self.target_mode, "grid_step": self.grid_step,
            "multicopy_n_list": list(self.multicopy_n_list),
            "multicopy_r_list": list(self.multicopy_r_list),
        }
        if self.energies is not None:
            d["energies"] = list(self.energies)
        if self.d_C_list is not None:
            d["d_C_list"] = list(self.d_C_list)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "ExperimentConfig":
        kw = dict(d)
        if "ctx" in kw:
            ctx_spec = kw.pop("ctx")
            if "degenerate" in ctx_spec:
                kw["d_S"] = int(ctx_spec["degenerate"])
            else:
                kw["energies"] = tuple(ctx_spec["energies"])
                kw["beta"] = float(ctx_spec.get("beta", 1.0))
                kw["d_S"] = len(kw["energies"])
        if "sampler" in kw and isinstance(kw["sampler"], str):
            kw["sampler"] = SamplerKind.parse(kw["sampler"])
        if "seed" in kw:
            kw["seed_root"] = int(kw.pop("seed"))
        for name in ("energies", "d_C_list", "multicopy_n_list", "multicopy_r_list"):
            if name in kw and kw[name] is not None:
                kw[name] = tuple(kw[name])
        return cls(**kw)

    def digest(self) -> str:
        blob = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class TrialRecord:
    experiment: str
    index: int
    inputs_digest: str
    outcome: float
    wall_time: float  # in-memory telemetry only; never written to CSV


@dataclass(frozen=True)
class PsuccEstimate:
    p_succ: float
    ci95: float
    successes: int
    trials: int
    cap_breaches: int
    eps_c: float


def estimate_psucc(p: ProbVec, q: ProbVec, cfg: ExperimentConfig,
                   d_C: int | None = None, sampler: SamplerKind | None = None,
                   seed: Seed | None = None, eps_c: float | None = None) -> PsuccEstimate:
    """Fraction of randomly drawn catalysts enabling p -> q within the
    allowed catalyst disturbance (mu times the embezzlement threshold)."""
    d_C = cfg.d_C if d_C is None else d_C
    sampler = cfg.sampler if sampler is None else sampler
    seed = cfg.seed() if seed is None else seed
    dim_c = sampler.dim(d_C)
    if eps_c is None:
        eps_c = cfg.mu * embezzlement_bound(cfg.d_S, dim_c)
    ctx = cfg.ctx()

    def one(i: int):
        c = sample_catalyst(sampler, d_C, Seed(seed.root, i))
        try:
            return 1 if eps_catalytic_step(p, q, c, eps_c, ctx) else 0
        except CapError:
            return -1

    outcomes = _map_trials(one, range(cfg.N_C))
    breaches = sum(1 for o in outcomes if o < 0)
    successes = sum(1 for o in outcomes if o == 1)
    p_hat = successes / cfg.N_C
    return PsuccEstimate(p_hat, float(ci95_half_width(p_hat, cfg.N_C)),
                         successes, cfg.N_C, breaches, eps_c)


@dataclass(frozen=True)
class TargetClass:
    label: str  # thermal | catalytic_only | unreachable
    margin: float
    grid_sensitive: bool


def classify_target(p: ProbVec, q: ProbVec, cfg: ExperimentConfig,
                    grid: AlphaGrid | None = None) -> TargetClass:
    """thermal: reachable directly; catalytic_only: reachable only with a
    catalyst; unreachable: the free-energy order forbids it."""
    ctx = cfg.ctx()
    if thermo_majorizes(p, q, ctx):
        return TargetClass("thermal", np.inf, False)
    ok, margin = second_laws_holds(p, q, ctx, grid)
    label = "catalytic_only" if ok else "unreachable"
    return TargetClass(label, margin, is_grid_sensitive(margin))


@dataclass(frozen=True)
class FEstimate:
    f: float | None
    sampled: int
    in_S: int
    in_T: int
    in_D: int
    unreachable: int
    above_threshold: int
    cap_breaches: int

    def counts(self) -> dict:
        return {"sampled": self.sampled, "in_S": self.in_S, "in_T": self.in_T,
                "in_D": self.in_D, "above_threshold": self.above_threshold}


def estimate_f(p: ProbVec, cfg: ExperimentConfig, d_C: int | None = None,
               sampler: SamplerKind | None = None, seed: Seed | None = None) -> FEstimate:
    """Fraction of the catalytically-activated targets of p that random
    catalysts reach with probability at least gamma_thd.

    Targets are drawn uniformly from the simplex; an empty activation set
    leaves f undefined (None) with the counts still reported.
    """
    seed = cfg.seed() if seed is None else seed
    target_seed = seed.child(1)
    grid = AlphaGrid.default()
    in_s = in_d = unreachable = above = breaches = 0
    for j in range(cfg.N_S):
        q = dirichlet_state(cfg.d_S, Seed(target_seed.root, j))
        cls = classify_target(p, q, cfg, grid)
        if cls.label == "thermal":
            in_s += 1
            continue
        if cls.label == "unreachable":
            unreachable += 1
            continue
        in_d += 1
        est = estimate_psucc(p, q, cfg, d_C=d_C, sampler=sampler,
                             seed=seed.child(2, j))
        breaches += est.cap_breaches
        if est.p_succ >= cfg.gamma_thd:
            above += 1
    f = above / in_d if in_d > 0 else None
    return FEstimate(f, cfg.N_S, in_s, in_s + in_d, in_d, unreachable, above, breaches)


@dataclass(frozen=True)
class KcopyPoint:
    k: int
    fraction: float
    ci95: float
    n_pairs: int


def kcopy_fraction(cfg: ExperimentConfig, k_max: int | None = None,
                   n_pairs: int | None = None) -> list[KcopyPoint]:
    """Share of catalytically-activated pairs that are k-copy convertible,
    as a function of k.  Requires a degenerate context (uniform reference)."""
    ctx = cfg.ctx()
    if not ctx.is_degenerate:
        raise ValueError("the copy-coverage study is stated for uniform references")
    k_max = cfg.k_max if k_max is None else k_max
    n_pairs = cfg.N_S if n_pairs is None else n_pairs
    pair_root = cfg.seed().child(3).root
    grid = AlphaGrid.default()
    min_ks: list[int | None] = []
    for j in range(n_pairs):
        p = dirichlet_state(cfg.d_S, Seed(pair_root, 2 * j))
        q = dirichlet_state(cfg.d_S, Seed(pair_root, 2 * j + 1))
        if classify_target(p, q, cfg, grid).label != "catalytic_only":
            continue
        try:
            min_ks.append(min_k_copy(p, q, ctx, k_max=k_max))
        except CapError:
            min_ks.append(None)
    n_cas = len(min_ks)
    points = []
    for k in range(1, k_max + 1):
        hits = sum(1 for mk in min_ks if mk is not None and mk <= k)
        frac = hits / n_cas if n_cas else 0.0
        points.append(KcopyPoint(k, frac, float(ci95_half_width(frac, max(n_cas, 1))),
                                 n_cas))
    return points


# ---------------------------------------------------------------------------
# reachable-set boundaries (for the plotting layer; science stays here)

def _simplex_plane_basis() -> tuple[np.ndarray, np.ndarray]:
    v1 = np.array([1.0, -1.0, 0.0]) / np.sqrt(2.0)
    v2 = np.array([1.0, 1.0, -2.0]) / np.sqrt(6.0)
    return v1, v2


def boundary_points(p: ProbVec, cfg: ExperimentConfig, which: str,
                    n_rays: int = 256) -> list[tuple[float, float, float]]:
    """Dense boundary sampling of the directly-reachable set ('S') or the
    catalytically-reachable set ('T') of a 3-level state.

    Both sets are star-shaped around the uniform reference point, so each
    boundary point is a bisection along a ray from the barycenter.
    """
    if cfg.d_S != 3:
        raise ValueError("boundary sampling is implemented for 3-level systems")
    ctx = cfg.ctx()
    grid = AlphaGrid.default()
    if which == "S":
        member = lambda q: thermo_majorizes(p, q, ctx)
    elif which == "T":
        member = lambda q: second_laws_holds(p, q, ctx, grid)[0]
    else:
        raise ValueError("which must be 'S' or 'T'")
    v1, v2 = _simplex_plane_basis()
    center = np.full(3, 1.0 / 3.0)
    pts = []
    for t in range(n_rays):
        theta = 2.0 * np.pi * t / n_rays
        direction = np.cos(theta) * v1 + np.sin(theta) * v2
        negative = direction < 0
        t_max = float(np.min(-center[negative] / direction[negative]))
        lo, hi = 0.0, t_max
        if member(ProbVec(np.clip(center + hi * direction, 0.0, None))):
            lo = hi
        else:
            for _ in range(40):
                mid = 0.5 * (lo + hi)
                q = ProbVec(np.clip(center + mid * direction, 0.0, None))
                if member(q):
                    lo = mid
                else:
                    hi = mid
        q = np.clip(center + lo * direction, 0.0, None)
        q /= q.sum()
        pts.append((float(q[0]), float(q[1]), float(q[2])))
    return pts


def grid_targets(step: float) -> list[ProbVec]:
    """All 3-level states on a barycentric grid with the given step."""
    n = round(1.0 / step)
    out = []
    for a in range(n + 1):
        for b in range(n + 1 - a):
            c = n - a - b
            out.append(ProbVec(np.array([a, b, c], dtype=float) / n))
    return out


# ---------------------------------------------------------------------------
# experiment runners

ANCHOR_SOURCE = (0.65, 0.2, 0.15)
ANCHOR_TARGET = (0.5, 0.4, 0.1)

FIG2_DCS = (4, 8, 16, 32, 64, 128, 256)
FIG45_DCS = (16, 64, 256)
FIG2_SAMPLERS = ("rayleigh", "uniform", "exponential")


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write_csv(path: Path, header: list[str], rows: list[tuple]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(x) for x in row) for row in rows)
    path.write_bytes(("\n".join(lines) + "\n").encode())


def _cdf_rows(values: list[float], prefix: tuple = ()) -> list[tuple]:
    ordered = sorted(values)
    n = len(ordered)
    return [prefix + (v, (i + 1) / n) for i, v in enumerate(ordered)]


def run_fig2(cfg: ExperimentConfig, out: Path) -> dict:
    """Success probability of random catalysts for the anchor conversion,
    swept over catalyst dimension and sampling law."""
    p = ProbVec(np.array(ANCHOR_SOURCE))
    q = ProbVec(np.array(ANCHOR_TARGET))
    d_cs = cfg.d_C_list or FIG2_DCS
    rows = []
    for name in FIG2_SAMPLERS:
        sampler = SamplerKind(name)
        for d_c in d_cs:
            est = estimate_psucc(p, q, cfg, d_C=d_c, sampler=sampler,
                                 seed=cfg.seed().child(10, d_c, FIG2_SAMPLERS.index(name)))
            rows.append((name, d_c, est.p_succ, est.ci95, est.trials, cfg.seed_root))
    _write_csv(out / "fig2.csv",
               ["distribution", "d_C", "p_succ", "ci95", "n_trials", "seed"], rows)
    return {"rows": len(rows), "outputs": ["fig2.csv"]}


def run_fig3(cfg: ExperimentConfig, out: Path) -> dict:
    """Copy-coverage curve: share of activated pairs convertible within k copies."""
    points = kcopy_fraction(cfg)
    rows = [(pt.k, pt.fraction, pt.ci95, pt.n_pairs, cfg.seed_root) for pt in points]
    _write_csv(out / "fig3.csv", ["k", "fraction", "ci95", "n_pairs", "seed"], rows)
    return {"rows": len(rows), "outputs": ["fig3.csv"]}


def _targets_for(cfg: ExperimentConfig, seed: Seed) -> list[ProbVec]:
    if cfg.target_mode == "grid":
        return grid_targets(cfg.grid_step)
    return [dirichlet_state(cfg.d_S, Seed(seed.root, j)) for j in range(cfg.N_S)]


def run_fig4(cfg: ExperimentConfig, out: Path) -> dict:
    """Success probability over the whole target simplex for the anchor
    source state, per catalyst dimension, plus reachable-set boundaries."""
    p = ProbVec(np.array(ANCHOR_SOURCE))
    d_cs = cfg.d_C_list or FIG45_DCS
    targets = _targets_for(cfg, cfg.seed().child(40))
    grid = AlphaGrid.default()
    rows, cdf_rows = [], []
    for d_c in d_cs:
        vals = []
        for j, q in enumerate(targets):
            cls = classify_target(p, q, cfg, grid)
            if cls.label == "catalytic_only":
                est = estimate_psucc(p, q, cfg, d_C=d_c, seed=cfg.seed().child(41, d_c, j))
                ps, ci = est.p_succ, est.ci95
                vals.append(ps)
            else:
                ps, ci = (1.0, 0.0) if cls.label == "thermal" else (0.0, 0.0)
            e = q.entries
            rows.append((d_c, float(e[0]), float(e[1]), float(e[2]), cls.label, ps, ci))
        if vals:
            cdf_rows.extend(_cdf_rows(vals, prefix=(d_c,)))
    _write_csv(out / "fig4.csv",
               ["d_C", "q1", "q2", "q3", "class", "p_succ", "ci95"], rows)
    _write_csv(out / "fig4_cdf.csv", ["d_C", "p_succ", "cum_fraction"], cdf_rows)
    boundary_rows = []
    for which in ("S", "T"):
        for q1, q2, q3 in boundary_points(p, cfg, which):
            boundary_rows.append((which, q1, q2, q3))
    _write_csv(out / "boundary.csv", ["set", "q1", "q2", "q3"], boundary_rows)
    return {"rows": len(rows), "outputs": ["fig4.csv", "fig4_cdf.csv", "boundary.csv"]}


def _f_sweep(cfg: ExperimentConfig, out: Path, stem: str, columns, combos) -> dict:
    """Shared driver for the activation-fraction sweeps."""
    rows, cdf_rows = [], []
    for combo_key, combo_prefix, d_c, sampler in combos:
        fs = []
        for i in range(cfg.n_initial):
            p = dirichlet_state(cfg.d_S, Seed(cfg.seed().child(50, *combo_key).root, i))
            est = estimate_f(p, cfg, d_C=d_c, sampler=sampler,
                             seed=cfg.seed().child(51, *combo_key, i))
            e = p.entries
            f_val = -1.0 if est.f is None else est.f
            rows.append(combo_prefix + (float(e[0]), float(e[1]), float(e[2]), f_val,
                                        est.sampled, est.in_S, est.in_T, est.in_D,
                                        est.above_threshold))
            if est.f is not None:
                fs.append(est.f)
        if fs:
            cdf_rows.extend(_cdf_rows(fs, prefix=combo_prefix))
    _write_csv(out / f"{stem}.csv", columns, rows)
    cdf_cols = columns[: len(combos[0][1])] + ["f", "cum_fraction"]
    _write_csv(out / f"{stem}_cdf.csv", cdf_cols, cdf_rows)
    return {"rows": len(rows), "outputs": [f"{stem}.csv", f"{stem}_cdf.csv"]}


def run_fig5(cfg: ExperimentConfig, out: Path) -> dict:
    """Activation fraction f over random initial states, per catalyst dimension."""
    d_cs = cfg.d_C_list or FIG45_DCS
    combos = [((d_c,), (d_c,), d_c, None) for d_c in d_cs]
    return _f_sweep(cfg, out, "fig5",
                    ["d_C", "p1", "p2", "p3", "f", "sampled", "in_S", "in_T",
                     "in_D", "above_threshold"], combos)


def run_fig6(cfg: ExperimentConfig, out: Path) -> dict:
    """Activation fraction with deterministic multi-qubit product catalysts."""
    cfg1 = replace(cfg, N_C=1)  # one fixed catalyst per (n, r): success is 0/1
    combos = []
    for n in cfg.multicopy_n_list:
        for r in cfg.multicopy_r_list:
            sampler = SamplerKind("multicopy", r=float(r), n_qubits=int(n))
            combos.append(((n, round(r * 1000)), (n, float(r)), cfg.d_C, sampler))
    return _f_sweep(cfg1, out, "fig6",
                    ["n_qubits", "r", "p1", "p2", "p3", "f", "sampled", "in_S",
                     "in_T", "in_D", "above_threshold"], combos)


RUNNERS = {"fig2": run_fig2, "fig3": run_fig3, "fig4": run_fig4,
           "fig5": run_fig5, "fig6": run_fig6}


def run_experiment(cfg: ExperimentConfig, which: str, out_dir: str | Path) -> dict:
    """Run one named study, writing CSV artifacts plus a summary JSON.

    Rerunning with an identical config reproduces the CSV bytes exactly; the
    summary carries the wall time and is the only non-deterministic output.
    """
    if which not in RUNNERS:
        raise ValueError(f"unknown experiment {which!r}; choose from {sorted(RUNNERS)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    result = RUNNERS[which](cfg, out)
    elapsed = time.perf_counter() - start
    summary = {
        "experiment": which,
        "config": cfg.to_json_dict(),
        "config_digest": cfg.digest(),
        "version": __version__,
        "rows": result["rows"],
        "outputs": result["outputs"],
        "elapsed_seconds": elapsed,
    }
    (out / f"{which}_summary.json").write_text(
        json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return summary
