"""Hadamard products of points and varieties, and their dimensions.

The dimension of ``X_1 * ... * X_k`` at a general point is the rank of the
stacked frame ``[D_1 F_1 | ... | D_k F_k]`` minus one, where ``F_j`` is a
tangent frame of ``X_j`` at a sampled point ``P_j`` and ``D_j`` is the
diagonal matrix of the coordinatewise product of the other ``P_i`` (product
rule for the coordinatewise product map).
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import EmptyProduct, OnDelta, PreconditionViolated, ShapeMismatch, UndefinedProduct
from .exactmath import random_invertible, random_prime, rank
from .poly import MultiPoly
from .randomness import derive_seed, label, stream
from .variety import (
    Param,
    ProjectivePoint,
    TangentFrame,
    Variety,
    apply_transform,
    coordinate_support,
    draw_tangent,
    intrinsic_dim,
    sample_parameters,
)

log = logging.getLogger(__name__)

HEDGE_PRIMES = 2
POWER_NOTE = (
    "Hadamard power Y^k: k-fold Hadamard product of Y with itself, "
    "expected dimension min{n, k*dim Y}"
)


def expected_dim(n: int, dims: Sequence[int]) -> int:
    return min(n, sum(dims))


def hadamard_point(P: ProjectivePoint, Q: ProjectivePoint) -> ProjectivePoint:
    if P.p != Q.p or P.n != Q.n:
        raise ShapeMismatch("points live in different spaces")
    coords = tuple(a * b % P.p for a, b in zip(P.coords, Q.coords))
    if not any(coords):
        raise UndefinedProduct(f"{P} * {Q} is undefined: every coordinate product vanishes")
    return ProjectivePoint(coords, P.p)


def hadamard_inverse(P: ProjectivePoint) -> ProjectivePoint:
    if P.on_delta():
        raise OnDelta(f"{P} has a zero coordinate")
    return ProjectivePoint(tuple(pow(c, -1, P.p) for c in P.coords), P.p)


def _shift(f: MultiPoly, before: int, after: int) -> MultiPoly:
    nvars = before + f.nvars + after
    return MultiPoly.from_dict(
        nvars, f.p, {(0,) * before + e + (0,) * after: c for e, c in f.terms}
    )


def hadamard_param_product(X: Param, Y: Param, seed: int = 0) -> Param:
    """Parametrization of ``X * Y`` on the concatenated parameter groups."""
    if X.n != Y.n or X.p != Y.p:
        raise ShapeMismatch("factors must share the ambient space and prime")
    mx, my = X.nparams, Y.nparams
    comps = tuple(_shift(f, 0, my) * _shift(g, mx, 0) for f, g in zip(X.components, Y.components))
    name = f"{X.name}*{Y.name}"
    if all(c.is_zero for c in comps):
        raise EmptyProduct(f"{name}: the Hadamard product is empty")
    rng = stream(seed, label("hadamard_param_product"))
    for _ in range(32):
        px, py = sample_parameters(X, rng), sample_parameters(Y, rng)
        if any(a * b % X.p for a, b in zip(X.image(px), Y.image(py))):
            break
    else:
        raise EmptyProduct(f"{name}: 32 random pairs all had undefined products")
    factors = (X.factors or (X,)) + (Y.factors or (Y,))
    return Param(name, X.n, comps, X.groups + Y.groups, X.param_names + Y.param_names, factors)


@dataclass
class TrialRecord:
    trial: int
    prime: int
    points: list[tuple[int, ...]]
    rank: int | None
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "prime": self.prime,
            "points": [list(pt) for pt in self.points],
            "rank": self.rank,
            "degenerate": self.degenerate,
        }


@dataclass
class DimensionReport:
    names: list[str]
    n: int
    dims: list[int]
    expected: int
    observed: int
    trials: list[TrialRecord] = field(default_factory=list)
    primes: list[int] = field(default_factory=list)
    note: str | None = None

    @property
    def verdict(self) -> str:
        if all(t.degenerate for t in self.trials):
            return "EMPTY"
        if self.observed == self.expected:
            return "MATCH"
        return f"DEFECT({self.expected - self.observed})"

    @property
    def defect(self) -> int:
        return self.expected - self.observed

    def to_dict(self) -> dict:
        return {
            "names": list(self.names),
            "n": self.n,
            "dims": list(self.dims),
            "expected": self.expected,
            "observed": self.observed,
            "verdict": self.verdict,
            "primes": list(self.primes),
            "note": self.note,
            "trials": [t.to_dict() for t in self.trials],
        }


def stacked_frame(frames: Sequence[TangentFrame]) -> list[list[int]]:
    """Matrix ``[D_1 F_1 | ... | D_k F_k]`` with rows indexed by coordinates."""
    p = frames[0].point.p
    size = frames[0].point.n + 1
    rows: list[list[int]] = [[] for _ in range(size)]
    for j, frame in enumerate(frames):
        scale = [1] * size
        for i, other in enumerate(frames):
            if i != j:
                scale = [s * c % p for s, c in zip(scale, other.point.coords)]
        for r in range(size):
            rows[r].extend(scale[r] * col[r] % p for col in frame.columns)
    return rows


def stacked_rank(frames: Sequence[TangentFrame]) -> int:
    return rank(stacked_frame(frames), frames[0].point.p)


def product_defined(points: Sequence[ProjectivePoint]) -> bool:
    p = points[0].p
    for i in range(points[0].n + 1):
        v = 1
        for P in points:
            v = v * P.coords[i] % p
        if v:
            return True
    return False


def _run_trial(varieties: Sequence[Variety], seed: int, t: int) -> TrialRecord:
    frames = [
        draw_tangent(X, stream(seed, label("multi_dim"), t, j)) for j, X in enumerate(varieties)
    ]
    points = [f.point for f in frames]
    coords = [pt.coords for pt in points]
    p = varieties[0].p
    if not product_defined(points):
        return TrialRecord(t, p, coords, None, True)
    return TrialRecord(t, p, coords, stacked_rank(frames), False)


def _rebuildable(varieties: Sequence[Variety]) -> bool:
    return all(X.source is not None for X in varieties)


def hedge_primes(seed: int, exclude: int, count: int = HEDGE_PRIMES) -> list[int]:
    out: list[int] = []
    i = 0
    while len(out) < count:
        q = random_prime(62, derive_seed(seed, label("hedge"), i))
        if q != exclude and q not in out:
            out.append(q)
        i += 1
    return out


def _merge_hedge(report: DimensionReport, rerun: Callable[[int], DimensionReport], seed: int) -> DimensionReport:
    """Re-run a DEFECT report under further primes and keep the best rank."""
    for q in hedge_primes(seed, report.primes[0]):
        try:
            other = rerun(q)
        except EmptyProduct as exc:
            other = exc.report
        if other is None:
            continue
        report.trials.extend(other.trials)
        report.primes.append(q)
        report.observed = max(report.observed, other.observed)
    return report


def multi_dim(
    varieties: Sequence[Variety],
    trials: int = 8,
    seed: int = 0,
    *,
    dims: Sequence[int] | None = None,
    hedge: bool = True,
    threads: int = 1,
    note: str | None = None,
) -> DimensionReport:
    """Dimension of ``X_1 * ... * X_k`` by max stacked-frame rank over trials.

    Trials whose sampled points have an undefined product are recorded as
    degenerate and ignored. If every trial is degenerate, :class:`EmptyProduct`
    is raised carrying the report. A DEFECT verdict is re-checked under two
    more primes when every input can be rebuilt from its description file.
    """
    if not varieties:
        raise ValueError("need at least one variety")
    n = varieties[0].n
    if any(X.n != n or X.p != varieties[0].p for X in varieties):
        raise ShapeMismatch("all factors must share the ambient space and prime")
    if dims is None:
        dims = [intrinsic_dim(X, seed=seed) for X in varieties]
    p = varieties[0].p

    def one(t: int) -> TrialRecord:
        return _run_trial(varieties, seed, t)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            records = list(pool.map(one, range(trials)))
    else:
        records = [one(t) for t in range(trials)]

    good = [r.rank for r in records if not r.degenerate]
    report = DimensionReport(
        names=[X.name for X in varieties],
        n=n,
        dims=list(dims),
        expected=expected_dim(n, dims),
        observed=max(good) - 1 if good else -1,
        trials=records,
        primes=[p],
        note=note,
    )
    if not good:
        raise EmptyProduct(f"{' * '.join(report.names)}: every trial was degenerate", report)
    if hedge and report.verdict.startswith("DEFECT") and _rebuildable(varieties):
        log.info("defect %d at p=%d, re-checking under more primes", report.defect, p)

        def rerun(q: int) -> DimensionReport:
            rebuilt = [X.source.build(q) for X in varieties]
            return multi_dim(rebuilt, trials, seed, dims=dims, hedge=False, threads=threads)

        _merge_hedge(report, rerun, seed)
    return report


def terracini_dim(X: Variety, Y: Variety, trials: int = 8, seed: int = 0, **kw) -> DimensionReport:
    return multi_dim([X, Y], trials, seed, **kw)


def hadamard_power(Y: Variety, k: int, trials: int = 8, seed: int = 0, **kw) -> DimensionReport:
    if k < 1:
        raise ValueError("k must be at least 1")
    dim = intrinsic_dim(Y, seed=seed)
    return multi_dim([Y] * k, trials, seed, dims=[dim] * k, note=POWER_NOTE, **kw)


TWIST_MODES = ("fix_last", "twist_all", "none")


@dataclass(frozen=True)
class TwistConfig:
    mode: str = "fix_last"
    trials: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.mode not in TWIST_MODES:
            raise ValueError(f"mode must be one of {TWIST_MODES}")

    def twisted_slots(self, k: int) -> range:
        return {"fix_last": range(k - 1), "twist_all": range(k), "none": range(0)}[self.mode]


@dataclass
class TwistResult:
    config: TwistConfig
    reports: list[DimensionReport]

    @property
    def successes(self) -> int:
        return sum(r.verdict == "MATCH" for r in self.reports)

    @property
    def summary(self) -> str:
        return f"{self.successes}/{len(self.reports)} trials at expected dimension"


def _twisted_trial(varieties: Sequence[Variety], dims: Sequence[int], cfg: TwistConfig, t: int) -> DimensionReport:
    p, n = varieties[0].p, varieties[0].n
    twisted = list(varieties)
    for j in cfg.twisted_slots(len(varieties)):
        g = random_invertible(n, p, cfg.seed, label("twist"), t, j)
        twisted[j] = apply_transform(varieties[j], g)
    try:
        return multi_dim(twisted, 1, derive_seed(cfg.seed, label("twist_trial"), t), dims=dims, hedge=False)
    except EmptyProduct as exc:
        return exc.report


def twist_experiment(varieties: Sequence[Variety], cfg: TwistConfig) -> TwistResult:
    """Dimension of twisted Hadamard products ``g_1(X_1) * ... * X_k``.

    Each trial draws fresh random matrices for the twisted slots and measures
    the product with one inner sample.
    """
    if cfg.mode == "fix_last":
        support = coordinate_support(varieties[-1], seed=cfg.seed)
        if support.inside_delta:
            raise PreconditionViolated(
                f"fix_last leaves {varieties[-1].name} untwisted, but it lies in the coordinate "
                f"hyperplanes x_i = 0 for i in {sorted(support.indices)}; every product with it "
                "stays inside them"
            )
    dims = [intrinsic_dim(X, seed=cfg.seed) for X in varieties]
    reports = []
    for t in range(cfg.trials):
        report = _twisted_trial(varieties, dims, cfg, t)
        for r in report.trials:
            r.trial = t
        if report.verdict.startswith("DEFECT") and _rebuildable(varieties):
            _merge_hedge(
                report,
                lambda q: _twisted_trial([X.source.build(q) for X in varieties], dims, cfg, t),
                derive_seed(cfg.seed, t),
            )
        reports.append(report)
    log.info("twist %s: %d/%d", cfg.mode, sum(r.verdict == "MATCH" for r in reports), cfg.trials)
    return TwistResult(cfg, reports)
