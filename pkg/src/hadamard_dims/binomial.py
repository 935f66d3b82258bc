"""Bounded search for binomial hypersurfaces ``x^a - lam*x^b`` containing a variety."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import CoordinateDegenerate, SamplingExhausted
from .poly import default_variables, format_monomial, monomial_value, monomials
from .randomness import label, stream
from .variety import Variety, coordinate_support, draw_point

VERIFY_SAMPLES = 50
MAX_SAMPLES = 64
_DRAWS_PER_SAMPLE = 64


@dataclass(frozen=True)
class BinomialWitness:
    a: tuple[int, ...]
    b: tuple[int, ...]
    lam: int
    p: int

    @property
    def degree(self) -> int:
        return sum(self.a)

    def evaluate(self, point: Sequence[int]) -> int:
        return (monomial_value(self.a, point, self.p) - self.lam * monomial_value(self.b, point, self.p)) % self.p

    def form(self, variables: Sequence[str] | None = None) -> str:
        variables = variables or default_variables(len(self.a))
        return f"{format_monomial(self.a, variables)} - {self.lam}*{format_monomial(self.b, variables)}"


@dataclass(frozen=True)
class Found:
    witness: BinomialWitness
    samples: int


@dataclass(frozen=True)
class NotFoundUpTo:
    degree: int
    samples: int


BinomialResult = Union[Found, NotFoundUpTo]


def default_samples(n: int, max_degree: int) -> int:
    count = math.comb(max_degree + n, n)
    pairs = max(count * (count - 1) // 2, 1)
    return min(MAX_SAMPLES, 2 + math.ceil(math.log2(pairs)) if pairs > 1 else 2)


def torus_points(Y: Variety, count: int, rng) -> list[tuple[int, ...]]:
    """``count`` sampled points of Y with no zero coordinate."""
    out = []
    for _ in range(count * _DRAWS_PER_SAMPLE):
        point, _ = draw_point(Y, rng)
        if not point.on_delta():
            out.append(point.coords)
            if len(out) == count:
                return out
    raise SamplingExhausted(f"{Y.name}: too few samples off the coordinate hyperplanes")


def _ratio_key(e, points, p) -> tuple[int, ...]:
    values = [monomial_value(e, pt, p) for pt in points]
    inv = pow(values[0], -1, p)
    return tuple(v * inv % p for v in values[1:])


def binomial_containment(
    Y: Variety, max_degree: int, samples: int | None = None, seed: int = 0
) -> BinomialResult:
    """Look for a binomial of degree <= ``max_degree`` vanishing on ``Y``.

    Two monomials have a constant ratio on Y exactly when their value vectors
    over the samples are proportional, so monomials are bucketed by their
    normalized value vector instead of scanning pairs. Candidates are tried in
    (degree, first index, second index) order over descending-lex monomials and
    confirmed on fresh samples.
    """
    support = coordinate_support(Y, seed=seed)
    if support.inside_delta:
        raise CoordinateDegenerate(
            f"{Y.name} lies in x_i = 0 for i in {sorted(support.indices)}; monomial ratios are undefined"
        )
    p = Y.p
    if samples is None:
        samples = default_samples(Y.n, max_degree)
    rng = stream(seed, label("binomial"))
    points = torus_points(Y, samples, rng)
    fresh = None
    for d in range(1, max_degree + 1):
        monos = monomials(Y.n + 1, d)
        buckets: dict[tuple[int, ...], list[int]] = {}
        for idx, e in enumerate(monos):
            buckets.setdefault(_ratio_key(e, points, p), []).append(idx)
        candidates = sorted(
            (i, j) for group in buckets.values() for k, i in enumerate(group) for j in group[k + 1:]
        )
        for i, j in candidates:
            a, b = monos[i], monos[j]
            lam = monomial_value(a, points[0], p) * pow(monomial_value(b, points[0], p), -1, p) % p
            witness = BinomialWitness(a, b, lam, p)
            if fresh is None:
                fresh = torus_points(Y, VERIFY_SAMPLES, stream(seed, label("binomial_verify")))
            if all(witness.evaluate(pt) == 0 for pt in fresh):
                return Found(witness, samples)
    return NotFoundUpTo(max_degree, samples)
