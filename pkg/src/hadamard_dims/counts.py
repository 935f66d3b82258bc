"""Parameter counts for surfaces of P^3 that are Hadamard products of two curves.

If a degree-d surface W is X * Y for curves X, Y, both curves are plane
curves of degree d, so such surfaces are parametrized by two planes and two
plane curves in them. For d >= 5 that family has dimension
``3 + 3 + 2*(binom(d+2, 2) - 1) = 6 + (d+2)(d+1) - 2``; for d = 4 the curves
can be taken projectively equivalent, giving ``3 + 3 + 14 + 8``. In both cases
the count is below ``binom(d+3, 3) - 1 = dim |O(d)|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import DegreeTooSmall

PGL3_DIM = 8
PLANES_DIM = 3


@dataclass(frozen=True)
class ParamCountReport:
    d: int
    dim_family: int
    dim_ambient: int
    terms: tuple[int, ...]

    @property
    def margin(self) -> int:
        return self.dim_ambient - self.dim_family

    @property
    def holds(self) -> bool:
        return self.dim_family < self.dim_ambient

    @property
    def summary(self) -> str:
        rel = "<" if self.holds else ">="
        return f"dim U_{self.d} = {self.dim_family} {rel} {self.dim_ambient} = dim |O({self.d})|"

    @property
    def breakdown(self) -> str:
        if self.d == 4:
            return (
                "planes 3 + 3, one plane quartic 14, projective equivalence 8: "
                + " + ".join(map(str, self.terms))
            )
        curves = comb(self.d + 2, 2) - 1
        return (
            f"planes 3 + 3, two plane curves of degree {self.d} with {curves} each: "
            f"6 + (d+2)(d+1) - 2 = 6 + 2*{curves}"
        )

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "dim_family": self.dim_family,
            "dim_ambient": self.dim_ambient,
            "margin": self.margin,
            "holds": self.holds,
            "terms": list(self.terms),
            "summary": self.summary,
            "breakdown": self.breakdown,
        }


def i4_parameter_counts(d: int) -> ParamCountReport:
    if d < 4:
        raise DegreeTooSmall(f"degree must be at least 4, got {d}")
    ambient = comb(d + 3, 3) - 1
    if d == 4:
        terms = (PLANES_DIM, PLANES_DIM, comb(6, 2) - 1, PGL3_DIM)
        return ParamCountReport(d, sum(terms), ambient, terms)
    terms = (PLANES_DIM, PLANES_DIM, (d + 2) * (d + 1), -2)
    return ParamCountReport(d, sum(terms), ambient, terms)
