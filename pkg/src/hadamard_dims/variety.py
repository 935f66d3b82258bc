"""Projective varieties given by a parametrization or by implicit equations.

Two representations exist. :class:`Param` holds ``n+1`` polynomials in one or
more groups of parameters, each component multihomogeneous of a common
multidegree (one group for an ordinary rational map, several groups for a
Hadamard product). :class:`Implicit` holds homogeneous generators in
``x0..xn`` together with a declared dimension.

Points are normalized so the first nonzero coordinate is 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Sequence, Union

from .errors import (
    DimensionMismatch,
    NoPointFound,
    ShapeMismatch,
    SingularPoint,
    UnsupportedRepresentation,
)
from .exactmath import (
    Matrix,
    independent_columns,
    kernel_basis,
    mat_inverse,
    mat_vec,
    rank,
    transpose,
)
from .poly import MultiPoly, _mul, dense_roots, evaluate, jacobian, substitute_linear
from .randomness import field_vector, label, stream

if TYPE_CHECKING:
    from .catalogue import VarietySpec

MAX_RETRIES = 64


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[int, ...]
    p: int

    def __post_init__(self):
        coords = tuple(int(c) % self.p for c in self.coords)
        lead = next((c for c in coords if c), 0)
        if not lead:
            raise ValueError("the zero vector is not a projective point")
        inv = pow(lead, -1, self.p)
        object.__setattr__(self, "coords", tuple(c * inv % self.p for c in coords))

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def on_delta(self) -> bool:
        return 0 in self.coords

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class Param:
    name: str
    n: int
    components: tuple[MultiPoly, ...]
    groups: tuple[int, ...]
    param_names: tuple[str, ...] = ()
    factors: tuple[Param, ...] = ()
    source: VarietySpec | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.components) != self.n + 1:
            raise ShapeMismatch(f"{self.name}: need {self.n + 1} components, got {len(self.components)}")
        m = sum(self.groups)
        if any(f.nvars != m for f in self.components):
            raise ShapeMismatch(f"{self.name}: components must share {m} parameters")
        multidegrees = set()
        for f in self.components:
            multidegrees |= f.group_degrees(self.groups)
        if len(multidegrees) > 1:
            raise ShapeMismatch(f"{self.name}: components are not homogeneous of a common degree")

    @property
    def p(self) -> int:
        return self.components[0].p

    @property
    def nparams(self) -> int:
        return sum(self.groups)

    def image(self, params: Sequence[int]) -> list[int]:
        return [evaluate(f, params) for f in self.components]


@dataclass(frozen=True)
class Implicit:
    name: str
    n: int
    generators: tuple[MultiPoly, ...]
    declared_dim: int
    known_point: ProjectivePoint | None = None
    source: VarietySpec | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.generators:
            raise ShapeMismatch(f"{self.name}: at least one generator required")
        if any(g.nvars != self.n + 1 for g in self.generators):
            raise ShapeMismatch(f"{self.name}: generators must be in {self.n + 1} variables")
        if any(not g.is_homogeneous() for g in self.generators):
            raise ShapeMismatch(f"{self.name}: generators must be homogeneous")
        if not 0 <= self.declared_dim <= self.n - 1:
            raise ShapeMismatch(f"{self.name}: declared dimension must lie in [0, n-1]")

    @property
    def p(self) -> int:
        return self.generators[0].p

    def contains(self, point: Sequence[int]) -> bool:
        return all(evaluate(g, point) == 0 for g in self.generators)


Variety = Union[Param, Implicit]


@dataclass(frozen=True)
class TangentFrame:
    """Basis (as columns) of the affine-cone tangent space at ``point``."""

    point: ProjectivePoint
    columns: tuple[tuple[int, ...], ...]

    @property
    def matrix(self) -> Matrix:
        return transpose([list(c) for c in self.columns], self.point.n + 1)

    @property
    def dim(self) -> int:
        return len(self.columns) - 1


@dataclass(frozen=True)
class CoordinateSupport:
    """Indices ``i`` with the variety contained in the hyperplane ``x_i = 0``."""

    n: int
    indices: frozenset[int]

    @property
    def inside_delta(self) -> bool:
        return bool(self.indices)


def sample_parameters(X: Param, rng) -> list[int]:
    """Random parameter vector whose image is not the zero vector."""
    for _ in range(MAX_RETRIES):
        params = field_vector(rng, X.p, X.nparams)
        if any(X.image(params)):
            return params
    raise NoPointFound(f"{X.name}: every draw hit the base locus")


def restrict_to_line(f: MultiPoly, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Dense coefficients of ``lam -> f(a + lam*b)``."""
    p = f.p
    out: list[int] = []
    for e, c in f.terms:
        term = [c]
        for ai, bi, k in zip(a, b, e):
            for _ in range(k):
                term = _mul(term, [ai % p, bi % p], p)
        n = max(len(out), len(term))
        out = [((out[i] if i < len(out) else 0) + (term[i] if i < len(term) else 0)) % p for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def slice_points(X: Implicit, a: Sequence[int], b: Sequence[int]) -> list[ProjectivePoint]:
    """Points ``a + lam*b`` of a hypersurface on the line through ``a`` and ``b``."""
    (f,) = X.generators
    coeffs = restrict_to_line(f, a, b)
    if not coeffs:
        raise UnsupportedRepresentation("the line lies on the hypersurface")
    p = X.p
    points = []
    for lam in sorted(dense_roots(coeffs, p)):
        v = [(ai + lam * bi) % p for ai, bi in zip(a, b)]
        if any(v):
            points.append(ProjectivePoint(tuple(v), p))
    return points


def _sample_implicit(X: Implicit, rng) -> ProjectivePoint:
    if len(X.generators) > 1:
        if X.known_point is None:
            raise UnsupportedRepresentation(
                f"{X.name}: sampling needs a single generator or a known point"
            )
        return X.known_point
    p = X.p
    for _ in range(MAX_RETRIES):
        a = field_vector(rng, p, X.n + 1)
        b = field_vector(rng, p, X.n + 1)
        coeffs = restrict_to_line(X.generators[0], a, b)
        if not coeffs:
            roots = [int(rng.integers(0, p, dtype="int64"))]
        else:
            roots = sorted(dense_roots(coeffs, p, seed=int(rng.integers(0, 2**31))))
        if not roots:
            continue
        lam = roots[int(rng.integers(0, len(roots)))]
        v = [(ai + lam * bi) % p for ai, bi in zip(a, b)]
        if any(v):
            return ProjectivePoint(tuple(v), p)
    raise NoPointFound(f"{X.name}: no point found on {MAX_RETRIES} random lines")


def draw_point(X: Variety, rng) -> tuple[ProjectivePoint, list[int] | None]:
    """Random point plus, for parametrized varieties, the parameters used."""
    if isinstance(X, Param):
        params = sample_parameters(X, rng)
        return ProjectivePoint(tuple(X.image(params)), X.p), params
    return _sample_implicit(X, rng), None


def sample_point(X: Variety, seed: int = 0, *path: int) -> ProjectivePoint:
    return draw_point(X, stream(seed, label("sample_point"), *path))[0]


def tangent_frame(
    X: Variety,
    at: Sequence[int] | ProjectivePoint,
    generic_rank: int | None = None,
) -> TangentFrame:
    """Affine-cone tangent space of ``X`` at a parameter vector or a point.

    For a parametrization the frame is the column space of the Jacobian, with
    the image point appended when it is not already in that span (this only
    happens for maps of degree 0 mod p). ``generic_rank`` lets callers reject
    samples whose rank falls below a previously certified value.
    """
    if isinstance(X, Param):
        if len(at) != X.nparams:
            raise ShapeMismatch(f"{X.name}: expected {X.nparams} parameters")
        image = X.image(at)
        if not any(image):
            raise SingularPoint(f"{X.name}: parameters map to the base locus")
        J = jacobian(X.components, at)
        cols = transpose(J, X.nparams) + [image]
        basis = independent_columns(cols, X.p)
        if generic_rank is not None and len(basis) < generic_rank:
            raise SingularPoint(f"{X.name}: rank {len(basis)} below generic rank {generic_rank}")
        return TangentFrame(ProjectivePoint(tuple(image), X.p), tuple(tuple(c) for c in basis))
    point = at if isinstance(at, ProjectivePoint) else ProjectivePoint(tuple(at), X.p)
    if not X.contains(point.coords):
        raise ValueError(f"{point} does not lie on {X.name}")
    J = jacobian(X.generators, point.coords)
    K = kernel_basis(J, X.p, X.n + 1)
    columns = tuple(tuple(c) for c in transpose(K, 0)) if K and K[0] else ()
    if len(columns) > X.declared_dim + 1:
        raise SingularPoint(f"{X.name}: tangent space at {point} is too large")
    return TangentFrame(point, columns)


def draw_tangent(X: Variety, rng, generic_rank: int | None = None) -> TangentFrame:
    """Tangent frame at a random point, resampling singular draws."""
    for _ in range(MAX_RETRIES):
        point, params = draw_point(X, rng)
        try:
            return tangent_frame(X, params if params is not None else point, generic_rank)
        except SingularPoint:
            if isinstance(X, Implicit) and len(X.generators) > 1:
                raise
    raise NoPointFound(f"{X.name}: only singular points sampled")


def intrinsic_dim(X: Variety, trials: int = 8, seed: int = 0) -> int:
    if isinstance(X, Param):
        best = 0
        for t in range(trials):
            rng = stream(seed, label("intrinsic_dim"), t)
            best = max(best, len(draw_tangent(X, rng).columns))
        return best - 1
    # smooth points minimize the tangent dimension; take the smallest seen
    rng = stream(seed, label("intrinsic_dim"))
    seen = []
    for _ in range(trials):
        point, _ = draw_point(X, rng)
        J = jacobian(X.generators, point.coords)
        seen.append((X.n + 1 - rank(J, X.p) - 1, point))
    dim, point = min(seen, key=lambda s: s[0])
    if dim != X.declared_dim:
        raise DimensionMismatch(
            f"{X.name}: declared dimension {X.declared_dim}, tangent space at {point} has dimension {dim}"
        )
    return X.declared_dim


def coordinate_support(X: Variety, samples: int = 8, seed: int = 0) -> CoordinateSupport:
    if isinstance(X, Param):
        return CoordinateSupport(X.n, frozenset(i for i, f in enumerate(X.components) if f.is_zero))
    rng = stream(seed, label("coordinate_support"))
    zero = set(range(X.n + 1))
    for _ in range(samples):
        point, _ = draw_point(X, rng)
        zero &= {i for i, c in enumerate(point.coords) if c == 0}
    return CoordinateSupport(X.n, frozenset(zero))


def apply_transform(X: Variety, g: Matrix) -> Variety:
    """Image ``g(X)`` under the projective transformation with matrix ``g``."""
    if len(g) != X.n + 1:
        raise ShapeMismatch(f"transform must be {X.n + 1}x{X.n + 1}")
    g_inv = mat_inverse(g, X.p)
    name = f"g({X.name})"
    if isinstance(X, Param):
        comps = []
        for row in g:
            acc = MultiPoly(X.nparams, X.p)
            for c, f in zip(row, X.components):
                if c:
                    acc = acc + f.scale(c)
            comps.append(acc)
        return Param(name, X.n, tuple(comps), X.groups, X.param_names)
    gens = tuple(substitute_linear(f, g_inv) for f in X.generators)
    known = None
    if X.known_point is not None:
        known = ProjectivePoint(tuple(mat_vec(g, X.known_point.coords, X.p)), X.p)
    return Implicit(name, X.n, gens, X.declared_dim, known)


def renamed(X: Variety, name: str) -> Variety:
    return replace(X, name=name)
