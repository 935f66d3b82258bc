import pytest

from hadamard_dims.catalogue import catalogue
from hadamard_dims.errors import (
    DimensionMismatch,
    NoPointFound,
    ShapeMismatch,
    SingularPoint,
    SingularTransform,
    UnsupportedRepresentation,
)
from hadamard_dims.exactmath import identity, mat_inverse, random_invertible, rank
from hadamard_dims.poly import MultiPoly, parse
from hadamard_dims.randomness import stream
from hadamard_dims.variety import (
    Implicit,
    Param,
    ProjectivePoint,
    apply_transform,
    coordinate_support,
    draw_point,
    intrinsic_dim,
    sample_parameters,
    sample_point,
    slice_points,
    tangent_frame,
)

CATALOGUE = ["twisted_cubic", "conic", "skew_line_01", "skew_line_23", "fermat_cubic", "generic_quartic_curve", "p2_identity"]
DIMS = {"twisted_cubic": 1, "conic": 1, "skew_line_01": 1, "skew_line_23": 1, "fermat_cubic": 1,
        "generic_quartic_curve": 1, "p2_identity": 2}


def param(p, n, polys, names=("s", "t")):
    return Param("X", n, tuple(parse(s, names, p) for s in polys), (len(names),), tuple(names))


def implicit(p, n, gens, dim, known=None):
    xs = [f"x{i}" for i in range(n + 1)]
    kp = ProjectivePoint(known, p) if known else None
    return Implicit("Z", n, tuple(parse(g, xs, p) for g in gens), dim, kp)


def span_rank(cols, p):
    return rank([list(r) for r in zip(*cols)], p)


def test_point_normalization():
    P = ProjectivePoint((0, 3, 6), 7)
    assert P.coords == (0, 1, 2)
    assert ProjectivePoint(P.coords, 7) == P
    assert ProjectivePoint((0, 6, 5), 7) == P
    with pytest.raises(ValueError):
        ProjectivePoint((0, 7, 14), 7)


def test_param_validation():
    with pytest.raises(ShapeMismatch):
        param(101, 2, ["s^2", "s*t", "t"])
    with pytest.raises(ShapeMismatch):
        param(101, 3, ["s^2", "s*t", "t^2"])


def test_implicit_validation():
    with pytest.raises(ShapeMismatch):
        implicit(101, 2, ["x0^2 + x1"], 1)
    with pytest.raises(ShapeMismatch):
        implicit(101, 2, ["x0"], 2)


def test_sample_conic_image():
    X = param(101, 2, ["s^2", "s*t", "t^2"])
    assert ProjectivePoint(tuple(X.image([1, 2])), 101) == ProjectivePoint((1, 2, 4), 101)


def test_fermat_slice_over_f7():
    X = implicit(7, 2, ["x0^3 + x1^3 + x2^3"], 1)
    pts = slice_points(X, (1, 0, 0), (0, 1, 0))
    assert ProjectivePoint((1, 6, 0), 7) in pts
    assert all(X.contains(pt.coords) for pt in pts)


def test_base_point_resampling():
    p = 5
    X = param(p, 1, ["s - t", "s - t"])
    rng = stream(0)
    # about 1 in 5 draws lands on s = t; every returned draw must avoid it
    for _ in range(50):
        s, t = sample_parameters(X, rng)
        assert s != t


def test_base_point_everywhere():
    X = Param("zero", 1, (MultiPoly(2, 7), MultiPoly(2, 7)), (2,))
    with pytest.raises(NoPointFound):
        sample_point(X)


@pytest.mark.parametrize("name", CATALOGUE)
def test_sampled_points_lie_on_variety(name, prime):
    X = catalogue(name, prime)
    for seed in range(8):
        pt = sample_point(X, seed)
        if isinstance(X, Implicit):
            assert X.contains(pt.coords)


def test_codim_two_requires_known_point(prime):
    X = implicit(prime, 3, ["x0", "x1"], 1)
    with pytest.raises(UnsupportedRepresentation):
        sample_point(X)
    Y = implicit(prime, 3, ["x0", "x1"], 1, known=(0, 0, 1, 5))
    assert sample_point(Y) == ProjectivePoint((0, 0, 1, 5), prime)


def test_tangent_line():
    p = 101
    X = param(p, 3, ["s", "t", "0", "0"])
    frame = tangent_frame(X, [3, 4])
    assert len(frame.columns) == 2
    assert span_rank(list(frame.columns) + [(1, 0, 0, 0), (0, 1, 0, 0)], p) == 2


def test_tangent_twisted_cubic(prime):
    X = catalogue("twisted_cubic", prime)
    frame = tangent_frame(X, [1, 1])
    assert span_rank(list(frame.columns) + [(3, 2, 1, 0), (0, 1, 2, 3)], prime) == 2
    assert len(frame.columns) == 2


def test_tangent_contains_base_point(prime):
    for name in CATALOGUE:
        X = catalogue(name, prime)
        pt, params = draw_point(X, stream(1))
        frame = tangent_frame(X, params if params is not None else pt)
        assert span_rank(list(frame.columns) + [pt.coords], prime) == len(frame.columns)


def test_tangent_fermat(prime):
    X = catalogue("fermat_cubic", prime)
    frame = tangent_frame(X, ProjectivePoint((1, prime - 1, 0), prime))
    assert len(frame.columns) == 2
    assert all((3 * c[0] + 3 * c[1]) % prime == 0 for c in frame.columns)


def test_constant_map_gets_euler_column():
    X = param(101, 2, ["1", "1", "1"])
    frame = tangent_frame(X, [5, 7])
    assert frame.columns == ((1, 1, 1),)
    assert intrinsic_dim(X) == 0


def test_singular_point_detection(prime):
    cusp = implicit(prime, 2, ["x1^2*x2 - x0^3"], 1)
    with pytest.raises(SingularPoint):
        tangent_frame(cusp, ProjectivePoint((0, 0, 1), prime))
    X = catalogue("twisted_cubic", prime)
    with pytest.raises(SingularPoint):
        tangent_frame(X, [1, 1], generic_rank=3)
    with pytest.raises(SingularPoint):
        tangent_frame(X, [0, 0])


@pytest.mark.parametrize("name", CATALOGUE)
def test_intrinsic_dim_catalogue(name, prime):
    assert intrinsic_dim(catalogue(name, prime)) == DIMS[name]


def test_intrinsic_dim_identity_of_p4(prime):
    names = ["a", "b", "c", "d", "e"]
    X = param(prime, 4, names, names)
    assert intrinsic_dim(X) == 4


def test_declared_dim_cross_check(prime):
    wrong = implicit(prime, 3, ["x0^2 + x1^2 + x2^2 + x3^2"], 1)
    with pytest.raises(DimensionMismatch):
        intrinsic_dim(wrong)
    plane_as_curve = implicit(prime, 3, ["x0", "x1"], 2, known=(0, 0, 1, 1))
    with pytest.raises(DimensionMismatch):
        intrinsic_dim(plane_as_curve)


@pytest.mark.parametrize("name", CATALOGUE)
def test_generic_rank_stable(name, prime):
    X = catalogue(name, prime)
    if not isinstance(X, Param):
        return
    ranks = {len(tangent_frame(X, sample_parameters(X, stream(s))).columns) for s in range(8)}
    assert len(ranks) == 1


def test_coordinate_support_examples(prime):
    assert coordinate_support(param(prime, 2, ["s", "t", "0"])).indices == {2}
    assert coordinate_support(catalogue("twisted_cubic", prime)).indices == frozenset()
    line = implicit(prime, 2, ["x0"], 1)
    assert coordinate_support(line).indices == {0}
    assert coordinate_support(line).inside_delta


@pytest.mark.parametrize("name", CATALOGUE)
def test_support_empty_after_random_twist(name, prime):
    X = catalogue(name, prime)
    for seed in range(20):
        g = random_invertible(X.n, prime, seed)
        assert coordinate_support(apply_transform(X, g)).indices == frozenset()


def test_transform_identity_and_swap(prime):
    X = catalogue("twisted_cubic", prime)
    assert apply_transform(X, identity(4)).components == X.components
    Z = catalogue("fermat_cubic", prime)
    assert apply_transform(Z, identity(3)).generators == Z.generators
    line = param(prime, 3, ["s", "t", "0", "0"])
    swap = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert apply_transform(line, swap).components == param(prime, 3, ["t", "s", "0", "0"]).components


def test_transform_singular(prime):
    with pytest.raises(SingularTransform):
        apply_transform(catalogue("conic", prime), [[1, 2, 0], [2, 4, 0], [0, 0, 1]])


def test_transform_preserves_dim(prime):
    X = catalogue("twisted_cubic", prime)
    for seed in range(5):
        assert intrinsic_dim(apply_transform(X, random_invertible(3, prime, seed))) == 1


@pytest.mark.parametrize("name", CATALOGUE)
def test_transform_round_trip_points(name, prime):
    X = catalogue(name, prime)
    g = random_invertible(X.n, prime, 9)
    back = apply_transform(apply_transform(X, g), mat_inverse(g, prime))
    for seed in range(4):
        pt, params = draw_point(back, stream(seed))
        if isinstance(X, Implicit):
            assert X.contains(pt.coords)
        else:
            assert ProjectivePoint(tuple(X.image(params)), prime) == pt


def test_transformed_implicit_points(prime):
    X = catalogue("fermat_cubic", prime)
    g = random_invertible(2, prime, 4)
    gX = apply_transform(X, g)
    ginv = mat_inverse(g, prime)
    for seed in range(5):
        pt = sample_point(gX, seed)
        pre = [sum(a * b for a, b in zip(row, pt.coords)) % prime for row in ginv]
        assert X.contains(pre)
    assert gX.known_point is not None and gX.contains(gX.known_point.coords)
