from math import comb

import pytest

from hadamard_dims.counts import i4_parameter_counts
from hadamard_dims.errors import DegreeTooSmall


def family_dim_by_curves(d):
    # two planes plus a plane curve of degree d in each
    return 3 + 3 + 2 * (comb(d + 2, 2) - 1)


def test_degree_four():
    r = i4_parameter_counts(4)
    assert (r.dim_family, r.dim_ambient, r.margin, r.holds) == (28, 34, 6, True)
    assert r.terms == (3, 3, 14, 8)
    assert r.summary == "dim U_4 = 28 < 34 = dim |O(4)|"


@pytest.mark.parametrize("d,family,ambient", [(5, 46, 55), (10, 136, 285)])
def test_derived_values(d, family, ambient):
    r = i4_parameter_counts(d)
    assert (r.dim_family, r.dim_ambient) == (family, ambient)
    assert family == family_dim_by_curves(d)
    assert ambient == comb(d + 3, 3) - 1


def test_unrestricted_family_fails_at_four():
    # the reason degree 4 needs the projectively-equivalent restriction
    assert family_dim_by_curves(4) == comb(7, 3) - 1


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_small_degree(d):
    with pytest.raises(DegreeTooSmall):
        i4_parameter_counts(d)


def test_holds_and_margin_growth():
    reports = [i4_parameter_counts(d) for d in range(4, 65)]
    assert all(r.holds for r in reports)
    margins = [r.margin for r in reports if r.d >= 5]
    assert all(a < b for a, b in zip(margins, margins[1:]))
    for r in reports[1:]:
        assert r.dim_family == family_dim_by_curves(r.d)
