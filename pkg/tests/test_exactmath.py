import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadamard_dims.errors import SingularTransform, ZeroInverse
from hadamard_dims.exactmath import (
    field_inverse,
    identity,
    is_prime,
    kernel_basis,
    mat_inverse,
    mat_mul,
    random_invertible,
    random_prime,
    rank,
    transpose,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 101, 10007]


def naive_is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_is_prime_matches_trial_division():
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if naive_is_prime(n)]


def test_is_prime_strong_pseudoprimes():
    # 3215031751 is a strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime(3215031751)
    assert not is_prime(3825123056546413051)
    assert is_prime(2**61 - 1)


@pytest.mark.parametrize("seed", range(20))
def test_random_prime_three_bits(seed):
    assert random_prime(3, seed) in {5, 7}


def test_random_prime_deterministic_and_in_range():
    p = random_prime(62, 7)
    assert p == random_prime(62, 7)
    assert 2**61 <= p < 2**62
    assert p != random_prime(62, 8)


def test_random_prime_passes_many_witnesses():
    p = random_prime(62, 7)
    # Fermat test with 20 further bases, independent of the Miller-Rabin path
    assert all(pow(a, p - 1, p) == 1 for a in range(41, 61))


@pytest.mark.parametrize("bits", [2, 63])
def test_random_prime_rejects_bits(bits):
    with pytest.raises(ValueError):
        random_prime(bits)


def test_field_inverse_examples():
    assert field_inverse(1, 7) == 1
    assert field_inverse(2, 7) == 4
    with pytest.raises(ZeroInverse):
        field_inverse(0, 7)
    with pytest.raises(ZeroInverse):
        field_inverse(14, 7)


def test_rank_examples():
    assert rank(identity(3), 7) == 3
    assert rank([[0, 0], [0, 0]], 7) == 0
    assert rank([[1, 2], [2, 4]], 7) == 1


def test_kernel_examples():
    p = 7
    K = kernel_basis([[1, 1]], p)
    assert len(K[0]) == 1
    assert rank([K[0] + [1], K[1] + [p - 1]], p) == 1  # same span as (1, p-1)
    assert kernel_basis(identity(2), p) == [[], []]
    M = [[1, 2], [2, 4]]
    K = kernel_basis(M, p)
    assert len(K[0]) == 1
    assert mat_mul(M, K, p) == [[0], [0]]


def test_random_invertible_examples(prime):
    g0 = random_invertible(0, prime, 3)
    assert len(g0) == 1 and g0[0][0] != 0
    assert random_invertible(3, prime, 3) == random_invertible(3, prime, 3)
    for seed in range(20):
        assert rank(random_invertible(4, prime, seed), prime) == 5


def test_random_invertible_small_field_resamples():
    # over F_2 a random 4x4 matrix is singular about 70% of the time
    for seed in range(30):
        assert rank(random_invertible(3, 2, seed), 2) == 4


def test_mat_inverse_singular():
    with pytest.raises(SingularTransform):
        mat_inverse([[1, 2], [2, 4]], 7)


def test_inverse_of_random_invertible_is_identity(prime):
    for seed in range(10):
        g = random_invertible(3, prime, seed)
        assert mat_mul(g, mat_inverse(g, prime), prime) == identity(4)
        assert mat_mul(mat_inverse(g, prime), g, prime) == identity(4)


pairs = st.tuples(st.integers(0, 10**6), st.integers(1, 10**6))


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(SMALL_PRIMES[1:] + [2**61 - 1]), pairs)
def test_inverse_cancels(p, ab):
    a, b = ab
    if b % p == 0:
        return
    assert a * b * field_inverse(b, p) % p == a % p


def matrices(p_values=(2, 3, 7, 101)):
    return st.sampled_from(p_values).flatmap(
        lambda p: st.tuples(
            st.just(p),
            st.integers(1, 8).flatmap(
                lambda r: st.integers(1, 8).flatmap(
                    lambda c: st.lists(
                        st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r
                    )
                )
            ),
        )
    )


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_transpose_invariant(pm):
    p, M = pm
    assert rank(M, p) == rank(transpose(M), p)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_nullity(pm):
    p, M = pm
    cols = len(M[0])
    K = kernel_basis(M, p)
    k = len(K[0]) if K and K[0] else 0
    assert rank(M, p) + k == cols
    if k:
        assert all(v == 0 for row in mat_mul(M, K, p) for v in row)
        assert rank(K, p) == k
