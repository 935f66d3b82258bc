"""Prime-field scalars and dense linear algebra over F_p.

Field elements are plain Python ints in ``[0, p)``; the modulus travels as an
explicit argument. Matrices are lists of rows.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import ShapeMismatch, SingularTransform, ZeroInverse
from .randomness import field_vector, label, stream

Matrix = list[list[int]]

# Deterministic Miller-Rabin witnesses, valid for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int = 62, seed: int = 0) -> int:
    """Odd prime drawn uniformly-ish from ``[2**(bits-1), 2**bits)``."""
    if not 3 <= bits <= 62:
        raise ValueError(f"bits must lie in [3, 62], got {bits}")
    rng = stream(seed, label("random_prime"), bits)
    lo, hi = 1 << (bits - 1), 1 << bits
    while True:
        n = int(rng.integers(lo, hi, dtype=np.int64)) | 1
        if n < hi and is_prime(n):
            return n


def field_inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroInverse("0 has no inverse modulo %d" % p)
    return pow(a, -1, p)


def identity(size: int) -> Matrix:
    return [[int(i == j) for j in range(size)] for i in range(size)]


def transpose(M: Matrix, cols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def mat_mul(A: Matrix, B: Matrix, p: int) -> Matrix:
    if A and len(A[0]) != len(B):
        raise ShapeMismatch(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x?")
    Bt = transpose(B, len(B[0]) if B else 0)
    return [[sum(a * b for a, b in zip(row, col)) % p for col in Bt] for row in A]


def mat_vec(A: Matrix, v: Sequence[int], p: int) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) % p for row in A]


def row_echelon(M: Matrix, p: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (first-nonzero pivoting)."""
    R = [[x % p for x in row] for row in M]
    pivots: list[int] = []
    cols = len(R[0]) if R else 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(R)) if R[i][c]), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = pow(R[r][c], -1, p)
        R[r] = [x * inv % p for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [(x - f * y) % p for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(M: Matrix, p: int) -> int:
    return len(row_echelon(M, p)[1])


def kernel_basis(M: Matrix, p: int, cols: int | None = None) -> Matrix:
    """Matrix (``cols`` rows) whose columns form a basis of the right kernel."""
    if cols is None:
        cols = len(M[0]) if M else 0
    R, pivots = row_echelon(M, p) if M else ([], [])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return transpose(basis, cols) if basis else [[] for _ in range(cols)]


def independent_columns(columns: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Greedy subset of ``columns`` forming a basis of their span."""
    if not columns:
        return []
    M = transpose([list(c) for c in columns])
    _, pivots = row_echelon(M, p)
    return [list(columns[c]) for c in pivots]


def mat_inverse(A: Matrix, p: int) -> Matrix:
    size = len(A)
    if any(len(row) != size for row in A):
        raise ShapeMismatch("matrix is not square")
    aug = [list(row) + e for row, e in zip(A, identity(size))]
    R, pivots = row_echelon(aug, p)
    if pivots[:size] != list(range(size)):
        raise SingularTransform("matrix is singular modulo %d" % p)
    return [row[size:] for row in R]


def random_matrix(rows: int, cols: int, p: int, rng) -> Matrix:
    flat = field_vector(rng, p, rows * cols)
    return [flat[i * cols:(i + 1) * cols] for i in range(rows)]


def random_invertible(n: int, p: int, seed: int, *path: int) -> Matrix:
    """Random element of GL(n+1, F_p), i.e. a representative of g in PGL(n+1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = stream(seed, label("random_invertible"), n, *path)
    while True:
        g = random_matrix(n + 1, n + 1, p, rng)
        if rank(g, p) == n + 1:
            return g

