"""Brute-force point counts of parametrized varieties over a small prime field.

Counting the distinct F_q-points in the image of a parametrization gives an
estimate ``round(log(count)/log(q))`` of its dimension that shares no code
with the tangent-space rank computations.
"""

from __future__ import annotations

import itertools
import math
from typing import NamedTuple

import numpy as np

from .errors import TooLarge, UnsupportedRepresentation
from .variety import Param, Variety

ENUMERATION_LIMIT = 10**8
WINDOW = 8
_CHUNK = 1 << 16


class PointCount(NamedTuple):
    count: int
    dim_estimate: int


def in_window(count: int, q: int, d: int, factor: int = WINDOW) -> bool:
    return q**d <= factor * count and count <= factor * q**d


def projective_representatives(size: int, q: int) -> np.ndarray:
    """Each point of P^(size-1)(F_q) once, first nonzero coordinate 1."""
    blocks = []
    for lead in range(size):
        free = size - lead - 1
        if free:
            tail = np.indices((q,) * free, dtype=np.int64).reshape(free, -1).T
        else:
            tail = np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((len(tail), size), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail
        blocks.append(block)
    return np.concatenate(blocks)


def normalize_rows(rows: np.ndarray, q: int) -> np.ndarray:
    """Drop zero rows, scale each row so its first nonzero entry is 1, dedupe."""
    rows = rows[(rows != 0).any(axis=1)]
    if not len(rows):
        return rows
    inverses = np.array([0] + [pow(x, -1, q) for x in range(1, q)], dtype=np.int64)
    lead = rows[np.arange(len(rows)), (rows != 0).argmax(axis=1)]
    return np.unique(rows * inverses[lead][:, None] % q, axis=0)


def _evaluate_chunk(X: Param, values: np.ndarray, q: int) -> np.ndarray:
    out = np.zeros((len(values), X.n + 1), dtype=np.int64)
    powers: dict[tuple[int, int], np.ndarray] = {}

    def power(i: int, k: int) -> np.ndarray:
        if (i, k) not in powers:
            powers[(i, k)] = values[:, i] if k == 1 else power(i, k - 1) * values[:, i] % q
        return powers[(i, k)]

    for r, f in enumerate(X.components):
        acc = np.zeros(len(values), dtype=np.int64)
        for e, c in f.terms:
            term = np.full(len(values), c % q, dtype=np.int64)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k) % q
            acc = (acc + term) % q
        out[:, r] = acc
    return out


def _image(X: Param, q: int) -> np.ndarray:
    reps = [projective_representatives(g, q) for g in X.groups]
    index_ranges = [range(len(r)) for r in reps]
    images = []
    combos = itertools.product(*index_ranges)
    while True:
        chunk = list(itertools.islice(combos, _CHUNK))
        if not chunk:
            break
        idx = np.array(chunk, dtype=np.int64)
        values = np.concatenate([reps[g][idx[:, g]] for g in range(len(reps))], axis=1)
        images.append(normalize_rows(_evaluate_chunk(X, values, q), q))
    return normalize_rows(np.concatenate(images), q)


def _at_prime(X: Param, q: int) -> Param:
    if X.p == q:
        return X
    if X.source is None:
        raise UnsupportedRepresentation(f"{X.name} has no integer description to reduce mod {q}")
    return X.source.build(q)


def image_points(X: Variety, q: int, limit: int = ENUMERATION_LIMIT) -> np.ndarray:
    """Distinct normalized F_q-points in the image of the parametrization."""
    if not isinstance(X, Param):
        raise UnsupportedRepresentation("point counting needs a parametrized variety")
    affine_params = sum(g - 1 for g in X.groups)
    if q**affine_params > limit:
        raise TooLarge(f"{X.name}: q^{affine_params} = {q**affine_params} exceeds {limit}")
    if not X.factors:
        return _image(_at_prime(X, q), q)
    # A product's image is the set of defined coordinatewise products of its
    # factors' images.
    acc = _image(_at_prime(X.factors[0], q), q)
    for F in X.factors[1:]:
        other = _image(_at_prime(F, q), q)
        prod = (acc[:, None, :] * other[None, :, :] % q).reshape(-1, X.n + 1)
        acc = normalize_rows(prod, q)
    return acc


def point_count_dim(X: Variety, q: int = 101, limit: int = ENUMERATION_LIMIT) -> PointCount:
    count = len(image_points(X, q, limit))
    if count == 0:
        return PointCount(0, -1)
    return PointCount(count, round(math.log(count) / math.log(q)))
