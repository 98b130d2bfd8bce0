"""Vectorised finite-field matrix arithmetic on integer codes.

Arrays hold element codes; arithmetic goes through the lookup tables of
:attr:`creal.field.Field.tables`.  Used only by exhaustive searches.
"""

from __future__ import annotations

import itertools

import numpy as np

from .field import Field


def batch_matmul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``A @ B`` over F; either side may carry a leading batch axis."""
    tb = F.tables
    add, mul = tb["add"], tb["mul"]
    k = A.shape[-1]
    out = mul[A[..., :, 0][..., :, None], B[..., 0, :][..., None, :]]
    for s in range(1, k):
        out = add[out, mul[A[..., :, s][..., :, None], B[..., s, :][..., None, :]]]
    return out


def batch_conj(F: Field, A: np.ndarray) -> np.ndarray:
    return F.tables["conj"][A]


def _perm_sign(perm) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def batch_det(F: Field, M: np.ndarray) -> np.ndarray:
    """Determinants of a stack ``(N, n, n)`` of matrices (Leibniz, n <= 6)."""
    tb = F.tables
    add, mul, neg = tb["add"], tb["mul"], tb["neg"]
    n = M.shape[-1]
    if n > 6:
        raise ValueError("batch_det is limited to n <= 6")
    out = np.zeros(M.shape[:-2], dtype=M.dtype)
    for perm in itertools.permutations(range(n)):
        term = M[..., 0, perm[0]]
        for i in range(1, n):
            term = mul[term, M[..., i, perm[i]]]
        if _perm_sign(perm) < 0:
            term = neg[term]
        out = add[out, term]
    return out


def all_tuples(values: np.ndarray, length: int) -> np.ndarray:
    """Cartesian power of ``values`` as an array ``(len(values)**length, length)``.

    The first coordinate varies slowest, matching :func:`itertools.product`.
    """
    grids = np.meshgrid(*([values] * length), indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=-1) if length else np.zeros((1, 0), dtype=values.dtype)
