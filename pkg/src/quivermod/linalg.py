"""Exact dense linear algebra over a field tag.

All routines take the field as first argument and work on numpy arrays
produced by the field's constructors. Elimination uses the first nonzero
pivot in each column, so every result is deterministic.
"""
from __future__ import annotations

import numpy as np

from .fields import Field


def matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return field.zeros(a.shape[0], b.shape[1])
    return field.normalize(np.dot(a, b))


def kron(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.kron(a, b)
    return field.normalize(out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))


def block_diag(field: Field, blocks) -> np.ndarray:
    blocks = list(blocks)
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = field.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def rref(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot column list."""
    r_mat = field.normalize(np.array(a, copy=True))
    m, n = r_mat.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = None
        for i in range(r, m):
            if not field.scalar_is_zero(r_mat[i, c]):
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            r_mat[[r, pr]] = r_mat[[pr, r]]
        r_mat[r] = field.normalize(r_mat[r] * field.scalar_inv(r_mat[r, c]))
        col = r_mat[:, c].copy()
        col[r] = field.zero
        r_mat = field.normalize(r_mat - np.outer(col, r_mat[r]))
        pivots.append(c)
        r += 1
    return r_mat, pivots


def rank(field: Field, a: np.ndarray) -> int:
    if 0 in a.shape:
        return 0
    return len(rref(field, a)[1])


def nullspace(field: Field, a: np.ndarray) -> list[np.ndarray]:
    """Basis vectors (1-d arrays) of the right kernel of `a`."""
    m, n = a.shape
    if n == 0:
        return []
    r_mat, pivots = rref(field, a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = field.zeros(1, n)[0]
        v[f] = field.one
        for i, c in enumerate(pivots):
            v[c] = field.scalar_neg(r_mat[i, f])
        basis.append(v)
    return basis


def det(field: Field, a: np.ndarray):
    m, n = a.shape
    if m != n:
        raise ValueError(f"determinant of non-square {a.shape} matrix")
    if n == 0:
        return field.one
    w = field.normalize(np.array(a, copy=True))
    sign = 1
    for k in range(n):
        pr = None
        for i in range(k, n):
            if not field.scalar_is_zero(w[i, k]):
                pr = i
                break
        if pr is None:
            return field.zero
        if pr != k:
            w[[k, pr]] = w[[pr, k]]
            sign = -sign
        inv_piv = field.scalar_inv(w[k, k])
        for i in range(k + 1, n):
            if field.scalar_is_zero(w[i, k]):
                continue
            factor = field.normalize(np.array([[w[i, k] * inv_piv]]))[0, 0]
            w[i] = field.normalize(w[i] - factor * w[k])
    prod = field.one
    for k in range(n):
        prod = field.normalize(np.array([[prod * w[k, k]]]))[0, 0]
    if sign < 0:
        prod = field.scalar_neg(prod)
    return prod


def inv(field: Field, a: np.ndarray) -> np.ndarray:
    m, n = a.shape
    if m != n:
        raise ValueError("inverse of non-square matrix")
    aug = field.zeros(n, 2 * n)
    aug[:, :n] = field.normalize(np.array(a, copy=True))
    aug[:, n:] = field.identity(n)
    r_mat, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r_mat[:, n:]


def is_zero(field: Field, a: np.ndarray) -> bool:
    return all(field.scalar_is_zero(x) for x in a.flat)


def equal(field: Field, a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and is_zero(field, field.normalize(a - b))
