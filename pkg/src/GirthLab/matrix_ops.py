"""
Exact adjacency-matrix arithmetic.

IntMatrix is a square numpy array of dtype=object holding Python ints, so
walk counts never overflow. BoolMatrix is a square numpy bool array; numpy's
bool matmul is the (OR, AND) semiring product, which answers existence
questions without big-integer cost.
"""

import numpy as np

from digraph_core import Digraph

IntMatrix = np.ndarray
BoolMatrix = np.ndarray


def zeros(dim: int) -> IntMatrix:
    return np.zeros((dim, dim), dtype=object)


def identity(dim: int) -> IntMatrix:
    eye = zeros(dim)
    for i in range(dim):
        eye[i, i] = 1
    return eye


def from_rows(rows) -> IntMatrix:
    """Exact matrix from nested lists of ints."""
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            out[i, j] = int(value)
    return out


def adjacency(D: Digraph) -> IntMatrix:
    """(M)_uv = 1 iff u->v is an arc."""
    M = zeros(D.n)
    for u, v in D.arcs():
        M[u, v] = 1
    return M


def to_bool(M: IntMatrix) -> BoolMatrix:
    return np.asarray(M != 0, dtype=bool)


def mat_mul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    return np.matmul(A, B)


def mat_pow(M: IntMatrix, exponent: int) -> IntMatrix:
    """Exact M**exponent by repeated squaring; exponent 0 gives the identity."""
    if exponent < 0:
        raise ValueError(f"exponent must be non-negative, got {exponent}")
    result = identity(M.shape[0])
    base = M
    while exponent:
        if exponent & 1:
            result = np.matmul(result, base)
        exponent >>= 1
        if exponent:
            base = np.matmul(base, base)
    return result


def bool_mul(A: BoolMatrix, B: BoolMatrix) -> BoolMatrix:
    return np.matmul(A, B)


def bool_pow(M: BoolMatrix, exponent: int) -> BoolMatrix:
    """Entry (i, j) is True iff a walk of length exactly `exponent` runs i -> j."""
    if exponent < 0:
        raise ValueError(f"exponent must be non-negative, got {exponent}")
    M = np.asarray(M, dtype=bool)
    result = np.eye(M.shape[0], dtype=bool)
    base = M
    while exponent:
        if exponent & 1:
            result = np.matmul(result, base)
        exponent >>= 1
        if exponent:
            base = np.matmul(base, base)
    return result


def kronecker(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """
    Block matrix [a_ij * B].

    Entry (i*dim_B + s, j*dim_B + t) is A[i, j] * B[s, t]. This is the same
    row-major pairing the products module uses for vertex (u, v).
    """
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    p, q = A.shape
    r, s = B.shape
    blocks = np.multiply.outer(A, B)  # shape (p, q, r, s)
    return blocks.transpose(0, 2, 1, 3).reshape(p * r, q * s)
