"""Linear algebra over small prime fields F_p.

Matrices are numpy ``int64`` arrays with entries in ``[0, p)``. Row reduction
follows the usual GF(2) routines, generalized to pivots that need scaling by
a modular inverse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def is_prime(p: int) -> bool:
    """Return whether ``p`` is a prime number."""
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def to_fp(matrix: np.ndarray, p: int) -> np.ndarray:
    """Reduce an integer array modulo ``p``."""
    return np.asarray(matrix, dtype=np.int64) % p


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a non-zero residue."""
    return pow(int(a) % p, -1, p)


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: tuple[int, ...]


def row_reduce(matrix: np.ndarray, p: int) -> RowReduceResult:
    """Reduced row echelon form over F_p."""
    mat = to_fp(matrix, p).copy()
    if mat.ndim != 2:
        raise ValueError("row_reduce expects a 2-d array")
    m, n = mat.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nonzero = np.nonzero(mat[row:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = row + int(nonzero[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        mat[row] = (mat[row] * inv_mod(mat[row, col], p)) % p
        factors = mat[:, col].copy()
        factors[row] = 0
        mat = (mat - np.outer(factors, mat[row])) % p
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat, rank=len(pivots), pivots=tuple(pivots))


def rank(matrix: np.ndarray, p: int) -> int:
    """Rank over F_p; empty matrices have rank 0."""
    mat = np.asarray(matrix)
    if mat.size == 0:
        return 0
    return row_reduce(mat, p).rank


def nullspace(matrix: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right nullspace, one vector per row."""
    mat = to_fp(matrix, p)
    n = mat.shape[1]
    if mat.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    reduced = row_reduce(mat, p)
    pivots = set(reduced.pivots)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        vec = np.zeros(n, dtype=np.int64)
        vec[free] = 1
        for r, col in enumerate(reduced.pivots):
            vec[col] = (-reduced.matrix[r, free]) % p
        basis.append(vec)
    if not basis:
        return np.zeros((0, n), dtype=np.int64)
    return np.vstack(basis)


def column_space(matrix: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``matrix`` forming a basis of its image."""
    mat = to_fp(matrix, p)
    if mat.size == 0:
        return np.zeros((mat.shape[0], 0), dtype=np.int64)
    pivots = row_reduce(mat, p).pivots
    return mat[:, list(pivots)]


def inverse(matrix: np.ndarray, p: int) -> np.ndarray | None:
    """Inverse over F_p, or None when singular."""
    mat = to_fp(matrix, p)
    n = mat.shape[0]
    if n == 0:
        return mat.copy()
    reduced = row_reduce(np.hstack([mat, np.eye(n, dtype=np.int64)]), p)
    if reduced.pivots[:n] != tuple(range(n)):
        return None
    return reduced.matrix[:, n:]


def is_invertible(matrix: np.ndarray, p: int) -> bool:
    """Whether a square matrix is invertible over F_p."""
    mat = np.asarray(matrix)
    return mat.shape[0] == mat.shape[1] and rank(mat, p) == mat.shape[0]


def has_full_column_rank(matrix: np.ndarray, p: int) -> bool:
    """Whether the linear map given by ``matrix`` is injective."""
    mat = np.asarray(matrix)
    return rank(mat, p) == mat.shape[1]


def solve(matrix: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of ``matrix @ x = rhs``, or None if inconsistent."""
    mat = to_fp(matrix, p)
    vec = to_fp(rhs, p).reshape(-1, 1)
    n = mat.shape[1]
    reduced = row_reduce(np.hstack([mat, vec]), p)
    if n in reduced.pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, col in enumerate(reduced.pivots):
        x[col] = reduced.matrix[r, n]
    return x


def matrix_power(matrix: np.ndarray, exponent: int, p: int) -> np.ndarray:
    """Square-and-multiply power over F_p."""
    result = np.eye(matrix.shape[0], dtype=np.int64)
    base = to_fp(matrix, p)
    while exponent:
        if exponent & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        exponent >>= 1
    return result


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group of F_p."""
    if p == 2:
        return 1
    order = p - 1
    factors = {d for d in range(2, order + 1) if order % d == 0 and is_prime(d)}
    for g in range(2, p):
        if all(pow(g, order // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root modulo {p}")


def gl_order(n: int, q: int) -> int:
    """Order of GL_n(F_q)."""
    order = 1
    for k in range(n):
        order *= q**n - q**k
    return order
