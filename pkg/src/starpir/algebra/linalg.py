"""Dense linear algebra over a FieldSpec on int64 numpy arrays."""

from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatch, InconsistentSystem
from .field import FieldSpec


def as_matrix(M, cols: int | None = None) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size or cols is None else A.reshape(0, cols)
    if A.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {A.shape}")
    return A


def rref(field: FieldSpec, M) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    A = as_matrix(M).copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = field.vmul(A[r], field.inv(lead))
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = field.vsub(A[mask], field.vmul(col[mask][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, tuple(pivots)


def row_basis(field: FieldSpec, M) -> np.ndarray:
    R, piv = rref(field, M)
    return R[: len(piv)]


def rank(field: FieldSpec, M) -> int:
    A = as_matrix(M)
    if A.size == 0:
        return 0
    return len(rref(field, A)[1])


def submatrix_rank(field: FieldSpec, M, cols) -> int:
    A = as_matrix(M)
    return rank(field, A[:, list(cols)])


def nullspace(field: FieldSpec, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of {v : M v^T = 0}."""
    A = as_matrix(M, ncols)
    n = A.shape[1] if ncols is None else ncols
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(field, A)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = field.neg(int(R[i, f]))
    return basis


def solve(field: FieldSpec, A, b) -> np.ndarray:
    """One solution x of A x = b (free variables zero)."""
    A = as_matrix(A)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if A.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"A has {A.shape[0]} rows but b has length {b.shape[0]}")
    n = A.shape[1]
    R, piv = rref(field, np.hstack([A, b[:, None]]))
    if n in piv:
        raise InconsistentSystem("system has no solution")
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = R[i, n]
    return x


def in_row_space(field: FieldSpec, M, v) -> bool:
    A = as_matrix(M)
    v = np.asarray(v, dtype=np.int64).reshape(1, -1)
    if A.shape[0] == 0:
        return not v.any()
    return rank(field, np.vstack([A, v])) == rank(field, A)


def mat_solve_kit(op: str, field: FieldSpec, M, aux=None):
    """Dispatch one of rref, rank, nullspace, solve, submatrix_rank."""
    if op == "rref":
        return rref(field, M)[0]
    if op == "rank":
        return rank(field, M)
    if op == "nullspace":
        return nullspace(field, M)
    if op == "solve":
        return solve(field, M, aux)
    if op == "submatrix_rank":
        return submatrix_rank(field, M, aux)
    raise ValueError(f"unknown matrix operation {op!r}")


class Echelon:
    """Incrementally grown row-echelon basis used for independence checks."""

    def __init__(self, field: FieldSpec, dim: int):
        self.field = field
        self.dim = dim
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def copy(self) -> Echelon:
        e = Echelon(self.field, self.dim)
        e.rows = list(self.rows)
        e.pivots = list(self.pivots)
        return e

    def reduce(self, v) -> np.ndarray:
        f = self.field
        v = np.asarray(v, dtype=np.int64).copy()
        for row, pc in zip(self.rows, self.pivots):
            c = int(v[pc])
            if c:
                v = f.vsub(v, f.vmul(c, row))
        return v

    def independent(self, v) -> bool:
        return bool(self.reduce(v).any())

    def add(self, v) -> bool:
        """Insert v; return False (leaving the basis unchanged) if dependent."""
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        pc = int(nz[0])
        r = self.field.vmul(r, self.field.inv(int(r[pc])))
        self.rows.append(r)
        self.pivots.append(pc)
        return True
