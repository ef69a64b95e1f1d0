"""
Dense exact matrices over a FieldSpec.

The kernels work on raw numpy arrays (see fields.spec) and are shared by
Matrix, Subspace and the enumeration-heavy scans in the other apps.
"""
import logging
from typing import List, Tuple

import numpy as np

from core.exceptions import (
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    NonSquare,
    NotSkewSymmetric,
    OddDimension,
)
from fields.spec import FieldElem, FieldSpec

logger = logging.getLogger(__name__)


# raw kernels

def rref_array(field: FieldSpec, a) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of a 2-D raw array. Returns (R, pivot_cols)."""
    A = field.copy(a)
    m, n = A.shape
    r = 0
    pivots: List[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c] != 0)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = field.mul(A[r], field.inv(A[r, c]))
        factors = A[:, c].copy()
        factors[r] = field.zero
        mask = factors != 0
        if mask.any():
            A[mask] = field.sub(A[mask], field.mul(factors[mask][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank_array(field: FieldSpec, a) -> int:
    return len(rref_array(field, a)[1])


def kernel_array(field: FieldSpec, a) -> np.ndarray:
    """Rows spanning the right null space {v : a v = 0}."""
    a = np.asarray(a)
    n = a.shape[1]
    R, pivots = rref_array(field, a)
    free = [j for j in range(n) if j not in pivots]
    K = field.zeros((len(free), n))
    if not free:
        return K
    K[np.arange(len(free)), free] = field.one
    if pivots:
        K[:, pivots] = field.neg(R[:len(pivots)][:, free].T)
    return K


def det_array(field: FieldSpec, a):
    A = field.copy(a)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquare(f"det needs a square matrix, got {A.shape}")
    n = A.shape[0]
    d = field.one
    for c in range(n):
        nz = np.flatnonzero(A[c:, c] != 0)
        if nz.size == 0:
            return field.zero
        piv = c + int(nz[0])
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
            d = field.neg(d)
        d = field.mul(d, A[c, c])
        if c + 1 < n:
            factors = field.mul(A[c + 1:, c], field.inv(A[c, c]))
            A[c + 1:] = field.sub(A[c + 1:], field.mul(factors[:, None], A[c][None, :]))
    return d


def inverse_array(field: FieldSpec, a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"inverse needs a square matrix, got {a.shape}")
    n = a.shape[0]
    R, pivots = rref_array(field, np.concatenate([a, field.identity(n)], axis=1))
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("Matrix is singular")
    return R[:, n:]


def is_skew_array(field: FieldSpec, a) -> bool:
    """A^T = -A with a zero diagonal (the diagonal is checked on its own for characteristic 2)."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.all(np.diagonal(a) == 0)) and bool(np.all(a == field.neg(a.T)))


def pfaffian_array(field: FieldSpec, a):
    A = field.copy(a)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquare(f"pfaffian needs a square matrix, got {A.shape}")
    if not is_skew_array(field, A):
        raise NotSkewSymmetric("pfaffian needs a skew-symmetric matrix with zero diagonal")
    n = A.shape[0]
    if n % 2:
        raise OddDimension(f"pfaffian of an odd {n}x{n} matrix")
    if n == 0:
        return field.one
    if n == 4:
        terms = (
            field.mul(A[0, 1], A[2, 3]),
            field.mul(A[0, 2], A[1, 3]),
            field.mul(A[0, 3], A[1, 2]),
        )
        return field.add(field.sub(terms[0], terms[1]), terms[2])

    # Skew elimination: congruences by unit triangular matrices keep the
    # Pfaffian, a simultaneous row/column swap negates it.
    pf = field.one
    for k in range(0, n - 1, 2):
        nz = np.flatnonzero(A[k, k + 1:] != 0)
        if nz.size == 0:
            return field.zero
        j = k + 1 + int(nz[0])
        if j != k + 1:
            A[[k + 1, j]] = A[[j, k + 1]]
            A[:, [k + 1, j]] = A[:, [j, k + 1]]
            pf = field.neg(pf)
        piv = A[k, k + 1]
        pf = field.mul(pf, piv)
        if k + 2 < n:
            tau = field.mul(A[k, k + 2:], field.inv(piv))
            A[k + 2:] = field.sub(A[k + 2:], field.mul(tau[:, None], A[k + 1][None, :]))
            A[:, k + 2:] = field.sub(A[:, k + 2:], field.mul(A[:, k + 1][:, None], tau[None, :]))
    return pf


def batch_rank(field: FieldSpec, stack) -> np.ndarray:
    """Ranks of a stack of matrices shaped (N, rows, cols), eliminated in lockstep."""
    A = field.copy(stack)
    if A.ndim != 3:
        raise DimensionMismatch(f"batch_rank needs a 3-D stack, got shape {A.shape}")
    N, m, n = A.shape
    row = np.zeros(N, dtype=np.int64)
    if N == 0 or m == 0:
        return row
    idx = np.arange(m)
    for c in range(n):
        cand = (A[:, :, c] != 0) & (idx[None, :] >= row[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.flatnonzero(has)
        r_b = row[b]
        p_b = np.argmax(cand[b], axis=1)
        swap = A[b, r_b].copy()
        A[b, r_b] = A[b, p_b]
        A[b, p_b] = swap
        pivot_rows = field.mul(A[b, r_b], field.inv(A[b, r_b, c])[:, None])
        A[b, r_b] = pivot_rows
        below = idx[None, :] > r_b[:, None]
        factors = np.where(below, A[b, :, c], field.zero)
        A[b] = field.sub(A[b], field.mul(factors[:, :, None], pivot_rows[:, None, :]))
        row[b] += 1
        if np.all(row == m):
            break
    return row


# Matrix

class Matrix:
    """Immutable dense matrix; all entries share one FieldSpec."""

    __slots__ = ('field', 'data')

    def __init__(self, field: FieldSpec, data):
        arr = field.copy(data)
        if arr.ndim != 2:
            raise DimensionMismatch(f"Matrix data must be 2-D, got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'data', arr)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> 'Matrix':
        rows = list(rows)
        if not rows:
            return cls(field, field.zeros((0, 0)))
        return cls(field, field.array(rows))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> 'Matrix':
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> 'Matrix':
        return cls(field, field.identity(n))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __getitem__(self, key) -> FieldElem:
        i, j = key
        return self.field.wrap(self.data[i, j])

    def entries(self) -> list:
        return [[self.field.wrap(v) for v in row] for row in self.data]

    def _check(self, other: 'Matrix'):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"Cannot combine {self.field} with {other.field} matrices")
        return other

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.all(self.data == other.data)))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.data.flat)))

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.field, self.field.sub(self.data, other.data))

    def __neg__(self):
        return Matrix(self.field, self.field.neg(self.data))

    def __matmul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        return Matrix(self.field, self.field.matmul(self.data, other.data))

    def scale(self, c) -> 'Matrix':
        return Matrix(self.field, self.field.mul(self.data, self.field(c).value))

    @property
    def T(self) -> 'Matrix':
        return Matrix(self.field, self.data.T)

    def rank(self) -> int:
        return rank_array(self.field, self.data)

    def rref(self) -> 'Matrix':
        return Matrix(self.field, rref_array(self.field, self.data)[0])

    def pivots(self) -> List[int]:
        return rref_array(self.field, self.data)[1]

    def kernel(self):
        from .subspace import Subspace
        return Subspace.span(self.field, self.cols, kernel_array(self.field, self.data))

    def det(self) -> FieldElem:
        return self.field.wrap(det_array(self.field, self.data))

    def inverse(self) -> 'Matrix':
        return Matrix(self.field, inverse_array(self.field, self.data))

    def pfaffian(self) -> FieldElem:
        return self.field.wrap(pfaffian_array(self.field, self.data))

    def is_skew(self) -> bool:
        return is_skew_array(self.field, self.data)

    def to_json(self) -> list:
        return [[self.field.to_json_value(v) for v in row] for row in self.data]

    def __repr__(self):
        body = '; '.join(' '.join(self.field.format_value(v) for v in row) for row in self.data)
        return f"Matrix({self.field}, [{body}])"


def rank(M: Matrix) -> int:
    return M.rank()


def kernel(M: Matrix):
    return M.kernel()


def det(M: Matrix) -> FieldElem:
    return M.det()


def rref(M: Matrix) -> Matrix:
    return M.rref()


def pfaffian(M: Matrix) -> FieldElem:
    return M.pfaffian()
