"""
Rank-n subspaces of n x n matrices: subspaces in which every nonzero
element is nonsingular. A certificate is a basis that can be rechecked.

Finite fields are rechecked by scanning one combination per line. Over Q
the check goes through a quadratic form whose anisotropy is equivalent to
the rank condition: the restricted Pfaffian for 4 x 4 skew bases, and the
polarised determinant for 2 x 2 bases.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Optional, Sequence, Tuple

import numpy as np

from bivectors.ideals import CentralIdeal, bracket_free, isotropic_vector
from core.exceptions import DimensionMismatch, NotSkewSymmetric, Undetermined, VerificationFailed
from fields.spec import FieldSpec
from linalg.matrix import Matrix, batch_rank, det_array, is_skew_array, kernel_array
from linalg.subspace import CHUNK, projective_points

logger = logging.getLogger(__name__)


def combinations_stack(field: FieldSpec, stack: np.ndarray, xis) -> np.ndarray:
    """(N, n, n) matrices Σ ξ_r X_r for each row ξ of xis."""
    d, n, _ = stack.shape
    xis = np.asarray(xis).reshape(-1, d)
    if d == 0:
        return field.zeros((xis.shape[0], n, n))
    return field.matmul(xis, stack.reshape(d, n * n)).reshape(-1, n, n)


def first_singular_combination(field: FieldSpec, stack: np.ndarray) -> Optional[np.ndarray]:
    """First projective ξ (finite field) with Σ ξ_r X_r singular, or None."""
    d, n, _ = stack.shape
    for lead in range(d):
        xis = projective_points(field, d, lead=lead)
        for lo in range(0, len(xis), CHUNK):
            chunk = xis[lo:lo + CHUNK]
            singular = np.flatnonzero(batch_rank(field, combinations_stack(field, stack, chunk)) < n)
            if singular.size:
                return chunk[singular[0]]
    return None


def solve_combination(field: FieldSpec, rows: np.ndarray, target: np.ndarray) -> np.ndarray:
    """ξ with Σ ξ_r rows[r] = target, for independent rows and target in their span."""
    d = rows.shape[0]
    A = field.zeros((rows.shape[1], d + 1))
    A[:, :d] = rows.T
    A[:, d] = target
    for v in kernel_array(field, A):
        if v[d] != 0:
            return field.mul(v[:d], field.neg(field.inv(v[d])))
    raise DimensionMismatch("Target vector is not in the span of the rows")


def determinant_gram(field: FieldSpec, stack: np.ndarray) -> np.ndarray:
    """Gram matrix of ξ ↦ det(Σ ξ_r X_r) for 2 x 2 matrices X_r (a quadratic form)."""
    d = stack.shape[0]
    G = field.zeros((d, d))
    dets = [det_array(field, X) for X in stack]
    for k in range(d):
        G[k, k] = dets[k]
        for l in range(k + 1, d):
            cross = (det_array(field, field.add(stack[k], stack[l])) - dets[k] - dets[l]) / 2
            G[k, l] = cross
            G[l, k] = cross
    return G


@dataclass(frozen=True)
class RankSubspaceCertificate:
    n: int
    field: FieldSpec
    basis: Tuple[Matrix, ...] = dataclass_field(default_factory=tuple)
    skew: bool = True
    lower_bound: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'basis', tuple(self.basis))
        for X in self.basis:
            if X.field != self.field or X.shape != (self.n, self.n):
                raise DimensionMismatch(f"Certificate matrices must be {self.n}x{self.n} over {self.field}")
            if self.skew and not is_skew_array(self.field, X.data):
                raise NotSkewSymmetric(f"{X!r} is not skew-symmetric")

    @classmethod
    def from_rows(cls, field: FieldSpec, matrices: Sequence, skew: bool = True) -> 'RankSubspaceCertificate':
        basis = [Matrix.from_rows(field, rows) for rows in matrices]
        n = basis[0].rows if basis else 0
        return cls(n, field, tuple(basis), skew=skew)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def stack(self) -> np.ndarray:
        if not self.basis:
            return self.field.zeros((0, self.n, self.n))
        return np.stack([X.data for X in self.basis])

    def combination(self, xi) -> Matrix:
        return Matrix(self.field, combinations_stack(self.field, self.stack(), self.field.copy(xi))[0])

    def find_singular(self) -> Optional[np.ndarray]:
        """
        A coefficient vector ξ ≠ 0 whose combination is singular, or None when
        every nonzero combination has rank n. Raises Undetermined over Q
        outside the decidable cases.
        """
        field = self.field
        stack = self.stack()
        d = self.dim
        if d == 0:
            return None
        flat = stack.reshape(d, self.n * self.n)
        dependent = kernel_array(field, flat.T)
        if len(dependent):
            return dependent[0]
        if self.n == 0:
            return field.identity(d)[0]
        if field.is_finite:
            return first_singular_combination(field, stack)
        return self._rational_singular(stack)

    def _rational_singular(self, stack: np.ndarray) -> Optional[np.ndarray]:
        field = self.field
        if self.skew and self.n % 2:
            return field.identity(self.dim)[0]
        if self.skew and self.n == 2:
            # independent multiples of one skew 2x2 matrix: a single line
            return None
        if self.skew and self.n == 4:
            rows, cols = np.triu_indices(4, 1)
            coords = stack[:, rows, cols]
            result = bracket_free(CentralIdeal.span(field, 4, coords))
            if result.free:
                return None
            return solve_combination(field, coords, result.witness.coords)
        if self.n == 2:
            xi, method = isotropic_vector(field, determinant_gram(field, stack))
            logger.debug(f"2x2 determinant form decided by {method}")
            return xi
        raise Undetermined(f"No decision procedure for {self.dim}-dimensional subspaces of {self.n}x{self.n} matrices over Q")

    def verify(self) -> bool:
        return self.find_singular() is None

    def check(self) -> 'RankSubspaceCertificate':
        """Raise VerificationFailed when some nonzero combination is singular."""
        xi = self.find_singular()
        if xi is not None:
            values = [self.field.format_value(c) for c in xi]
            raise VerificationFailed(f"Combination {values} of the certificate is singular")
        return self

    def to_json(self) -> dict:
        return {
            'n': self.n,
            'field': self.field.to_json(),
            'dim': self.dim,
            'skew': self.skew,
            'lower_bound': self.lower_bound,
            'basis': [X.to_json() for X in self.basis],
        }
