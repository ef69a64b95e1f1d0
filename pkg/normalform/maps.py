"""
Automorphisms of 𝓛_m given on generators.

x_j ↦ Σ_i A[i, j] x_i + h_j with A invertible and h_j central. On the
centre Λ²(k^g) only A matters: a bivector with skew matrix M goes to the
bivector with skew matrix A M Aᵀ.
"""
import logging
from typing import Sequence, Tuple

import numpy as np

from bivectors.bivector import Bivector, pair_count, wedge_coords
from bivectors.ideals import CentralIdeal
from core.exceptions import DimensionMismatch, FieldMismatch, InvariantViolation, SingularLinearPart
from fields.spec import FieldSpec
from linalg.matrix import Matrix, det_array, rref_array

logger = logging.getLogger(__name__)


def exterior_square(field: FieldSpec, A: np.ndarray) -> np.ndarray:
    """W with row k = image of the k-th basis bivector, so coords ↦ coords @ W."""
    g = A.shape[0]
    rows, cols = np.triu_indices(g, 1)
    return wedge_coords(field, A[:, rows].T, A[:, cols].T).reshape(pair_count(g), pair_count(g))


class GeneratorMap:
    __slots__ = ('field', 'linear', 'central')

    def __init__(self, field: FieldSpec, linear, central=None):
        linear = field.copy(linear)
        g = linear.shape[0]
        if linear.shape != (g, g):
            raise DimensionMismatch(f"Linear part must be square, got {linear.shape}")
        if det_array(field, linear) == field.zero:
            raise SingularLinearPart("The linear part of a generator map must be invertible")
        central = field.zeros((g, pair_count(g))) if central is None else field.copy(central)
        if central.shape != (g, pair_count(g)):
            raise DimensionMismatch(f"Central corrections must be {g} x {pair_count(g)}, got {central.shape}")
        linear.flags.writeable = False
        central.flags.writeable = False
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'linear', linear)
        object.__setattr__(self, 'central', central)

    def __setattr__(self, name, value):
        raise AttributeError("GeneratorMap is immutable")

    @classmethod
    def identity(cls, field: FieldSpec, g: int) -> 'GeneratorMap':
        return cls(field, field.identity(g))

    @classmethod
    def permutation(cls, field: FieldSpec, perm: Sequence[int]) -> 'GeneratorMap':
        """x_j ↦ x_perm[j]."""
        g = len(perm)
        A = field.zeros((g, g))
        A[list(perm), np.arange(g)] = field.one
        return cls(field, A)

    @property
    def g(self) -> int:
        return self.linear.shape[0]

    def exterior(self) -> np.ndarray:
        return exterior_square(self.field, self.linear)

    def compose(self, other: 'GeneratorMap') -> 'GeneratorMap':
        """self ∘ other."""
        if other.field != self.field:
            raise FieldMismatch(f"Cannot compose maps over {self.field} and {other.field}")
        f = self.field
        linear = f.matmul(self.linear, other.linear)
        central = f.add(f.matmul(other.linear.T, self.central), f.matmul(other.central, self.exterior()))
        return GeneratorMap(f, linear, central)

    def matrix(self) -> Matrix:
        """The automorphism on the basis (x_1, ..., x_g, e12, ...) of 𝓛_{g-1}; columns are images."""
        f = self.field
        g = self.g
        P = pair_count(g)
        out = f.zeros((g + P, g + P))
        out[:g, :g] = self.linear
        out[g:, :g] = self.central.T
        out[g:, g:] = self.exterior().T
        return Matrix(f, out)

    def __eq__(self, other):
        if not isinstance(other, GeneratorMap):
            return NotImplemented
        return (self.field == other.field and bool(np.all(self.linear == other.linear))
                and bool(np.all(self.central == other.central)))

    def __hash__(self):
        return hash((self.field, tuple(self.linear.flat), tuple(self.central.flat)))

    def __repr__(self):
        return f"GeneratorMap({Matrix(self.field, self.linear)!r})"

    def to_json(self) -> dict:
        f = self.field
        return {
            'linear': Matrix(f, self.linear).to_json(),
            'central': [[f.to_json_value(c) for c in row] for row in self.central],
        }


def apply_generator_map(phi: GeneratorMap, b: Bivector) -> Bivector:
    if b.g != phi.g:
        raise DimensionMismatch(f"Map on {phi.g} generators applied to a bivector on {b.g}")
    return Bivector(phi.field, b.g, phi.field.matmul(b.coords[None, :], phi.exterior())[0])


def push_ideal(phi: GeneratorMap, I: CentralIdeal) -> CentralIdeal:
    if I.g != phi.g:
        raise DimensionMismatch(f"Map on {phi.g} generators applied to an ideal on {I.g}")
    return CentralIdeal.span(phi.field, I.g, phi.field.matmul(I.subspace.basis, phi.exterior()))


def standard_form(field: FieldSpec, g: int, r: int) -> np.ndarray:
    """Skew matrix of e12 + e34 + ... + e_{2r-1,2r}."""
    M = field.zeros((g, g))
    for k in range(r):
        M[2 * k, 2 * k + 1] = field.one
        M[2 * k + 1, 2 * k] = field.neg(field.one)
    return M


def _swap(field: FieldSpec, M: np.ndarray, A: np.ndarray, a: int, b: int):
    if a == b:
        return
    M[[a, b]] = M[[b, a]]
    M[:, [a, b]] = M[:, [b, a]]
    A[[a, b]] = A[[b, a]]


def darboux(field: FieldSpec, M) -> Tuple[np.ndarray, int]:
    """
    (A, r) with A M Aᵀ = standard_form(r) for a skew matrix M. Each round
    moves the first nonzero entry (i, j) of the remaining block to (2k, 2k+1),
    scales it to 1 and clears rows and columns 2k, 2k+1 beyond the block.
    """
    M = field.copy(M)
    g = M.shape[0]
    A = field.identity(g)
    r = 0
    while 2 * r + 1 < g:
        e, f = 2 * r, 2 * r + 1
        nz = np.argwhere(M[e:, e:] != 0)
        if nz.size == 0:
            break
        i, j = (int(k) + e for k in nz[0])
        _swap(field, M, A, i, e)
        _swap(field, M, A, j, f)

        scale = field.inv(M[e, f])
        M[e] = field.mul(M[e], scale)
        M[:, e] = field.mul(M[:, e], scale)
        A[e] = field.mul(A[e], scale)

        S = field.identity(g)
        S[f + 1:, e] = field.neg(M[f + 1:, f])
        S[f + 1:, f] = M[f + 1:, e]
        M = field.matmul(field.matmul(S, M), S.T)
        A = field.matmul(S, A)
        r += 1
    if np.any(M != standard_form(field, g, r)):
        raise InvariantViolation("Darboux reduction did not reach the standard form")
    return A, r


def particular_solution(field: FieldSpec, A, rhs) -> np.ndarray:
    """Some x with A x = rhs (free coordinates zero)."""
    A = np.asarray(A)
    rows, n = A.shape
    aug = field.zeros((rows, n + 1))
    aug[:, :n] = A
    aug[:, n] = rhs
    R, pivots = rref_array(field, aug)
    if n in pivots:
        raise InvariantViolation("Inconsistent linear system")
    x = field.zeros(n)
    for row, col in enumerate(pivots):
        x[col] = R[row, n]
    return x


def sending_to_first_pair(field: FieldSpec, u, v) -> GeneratorMap:
    """A map with A u = x1 and A v = x2, so that u∧v goes to e12 (u, v independent)."""
    g = len(u)
    columns = [field.copy(u), field.copy(v)]
    for k in range(g):
        trial = np.stack(columns + [field.identity(g)[k]])
        if len(rref_array(field, trial)[1]) == len(columns) + 1:
            columns.append(field.identity(g)[k])
        if len(columns) == g:
            break
    C = np.stack(columns).T
    R, _ = rref_array(field, np.concatenate([C, field.identity(g)], axis=1))
    return GeneratorMap(field, R[:, g:])


def canonical_bivector(field: FieldSpec, g: int, r: int) -> Bivector:
    rows, cols = np.triu_indices(g, 1)
    return Bivector(field, g, standard_form(field, g, r)[rows, cols])
