"""
Bivectors of Λ²(k^g), g = m+1 generators, identified with Z(𝓛_m).

u∧v corresponds to the skew matrix u vᵀ - v uᵀ; coordinate k of a bivector
is its entry above the diagonal at the k-th pair of constructions.pairs(g).
"""
import logging
from typing import Mapping, Tuple

import numpy as np

from core.exceptions import DimensionMismatch, FieldMismatch, InvariantViolation, NotSkewSymmetric
from fields.spec import FieldSpec
from lie.constructions import bivector_vector, pair_label, pairs
from linalg.matrix import Matrix, batch_rank, is_skew_array, pfaffian_array, rank_array

logger = logging.getLogger(__name__)


def pair_count(g: int) -> int:
    return g * (g - 1) // 2


def skew_stack(field: FieldSpec, g: int, coords) -> np.ndarray:
    """(N, g, g) skew matrices for a stack of coordinate rows."""
    coords = np.asarray(coords).reshape(-1, pair_count(g))
    rows, cols = np.triu_indices(g, 1)
    out = field.zeros((coords.shape[0], g, g))
    out[:, rows, cols] = coords
    out[:, cols, rows] = field.neg(coords)
    return out


def skew_ranks(field: FieldSpec, g: int, coords) -> np.ndarray:
    return batch_rank(field, skew_stack(field, g, coords))


def wedge_coords(field: FieldSpec, u, v) -> np.ndarray:
    u = np.asarray(u)
    v = np.asarray(v)
    rows, cols = np.triu_indices(u.shape[-1], 1)
    return field.sub(field.mul(u[..., rows], v[..., cols]), field.mul(u[..., cols], v[..., rows]))


class Bivector:
    __slots__ = ('field', 'g', 'coords')

    def __init__(self, field: FieldSpec, g: int, coords):
        coords = field.copy(coords).reshape(-1)
        if coords.shape[0] != pair_count(g):
            raise DimensionMismatch(f"A bivector on {g} generators has {pair_count(g)} coordinates, got {coords.shape[0]}")
        coords.flags.writeable = False
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'g', g)
        object.__setattr__(self, 'coords', coords)

    def __setattr__(self, name, value):
        raise AttributeError("Bivector is immutable")

    @classmethod
    def from_terms(cls, field: FieldSpec, g: int, terms: Mapping) -> 'Bivector':
        """Bivector.from_terms(GF3, 4, {'e12': 1, 'e34': 1})"""
        return cls(field, g, bivector_vector(field, g, terms))

    @classmethod
    def zero(cls, field: FieldSpec, g: int) -> 'Bivector':
        return cls(field, g, field.zeros(pair_count(g)))

    @property
    def m_plus_1(self) -> int:
        return self.g

    def is_zero(self) -> bool:
        return not np.any(self.coords != 0)

    def _other(self, other: 'Bivector') -> np.ndarray:
        if other.field != self.field:
            raise FieldMismatch(f"Cannot combine {self.field} with {other.field}")
        if other.g != self.g:
            raise DimensionMismatch(f"Bivectors on {self.g} and {other.g} generators")
        return other.coords

    def __add__(self, other: 'Bivector') -> 'Bivector':
        return Bivector(self.field, self.g, self.field.add(self.coords, self._other(other)))

    def __sub__(self, other: 'Bivector') -> 'Bivector':
        return Bivector(self.field, self.g, self.field.sub(self.coords, self._other(other)))

    def __neg__(self) -> 'Bivector':
        return Bivector(self.field, self.g, self.field.neg(self.coords))

    def __rmul__(self, c) -> 'Bivector':
        return Bivector(self.field, self.g, self.field.mul(self.field(c).value, self.coords))

    def __eq__(self, other):
        if not isinstance(other, Bivector):
            return NotImplemented
        return self.field == other.field and self.g == other.g and bool(np.all(self.coords == other.coords))

    def __hash__(self):
        return hash((self.field, self.g, tuple(self.coords.tolist())))

    def __repr__(self):
        terms = []
        for (i, j), c in zip(pairs(self.g), self.coords):
            if c != 0:
                text = self.field.format_value(c)
                label = pair_label(i, j, self.g)
                terms.append(label if text == '1' else f"{text}*{label}")
        return ' + '.join(terms) if terms else '0'

    def to_json(self) -> list:
        return [self.field.to_json_value(c) for c in self.coords]


def to_skew(b: Bivector) -> Matrix:
    return Matrix(b.field, skew_stack(b.field, b.g, b.coords)[0])


def from_skew(M: Matrix) -> Bivector:
    if not is_skew_array(M.field, M.data):
        raise NotSkewSymmetric("from_skew needs a skew-symmetric matrix with zero diagonal")
    g = M.rows
    rows, cols = np.triu_indices(g, 1)
    return Bivector(M.field, g, M.data[rows, cols])


def wedge(field: FieldSpec, u, v) -> Bivector:
    """u∧v for generator-coordinate vectors u, v."""
    u = field.array(u) if not isinstance(u, np.ndarray) else u
    v = field.array(v) if not isinstance(v, np.ndarray) else v
    if u.shape != v.shape:
        raise DimensionMismatch(f"Cannot wedge vectors of shapes {u.shape} and {v.shape}")
    return Bivector(field, u.shape[0], wedge_coords(field, u, v))


def skew_rank(b: Bivector) -> int:
    return rank_array(b.field, skew_stack(b.field, b.g, b.coords)[0])


def is_decomposable(b: Bivector) -> bool:
    """b = u∧v for some u, v: zero or of skew rank 2. On four generators this is checked against the Pfaffian."""
    if b.is_zero():
        return True
    decomposable = skew_rank(b) == 2
    if b.g == 4:
        vanishes = pfaffian_array(b.field, skew_stack(b.field, 4, b.coords)[0]) == 0
        if vanishes != decomposable:
            raise InvariantViolation(f"Skew rank and Pfaffian disagree on {b!r}")
    return decomposable


def factor_decomposable(b: Bivector) -> Tuple[np.ndarray, np.ndarray]:
    """(u, v) with u∧v = b, read off two rows of the skew matrix."""
    if b.is_zero() or skew_rank(b) != 2:
        raise ValueError(f"{b!r} is not a nonzero decomposable bivector")
    f = b.field
    M = skew_stack(f, b.g, b.coords)[0]
    i, j = (int(k) for k in np.argwhere(M != 0)[0])
    # row_i ∧ row_j = M[i, j] * b
    u = f.mul(M[i], f.inv(M[i, j]))
    return u, M[j].copy()
