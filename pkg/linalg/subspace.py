"""
Subspaces in canonical RREF form, and exhaustive enumeration of subspaces
and vectors over finite fields.

Enumeration order is fixed: pivot patterns in lexicographic order, then
the free entries in field index order (row-major). Scans shard on the
pivot pattern.
"""
import logging
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import DimensionMismatch, FieldMismatch, Unsupported
from fields.spec import FieldSpec
from .matrix import Matrix, kernel_array, rref_array

logger = logging.getLogger(__name__)

# vectors per chunk when streaming elements
CHUNK = 4096


class Subspace:
    """Row space of an RREF basis with no zero rows; equal subspaces have equal bases."""

    __slots__ = ('field', 'ambient_dim', 'basis', 'pivots')

    def __init__(self, field: FieldSpec, ambient_dim: int, basis, pivots: Sequence[int]):
        basis = field.copy(basis).reshape(len(pivots), ambient_dim)
        basis.flags.writeable = False
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'ambient_dim', ambient_dim)
        object.__setattr__(self, 'basis', basis)
        object.__setattr__(self, 'pivots', tuple(int(p) for p in pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    # construction

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors) -> 'Subspace':
        vectors = np.asarray(vectors)
        if vectors.size == 0:
            return cls.zero(field, ambient_dim)
        vectors = vectors.reshape(-1, ambient_dim)
        R, pivots = rref_array(field, vectors)
        return cls(field, ambient_dim, R[:len(pivots)], pivots)

    @classmethod
    def from_rows(cls, field: FieldSpec, ambient_dim: int, rows) -> 'Subspace':
        """Span of rows given as ints, Fractions or FieldElems."""
        rows = list(rows)
        if not rows:
            return cls.zero(field, ambient_dim)
        return cls.span(field, ambient_dim, field.array(rows))

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> 'Subspace':
        return cls(field, ambient_dim, field.zeros((0, ambient_dim)), ())

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> 'Subspace':
        return cls(field, ambient_dim, field.identity(ambient_dim), range(ambient_dim))

    @classmethod
    def kernel_of(cls, field: FieldSpec, a) -> 'Subspace':
        a = np.asarray(a)
        return cls.span(field, a.shape[1], kernel_array(field, a))

    # properties

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def non_pivots(self) -> List[int]:
        """Coordinates complementary to the pivots; they index a complement of the subspace."""
        return [j for j in range(self.ambient_dim) if j not in self.pivots]

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.basis)

    def _same_ambient(self, other: 'Subspace'):
        if other.field != self.field:
            raise FieldMismatch(f"Subspaces over {self.field} and {other.field}")
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(f"Ambient dims {self.ambient_dim} and {other.ambient_dim}")

    def _vector(self, v) -> np.ndarray:
        v = np.asarray(v)
        if v.shape[-1] != self.ambient_dim:
            raise DimensionMismatch(f"Vector of length {v.shape[-1]} in ambient dim {self.ambient_dim}")
        return v

    # membership and coordinates

    def coordinates(self, v) -> np.ndarray:
        """Coefficients of v in the RREF basis, valid when v is a member."""
        return self._vector(v)[..., list(self.pivots)]

    def combine(self, coords) -> np.ndarray:
        """The vector(s) with the given basis coefficients."""
        coords = np.asarray(coords)
        if self.dim == 0:
            return self.field.zeros(coords.shape[:-1] + (self.ambient_dim,))
        flat = coords.reshape(-1, self.dim)
        return self.field.matmul(flat, self.basis).reshape(coords.shape[:-1] + (self.ambient_dim,))

    def member(self, v) -> bool:
        v = self._vector(v)
        return bool(np.all(self.combine(self.coordinates(v)) == v))

    def members(self, vs) -> np.ndarray:
        """Vectorised membership for a stack of row vectors."""
        vs = self._vector(vs)
        return np.all(self.combine(self.coordinates(vs)) == vs, axis=-1)

    def __contains__(self, v) -> bool:
        return self.member(v)

    def issubspace(self, other: 'Subspace') -> bool:
        self._same_ambient(other)
        return self.dim == 0 or bool(np.all(other.members(self.basis)))

    # lattice operations

    def sum(self, other: 'Subspace') -> 'Subspace':
        self._same_ambient(other)
        return Subspace.span(self.field, self.ambient_dim, np.concatenate([self.basis, other.basis]))

    __add__ = sum

    def annihilator(self) -> 'Subspace':
        """{w : <v, w> = 0 for every v in the subspace}."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return Subspace.kernel_of(self.field, self.basis)

    def intersect(self, other: 'Subspace') -> 'Subspace':
        self._same_ambient(other)
        equations = np.concatenate([self.annihilator().basis, other.annihilator().basis])
        if equations.shape[0] == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return Subspace.kernel_of(self.field, equations)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots and bool(np.all(self.basis == other.basis)))

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.pivots, tuple(self.basis.flat)))

    # enumeration (finite fields)

    def _require_finite(self):
        if not self.field.is_finite:
            raise Unsupported("Enumeration needs a finite field")

    def size(self) -> int:
        self._require_finite()
        return self.field.order ** self.dim

    def enumerate_elements(self) -> Iterator[np.ndarray]:
        """Every vector of the subspace, in coefficient order, streamed in chunks."""
        for chunk in self.element_chunks():
            yield from chunk

    def element_chunks(self, chunk: int = CHUNK) -> Iterator[np.ndarray]:
        self._require_finite()
        total = self.size()
        for start in range(0, total, chunk):
            coords = index_vectors(self.field, self.dim, np.arange(start, min(start + chunk, total)))
            yield self.combine(coords)

    def projective_representatives(self) -> np.ndarray:
        """One nonzero vector per line of the subspace (leading coefficient 1)."""
        self._require_finite()
        return self.combine(projective_points(self.field, self.dim))

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        return self.combine(self.field.random(rng, self.dim))

    def to_json(self) -> dict:
        return {
            'ambient_dim': self.ambient_dim,
            'basis': [[self.field.to_json_value(v) for v in row] for row in self.basis],
        }

    def __repr__(self):
        rows = ', '.join('(' + ' '.join(self.field.format_value(v) for v in row) + ')' for row in self.basis)
        return f"Subspace(dim={self.dim} in {self.field}^{self.ambient_dim}: {rows})"


# whole-space enumeration helpers

def index_vectors(field: FieldSpec, n: int, indices) -> np.ndarray:
    """Vectors of GF(q)^n at the given positions of the itertools.product order."""
    indices = np.asarray(indices, dtype=np.int64)
    if n == 0:
        return field.zeros((len(indices), 0))
    q = field.order
    digits = np.empty((len(indices), n), dtype=np.int64)
    rest = indices.copy()
    for i in range(n - 1, -1, -1):
        digits[:, i] = rest % q
        rest //= q
    return digits


def all_vectors(field: FieldSpec, n: int) -> np.ndarray:
    if not field.is_finite:
        raise Unsupported("Enumeration needs a finite field")
    return index_vectors(field, n, np.arange(field.order ** n))


def projective_points(field: FieldSpec, n: int, lead: Optional[int] = None) -> np.ndarray:
    """
    Nonzero vectors of GF(q)^n with first nonzero coordinate 1, ordered by the
    position of that coordinate. With `lead`, only vectors leading at that
    position (the natural shard of a projective scan).
    """
    if not field.is_finite:
        raise Unsupported("Enumeration needs a finite field")
    leads = range(n) if lead is None else [lead]
    blocks = []
    for i in leads:
        tail = all_vectors(field, n - i - 1)
        block = np.zeros((tail.shape[0], n), dtype=np.int64)
        block[:, i] = 1
        block[:, i + 1:] = tail
        blocks.append(block)
    if not blocks:
        return field.zeros((0, n))
    return np.concatenate(blocks)


# subspace enumeration

def gaussian_binomial(n: int, d: int, q: int) -> int:
    if d < 0 or d > n:
        return 0
    num = 1
    den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def pivot_patterns(n: int, d: int) -> List[Tuple[int, ...]]:
    return list(combinations(range(n), d))


def free_positions(n: int, pattern: Sequence[int]) -> List[Tuple[int, int]]:
    """(row, col) entries of an RREF basis with the given pivots that may be set freely."""
    pivots = set(pattern)
    return [(row, col) for row, p in enumerate(pattern) for col in range(p + 1, n) if col not in pivots]


def pattern_count(field: FieldSpec, n: int, pattern: Sequence[int]) -> int:
    return field.order ** len(free_positions(n, pattern))


def enumerate_subspaces(field: FieldSpec, n: int, d: int,
                        patterns: Optional[Sequence[Tuple[int, ...]]] = None) -> Iterator[Subspace]:
    """Each d-dimensional subspace of GF(q)^n exactly once, in canonical order."""
    if not field.is_finite:
        raise Unsupported("Subspace enumeration needs a finite field")
    if not 0 <= d <= n:
        raise DimensionMismatch(f"No {d}-dimensional subspaces of a {n}-dimensional space")
    for pattern in (pivot_patterns(n, d) if patterns is None else patterns):
        yield from _pattern_subspaces(field, n, tuple(pattern))


def enumerate_subspace_bases(field: FieldSpec, n: int, pattern: Sequence[int]) -> np.ndarray:
    """All RREF bases with a given pivot pattern as one (count, d, n) stack."""
    pattern = tuple(pattern)
    free = free_positions(n, pattern)
    values = all_vectors(field, len(free))
    stack = np.zeros((values.shape[0], len(pattern), n), dtype=np.int64)
    stack[:, np.arange(len(pattern)), list(pattern)] = 1
    for k, (row, col) in enumerate(free):
        stack[:, row, col] = values[:, k]
    return stack


def _pattern_subspaces(field: FieldSpec, n: int, pattern: Tuple[int, ...]) -> Iterator[Subspace]:
    logger.debug(f"Enumerating pivot pattern {pattern} in {field}^{n}")
    for basis in enumerate_subspace_bases(field, n, pattern):
        yield Subspace(field, n, basis, pattern)


def enumerate_elements(S: Subspace) -> Iterator[np.ndarray]:
    return S.enumerate_elements()


def member(S: Subspace, v) -> bool:
    return S.member(v)


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    return S.sum(T)


def intersect(S: Subspace, T: Subspace) -> Subspace:
    return S.intersect(T)
