"""
Lie algebras given by structure constants over a FieldSpec.

sc[i, j, k] is the coefficient of e_k in [e_i, e_j]. Elements are raw
coordinate vectors (see fields.spec); Element wraps one for display and
operator use.
"""
import logging
from dataclasses import dataclass
from typing import List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from core.conf import lab_setting
from core.exceptions import (
    AlgebraAxiomError,
    BudgetExceeded,
    DimensionMismatch,
    FieldMismatch,
    NotCentralIdeal,
    NotNilpotent,
    Unsupported,
)
from fields.spec import FieldSpec
from linalg.matrix import Matrix, batch_rank, rank_array
from linalg.subspace import CHUNK, Subspace, index_vectors

logger = logging.getLogger(__name__)

ANTISYMMETRY = 'antisymmetry'
ALTERNATING = 'alternating'
JACOBI = 'jacobi'


@dataclass
class ValidationReport:
    """Outcome of the axiom check; indices are 1-based basis positions."""
    ok: bool
    kind: Optional[str] = None
    indices: Tuple[int, ...] = ()

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return 'ok'
        return f"{self.kind} violation at {self.indices}"

    def to_json(self) -> dict:
        return {'ok': self.ok, 'kind': self.kind, 'indices': list(self.indices)}


@dataclass(frozen=True)
class BreadthType:
    breadths: Tuple[int, ...]
    exact: bool
    upper_bound: Optional[int] = None
    samples: int = 0
    seed: Optional[int] = None

    def __post_init__(self):
        b = self.breadths
        if not b or b[0] != 0 or any(x >= y for x, y in zip(b, b[1:])):
            raise ValueError(f"Breadth type must start at 0 and increase strictly: {b}")

    @property
    def max(self) -> int:
        return self.breadths[-1]

    def __str__(self):
        text = '(' + ','.join(str(x) for x in self.breadths) + ')'
        return text if self.exact else f"{text} observed"

    def to_json(self) -> dict:
        data = {'breadth_type': list(self.breadths), 'exact': self.exact}
        if not self.exact:
            data.update({'upper_bound': self.upper_bound, 'samples': self.samples, 'seed': self.seed})
        return data


class LieAlgebra:
    __slots__ = ('field', 'sc', 'labels', 'name')

    def __init__(self, field: FieldSpec, sc, labels: Optional[Sequence[str]] = None,
                 name: str = '', validate: bool = True):
        sc = field.copy(sc)
        if sc.ndim != 3 or len(set(sc.shape)) > 1:
            raise DimensionMismatch(f"Structure constants must be n x n x n, got {sc.shape}")
        sc.flags.writeable = False
        n = sc.shape[0]
        labels = list(labels) if labels is not None else [f"e{i + 1}" for i in range(n)]
        if len(labels) != n:
            raise DimensionMismatch(f"{len(labels)} labels for a {n}-dimensional algebra")
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'sc', sc)
        object.__setattr__(self, 'labels', tuple(labels))
        object.__setattr__(self, 'name', name)
        if validate:
            report = self.validate()
            if not report:
                raise AlgebraAxiomError(report)

    def __setattr__(self, key, value):
        raise AttributeError("LieAlgebra is immutable")

    @classmethod
    def from_brackets(cls, field: FieldSpec, dim: int,
                      brackets: Mapping[Tuple[int, int], Mapping[int, object]],
                      labels: Optional[Sequence[str]] = None, name: str = '') -> 'LieAlgebra':
        """Build from {(i, j): {k: c}} with 0-based i < j; [e_j, e_i] is filled in."""
        sc = field.zeros((dim, dim, dim))
        for (i, j), terms in brackets.items():
            if not 0 <= i < j < dim:
                raise DimensionMismatch(f"Bracket index pair {(i + 1, j + 1)} must satisfy 1 <= i < j <= {dim}")
            for k, c in terms.items():
                value = field(c).value
                sc[i, j, k] = value
                sc[j, i, k] = field.neg(value)
        return cls(field, sc, labels=labels, name=name)

    @classmethod
    def abelian(cls, field: FieldSpec, dim: int, labels=None) -> 'LieAlgebra':
        return cls(field, field.zeros((dim, dim, dim)), labels=labels, name=f"A{dim}")

    # basics

    @property
    def dim(self) -> int:
        return self.sc.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.field == other.field and self.sc.shape == other.sc.shape
                and bool(np.all(self.sc == other.sc)))

    def __hash__(self):
        return hash((self.field, self.sc.shape, tuple(self.sc.flat)))

    def __repr__(self):
        label = self.name or 'LieAlgebra'
        return f"<{label} dim={self.dim} over {self.field}>"

    def vector(self, coords) -> np.ndarray:
        if isinstance(coords, Element):
            if coords.algebra != self:
                raise FieldMismatch("Element belongs to another algebra")
            return coords.coords
        v = coords if isinstance(coords, np.ndarray) else self.field.array(coords)
        if v.shape[-1] != self.dim:
            raise DimensionMismatch(f"Vector of length {v.shape[-1]} in a {self.dim}-dimensional algebra")
        return v

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def element(self, coords) -> 'Element':
        return Element(self, self.vector(coords))

    def basis_element(self, label: str) -> 'Element':
        return Element(self, self.basis_vector(self.labels.index(label)))

    def format_vector(self, v) -> str:
        terms = []
        for label, c in zip(self.labels, v):
            if c != 0:
                text = self.field.format_value(c)
                terms.append(label if text == '1' else f"{text}*{label}")
        return ' + '.join(terms) if terms else '0'

    # axioms

    def validate(self) -> ValidationReport:
        """Alternating, antisymmetry and Jacobi on all basis triples; first violation wins."""
        f = self.field
        n = self.dim
        sc = self.sc
        diagonal = np.flatnonzero(np.any(sc[np.arange(n), np.arange(n)] != 0, axis=-1))
        if diagonal.size:
            i = int(diagonal[0]) + 1
            return ValidationReport(False, ALTERNATING, (i, i))
        sym = np.any(f.add(sc, sc.transpose(1, 0, 2)) != 0, axis=-1)
        bad = np.argwhere(np.triu(sym, 1))
        if len(bad):
            i, j = bad[0]
            return ValidationReport(False, ANTISYMMETRY, (int(i) + 1, int(j) + 1))
        if n >= 3:
            # T[i, j, k] = [[e_i, e_j], e_k]
            T = f.matmul(sc.reshape(n * n, n), sc.reshape(n, n * n)).reshape(n, n, n, n)
            J = f.add(f.add(T, T.transpose(2, 0, 1, 3)), T.transpose(1, 2, 0, 3))
            failing = np.any(J != 0, axis=-1)
            i, j, k = np.indices((n, n, n))
            bad = np.argwhere(failing & (i < j) & (j < k))
            if len(bad):
                return ValidationReport(False, JACOBI, tuple(int(x) + 1 for x in bad[0]))
        return ValidationReport(True)

    # brackets

    def _left(self, x) -> np.ndarray:
        """A[j, k] = coefficient of e_k in [x, e_j]."""
        n = self.dim
        return self.field.matmul(self.vector(x)[None, :], self.sc.reshape(n, n * n)).reshape(n, n)

    def bracket(self, x, y):
        wrap = isinstance(x, Element)
        out = self.field.matmul(self.vector(y)[None, :], self._left(x))[0]
        return Element(self, out) if wrap else out

    def ad_matrix(self, x) -> Matrix:
        """Columns are [x, e_j]."""
        return Matrix(self.field, self._left(x).T)

    def ad_stack(self, xs) -> np.ndarray:
        """(N, n, n) stack of transposed ad matrices for rows of xs; ranks equal breadths."""
        n = self.dim
        xs = np.asarray(xs).reshape(-1, n)
        return self.field.matmul(xs, self.sc.reshape(n, n * n)).reshape(-1, n, n)

    def bracket_subspaces(self, S: Subspace, T: Subspace) -> Subspace:
        n = self.dim
        if S.dim == 0 or T.dim == 0:
            return Subspace.zero(self.field, n)
        left = self.ad_stack(S.basis)
        products = [self.field.matmul(T.basis, left[a]) for a in range(S.dim)]
        return Subspace.span(self.field, n, np.concatenate(products))

    # structure

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def center(self) -> Subspace:
        n = self.dim
        if n == 0:
            return Subspace.zero(self.field, 0)
        return Subspace.kernel_of(self.field, self.sc.transpose(1, 2, 0).reshape(n * n, n))

    def derived(self) -> Subspace:
        n = self.dim
        return Subspace.span(self.field, n, self.sc.reshape(n * n, n))

    def lower_central_series(self) -> List[Subspace]:
        """[L, γ2, γ3, ...], ending with 0 when nilpotent or with the first repeat otherwise."""
        series = [self.full()]
        while series[-1].dim:
            nxt = self.bracket_subspaces(self.full(), series[-1])
            if nxt.dim == series[-1].dim:
                break
            series.append(nxt)
        return series

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1].dim == 0

    def nilpotency_class(self) -> int:
        if self.dim == 0:
            return 0
        series = self.lower_central_series()
        if series[-1].dim:
            raise NotNilpotent(f"Lower central series stabilises at dimension {series[-1].dim}")
        return len(series) - 1

    def is_abelian(self) -> bool:
        return not np.any(self.sc != 0)

    def is_stem(self) -> bool:
        return self.center().issubspace(self.derived())

    def is_central(self, I: Subspace) -> bool:
        return I.issubspace(self.center())

    def centralizer(self, x) -> Subspace:
        return Subspace.kernel_of(self.field, self._left(x).T)

    def breadth(self, x) -> int:
        return rank_array(self.field, self._left(x))

    # breadth types

    def coset_count(self) -> int:
        """Number of cosets of Z(L), i.e. q^dim(L/Z)."""
        return self.field.order ** self.center().codim

    def coset_breadths(self, start: int = 0, stop: Optional[int] = None) -> Set[int]:
        """Breadths over coset representatives start..stop of L/Z(L) in index order."""
        Z = self.center()
        comp = Z.non_pivots()
        total = self.field.order ** len(comp)
        stop = total if stop is None else min(stop, total)
        found: Set[int] = set()
        for lo in range(start, stop, CHUNK):
            coeffs = index_vectors(self.field, len(comp), np.arange(lo, min(lo + CHUNK, stop)))
            xs = self.field.zeros((len(coeffs), self.dim))
            xs[:, comp] = coeffs
            found.update(int(r) for r in batch_rank(self.field, self.ad_stack(xs)))
        return found

    def sampled_breadths(self, samples: int, seed: int) -> Set[int]:
        rng = np.random.default_rng(seed)
        found = {0}
        left = samples
        while left > 0:
            size = min(left, CHUNK)
            xs = self.field.random(rng, (size, self.dim))
            found.update(int(r) for r in batch_rank(self.field, self.ad_stack(xs)))
            left -= size
        return found

    def breadth_upper_bound(self) -> int:
        return min(self.derived().dim, self.center().codim)

    def breadth_type(self, mode: str = 'auto', budget: Optional[int] = None,
                     samples: Optional[int] = None, seed: Optional[int] = None) -> BreadthType:
        """
        mode 'exact' enumerates L/Z(L) cosets (finite fields) and raises
        BudgetExceeded when there are more than `budget` of them; 'sample'
        draws seeded random elements; 'auto' picks exact when it fits.
        """
        if mode not in ('auto', 'exact', 'sample'):
            raise ValueError(f"Unknown breadth type mode: {mode}")
        if self.is_abelian():
            return BreadthType((0,), exact=True)
        budget = lab_setting('BREADTHLAB_COSET_BUDGET') if budget is None else budget
        fits = self.field.is_finite and self.coset_count() <= budget
        if mode == 'exact' or (mode == 'auto' and fits):
            if not self.field.is_finite:
                raise Unsupported("Exact breadth types need a finite field; use sampling over Q")
            if not fits:
                raise BudgetExceeded(f"{self.coset_count()} cosets of the centre exceed the budget {budget}")
            return BreadthType(tuple(sorted(self.coset_breadths())), exact=True)

        samples = lab_setting('BREADTHLAB_SAMPLE_SIZE') if samples is None else samples
        seed = lab_setting('BREADTHLAB_SEED') if seed is None else seed
        logger.info(f"Sampling {samples} elements of {self!r} with seed {seed}")
        found = self.sampled_breadths(samples, seed)
        return BreadthType(tuple(sorted(found)), exact=False,
                           upper_bound=self.breadth_upper_bound(), samples=samples, seed=seed)

    # derived algebras

    def direct_sum_abelian(self, d: int) -> 'LieAlgebra':
        if d < 0:
            raise ValueError("Abelian summand dimension must be non-negative")
        if d == 0:
            return self
        n = self.dim
        sc = self.field.zeros((n + d, n + d, n + d))
        sc[:n, :n, :n] = self.sc
        labels = list(self.labels) + [f"a{i + 1}" for i in range(d)]
        name = f"{self.name} + A{d}" if self.name else ''
        return LieAlgebra(self.field, sc, labels=labels, name=name, validate=False)

    def quotient(self, I: Subspace, name: str = '') -> 'LieAlgebra':
        """L/I for a central ideal I, on the basis of non-pivot coordinates of I."""
        if I.ambient_dim != self.dim or I.field != self.field:
            raise DimensionMismatch("Ideal does not live in this algebra")
        if not self.is_central(I):
            raise NotCentralIdeal("The ideal is not contained in the centre")
        comp = I.non_pivots()
        m = len(comp)
        V = self.sc[np.ix_(comp, comp)].reshape(m * m, self.dim)
        if I.dim:
            V = self.field.sub(V, self.field.matmul(V[:, list(I.pivots)], I.basis))
        sc = V[:, comp].reshape(m, m, m)
        return LieAlgebra(self.field, sc, labels=[self.labels[c] for c in comp], name=name, validate=False)

    def strip_abelian_summands(self) -> 'LieAlgebra':
        """Quotient by a complement of L' inside Z(L); the stem part up to isoclinism."""
        Z = self.center()
        D = self.derived()
        # greedy complement of Z ∩ L' in Z
        chosen: List[np.ndarray] = []
        span = Z.intersect(D)
        for v in Z.basis:
            if not span.member(v):
                chosen.append(v)
                span = span.sum(Subspace.span(self.field, self.dim, v))
        if not chosen:
            return self
        return self.quotient(Subspace.span(self.field, self.dim, np.stack(chosen)), name=self.name)

    # JSON

    def to_json(self) -> dict:
        n = self.dim
        brackets = []
        for i in range(n):
            for j in range(i + 1, n):
                terms = [[k + 1, self.field.to_json_value(self.sc[i, j, k])]
                         for k in range(n) if self.sc[i, j, k] != 0]
                if terms:
                    brackets.append([i + 1, j + 1, terms])
        data = {'field': self.field.to_json(), 'dim': n, 'labels': list(self.labels), 'brackets': brackets}
        if self.name:
            data['name'] = self.name
        return data


class Element:
    """A coordinate vector bound to its algebra."""

    __slots__ = ('algebra', 'coords')

    def __init__(self, algebra: LieAlgebra, coords):
        self.algebra = algebra
        self.coords = algebra.vector(coords)

    def __add__(self, other: 'Element') -> 'Element':
        return Element(self.algebra, self.algebra.field.add(self.coords, self.algebra.vector(other)))

    def __sub__(self, other: 'Element') -> 'Element':
        return Element(self.algebra, self.algebra.field.sub(self.coords, self.algebra.vector(other)))

    def __neg__(self) -> 'Element':
        return Element(self.algebra, self.algebra.field.neg(self.coords))

    def __rmul__(self, c) -> 'Element':
        f = self.algebra.field
        return Element(self.algebra, f.mul(f(c).value, self.coords))

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and bool(np.all(self.coords == other.coords))

    def __hash__(self):
        return hash(tuple(self.coords.tolist()))

    def is_zero(self) -> bool:
        return not np.any(self.coords != 0)

    def __repr__(self):
        return self.algebra.format_vector(self.coords)


# module-level operations

def validate(L: LieAlgebra) -> ValidationReport:
    return L.validate()


def bracket(L: LieAlgebra, x, y):
    return L.bracket(x, y)


def ad_matrix(L: LieAlgebra, x) -> Matrix:
    return L.ad_matrix(x)


def center(L: LieAlgebra) -> Subspace:
    return L.center()


def derived(L: LieAlgebra) -> Subspace:
    return L.derived()


def lower_central_series(L: LieAlgebra) -> List[Subspace]:
    return L.lower_central_series()


def nilpotency_class(L: LieAlgebra) -> int:
    return L.nilpotency_class()


def is_stem(L: LieAlgebra) -> bool:
    return L.is_stem()


def breadth(L: LieAlgebra, x) -> int:
    return L.breadth(x)


def centralizer(L: LieAlgebra, x) -> Subspace:
    return L.centralizer(x)


def breadth_type(L: LieAlgebra, **kwargs) -> BreadthType:
    return L.breadth_type(**kwargs)


def direct_sum_abelian(L: LieAlgebra, d: int) -> LieAlgebra:
    return L.direct_sum_abelian(d)
