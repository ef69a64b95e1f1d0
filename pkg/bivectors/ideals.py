"""
Central ideals of 𝓛_m in bivector coordinates, and the bracket-freeness test.

In a class-2 quotient of 𝓛_m the bracket [a, b] only depends on the linear
parts of a and b and equals their wedge, so "I contains a nonzero Lie
bracket" means "I contains a nonzero bivector of skew rank 2".
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import DimensionMismatch, InvariantViolation, Undetermined, Unsupported
from fields.spec import FieldSpec, is_square, sqrt
from lie.algebra import BreadthType
from lie.constructions import bivector_span, free_quotient
from linalg.matrix import det_array, kernel_array
from linalg.subspace import CHUNK, Subspace, enumerate_subspaces, projective_points
from .bivector import Bivector, pair_count, skew_ranks

logger = logging.getLogger(__name__)

SCAN = 'scan'
BASIS = 'basis'
DEFINITE = 'definite'
DEGENERATE = 'degenerate'
BINARY_FORM = 'binary-form'


class CentralIdeal:
    """A subspace of Λ²(k^g) = Z(𝓛_{g-1}), kept in RREF."""

    __slots__ = ('g', 'subspace')

    def __init__(self, g: int, subspace: Subspace):
        if subspace.ambient_dim != pair_count(g):
            raise DimensionMismatch(f"Ideal lives in dimension {subspace.ambient_dim}, expected {pair_count(g)}")
        object.__setattr__(self, 'g', g)
        object.__setattr__(self, 'subspace', subspace)

    def __setattr__(self, name, value):
        raise AttributeError("CentralIdeal is immutable")

    @classmethod
    def span(cls, field: FieldSpec, g: int, vectors) -> 'CentralIdeal':
        return cls(g, Subspace.span(field, pair_count(g), vectors))

    @classmethod
    def from_terms(cls, field: FieldSpec, g: int, rows: Sequence) -> 'CentralIdeal':
        """CentralIdeal.from_terms(GF3, 4, [{'e12': 1, 'e34': 1}])"""
        return cls(g, bivector_span(field, g, rows))

    @classmethod
    def zero(cls, field: FieldSpec, g: int) -> 'CentralIdeal':
        return cls(g, Subspace.zero(field, pair_count(g)))

    @property
    def field(self) -> FieldSpec:
        return self.subspace.field

    @property
    def m(self) -> int:
        return self.g - 1

    @property
    def m_plus_1(self) -> int:
        return self.g

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def basis(self) -> List[Bivector]:
        return [Bivector(self.field, self.g, row) for row in self.subspace.basis]

    def contains(self, b: Bivector) -> bool:
        return self.subspace.member(b.coords)

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, CentralIdeal):
            return NotImplemented
        return self.g == other.g and self.subspace == other.subspace

    def __hash__(self):
        return hash((self.g, self.subspace))

    def __repr__(self):
        gens = ', '.join(repr(b) for b in self.basis())
        return f"<{gens}>" if gens else '<0>'

    def to_json(self) -> dict:
        return {
            'm_plus_1': self.g,
            'basis': [b.to_json() for b in self.basis()],
        }


@dataclass
class BracketFreeResult:
    free: bool
    witness: Optional[Bivector] = None
    method: str = SCAN

    def __bool__(self):
        return self.free

    def to_json(self) -> dict:
        data = {'bracket_free': self.free, 'method': self.method}
        if self.witness is not None:
            data['witness'] = repr(self.witness)
            data['witness_coords'] = self.witness.to_json()
        return data


def _first_decomposable(I: CentralIdeal, coeffs: np.ndarray) -> Optional[Bivector]:
    for lo in range(0, len(coeffs), CHUNK):
        elements = I.subspace.combine(coeffs[lo:lo + CHUNK])
        hits = np.flatnonzero(skew_ranks(I.field, I.g, elements) <= 2)
        if hits.size:
            return Bivector(I.field, I.g, elements[hits[0]])
    return None


def bracket_free_shard(I: CentralIdeal, lead: int) -> Optional[Bivector]:
    """First decomposable element among lines of I whose coefficients lead at `lead`."""
    return _first_decomposable(I, projective_points(I.field, I.dim, lead=lead))


def bracket_free(I: CentralIdeal) -> BracketFreeResult:
    """
    Whether I avoids every nonzero decomposable bivector. Finite fields scan
    one element per line of I. Over Q the answer is decided from a basis
    witness, a one-dimensional ideal, or (four generators) the Pfaffian
    quadratic form restricted to I; anything else raises Undetermined.
    """
    if I.field.is_finite:
        for lead in range(I.dim):
            witness = bracket_free_shard(I, lead)
            if witness is not None:
                return BracketFreeResult(False, witness, SCAN)
        return BracketFreeResult(True, method=SCAN)
    return _rational_bracket_free(I)


def pfaffian_gram(I: CentralIdeal) -> np.ndarray:
    """Gram matrix of the polarised Pfaffian form pf(Σ ξ_k b_k) on a basis of I (four generators, Q)."""
    B = I.subspace.basis
    # pf(b) = b12 b34 - b13 b24 + b14 b23, coordinates in pair order 12 13 14 23 24 34
    pairing = np.array([5, 4, 3, 2, 1, 0])
    signs = np.array([1, -1, 1, 1, -1, 1], dtype=object)
    d = I.dim
    G = I.field.zeros((d, d))
    for k in range(d):
        for l in range(d):
            G[k, l] = sum(signs * B[k] * B[l][pairing]) / 2
    return G


def _leading_minors(field: FieldSpec, G: np.ndarray) -> List[Fraction]:
    return [det_array(field, G[:k, :k]) for k in range(1, G.shape[0] + 1)]


def isotropic_vector(field: FieldSpec, G: np.ndarray) -> Tuple[Optional[np.ndarray], str]:
    """
    Decide whether the rational quadratic form ξᵀGξ has a nonzero zero.
    Returns (ξ, method) for an isotropic vector or (None, method) when the
    form is anisotropic; raises Undetermined for indefinite forms of rank >= 3.
    """
    minors = _leading_minors(field, G)
    if all(d > 0 for d in minors) or all((-1) ** k * d > 0 for k, d in enumerate(minors, start=1)):
        return None, DEFINITE
    if minors[-1] == 0:
        return kernel_array(field, G)[0], DEGENERATE
    if G.shape[0] == 2 and G[0, 0] != 0:
        # a x^2 + 2 h x y + c y^2 is isotropic iff h^2 - a c is a square
        a, h, c = G[0, 0], G[0, 1], G[1, 1]
        disc = field.wrap(h * h - a * c)
        if not is_square(disc):
            return None, BINARY_FORM
        return field.array([sqrt(disc).value - h, a]), BINARY_FORM
    raise Undetermined(f"Indefinite form of rank {G.shape[0]}")


def _rational_bracket_free(I: CentralIdeal) -> BracketFreeResult:
    field = I.field
    basis = I.basis()
    ranks = skew_ranks(field, I.g, I.subspace.basis)
    for b, r in zip(basis, ranks):
        if r <= 2:
            return BracketFreeResult(False, b, BASIS)
    if I.dim <= 1:
        return BracketFreeResult(True, method=BASIS)
    if I.g != 4:
        raise Undetermined(f"Bracket-freeness over Q is only decided on four generators, got {I.g}")
    try:
        xi, method = isotropic_vector(field, pfaffian_gram(I))
    except Undetermined:
        raise Undetermined(f"The restricted Pfaffian form on {I!r} is indefinite")
    if xi is None:
        return BracketFreeResult(True, method=method)
    return BracketFreeResult(False, Bivector(field, I.g, I.subspace.combine(xi)), method)


def breadth_type_of_quotient(I: CentralIdeal, budget: Optional[int] = None) -> BreadthType:
    """
    Exact breadth type of 𝓛_m / I, checked against bracket_free:
    the type is (0, m) exactly when I is bracket-free.
    """
    if not I.field.is_finite:
        raise Unsupported("breadth_type_of_quotient enumerates cosets, so needs a finite field")
    L = free_quotient(I.field, I.m, I.subspace)
    bt = L.breadth_type(mode='exact', budget=budget)
    free = bracket_free(I)
    if (bt.breadths == (0, I.m)) != free.free:
        raise InvariantViolation(f"{I!r}: breadth type {bt} but bracket_free = {free.free}")
    return bt


def iter_ideals(field: FieldSpec, g: int, d: int, patterns=None) -> Iterator[CentralIdeal]:
    for S in enumerate_subspaces(field, pair_count(g), d, patterns):
        yield CentralIdeal(g, S)
