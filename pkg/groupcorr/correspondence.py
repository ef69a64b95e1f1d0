"""
The coordinate correspondence between 𝒢_m and 𝓛_m over GF(p).

psi sends (∏ g_i^{α_i})(∏ [g_j, g_r]^{β_jr}) to Σ α_i x_i + Σ β_jr e_jr, psi_R
sends a central subgroup to the central ideal with the same coordinates,
and Psi lifts a group automorphism given on generators to a generator map.
Conjugate types of 𝒢_m / N are then compared with breadth types of 𝓛_m / psi_R(N).
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from bivectors.bivector import pair_count
from bivectors.ideals import CentralIdeal
from core.conf import lab_setting
from core.exceptions import BudgetExceeded, DimensionMismatch, InvariantViolation
from fields.spec import FieldSpec
from lie.algebra import BreadthType, Element
from lie.constructions import free_quotient, free_two_step
from linalg.matrix import batch_rank
from linalg.subspace import Subspace, all_vectors, enumerate_subspaces
from normalform.maps import GeneratorMap
from .groups import GroupElement, check_prime, commutator, gcommutator, gmul, gpow

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CentralSubgroup:
    """N ≤ Z(𝒢_m) = G′ as an RREF subspace of the β coordinates."""
    p: int
    m: int
    subspace: Subspace

    def __post_init__(self):
        check_prime(self.p)
        if self.subspace.ambient_dim != pair_count(self.m + 1):
            raise DimensionMismatch(f"Central subgroups of G{self.m} live in dimension {pair_count(self.m + 1)}")

    @classmethod
    def span(cls, p: int, m: int, vectors) -> 'CentralSubgroup':
        field = FieldSpec.finite(p)
        return cls(p, m, Subspace.span(field, pair_count(m + 1), field.array(vectors)))

    @classmethod
    def trivial(cls, p: int, m: int) -> 'CentralSubgroup':
        return cls(p, m, Subspace.zero(FieldSpec.finite(p), pair_count(m + 1)))

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def elements(self):
        return [GroupElement.central(self.p, self.m, row) for row in self.subspace.basis]

    def __repr__(self):
        return f"CentralSubgroup(p={self.p}, m={self.m}, {CentralIdeal(self.m + 1, self.subspace)!r})"


def iter_central_subgroups(p: int, m: int) -> Iterator[CentralSubgroup]:
    field = FieldSpec.finite(p)
    P = pair_count(m + 1)
    for d in range(P + 1):
        for S in enumerate_subspaces(field, P, d):
            yield CentralSubgroup(p, m, S)


# the correspondence

def group_field(p: int) -> FieldSpec:
    check_prime(p)
    return FieldSpec.finite(p)


def psi(g: GroupElement) -> Element:
    L = free_two_step(g.m, group_field(g.p))
    return L.element(L.field.array(list(g.alpha) + list(g.beta)))


def psi_I(g: GroupElement) -> np.ndarray:
    """The image of g in G/G′ = L/L′: its generator exponents."""
    return group_field(g.p).array(list(g.alpha))


def psi_R(N: CentralSubgroup) -> CentralIdeal:
    return CentralIdeal(N.m + 1, N.subspace)


def central_subgroup_of(I: CentralIdeal) -> CentralSubgroup:
    """psi_R⁻¹ for ideals over a prime field."""
    if not I.field.is_finite or I.field.n != 1:
        raise DimensionMismatch(f"Central ideals over {I.field} have no group counterpart")
    return CentralSubgroup(I.field.p, I.m, I.subspace)


def apply_automorphism(theta: Sequence[GroupElement], g: GroupElement) -> GroupElement:
    """θ(g) for θ given by the images of g_1, ..., g_{m+1}."""
    if len(theta) != len(g.alpha):
        raise DimensionMismatch(f"Automorphism on {len(theta)} generators applied to G{g.m}")
    out = GroupElement.identity(g.p, g.m)
    for image, a in zip(theta, g.alpha):
        out = gmul(out, gpow(image, a))
    rows, cols = np.triu_indices(len(theta), 1)
    for j, r, b in zip(rows, cols, g.beta):
        if b:
            out = gmul(out, gpow(gcommutator(theta[j], theta[r]), b))
    return out


def Psi(theta: Sequence[GroupElement]) -> GeneratorMap:
    """The generator map with column j = α(θ(g_j)) and central row j = β(θ(g_j))."""
    p = theta[0].p
    field = group_field(p)
    linear = field.array([list(t.alpha) for t in theta]).T
    central = field.array([list(t.beta) for t in theta])
    return GeneratorMap(field, linear, central)


def push_subgroup(theta: Sequence[GroupElement], N: CentralSubgroup) -> CentralSubgroup:
    images = [apply_automorphism(theta, c).beta for c in N.elements()]
    if not images:
        return N
    return CentralSubgroup.span(N.p, N.m, images)


# conjugate types

@dataclass
class ConjugateType:
    p: int
    exponents: Tuple[int, ...]
    order: int
    class_count: int
    class_sizes: dict = dataclass_field(default_factory=dict)

    def __str__(self):
        return '(' + ', '.join('1' if e == 0 else (str(self.p) if e == 1 else f"{self.p}^{e}")
                               for e in self.exponents) + ')'

    def to_json(self) -> dict:
        return {
            'p': self.p,
            'exponents': list(self.exponents),
            'label': str(self),
            'order': self.order,
            'class_count': self.class_count,
            'class_sizes': {str(k): v for k, v in sorted(self.class_sizes.items())},
        }


def commutation_ranks(p: int, m: int, N: CentralSubgroup, alphas: np.ndarray) -> np.ndarray:
    """rank of y ↦ [g, y] mod N for g with generator part alpha (the β part does not matter)."""
    field = group_field(p)
    g = m + 1
    P = pair_count(g)
    count = len(alphas)
    zeros = np.zeros((count, P), dtype=np.int64)
    stack = np.zeros((count, g + N.dim, P), dtype=np.int64)
    for i in range(g):
        gen = np.zeros((count, g), dtype=np.int64)
        gen[:, i] = 1
        _, beta = commutator(p, alphas, zeros, gen, zeros)
        stack[:, i] = beta
    if N.dim:
        stack[:, g:] = N.subspace.basis
    return batch_rank(field, stack) - N.dim


def conjugate_type(p: int, m: int, N: Optional[CentralSubgroup] = None,
                   budget: Optional[int] = None) -> ConjugateType:
    """
    Class sizes of 𝒢_m / N. Conjugation fixes the generator part and moves the
    central part through [y, g] N, so a coset of generator exponents α with
    commutation rank k splits into p^(dim G′/N - k) classes of size p^k.
    """
    check_prime(p)
    N = CentralSubgroup.trivial(p, m) if N is None else N
    g = m + 1
    budget = lab_setting('BREADTHLAB_COSET_BUDGET') if budget is None else budget
    if p ** g > budget:
        raise BudgetExceeded(f"{p ** g} generator cosets of G{m}/N exceed the budget {budget}")
    alphas = all_vectors(group_field(p), g)
    ranks = commutation_ranks(p, m, N, alphas)
    central_dim = pair_count(g) - N.dim
    sizes = {}
    for k, count in zip(*np.unique(ranks, return_counts=True)):
        sizes[p ** int(k)] = int(count) * p ** (central_dim - int(k))
    order = p ** (g + central_dim)
    if sum(size * n for size, n in sizes.items()) != order:
        raise InvariantViolation(f"Class sizes of G{m}/N do not add up to {order}")
    return ConjugateType(
        p=p,
        exponents=tuple(sorted(int(k) for k in set(ranks.tolist()))),
        order=order,
        class_count=sum(sizes.values()),
        class_sizes=sizes,
    )


@dataclass
class CorrespondenceResult:
    subgroup: CentralSubgroup
    conjugate: ConjugateType
    breadth: BreadthType

    @property
    def ok(self) -> bool:
        return self.conjugate.exponents == self.breadth.breadths

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            'ok': self.ok,
            'ideal': psi_R(self.subgroup).to_json(),
            'conjugate_type': self.conjugate.to_json(),
            'breadth_type': self.breadth.to_json(),
        }


def verify_correspondence(p: int, m: int, N: Optional[CentralSubgroup] = None,
                          budget: Optional[int] = None) -> CorrespondenceResult:
    N = CentralSubgroup.trivial(p, m) if N is None else N
    conj = conjugate_type(p, m, N, budget)
    L = free_quotient(group_field(p), m, N.subspace)
    bt = L.breadth_type(mode='exact', budget=budget)
    result = CorrespondenceResult(N, conj, bt)
    if not result.ok:
        logger.warning(f"{N!r}: conjugate type {conj} but breadth type {bt}")
    return result
