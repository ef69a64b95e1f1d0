"""
Reduction of central ideals of 𝓛_m to canonical form by explicit generator maps.

  dim 1, any m:       <e12 + e34 + ... + e_{2r-1,2r}>,  bracket-free iff r >= 2
  dim 2, m = 3, odd:  <e12 + e34, e13 + t e24>,         t the canonical non-square
  dim 2, m = 3, char 2: <e12 + e34, z e13 + e24 + e34>,   z the least trace-one element

A dimension-2 reduction first sends one element of J to E = e12 + e34 by the
Darboux reduction (a bracket there ends the search), then moves a second
element onto F = e13 + α e24 + β e34 by a map fixing E. E + tF is a bracket
exactly when α t² - β t - 1 = 0, so the discriminant β² + 4α decides odd
characteristic and the irreducibility of α t² + β t + 1 decides char 2. With
ω the matrix of E and N the matrix of F, K = ω⁻¹N satisfies
K² = B(E, F) K - pf(F), and bases adapted to K carry F onto the stage and
then onto the canonical second generator while fixing E.
"""
import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Tuple

import numpy as np

from bivectors.bivector import Bivector, factor_decomposable, is_decomposable, to_skew
from bivectors.ideals import CentralIdeal
from core.exceptions import CharacteristicTwo, InvariantViolation, OddCharacteristic, WrongDimension
from fields.spec import (
    FieldElem,
    FieldSpec,
    find_nonsquare,
    is_square,
    least_trace_one,
    quadratic_irreducible,
    quadratic_roots,
    sqrt,
    squarefree_class,
)
from lie.constructions import NOT_BREADTH_TYPE
from linalg.matrix import inverse_array, pfaffian_array, rref_array
from linalg.subspace import Subspace
from .maps import (
    GeneratorMap,
    apply_generator_map,
    canonical_bivector,
    darboux,
    particular_solution,
    push_ideal,
    sending_to_first_pair,
    standard_form,
)

logger = logging.getLogger(__name__)

DIM_ONE = 'dim-one'
DIM_TWO_ODD = 'dim-two-odd'
DIM_TWO_EVEN = 'dim-two-even'

J1_SHAPE = 'J1'
J2_SHAPE = 'J2'

_TAG_NAMES = {
    DIM_ONE: ('DimOne', 'r'),
    DIM_TWO_ODD: ('DimTwoOdd', 't'),
    DIM_TWO_EVEN: ('DimTwoEven', 'r'),
}


@dataclass(frozen=True)
class FamilyTag:
    kind: str
    parameter: object = None

    @property
    def breadth_type(self) -> bool:
        return self.kind != NOT_BREADTH_TYPE

    def __str__(self):
        if self.kind == NOT_BREADTH_TYPE:
            return 'NotBreadthType'
        name, symbol = _TAG_NAMES[self.kind]
        return f"{name}({symbol}={self.parameter})"

    def to_json(self) -> dict:
        value = self.parameter
        if isinstance(value, FieldElem):
            value = value.to_json()
        return {'kind': self.kind, 'parameter': value, 'label': str(self)}


@dataclass
class NormalFormResult:
    ideal: CentralIdeal
    canonical_ideal: CentralIdeal
    applied: GeneratorMap
    tag: FamilyTag
    witness: Optional[Bivector] = None
    shape: Optional[str] = None
    stage: Optional['Stage'] = None

    def __post_init__(self):
        pushed = push_ideal(self.applied, self.ideal)
        if pushed != self.canonical_ideal:
            raise InvariantViolation(f"Reduction of {self.ideal!r} lands on {pushed!r}, not {self.canonical_ideal!r}")

    def to_json(self) -> dict:
        data = {
            'ideal': self.ideal.to_json(),
            'canonical_ideal': self.canonical_ideal.to_json(),
            'canonical': repr(self.canonical_ideal),
            'automorphism': self.applied.to_json(),
            'tag': self.tag.to_json(),
        }
        if self.witness is not None:
            data['witness'] = repr(self.witness)
        if self.shape is not None:
            data['shape'] = self.shape
        if self.stage is not None:
            data['stage'] = self.stage.to_json()
        return data


# dimension one

def reduce_dim1(I: CentralIdeal) -> NormalFormResult:
    if I.dim != 1:
        raise WrongDimension(f"reduce_dim1 needs a one-dimensional ideal, got dimension {I.dim}")
    field = I.field
    b = I.basis()[0]
    A, r = darboux(field, to_skew(b).data)
    canonical = CentralIdeal.span(field, I.g, canonical_bivector(field, I.g, r).coords)
    if r == 1:
        return NormalFormResult(I, canonical, GeneratorMap(field, A), FamilyTag(NOT_BREADTH_TYPE), witness=b)
    return NormalFormResult(I, canonical, GeneratorMap(field, A), FamilyTag(DIM_ONE, r))


# dimension two on four generators

def ideal_shape(J: CentralIdeal) -> Tuple[str, Optional[Tuple[int, ...]]]:
    """
    J2 when some relabelling of x1..x4 puts the RREF pivots of J on e12 and
    e13 (first such permutation in lexicographic order), J1 otherwise.
    """
    for perm in permutations(range(4)):
        moved = push_ideal(GeneratorMap.permutation(J.field, perm), J)
        if moved.subspace.pivots == (0, 1):
            return J2_SHAPE, perm
    return J1_SHAPE, None


def _check_dim_two(J: CentralIdeal):
    if J.g != 4:
        raise WrongDimension(f"Dimension-two reductions work in 𝓛_3, got {J.g} generators")
    if J.dim != 2:
        raise WrongDimension(f"Expected a two-dimensional ideal, got dimension {J.dim}")


def _not_breadth_type(J: CentralIdeal, witness: Bivector, shape: str,
                      stage: Optional['Stage'] = None) -> NormalFormResult:
    """Send the bracket u∧v in J to e12."""
    if not J.contains(witness):
        raise InvariantViolation(f"Witness {witness!r} is not in {J!r}")
    u, v = factor_decomposable(witness)
    phi = sending_to_first_pair(J.field, u, v)
    return NormalFormResult(J, push_ideal(phi, J), phi, FamilyTag(NOT_BREADTH_TYPE), witness=witness,
                            shape=shape, stage=stage)


def _pull_back(phi: GeneratorMap, b: Bivector) -> Bivector:
    return apply_generator_map(GeneratorMap(phi.field, inverse_array(phi.field, phi.linear)), b)


def _first_element(J: CentralIdeal, perm) -> Tuple[GeneratorMap, Bivector]:
    field = J.field
    phi0 = GeneratorMap.permutation(field, perm) if perm is not None else GeneratorMap.identity(field, 4)
    return phi0, push_ideal(phi0, J).basis()[0]


def _stage_basis(field: FieldSpec, N: np.ndarray) -> np.ndarray:
    """
    Rows f0..f3 with A ω Aᵀ = ω and A N Aᵀ the matrix of e13 + α e24 + β e34,
    where α = -pf(N) and β = N12 + N34. K = ω⁻¹N satisfies K² = βK + α, and
    f3 = -K f0, f1 = K f2 - β f2 with ω(f0, f2) = 0 and ω(K f0, f2) = 1.
    """
    omega = standard_form(field, 4, 2)
    K = field.matmul(field.neg(omega), N)
    beta = field.add(N[0, 1], N[2, 3])
    alpha = field.neg(pfaffian_array(field, N))
    expected = field.add(field.mul(K, beta), field.mul(field.identity(4), alpha))
    if np.any(field.matmul(K, K) != expected):
        raise InvariantViolation("K = ω⁻¹N does not satisfy its quadratic relation")
    # f0 must not be an eigenvector of K; K is not scalar, so one of these is not
    for f0 in list(field.identity(4)) + [field.array([1, 1, 1, 1])]:
        Kf0 = field.matmul(K, f0[:, None])[:, 0]
        if len(rref_array(field, np.stack([f0, Kf0]))[1]) == 2:
            break
    else:
        raise InvariantViolation("Second generator is a multiple of e12 + e34")
    f2 = particular_solution(field, np.stack([field.matmul(f0[None, :], omega)[0],
                                              field.matmul(Kf0[None, :], omega)[0]]),
                             field.array([0, 1]))
    f1 = field.sub(field.matmul(K, f2[:, None])[:, 0], field.mul(f2, beta))
    return np.stack([f0, f1, field.copy(f2), field.neg(Kf0)])


def _even_basis(field: FieldSpec, N: np.ndarray, z) -> np.ndarray:
    """
    Rows f0..f3 with A ω Aᵀ = ω and A N Aᵀ the matrix of z e13 + e24 + e34,
    for N with polar pairing 1 and pf(N) = z: K f0 = z f3 and K f1 = f2, with
    ω(f0, f1) = 1 and ω(f3, f1) = 0.
    """
    omega = standard_form(field, 4, 2)
    K = field.matmul(field.neg(omega), N)
    expected = field.sub(K, field.mul(field.identity(4), z))
    if np.any(field.matmul(K, K) != expected):
        raise InvariantViolation("K = ω⁻¹N does not satisfy its quadratic relation")
    f0 = field.identity(4)[0]
    f3 = field.mul(field.matmul(K, f0[:, None])[:, 0], field.inv(z))
    f1 = particular_solution(field, np.stack([field.matmul(f0[None, :], omega)[0],
                                              field.matmul(f3[None, :], omega)[0]]),
                             field.array([1, 0]))
    f2 = field.matmul(K, f1[:, None])[:, 0]
    return np.stack([f0, f1, f2, f3])


@dataclass(frozen=True)
class Stage:
    """``applied`` carries J onto <e12 + e34, e13 + alpha e24 + beta e34>."""
    applied: GeneratorMap
    alpha: FieldElem
    beta: FieldElem

    @property
    def field(self) -> FieldSpec:
        return self.alpha.field

    def second(self) -> Bivector:
        return Bivector.from_terms(self.field, 4, {'e13': 1, 'e24': self.alpha, 'e34': self.beta})

    def bracket(self, t: Optional[FieldElem]) -> Bivector:
        """E + t F pulled back to J, or F itself when t is None."""
        F = self.second()
        w = F if t is None else canonical_bivector(self.field, 4, 2) + t * F
        return _pull_back(self.applied, w)

    def to_json(self) -> dict:
        return {'alpha': self.alpha.to_json(), 'beta': self.beta.to_json()}


def reach_stage(J: CentralIdeal, phi0: GeneratorMap, first: Bivector) -> Stage:
    """
    Send the first element to E = e12 + e34 by the Darboux reduction, then move
    a second element onto e13 + α e24 + β e34 with a map fixing E.
    """
    field = J.field
    A, r = darboux(field, to_skew(first).data)
    if r != 2:
        raise InvariantViolation(f"{first!r} has skew rank {2 * r}, expected 4")
    phi1 = GeneratorMap(field, A).compose(phi0)
    E = canonical_bivector(field, 4, 2).coords
    line = Subspace.span(field, 6, E)
    other = next(row for row in push_ideal(phi1, J).subspace.basis if not line.member(row))
    N = to_skew(Bivector(field, 4, other)).data
    phi = GeneratorMap(field, _stage_basis(field, N)).compose(phi1)
    stage = Stage(phi,
                  field.wrap(field.neg(pfaffian_array(field, N))),
                  field.wrap(field.add(other[0], other[5])))
    if push_ideal(phi, J) != CentralIdeal.span(field, 4, np.stack([E, stage.second().coords])):
        raise InvariantViolation(f"{J!r} does not reach the stage {stage.to_json()}")
    logger.debug(f"{J!r} reaches alpha={stage.alpha}, beta={stage.beta}")
    return stage


def canonical_nonsquare(field: FieldSpec, value) -> FieldElem:
    """The representative of the square class of a non-square: least non-square, or square-free over Q."""
    if field.is_rational:
        return field(squarefree_class(field.wrap(value))[0])
    return find_nonsquare(field)


def reduce_dim2_odd(J: CentralIdeal) -> NormalFormResult:
    _check_dim_two(J)
    field = J.field
    if field.is_finite and field.characteristic == 2:
        raise CharacteristicTwo("Use reduce_dim2_even in characteristic 2")
    shape, perm = ideal_shape(J)
    phi0, first = _first_element(J, perm)
    if is_decomposable(first):
        return _not_breadth_type(J, _pull_back(phi0, first), shape)

    stage = reach_stage(J, phi0, first)
    alpha, beta = stage.alpha, stage.beta
    # E + tF is a bracket iff α t² - β t - 1 = 0
    disc = beta * beta + 4 * alpha
    if is_square(disc):
        t = None
        if alpha:
            r = sqrt(disc)
            t = min(((beta + r) / (2 * alpha), (beta - r) / (2 * alpha)), key=lambda root: root.value)
        return _not_breadth_type(J, stage.bracket(t), shape, stage)

    E = canonical_bivector(field, 4, 2).coords
    F = field.sub(stage.second().coords, field.mul(field.mul(beta.value, field.inv(field.embed(2))), E))
    # pf(F) = -(β² + 4α) / 4
    c = pfaffian_array(field, to_skew(Bivector(field, 4, F)).data)
    t = canonical_nonsquare(field, field.neg(c))
    s = sqrt(field.wrap(c) / (-t))
    N = field.mul(to_skew(Bivector(field, 4, F)).data, field.inv(s.value))
    phi = GeneratorMap(field, _stage_basis(field, N)).compose(stage.applied)

    canonical = CentralIdeal.span(field, 4, np.stack([E, Bivector.from_terms(field, 4, {'e13': 1, 'e24': t}).coords]))
    logger.debug(f"{J!r} reduces to {canonical!r}")
    return NormalFormResult(J, canonical, phi, FamilyTag(DIM_TWO_ODD, t), shape=shape, stage=stage)


def reduce_dim2_even(J: CentralIdeal) -> NormalFormResult:
    _check_dim_two(J)
    field = J.field
    if not (field.is_finite and field.characteristic == 2):
        raise OddCharacteristic("reduce_dim2_even needs a field of characteristic 2")
    shape, perm = ideal_shape(J)
    phi0, first = _first_element(J, perm)
    if is_decomposable(first):
        return _not_breadth_type(J, _pull_back(phi0, first), shape)

    stage = reach_stage(J, phi0, first)
    alpha, beta = stage.alpha, stage.beta
    one = field(1)
    # E + tF is a bracket iff α t² + β t + 1 = 0
    if not alpha:
        return _not_breadth_type(J, stage.bracket(None), shape, stage)
    if not quadratic_irreducible(alpha, beta, one):
        return _not_breadth_type(J, stage.bracket(quadratic_roots(alpha, beta, one)[0]), shape, stage)

    E = canonical_bivector(field, 4, 2).coords
    F = field.mul(stage.second().coords, field.inv(beta.value))
    z = least_trace_one(field)
    # pf(F + λE) = pf(F) + λ + λ²
    pf = field.wrap(pfaffian_array(field, to_skew(Bivector(field, 4, F)).data))
    roots = quadratic_roots(one, one, pf - z)
    if not roots:
        raise InvariantViolation(f"No λ with λ² + λ = {z - pf} for {J!r}")
    F = field.add(F, field.mul(roots[0].value, E))
    N = to_skew(Bivector(field, 4, F)).data
    phi = GeneratorMap(field, _even_basis(field, N, z.value)).compose(stage.applied)

    second = Bivector.from_terms(field, 4, {'e13': z, 'e24': 1, 'e34': 1}).coords
    canonical = CentralIdeal.span(field, 4, np.stack([E, second]))
    return NormalFormResult(J, canonical, phi, FamilyTag(DIM_TWO_EVEN, z), shape=shape, stage=stage)


def reduce_dim2(J: CentralIdeal) -> NormalFormResult:
    if J.field.is_finite and J.field.characteristic == 2:
        return reduce_dim2_even(J)
    return reduce_dim2_odd(J)
