"""
The Camina property: [x, L] = L′ for every x outside L′.

is_camina checks the definition directly. camina_via_structure_matrices
uses the class-2 criterion: with Z(L) = L′, L is Camina exactly when every
nonzero combination of the structure matrices X_r is nonsingular.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.conf import lab_setting
from core.exceptions import BudgetExceeded, HypothesisViolated, NotNilpotent, Undetermined, Unsupported
from lie.algebra import LieAlgebra
from linalg.matrix import Matrix, batch_rank
from linalg.subspace import CHUNK, projective_points
from .certificates import RankSubspaceCertificate

logger = logging.getLogger(__name__)

DEFINITION = 'definition'
STRUCTURE_MATRICES = 'structure-matrices'
ODD_GENERATORS = 'odd-generators'


@dataclass
class CaminaResult:
    camina: bool
    witness: Optional[str] = None
    method: str = DEFINITION

    def __bool__(self):
        return self.camina

    def to_json(self) -> dict:
        data = {'camina': self.camina, 'method': self.method}
        if self.witness is not None:
            data['witness'] = self.witness
        return data


def _projective_count(q: int, k: int) -> int:
    return (q ** k - 1) // (q - 1)


def _candidates(L: LieAlgebra, budget: int) -> np.ndarray:
    """One representative per line of L outside L′, up to L′ when L′ is central."""
    field = L.field
    D = L.derived()
    if D.issubspace(L.center()):
        comp = D.non_pivots()
        count = _projective_count(field.order, len(comp))
        if count > budget:
            raise BudgetExceeded(f"{count} lines of L/L′ exceed the budget {budget}")
        xs = field.zeros((count, L.dim))
        xs[:, comp] = projective_points(field, len(comp))
        return xs
    count = _projective_count(field.order, L.dim)
    if count > budget:
        raise BudgetExceeded(f"{count} lines of L exceed the budget {budget}")
    xs = projective_points(field, L.dim)
    return xs[~D.members(xs)]


def is_camina(L: LieAlgebra, budget: Optional[int] = None) -> CaminaResult:
    if not L.field.is_finite:
        raise Unsupported("is_camina scans elements, so needs a finite field")
    D = L.derived()
    if D.dim == 0:
        return CaminaResult(True)
    budget = lab_setting('BREADTHLAB_COSET_BUDGET') if budget is None else budget
    xs = _candidates(L, budget)
    logger.debug(f"Checking {len(xs)} elements of {L!r} against dim L′ = {D.dim}")
    for lo in range(0, len(xs), CHUNK):
        chunk = xs[lo:lo + CHUNK]
        short = np.flatnonzero(batch_rank(L.field, L.ad_stack(chunk)) != D.dim)
        if short.size:
            return CaminaResult(False, L.format_vector(chunk[short[0]]))
    return CaminaResult(True)


def structure_matrices(L: LieAlgebra, generators: Optional[int] = None) -> RankSubspaceCertificate:
    """
    X_r[i, j] = coefficient of the r-th basis vector of L′ in [c_i, c_j],
    c running over the complement of L′. Requires class 2, Z(L) = L′ and
    dim L/L′ equal to the declared number of generators.
    """
    try:
        c = L.nilpotency_class()
    except NotNilpotent:
        raise HypothesisViolated(f"{L!r} is not nilpotent")
    if c != 2:
        raise HypothesisViolated(f"{L!r} has class {c}, not 2")
    D = L.derived()
    if L.center() != D:
        raise HypothesisViolated(f"Z(L) has dimension {L.center().dim} but L′ has dimension {D.dim}")
    comp = D.non_pivots()
    if generators is not None and generators != len(comp):
        raise HypothesisViolated(f"L needs {len(comp)} generators, not the declared {generators}")
    block = L.sc[np.ix_(comp, comp, list(D.pivots))]
    basis = tuple(Matrix(L.field, block[:, :, r]) for r in range(D.dim))
    return RankSubspaceCertificate(len(comp), L.field, basis, skew=True)


def camina_via_structure_matrices(L: LieAlgebra, generators: Optional[int] = None) -> CaminaResult:
    cert = structure_matrices(L, generators)
    if cert.n % 2:
        return CaminaResult(False, 'every skew matrix of odd size is singular', ODD_GENERATORS)
    try:
        xi = cert.find_singular()
    except Undetermined:
        raise Undetermined(f"Cannot decide the rank condition for {L!r} over {L.field}")
    if xi is None:
        return CaminaResult(True, method=STRUCTURE_MATRICES)
    terms = ' + '.join(f"({L.field.format_value(c)})X{r + 1}" for r, c in enumerate(xi) if c != 0)
    return CaminaResult(False, terms, STRUCTURE_MATRICES)


def generator_bound(L: LieAlgebra) -> bool:
    """n ≥ 2·dim L′ for a class-2 Camina algebra on n generators."""
    D = L.derived()
    return D.codim >= 2 * D.dim
