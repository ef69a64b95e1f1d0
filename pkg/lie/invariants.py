"""
Consequences of a breadth type that campaigns check on every exact instance.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Set

from core.exceptions import Unsupported
from linalg.subspace import Subspace
from .algebra import BreadthType, LieAlgebra

logger = logging.getLogger(__name__)


def breadth_of_algebra(L: LieAlgebra, bt: Optional[BreadthType] = None) -> int:
    """b(L), the largest breadth of an element."""
    bt = bt or L.breadth_type(mode='exact')
    if not bt.exact:
        raise Unsupported("b(L) is read off an exact breadth type")
    return bt.max


@dataclass
class BoundsReport:
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self):
        return [name for name, held in self.checks.items() if not held]

    def to_json(self) -> dict:
        return {'ok': self.ok, 'checks': dict(self.checks)}


def breadth_type_bounds(L: LieAlgebra, bt: BreadthType) -> BoundsReport:
    """
    For nilpotent non-abelian L of breadth type (0, m_1, ..., m_r):
    dim Z(L) >= dim γ_c(L) >= m_1, dim L' >= m_r and dim L/Z(L) > m_r.
    """
    if L.is_abelian() or len(bt.breadths) < 2:
        return BoundsReport({})
    series = L.lower_central_series()
    last = series[-2]  # γ_c, the last nonzero term
    Z = L.center()
    m1, mr = bt.breadths[1], bt.max
    return BoundsReport({
        'center_contains_last_term': Z.dim >= last.dim,
        'last_term_at_least_m1': last.dim >= m1,
        'derived_at_least_mr': L.derived().dim >= mr,
        'central_quotient_exceeds_mr': Z.codim > mr,
    })


def central_quotient_dim(L: LieAlgebra) -> int:
    return L.center().codim


def breadth_three_cases(L: LieAlgebra, search: bool = True) -> Set[str]:
    """
    Which alternatives of the breadth-3 characterisation hold:
      a: dim L' = 3 and dim L/Z >= 4
      b: dim L' >= 4 and dim L/Z = 4
      c: dim L' = 4 and (L/I)/Z(L/I) has dim 3 for some line I in Z(L)
    Case c searches every line of the centre, so needs a finite field;
    search=False skips it.
    """
    d = L.derived().dim
    q = central_quotient_dim(L)
    cases = set()
    if d == 3 and q >= 4:
        cases.add('a')
    if d >= 4 and q == 4:
        cases.add('b')
    if d == 4 and search:
        Z = L.center()
        for v in Z.projective_representatives():
            line = Subspace.span(L.field, L.dim, v)
            if central_quotient_dim(L.quotient(line)) == 3:
                logger.debug(f"Breadth-3 case c witnessed by the line {L.format_vector(v)}")
                cases.add('c')
                break
    return cases
