"""
Classification of class-2 algebras against the stem families of breadth type (0,3):

  (i)   Camina with dim L′ = 3
  (ii)  𝓛_3
  (iii) 𝓛_3 / <e12 + e34>
  (iv)  𝓛_3 / J for a bracket-free two-dimensional J (canonical form per characteristic)

Abelian direct summands are stripped first; anything else is NotBreadthType.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from bivectors.ideals import CentralIdeal
from camina.camina import CaminaResult, camina_via_structure_matrices, is_camina
from core.exceptions import NotClassTwo, NotFourGenerated, NotNilpotent
from lie.algebra import LieAlgebra
from lie.constructions import NOT_BREADTH_TYPE
from linalg.subspace import Subspace
from .reduce import NormalFormResult, reduce_dim1, reduce_dim2

logger = logging.getLogger(__name__)

CAMINA_FAMILY = '(i)'
FREE_FAMILY = '(ii)'
DIM_ONE_FAMILY = '(iii)'
DIM_TWO_FAMILY = '(iv)'


@dataclass
class Classification:
    family: str
    stem: LieAlgebra
    abelian_summand: int
    ideal: Optional[CentralIdeal] = None
    normal_form: Optional[NormalFormResult] = None
    camina: Optional[CaminaResult] = None

    @property
    def breadth_type(self) -> bool:
        return self.family != NOT_BREADTH_TYPE

    def to_json(self) -> dict:
        data = {
            'family': self.family,
            'stem_dim': self.stem.dim,
            'abelian_summand': self.abelian_summand,
        }
        if self.ideal is not None:
            data['ideal'] = self.ideal.to_json()
        if self.normal_form is not None:
            data['canonical_ideal'] = self.normal_form.canonical_ideal.to_json()
            data['automorphism'] = self.normal_form.applied.to_json()
            data['tag'] = self.normal_form.tag.to_json()
        if self.camina is not None:
            data['camina'] = self.camina.to_json()
        return data


def generator_ideal(L: LieAlgebra) -> CentralIdeal:
    """
    I with L ≅ 𝓛_{g-1} / I for a class-2 stem L: the kernel of e_ij ↦ [c_i, c_j],
    c running over the complement of L′ (the section of generators).
    """
    D = L.derived()
    comp = D.non_pivots()
    rows, cols = np.triu_indices(len(comp), 1)
    images = L.sc[np.array(comp)[rows], np.array(comp)[cols]][:, list(D.pivots)]
    return CentralIdeal(len(comp), Subspace.kernel_of(L.field, images.T))


def _camina(L: LieAlgebra) -> Optional[CaminaResult]:
    if L.field.is_finite:
        return is_camina(L)
    if L.derived().codim == 4:
        return camina_via_structure_matrices(L)
    return None


def classify_4gen_2step(L: LieAlgebra) -> Classification:
    try:
        c = L.nilpotency_class()
    except NotNilpotent:
        raise NotClassTwo(f"{L!r} is not nilpotent")
    if c != 2:
        raise NotClassTwo(f"{L!r} has class {c}")

    stem = L.strip_abelian_summands()
    abelian = L.dim - stem.dim
    D = stem.derived()
    camina = None
    if D.dim == 3:
        camina = _camina(stem)
        if camina:
            return Classification(CAMINA_FAMILY, stem, abelian, camina=camina)
    if D.codim != 4:
        raise NotFourGenerated(f"The stem of {L!r} needs {D.codim} generators, not 4")

    I = generator_ideal(stem)
    logger.debug(f"{L!r} is 𝓛_3 / {I!r} plus an abelian summand of dimension {abelian}")
    if I.dim == 0:
        return Classification(FREE_FAMILY, stem, abelian, ideal=I)
    if I.dim == 1:
        result = reduce_dim1(I)
        family = DIM_ONE_FAMILY if result.tag.breadth_type else NOT_BREADTH_TYPE
        return Classification(family, stem, abelian, ideal=I, normal_form=result)
    if I.dim == 2:
        result = reduce_dim2(I)
        family = DIM_TWO_FAMILY if result.tag.breadth_type else NOT_BREADTH_TYPE
        return Classification(family, stem, abelian, ideal=I, normal_form=result)
    return Classification(NOT_BREADTH_TYPE, stem, abelian, ideal=I, camina=camina)
