"""
Builders for the named algebra families, plus the registry behind `make`.

Bivector coordinates follow one global order: e12 < e13 < ... < e1g < e23 < ...
(lexicographic pairs of generators), and free_two_step lays its basis out as
the generators followed by those pairs.
"""
import logging
import re
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from core.exceptions import NoExtensionTable, UnknownTheorem, Unsupported, UnsupportedField
from core.registry import Registry
from fields.spec import FieldElem, FieldSpec, find_nonsquare, least_trace_one
from linalg.subspace import Subspace, all_vectors
from .algebra import LieAlgebra

logger = logging.getLogger(__name__)

FAMILIES = Registry('family')

register_family = FAMILIES.register

NOT_BREADTH_TYPE = 'not-breadth-type'
THEOREM_TAGS = ('(i)', '(ii)', '(iii)', '(iv)')


# bivector coordinates

def pairs(g: int) -> List[Tuple[int, int]]:
    """0-based generator pairs (i, j), i < j, in coordinate order."""
    return list(combinations(range(g), 2))


def pair_index(g: int) -> Dict[Tuple[int, int], int]:
    return {pair: k for k, pair in enumerate(pairs(g))}


def pair_label(i: int, j: int, g: int) -> str:
    """Label of the 0-based pair (i, j): e12, or e1_10 once indices pass 9."""
    return f"e{i + 1}{j + 1}" if g < 10 else f"e{i + 1}_{j + 1}"


def _parse_pair(key, g: int) -> Tuple[int, int]:
    if isinstance(key, str):
        match = re.fullmatch(r'e(\d+)_(\d+)', key) or re.fullmatch(r'e(\d)(\d)', key)
        if not match:
            raise ValueError(f"Cannot read bivector label {key!r}")
        key = (int(match.group(1)), int(match.group(2)))
    i, j = key
    if not 1 <= i < j <= g:
        raise ValueError(f"Pair {key} is not of the form 1 <= i < j <= {g}")
    return i - 1, j - 1


def bivector_vector(field: FieldSpec, g: int, terms: Mapping) -> np.ndarray:
    """Coordinate vector from {'e12': 1, (3, 4): -1, ...} (1-based pairs)."""
    index = pair_index(g)
    v = field.zeros(len(index))
    for key, c in terms.items():
        k = index[_parse_pair(key, g)]
        v[k] = field.add(v[k], field(c).value)
    return v


def bivector_span(field: FieldSpec, g: int, rows: Sequence[Mapping]) -> Subspace:
    dim = g * (g - 1) // 2
    if not rows:
        return Subspace.zero(field, dim)
    return Subspace.span(field, dim, np.stack([bivector_vector(field, g, r) for r in rows]))


# families

def free_two_step(m: int, field: FieldSpec) -> LieAlgebra:
    """𝓛_m: free 2-step nilpotent on m+1 generators."""
    if m < 1:
        raise ValueError("free_two_step needs m >= 1")
    g = m + 1
    ps = pairs(g)
    n = g + len(ps)
    sc = field.zeros((n, n, n))
    for k, (i, j) in enumerate(ps):
        sc[i, j, g + k] = field.one
        sc[j, i, g + k] = field.neg(field.one)
    labels = [f"x{i + 1}" for i in range(g)] + [pair_label(i, j, g) for i, j in ps]
    return LieAlgebra(field, sc, labels=labels, name=f"L{m}", validate=False)


def free_quotient(field: FieldSpec, m: int, ideal: Union[Subspace, Sequence[Mapping]], name: str = '') -> LieAlgebra:
    """𝓛_m / I with I given in bivector coordinates."""
    g = m + 1
    if not isinstance(ideal, Subspace):
        ideal = bivector_span(field, g, ideal)
    L = free_two_step(m, field)
    embedded = field.zeros((ideal.dim, L.dim))
    embedded[:, g:] = ideal.basis
    return L.quotient(Subspace.span(field, L.dim, embedded), name=name or f"L{m}/I{ideal.dim}")


def heisenberg(m: int, field: FieldSpec) -> LieAlgebra:
    """ℋ_m: [x_i, y_i] = z."""
    if m < 1:
        raise ValueError("heisenberg needs m >= 1")
    brackets = {(i, m + i): {2 * m: 1} for i in range(m)}
    labels = [f"x{i + 1}" for i in range(m)] + [f"y{i + 1}" for i in range(m)] + ['z']
    return LieAlgebra.from_brackets(field, 2 * m + 1, brackets, labels=labels, name=f"H{m}")


# polynomials over a FieldSpec, raw coefficient arrays low-to-high

def raw_poly(field: FieldSpec, modulus) -> np.ndarray:
    """Raw coefficients; finite-field ints are canonical indices, as in the JSON formats."""
    if isinstance(modulus, np.ndarray):
        return field.copy(modulus)
    values = []
    for c in modulus:
        if isinstance(c, FieldElem):
            values.append(c.value)
        elif field.is_finite:
            values.append(field.from_json_value(int(c)))
        else:
            values.append(field.embed(c))
    return field.copy(values)


def _poly_rem(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = field.copy(a)
    db = len(b) - 1
    lead_inv = field.inv(b[-1])
    for shift in range(len(a) - 1 - db, -1, -1):
        coef = field.mul(a[shift + db], lead_inv)
        if coef != 0:
            a[shift:shift + db + 1] = field.sub(a[shift:shift + db + 1], field.mul(coef, b))
    return a[:db]


def _has_factor_of_degree(field: FieldSpec, f: np.ndarray, d: int) -> bool:
    for tail in all_vectors(field, d):
        g = np.concatenate([tail, [1]])
        if not np.any(_poly_rem(field, f, g) != 0):
            return True
    return False


def is_irreducible(field: FieldSpec, modulus: Sequence) -> bool:
    """
    Monic modulus, coefficients low-to-high. Finite fields: exhaustive factor
    search. Rationals: decided up to degree 3 by the rational root test;
    higher degrees raise Unsupported.
    """
    f = raw_poly(field, modulus)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if field.is_finite:
        return not any(_has_factor_of_degree(field, f, d) for d in range(1, m // 2 + 1))
    if m > 3:
        raise Unsupported("Irreducibility over Q is only decided up to degree 3")
    return not _rational_roots(f)


def _rational_roots(f) -> List:
    den = lcm(*(Fraction(c).denominator for c in f))
    ints = [int(Fraction(c) * den) for c in f]
    if ints[0] == 0:
        return [Fraction(0)]
    lead, const = abs(ints[-1]), abs(ints[0])

    def divisors(k):
        return [d for d in range(1, k + 1) if k % d == 0]

    roots = []
    for p in divisors(const):
        for q in divisors(lead):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * r ** i for i, c in enumerate(ints)) == 0:
                    roots.append(r)
    return roots


def extension_modulus(field: FieldSpec, m: int) -> np.ndarray:
    """Least monic irreducible of degree m over a finite field (tail coefficients in product order)."""
    if not field.is_finite:
        raise NoExtensionTable("No default degree-m extension of Q; supply a modulus")
    for tail in all_vectors(field, m):
        candidate = np.concatenate([tail, [1]])
        if tail[0] != 0 and is_irreducible(field, candidate):
            return candidate
    raise NoExtensionTable(f"No irreducible polynomial of degree {m} over {field}")


def multiplication_tensor(field: FieldSpec, modulus: Sequence) -> np.ndarray:
    """mu[a, b, c] = coefficient of w^c in w^(a+b) mod the modulus."""
    f = raw_poly(field, modulus)
    m = len(f) - 1
    powers = field.zeros((2 * m - 1, m))
    powers[0, 0] = field.one
    for s in range(1, 2 * m - 1):
        prev = powers[s - 1]
        nxt = field.zeros(m)
        nxt[1:] = prev[:-1]
        powers[s] = field.sub(nxt, field.mul(prev[-1], f[:m]))
    mu = field.zeros((m, m, m))
    for a in range(m):
        for b in range(m):
            mu[a, b] = powers[a + b]
    return mu


def heisenberg_degree(m: int, field: FieldSpec, modulus: Optional[Sequence] = None) -> LieAlgebra:
    """𝔥_m: the Heisenberg algebra over K = k[w]/(modulus), viewed over k (dimension 3m)."""
    if m < 1:
        raise ValueError("heisenberg_degree needs m >= 1")
    if m == 1:
        modulus = field.array([0, 1])
    elif modulus is None:
        modulus = extension_modulus(field, m)
    else:
        modulus = raw_poly(field, modulus)
        if len(modulus) != m + 1 or modulus[-1] != field.one:
            raise NoExtensionTable(f"Modulus must be monic of degree {m}")
        if not is_irreducible(field, modulus):
            raise NoExtensionTable(f"Modulus {[field.format_value(c) for c in modulus]} is reducible over {field}")
    mu = multiplication_tensor(field, modulus)
    n = 3 * m
    sc = field.zeros((n, n, n))
    sc[:m, m:2 * m, 2 * m:] = mu
    sc[m:2 * m, :m, 2 * m:] = field.neg(mu.transpose(1, 0, 2))
    labels = [f"x{i + 1}" for i in range(m)] + [f"y{i + 1}" for i in range(m)] + [f"z{i + 1}" for i in range(m)]
    return LieAlgebra(field, sc, labels=labels, name=f"h{m}")


def camina_quotient(m: int, l: int, field: FieldSpec, modulus: Optional[Sequence] = None) -> LieAlgebra:
    """𝔥_m / <z1..zl>: Camina of breadth type (0, m - l)."""
    if not 0 <= l < m:
        raise ValueError("camina_quotient needs 0 <= l < m")
    h = heisenberg_degree(m, field, modulus)
    rows = field.zeros((l, h.dim))
    for i in range(l):
        rows[i, 2 * m + i] = field.one
    return h.quotient(Subspace.span(field, h.dim, rows), name=f"h{m}/Z{l}")


def sl2(field: FieldSpec) -> LieAlgebra:
    """Basis (e, h, f): [h, e] = 2e, [h, f] = -2f, [e, f] = h."""
    brackets = {(0, 1): {0: -2}, (1, 2): {2: -2}, (0, 2): {1: 1}}
    return LieAlgebra.from_brackets(field, 3, brackets, labels=['e', 'h', 'f'], name='sl2')


def five_dim_three_step(field: FieldSpec) -> LieAlgebra:
    """[x1, x2] = y, [x1, y] = z1, [x2, y] = z2."""
    brackets = {(0, 1): {2: 1}, (0, 2): {3: 1}, (1, 2): {4: 1}}
    return LieAlgebra.from_brackets(field, 5, brackets, labels=['x1', 'x2', 'y', 'z1', 'z2'], name='five-dim')


def non_nilpotent_camina(field: FieldSpec) -> LieAlgebra:
    """[x, y] = x."""
    return LieAlgebra.from_brackets(field, 2, {(0, 1): {0: 1}}, labels=['x', 'y'], name='camina-nonnilpotent')


def quotient_by_central_ideal(L: LieAlgebra, I: Subspace) -> LieAlgebra:
    return L.quotient(I)


# the stem families of breadth type (0,3)

RATIONAL_CAMINA_IDEAL = ({'e12': 1, 'e34': 1}, {'e13': 1, 'e24': -1}, {'e14': 1, 'e23': 1})


def theorem_families(field: FieldSpec) -> List[Tuple[str, LieAlgebra]]:
    """(tag, algebra) for every stem family of breadth type (0,3) over this field class."""
    e1234 = {'e12': 1, 'e34': 1}
    L3 = free_two_step(3, field)
    if field.is_rational:
        camina = free_quotient(field, 3, RATIONAL_CAMINA_IDEAL, name='L3/<e12+e34, e13-e24, e14+e23>')
        t = find_nonsquare(field)
        dim2 = free_quotient(field, 3, [e1234, {'e13': 1, 'e24': t}], name=f"L3/<e12+e34, e13+({t})e24>")
        return [('(i)', camina), ('(ii)', L3), ('(iii)', free_quotient(field, 3, [e1234], name='L3/<e12+e34>')),
                ('(iv)', dim2)]
    if not field.is_finite:
        raise UnsupportedField(f"No theorem families over {field}")
    dim1 = free_quotient(field, 3, [e1234], name='L3/<e12+e34>')
    if field.characteristic == 2:
        r = least_trace_one(field)
        dim2 = free_quotient(field, 3, [e1234, {'e13': r, 'e24': 1, 'e34': 1}],
                             name=f"L3/<e12+e34, ({r})e13+e24+e34>")
        return [('(ii)', L3), ('(iii)', dim1), ('(iv)', dim2)]
    t = find_nonsquare(field)
    dim2 = free_quotient(field, 3, [e1234, {'e13': 1, 'e24': t}], name=f"L3/<e12+e34, e13+({t})e24>")
    return [('(i)', heisenberg_degree(3, field)), ('(ii)', L3), ('(iii)', dim1), ('(iv)', dim2)]


# registry

@register_family('L')
def _build_free(field, m, modulus=None):
    return free_two_step(m, field)


@register_family('H')
def _build_heisenberg(field, m, modulus=None):
    return heisenberg(m, field)


@register_family('h')
def _build_heisenberg_degree(field, m, modulus=None):
    return heisenberg_degree(m, field, modulus)


@register_family('sl2')
def _build_sl2(field, m=None, modulus=None):
    return sl2(field)


@register_family('five-dim')
def _build_five_dim(field, m=None, modulus=None):
    return five_dim_three_step(field)


@register_family('camina-nonnilpotent')
def _build_non_nilpotent(field, m=None, modulus=None):
    return non_nilpotent_camina(field)


@register_family('theorem')
def _build_theorem(field, m=None, modulus=None, tag=None):
    for family_tag, algebra in theorem_families(field):
        if family_tag == f"({tag})":
            return algebra
    raise UnknownTheorem(f"No theorem family ({tag}) over {field}")


def build_family(key: str, field: FieldSpec, modulus: Optional[Sequence] = None) -> LieAlgebra:
    """Keys: L<m>, H<m>, h<m>, sl2, five-dim, camina-nonnilpotent, theorem:<i|ii|iii|iv>."""
    if key.startswith('theorem:'):
        return FAMILIES.get('theorem')(field, tag=key.split(':', 1)[1])
    match = re.fullmatch(r'([LHh])(\d+)', key)
    if match:
        return FAMILIES.get(match.group(1))(field, int(match.group(2)), modulus)
    builder = FAMILIES.get(key)
    if builder is None:
        raise UnknownTheorem(f"Unknown family {key!r}; known: {', '.join(FAMILIES.keys())}")
    return builder(field)
