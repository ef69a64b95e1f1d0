"""
The exponent-p class-2 groups 𝒢_m in exponent normal form.

An element is (∏ g_i^{α_i})(∏_{j<r} [g_j, g_r]^{β_jr}) with [x, y] = x y x⁻¹ y⁻¹.
Commutators are central and every g_i has order p, so multiplication is
collection: moving g_j^{b} left past g_r^{a} (j < r) costs [g_j, g_r]^{-ab}.
The batch functions work on stacked exponent arrays; GroupElement wraps one row.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from bivectors.bivector import pair_count
from core.exceptions import DimensionMismatch, EvenPrime
from fields.spec import is_prime

logger = logging.getLogger(__name__)


def check_prime(p: int):
    if p == 2:
        raise EvenPrime("The group correspondence needs an odd prime")
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")


def _pairs(g: int):
    return np.triu_indices(g, 1)


def collect(p: int, alpha_a, beta_a, alpha_b, beta_b) -> Tuple[np.ndarray, np.ndarray]:
    """Exponents of a·b for stacked operands."""
    alpha_a = np.asarray(alpha_a, dtype=np.int64)
    alpha_b = np.asarray(alpha_b, dtype=np.int64)
    rows, cols = _pairs(alpha_a.shape[-1])
    # β_jr -= α_r(a) α_j(b)
    correction = alpha_a[..., cols] * alpha_b[..., rows]
    alpha = (alpha_a + alpha_b) % p
    beta = (np.asarray(beta_a, dtype=np.int64) + beta_b - correction) % p
    return alpha, beta


def invert(p: int, alpha, beta) -> Tuple[np.ndarray, np.ndarray]:
    alpha = np.asarray(alpha, dtype=np.int64)
    rows, cols = _pairs(alpha.shape[-1])
    return (-alpha) % p, (-np.asarray(beta, dtype=np.int64) - alpha[..., rows] * alpha[..., cols]) % p


def commutator(p: int, alpha_a, beta_a, alpha_b, beta_b) -> Tuple[np.ndarray, np.ndarray]:
    """a b a⁻¹ b⁻¹ by three collections."""
    ab = collect(p, alpha_a, beta_a, alpha_b, beta_b)
    ab_ainv = collect(p, *ab, *invert(p, alpha_a, beta_a))
    return collect(p, *ab_ainv, *invert(p, alpha_b, beta_b))


@dataclass(frozen=True)
class GroupElement:
    p: int
    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]

    def __post_init__(self):
        g = len(self.alpha)
        if len(self.beta) != pair_count(g):
            raise DimensionMismatch(f"{g} generators need {pair_count(g)} commutator exponents, got {len(self.beta)}")
        object.__setattr__(self, 'alpha', tuple(int(a) % self.p for a in self.alpha))
        object.__setattr__(self, 'beta', tuple(int(b) % self.p for b in self.beta))

    @classmethod
    def from_arrays(cls, p: int, alpha, beta) -> 'GroupElement':
        return cls(p, tuple(int(a) for a in alpha), tuple(int(b) for b in beta))

    @classmethod
    def identity(cls, p: int, m: int) -> 'GroupElement':
        return cls(p, (0,) * (m + 1), (0,) * pair_count(m + 1))

    @classmethod
    def generator(cls, p: int, m: int, i: int) -> 'GroupElement':
        """g_{i+1}."""
        alpha = [0] * (m + 1)
        alpha[i] = 1
        return cls(p, tuple(alpha), (0,) * pair_count(m + 1))

    @classmethod
    def central(cls, p: int, m: int, beta) -> 'GroupElement':
        return cls(p, (0,) * (m + 1), tuple(beta))

    @property
    def m(self) -> int:
        return len(self.alpha) - 1

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.array(self.alpha, dtype=np.int64), np.array(self.beta, dtype=np.int64)

    def is_identity(self) -> bool:
        return not any(self.alpha) and not any(self.beta)

    def __mul__(self, other: 'GroupElement') -> 'GroupElement':
        return gmul(self, other)

    def __repr__(self):
        g = len(self.alpha)
        rows, cols = _pairs(g)
        terms = [f"g{i + 1}^{a}" if a != 1 else f"g{i + 1}" for i, a in enumerate(self.alpha) if a]
        terms += [f"[g{j + 1},g{r + 1}]^{b}" if b != 1 else f"[g{j + 1},g{r + 1}]"
                  for j, r, b in zip(rows, cols, self.beta) if b]
        return ' '.join(terms) if terms else '1'

    def to_json(self) -> dict:
        return {'p': self.p, 'alpha': list(self.alpha), 'beta': list(self.beta)}


def _same_group(a: GroupElement, b: GroupElement):
    if a.p != b.p or len(a.alpha) != len(b.alpha):
        raise DimensionMismatch(f"Elements of different groups: p={a.p}, m={a.m} and p={b.p}, m={b.m}")
    check_prime(a.p)


def gmul(a: GroupElement, b: GroupElement) -> GroupElement:
    _same_group(a, b)
    return GroupElement.from_arrays(a.p, *collect(a.p, *a.arrays(), *b.arrays()))


def ginv(a: GroupElement) -> GroupElement:
    check_prime(a.p)
    return GroupElement.from_arrays(a.p, *invert(a.p, *a.arrays()))


def gpow(a: GroupElement, k: int) -> GroupElement:
    """a^k = (kα, kβ - C(k,2) α_j α_r); a^p = 1 for odd p."""
    check_prime(a.p)
    if k < 0:
        return gpow(ginv(a), -k)
    alpha, beta = a.arrays()
    rows, cols = _pairs(len(alpha))
    return GroupElement.from_arrays(a.p, k * alpha, k * beta - (k * (k - 1) // 2) * alpha[rows] * alpha[cols])


def gcommutator(a: GroupElement, b: GroupElement) -> GroupElement:
    _same_group(a, b)
    return GroupElement.from_arrays(a.p, *commutator(a.p, *a.arrays(), *b.arrays()))


def all_elements(p: int, m: int) -> Tuple[np.ndarray, np.ndarray]:
    """Every element of 𝒢_m as stacked (alpha, beta) exponent arrays."""
    g = m + 1
    n = g + pair_count(g)
    index = np.arange(p ** n, dtype=np.int64)
    digits = np.empty((len(index), n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        digits[:, i] = index % p
        index //= p
    return digits[:, :g], digits[:, g:]


def reduce_mod(p: int, beta, basis, pivots) -> np.ndarray:
    """Canonical representative of β modulo the span of an RREF basis."""
    beta = np.array(beta, dtype=np.int64) % p
    for row, col in zip(basis, pivots):
        beta = (beta - beta[..., col:col + 1] * np.asarray(row, dtype=np.int64)) % p
    return beta


def brute_force_conjugacy(p: int, m: int, basis=(), pivots=()) -> Dict[int, int]:
    """
    {class size: number of classes} in 𝒢_m / N by conjugating every element
    by every element; N is given by an RREF basis of β-vectors. Only for tiny groups.
    """
    check_prime(p)
    alpha, beta = all_elements(p, m)
    beta = reduce_mod(p, beta, basis, pivots)
    keys = np.unique(np.concatenate([alpha, beta], axis=1), axis=0)
    g = m + 1
    elements = [(row[:g], row[g:]) for row in keys]
    seen = set()
    sizes = Counter()
    for a, b in elements:
        key = tuple(a) + tuple(b)
        if key in seen:
            continue
        # y a y⁻¹ for all y at once
        ya = collect(p, alpha, beta, np.broadcast_to(a, alpha.shape), np.broadcast_to(b, beta.shape))
        conj_alpha, conj_beta = collect(p, *ya, *invert(p, alpha, beta))
        conj_beta = reduce_mod(p, conj_beta, basis, pivots)
        orbit = {tuple(x) + tuple(y) for x, y in zip(conj_alpha, conj_beta)}
        seen |= orbit
        sizes[len(orbit)] += 1
    logger.debug(f"Brute-force classes of G{m}/N at p={p}: {dict(sizes)}")
    return dict(sizes)
