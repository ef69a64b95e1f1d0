"""
Rank-subspace constructions and the k_sks search.

The search walks subspaces of the skew coordinate space Λ²(k^n) in RREF,
built from the bottom row up: each new row takes a pivot left of every
pivot so far, is zero on the existing pivot columns and free to the right.
A branch dies as soon as one of its nonzero elements is singular.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from bivectors.bivector import pair_count, skew_ranks, skew_stack
from core.conf import lab_setting
from core.exceptions import BudgetExceeded, InvalidInputCertificate, Undetermined, Unsupported, VerificationFailed
from fields.spec import FieldSpec
from lie.constructions import extension_modulus, multiplication_tensor, raw_poly
from linalg.matrix import Matrix, det_array
from linalg.subspace import CHUNK, all_vectors
from .certificates import RankSubspaceCertificate

logger = logging.getLogger(__name__)

# the quaternion units as 4x4 rational matrices
QUATERNION_BASIS = (
    [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]],
    [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
)
QUATERNION_GRID = range(-2, 3)


class SksSearch:
    """
    Mutable state of one depth-first k_sks search: the best basis found
    and the number of skew matrices whose rank has been checked.
    """

    def __init__(self, n: int, field: FieldSpec, budget: int):
        self.n = n
        self.field = field
        self.budget = budget
        self.width = pair_count(n)
        self.checked = 0
        self.best: List[np.ndarray] = []

    def certificate(self, lower_bound: bool = False) -> RankSubspaceCertificate:
        rows = self.best[::-1]
        basis = tuple(Matrix(self.field, M) for M in skew_stack(self.field, self.n, rows)) if rows else ()
        return RankSubspaceCertificate(self.n, self.field, basis, skew=True, lower_bound=lower_bound)

    def _charge(self, count: int):
        self.checked += count
        if self.checked > self.budget:
            raise BudgetExceeded(
                f"k_sks({self.n}) search over {self.field} checked more than {self.budget} matrices",
                partial=self.certificate(lower_bound=True),
            )

    def _candidates(self, pivot: int, pivots: List[int]) -> np.ndarray:
        free = [c for c in range(pivot + 1, self.width) if c not in pivots]
        values = all_vectors(self.field, len(free))
        V = self.field.zeros((len(values), self.width))
        V[:, pivot] = self.field.one
        V[:, free] = values
        return V

    def _admissible(self, V: np.ndarray, span: np.ndarray) -> np.ndarray:
        """Rows v of V with v + s nonsingular for every s in the span."""
        f = self.field
        step = max(1, CHUNK // len(span))
        kept = []
        for lo in range(0, len(V), step):
            block = V[lo:lo + step]
            sums = f.add(block[:, None, :], span[None, :, :]).reshape(-1, self.width)
            self._charge(len(sums))
            full = (skew_ranks(f, self.n, sums) == self.n).reshape(len(block), len(span))
            kept.append(block[full.all(axis=1)])
        return np.concatenate(kept) if kept else V[:0]

    def _extend(self, span: np.ndarray, v: np.ndarray) -> np.ndarray:
        f = self.field
        return np.concatenate([f.add(span, f.mul(c, v)[None, :]) for c in f.elements()])

    def _descend(self, rows: List[np.ndarray], pivots: List[int], span: np.ndarray):
        if len(rows) > len(self.best):
            self.best = list(rows)
            logger.debug(f"k_sks({self.n}) over {self.field}: found dimension {len(rows)}")
        if len(rows) >= self.n:
            return
        for p in range(pivots[-1] - 1, -1, -1):
            # at most p further rows fit below pivot p
            if len(rows) + 1 + p <= len(self.best):
                break
            for v in self._admissible(self._candidates(p, pivots), span):
                self._descend(rows + [v], pivots + [p], self._extend(span, v))

    def run_shard(self, pivot: int):
        """Every subspace whose last pivot column is `pivot`."""
        if pivot + 1 <= len(self.best):
            return
        origin = self.field.zeros((1, self.width))
        for v in self._admissible(self._candidates(pivot, []), origin):
            self._descend([v], [pivot], self._extend(origin, v))


def _require_search(n: int, field: FieldSpec):
    if not field.is_finite:
        raise Unsupported("The k_sks search needs a finite field")
    if n < 0:
        raise ValueError("n must be non-negative")


def sks_search_shard(n: int, field: FieldSpec, pivot: int,
                     budget: Optional[int] = None) -> Tuple[int, RankSubspaceCertificate, int]:
    """(best dimension, certificate, matrices checked) within one pivot shard."""
    _require_search(n, field)
    budget = lab_setting('BREADTHLAB_SEARCH_BUDGET') if budget is None else budget
    search = SksSearch(n, field, budget)
    if n % 2 == 0 and n >= 2:
        search.run_shard(pivot)
    cert = search.certificate()
    return cert.dim, cert, search.checked


def max_sks_rank_subspace(n: int, field: FieldSpec,
                          budget: Optional[int] = None) -> Tuple[int, RankSubspaceCertificate]:
    """
    k_sks(n) over a finite field with a certificate that is rechecked before
    it is returned. BudgetExceeded carries the best certificate so far,
    flagged as a lower bound.
    """
    _require_search(n, field)
    if n % 2 or n < 2:
        return 0, RankSubspaceCertificate(n, field, (), skew=True)
    budget = lab_setting('BREADTHLAB_SEARCH_BUDGET') if budget is None else budget
    search = SksSearch(n, field, budget)
    for pivot in range(search.width - 1, -1, -1):
        search.run_shard(pivot)
    cert = search.certificate().check()
    logger.info(f"k_sks({n}) over {field} = {cert.dim} after {search.checked} rank checks")
    return cert.dim, cert


def double_to_skew(cert: RankSubspaceCertificate) -> RankSubspaceCertificate:
    """Y = [[0, -Xᵀ], [X, 0]] for each X: a rank-n subspace of M_n gives a rank-2n skew subspace."""
    f = cert.field
    n = cert.n
    if cert.dim == 0:
        return RankSubspaceCertificate(2 * n, f, (), skew=True)
    try:
        valid = cert.verify()
    except Undetermined as e:
        raise InvalidInputCertificate(f"Cannot verify the input certificate: {e}")
    if not valid:
        raise InvalidInputCertificate("A nonzero combination of the input matrices is singular")

    basis = []
    for X in cert.basis:
        Y = f.zeros((2 * n, 2 * n))
        Y[:n, n:] = f.neg(X.data.T)
        Y[n:, :n] = X.data
        basis.append(Matrix(f, Y))
    out = RankSubspaceCertificate(2 * n, f, tuple(basis), skew=True)
    try:
        out.check()
    except Undetermined:
        logger.warning(f"Doubled certificate of size {2 * n} over {f} could not be rechecked")
    return out


def _quaternion_det(f: FieldSpec, X: List[np.ndarray], a, b, c):
    M = f.add(f.add(f.mul(X[0], f.embed(a)), f.mul(X[1], f.embed(b))), f.mul(X[2], f.embed(c)))
    return det_array(f, M)


def rational_quaternion_family(samples: int = 100, seed: Optional[int] = None) -> RankSubspaceCertificate:
    """
    X1, X2, X3 with X_i² = -I and X_i X_j = -X_j X_i, so that
    det(αX1 + βX2 + γX3) = (α² + β² + γ²)². Checked on a 5x5x5 integer grid
    and on seeded random integer triples.
    """
    f = FieldSpec.rational()
    basis = tuple(Matrix.from_rows(f, rows) for rows in QUATERNION_BASIS)
    X = [M.data for M in basis]
    minus_one = f.neg(f.identity(4))
    for i in range(3):
        if not np.all(f.matmul(X[i], X[i]) == minus_one):
            raise VerificationFailed(f"X{i + 1} does not square to -I")
        for j in range(i + 1, 3):
            if np.any(f.add(f.matmul(X[i], X[j]), f.matmul(X[j], X[i])) != 0):
                raise VerificationFailed(f"X{i + 1} and X{j + 1} do not anticommute")

    seed = lab_setting('BREADTHLAB_SEED') if seed is None else seed
    rng = np.random.default_rng(seed)
    grid = [(a, b, c) for a in QUATERNION_GRID for b in QUATERNION_GRID for c in QUATERNION_GRID]
    triples = grid + [tuple(int(v) for v in row) for row in rng.integers(-20, 21, size=(samples, 3))]
    for a, b, c in triples:
        expected = (a * a + b * b + c * c) ** 2
        if _quaternion_det(f, X, a, b, c) != expected:
            raise VerificationFailed(f"det at ({a}, {b}, {c}) differs from {expected}")
    logger.debug(f"Quaternion determinant identity holds at {len(triples)} points")
    return RankSubspaceCertificate(4, f, basis, skew=True)


def quaternion_det(a, b, c):
    """det(αX1 + βX2 + γX3) at one rational point."""
    f = FieldSpec.rational()
    X = [f.array(rows) for rows in QUATERNION_BASIS]
    return f.wrap(_quaternion_det(f, X, a, b, c))


def extension_rank_subspace(m: int, field: FieldSpec, modulus=None) -> RankSubspaceCertificate:
    """Multiplication by 1, w, ..., w^(m-1) on GF(q^m) = k[w]/(modulus): an m-dim rank-m subspace of M_m."""
    if m == 1:
        modulus = field.array([0, 1])
    elif modulus is None:
        modulus = extension_modulus(field, m)
    else:
        modulus = raw_poly(field, modulus)
    mu = multiplication_tensor(field, modulus)
    # column b of the matrix of w^a holds the coordinates of w^(a+b)
    basis = tuple(Matrix(field, mu[a].T) for a in range(m))
    return RankSubspaceCertificate(m, field, basis, skew=False)
