"""
The verification campaigns behind `verify <theorem_id>`.

Each campaign splits its enumeration into named shards (pivot patterns,
sizes, family groups) and checks one shard at a time. Shards only depend on
(field, shard, options), so any worker can run any shard.

    t01              stems of breadth type (0,1) are Heisenberg
    t02              stems of breadth type (0,2) are Camina with dim L' = 2, L2, or five-dim
    t03-odd          the (0,3) classification on every ideal of L3, odd q
    t03-even         the same in characteristic 2, plus the trace criterion for quadratics
    camina-bound     k_sks(n) <= n/2 by exhaustive search, and the Camina quotient families
    correspondence   conjugate types of G_m/N against breadth types of L_m/psi_R(N)
    rational-camina  the quaternion family and the rational Camina ideal
"""
import logging
from math import ceil
from typing import List, Optional

import numpy as np

from bivectors.bivector import is_decomposable, pair_count
from bivectors.ideals import CentralIdeal, bracket_free
from camina.camina import camina_via_structure_matrices, generator_bound, is_camina, structure_matrices
from camina.search import double_to_skew, extension_rank_subspace, quaternion_det, rational_quaternion_family, \
    sks_search_shard
from camina.serializer import RankSubspaceCertificateSerializer
from core.exceptions import BreadthLabError, BudgetExceeded, UnknownTheorem, UnsupportedField
from core.registry import Registry
from fields.spec import FieldSpec, find_nonsquare, least_trace_one, quadratic_irreducible, quadratic_roots
from groupcorr.correspondence import CentralSubgroup, verify_correspondence
from lie.algebra import LieAlgebra
from lie.constructions import (
    RATIONAL_CAMINA_IDEAL,
    camina_quotient,
    five_dim_three_step,
    free_quotient,
    free_two_step,
    heisenberg,
    heisenberg_degree,
    theorem_families,
)
from lie.invariants import breadth_three_cases, breadth_type_bounds
from linalg.subspace import Subspace, enumerate_subspaces, pivot_patterns
from normalform.classify import classify_4gen_2step, generator_ideal
from normalform.maps import darboux
from normalform.reduce import reduce_dim1, reduce_dim2
from .report import ShardResult

logger = logging.getLogger(__name__)

CAMPAIGNS = Registry('campaign')

GF3 = FieldSpec.finite(3)


def get_campaign(theorem_id: str) -> 'Campaign':
    campaign = CAMPAIGNS.get(theorem_id)
    if campaign is None:
        raise UnknownTheorem(f"Unknown theorem {theorem_id!r}; known: {', '.join(CAMPAIGNS.keys())}")
    return campaign()


def _rng(options: dict, *keys: int) -> np.random.Generator:
    return np.random.default_rng([options.get('seed') or 0, *keys])


def _witness(label: str, problems: List[str], **data) -> dict:
    return {'instance': label, 'problems': problems, **data}


class Campaign:
    key = ''
    default_samples = 25

    def resolve_field(self, token: str) -> FieldSpec:
        return FieldSpec.parse(token)

    def shards(self, field: FieldSpec, options: dict) -> List[str]:
        raise NotImplementedError

    def run_shard(self, field: FieldSpec, shard: str, options: dict) -> ShardResult:
        raise NotImplementedError

    def summarize(self, field: FieldSpec, results: List[ShardResult], options: dict) -> dict:
        return {}

    def samples(self, options: dict) -> int:
        return options.get('samples') or self.default_samples

    def exact_type(self, L: LieAlgebra, result: ShardResult, options: dict):
        """Exact breadth type, or None after recording a skipped instance."""
        try:
            return L.breadth_type(mode='exact', budget=options.get('budget'))
        except BudgetExceeded as e:
            result.skip(str(e))
            return None

    def guarded(self, result: ShardResult, label: str, check):
        """Run one instance check; a domain error becomes a failed instance."""
        try:
            problems = check()
        except BudgetExceeded as e:
            result.skip(str(e))
            return
        except BreadthLabError as e:
            logger.warning(f"{self.key}: {label} raised {e.__class__.__name__}: {e}")
            problems = [f"{e.__class__.__name__}: {e}"]
        if problems is None:
            return
        result.record(not problems, _witness(label, problems) if problems else None)


def _require_finite(field: FieldSpec, key: str) -> FieldSpec:
    if not field.is_finite:
        raise UnsupportedField(f"Campaign {key} enumerates elements, so needs a finite field")
    return field


def _random_subspace(field: FieldSpec, n: int, d: int, rng: np.random.Generator) -> Subspace:
    if d == 0:
        return Subspace.zero(field, n)
    return Subspace.span(field, n, field.random(rng, (d, n)))


def _random_hyperplane(field: FieldSpec, n: int, rng: np.random.Generator) -> Subspace:
    functional = field.random(rng, (1, n))
    while not functional.any():
        functional = field.random(rng, (1, n))
    return Subspace.kernel_of(field, functional)


# t01

@CAMPAIGNS.register('t01')
class HeisenbergStemCampaign(Campaign):
    """Quotients of L1..L3 by sampled central ideals; every stem of type (0,1) must be H_k."""
    key = 't01'

    def resolve_field(self, token):
        return _require_finite(FieldSpec.parse(token), self.key)

    def shards(self, field, options):
        return [f"m{m}" for m in range(1, (options.get('m') or 3) + 1)]

    def run_shard(self, field, shard, options):
        m = int(shard[1:])
        P = pair_count(m + 1)
        rng = _rng(options, m)
        result = ShardResult(shard)
        for k in range(self.samples(options)):
            # alternate hyperplanes (dim L' = 1) with ideals of any dimension
            if k % 2 == 0:
                S = _random_hyperplane(field, P, rng)
            else:
                S = _random_subspace(field, P, int(rng.integers(0, P + 1)), rng)
            I = CentralIdeal(m + 1, S)
            self.guarded(result, f"L{m}/{I!r}", lambda: self.check(field, m, I, result, options))
        return result

    def check(self, field, m, I, result, options):
        L = free_quotient(field, m, I.subspace)
        bt = self.exact_type(L, result, options)
        if bt is None:
            return None
        result.tally(f"breadth_type.{bt}")
        if L.is_abelian():
            return []
        problems = []
        stem = L.strip_abelian_summands()
        if bt.breadths == (0, 1):
            k = heisenberg_rank(stem)
            if k is None:
                problems.append(f"stem {stem!r} of type (0,1) is not Heisenberg")
            else:
                result.tally(f"stem.H{k}")
        elif stem.derived().dim == 1:
            problems.append(f"stem with dim L' = 1 has type {bt}")
        bounds = breadth_type_bounds(L, bt)
        if not bounds.ok:
            problems.append(f"breadth type bounds fail: {bounds.failed()}")
        return problems


def heisenberg_rank(stem: LieAlgebra) -> Optional[int]:
    """k with stem ≅ H_k, or None: class 2, Z = L' of dim 1 and a nondegenerate bracket form."""
    D = stem.derived()
    if D.dim != 1 or stem.center() != D or stem.nilpotency_class() != 2:
        return None
    X = structure_matrices(stem).basis[0].data
    _, r = darboux(stem.field, X)
    return r if 2 * r == X.shape[0] else None


# t02

@CAMPAIGNS.register('t02')
class BreadthTwoCampaign(Campaign):
    """
    Named algebras, every central quotient of L2 and sampled quotients of L3.
    A stem of type (0,2) must be 2-step Camina with dim L' = 2, L2 itself,
    or the five-dimensional 3-step algebra; a class-2 stem with dim L' = m is
    Camina exactly when its type is (0,m).
    """
    key = 't02'

    def resolve_field(self, token):
        return _require_finite(FieldSpec.parse(token), self.key)

    def shards(self, field, options):
        return ['named', 'L2'] + [f"L3:{d}" for d in (3, 4, 5)]

    def instances(self, field, shard, options):
        if shard == 'named':
            yield 'H1', heisenberg(1, field)
            yield 'H2', heisenberg(2, field)
            yield 'h2', heisenberg_degree(2, field)
            yield 'h3/Z1', camina_quotient(3, 1, field)
            yield 'five-dim', five_dim_three_step(field)
            yield 'L2', free_two_step(2, field)
            yield 'L2 + A1', free_two_step(2, field).direct_sum_abelian(1)
        elif shard == 'L2':
            for d in range(4):
                for S in enumerate_subspaces(field, 3, d):
                    yield f"L2/{CentralIdeal(3, S)!r}", free_quotient(field, 2, S)
        else:
            d = int(shard.split(':')[1])
            rng = _rng(options, d)
            for _ in range(self.samples(options)):
                S = _random_subspace(field, 6, d, rng)
                yield f"L3/{CentralIdeal(4, S)!r}", free_quotient(field, 3, S)

    def run_shard(self, field, shard, options):
        result = ShardResult(shard)
        for label, L in self.instances(field, shard, options):
            self.guarded(result, label, lambda: self.check(L, result, options))
        return result

    def check(self, L, result, options):
        bt = self.exact_type(L, result, options)
        if bt is None:
            return None
        result.tally(f"breadth_type.{bt}")
        if L.is_abelian():
            return []
        problems = []
        c = L.nilpotency_class()
        stem = L.strip_abelian_summands()
        D = stem.derived()
        if c == 2 and bool(is_camina(stem)) != (bt.breadths == (0, D.dim)):
            problems.append(f"class-2 stem with dim L' = {D.dim}: Camina disagrees with type {bt}")
        if bt.breadths == (0, 2):
            case = breadth_two_case(stem, c)
            if case is None:
                problems.append(f"stem {stem!r} of type (0,2) is none of the three families")
            else:
                result.tally(f"stem.{case}")
        if len(bt.breadths) == 2 and c > 3:
            problems.append(f"type {bt} with nilpotency class {c}")
        bounds = breadth_type_bounds(L, bt)
        if not bounds.ok:
            problems.append(f"breadth type bounds fail: {bounds.failed()}")
        return problems


def breadth_two_case(stem: LieAlgebra, c: int) -> Optional[str]:
    D = stem.derived()
    if c == 2 and D.dim == 2 and is_camina(stem):
        return 'camina'
    if c == 2 and stem.dim == 6 and D.dim == 3 and D.codim == 3 and generator_ideal(stem).dim == 0:
        return 'L2'
    if c == 3 and stem.dim == 5 and D.dim == 3:
        Z = stem.center()
        if Z.dim == 2 and Z == stem.lower_central_series()[2]:
            return 'five-dim'
    return None


# t03

class IdealLayersCampaign(Campaign):
    """
    Every central ideal of L3 of dimension 1, 2 and 3, one shard per pivot
    pattern. bracket_free, the normal-form reductions and (dimensions 1 and 2)
    the exact breadth type of the quotient must all agree; no ideal of
    dimension 3 is bracket-free over a finite field.
    """
    characteristic_two = False

    def resolve_field(self, token):
        field = _require_finite(FieldSpec.parse(token), self.key)
        if (field.characteristic == 2) != self.characteristic_two:
            parity = 'even' if self.characteristic_two else 'odd'
            raise UnsupportedField(f"Campaign {self.key} needs a field of {parity} characteristic, got {field}")
        return field

    def shards(self, field, options):
        layers = options.get('layers') or [1, 2, 3]
        return [f"dim{d}:{''.join(str(p) for p in pattern)}" for d in layers for pattern in pivot_patterns(6, d)]

    def canonical_ideals(self, field) -> dict:
        E = {'e12': 1, 'e34': 1}
        if self.characteristic_two:
            second = {'e13': least_trace_one(field), 'e24': 1, 'e34': 1}
        else:
            second = {'e13': 1, 'e24': find_nonsquare(field)}
        return {1: CentralIdeal.from_terms(field, 4, [E]), 2: CentralIdeal.from_terms(field, 4, [E, second])}

    def run_shard(self, field, shard, options):
        layer, pattern = shard.split(':')
        d = int(layer[3:])
        pattern = tuple(int(p) for p in pattern)
        canonical = self.canonical_ideals(field)
        result = ShardResult(shard)
        for S in enumerate_subspaces(field, 6, d, [pattern]):
            I = CentralIdeal(4, S)
            self.guarded(result, repr(I), lambda: self.check(field, I, canonical, result, options))
        logger.debug(f"{self.key} shard {shard}: {result.scanned} ideals")
        return result

    def check(self, field, I, canonical, result, options):
        prefix = f"dim{I.dim}"
        free = bracket_free(I)
        problems = []
        if free.witness is not None and not (is_decomposable(free.witness) and I.contains(free.witness)):
            problems.append(f"witness {free.witness!r} is not a decomposable element of the ideal")

        normal_form = reduce_dim1(I) if I.dim == 1 else reduce_dim2(I) if I.dim == 2 else None
        if normal_form is not None:
            tag = normal_form.tag
            if tag.breadth_type != free.free:
                problems.append(f"normal form {tag} but bracket_free = {free.free}")
            elif free and normal_form.canonical_ideal != canonical[I.dim]:
                problems.append(f"reduced to {normal_form.canonical_ideal!r}, not {canonical[I.dim]!r}")
            if not tag.breadth_type:
                result.tally('not_breadth_type')
        elif free:
            problems.append('bracket-free ideal of dimension 3')

        if I.dim in (1, 2) and options.get('exact', True):
            L = free_quotient(field, 3, I.subspace)
            bt = self.exact_type(L, result, options)
            if bt is None:
                return None
            result.tally(f"breadth_type.{bt}")
            if (bt.breadths == (0, 3)) != free.free:
                problems.append(f"quotient has type {bt} but bracket_free = {free.free}")
            if bt.breadths == (0, 3):
                problems += self.breadth_three_problems(L, bt)

        result.tally(f"{prefix}.scanned")
        if free:
            result.tally(f"{prefix}.bracket_free")
            if not problems and normal_form is not None:
                result.tally(f"{prefix}.canonical")
        return problems

    def breadth_three_problems(self, L, bt) -> List[str]:
        problems = []
        # case c needs dim L' = 4 and a line search; (a) or (b) must hold on its own
        if not breadth_three_cases(L, search=False) & {'a', 'b'}:
            problems.append('neither case (a) nor case (b) of the breadth-3 characterisation holds')
        bounds = breadth_type_bounds(L, bt)
        if not bounds.ok:
            problems.append(f"breadth type bounds fail: {bounds.failed()}")
        if L.nilpotency_class() > 3:
            problems.append(f"type (0,3) with nilpotency class {L.nilpotency_class()}")
        return problems


@CAMPAIGNS.register('t03-odd')
class OddIdealLayersCampaign(IdealLayersCampaign):
    key = 't03-odd'


@CAMPAIGNS.register('t03-even')
class EvenIdealLayersCampaign(IdealLayersCampaign):
    key = 't03-even'
    characteristic_two = True

    def shards(self, field, options):
        return super().shards(field, options) + ['quadratics']

    def run_shard(self, field, shard, options):
        if shard == 'quadratics':
            return self.quadratics(field)
        return super().run_shard(field, shard, options)

    def quadratics(self, field) -> ShardResult:
        """The trace criterion against exhaustive root search for every a t² + b t + c, a ≠ 0."""
        result = ShardResult('quadratics')
        elements = list(field.iter_elements())
        for a in elements[1:]:
            for b in elements:
                for c in elements:
                    irreducible = quadratic_irreducible(a, b, c)
                    searched = not quadratic_roots(a, b, c)
                    if irreducible:
                        result.tally('quadratics.irreducible')
                    witness = None if irreducible == searched else _witness(
                        f"({a})t^2 + ({b})t + ({c})", [f"trace criterion says {irreducible}, root search {searched}"])
                    result.record(irreducible == searched, witness)
        return result


# camina-bound

@CAMPAIGNS.register('camina-bound')
class CaminaBoundCampaign(Campaign):
    """
    k_sks(n) by exhaustive search, one shard per last pivot column, checked
    against n >= 2·dim; the 'families' shard checks the Camina quotients of
    the Heisenberg algebras and doubled extension-field subspaces.
    """
    key = 'camina-bound'

    def resolve_field(self, token):
        return _require_finite(FieldSpec.parse(token), self.key)

    def size(self, options) -> int:
        return options.get('n') or 4

    def shards(self, field, options):
        return [f"pivot:{p}" for p in range(pair_count(self.size(options)) - 1, -1, -1)] + ['families']

    def run_shard(self, field, shard, options):
        if shard == 'families':
            return self.families(field, options)
        n = self.size(options)
        pivot = int(shard.split(':')[1])
        result = ShardResult(shard)
        try:
            dim, cert, checked = sks_search_shard(n, field, pivot, budget=options.get('budget'))
        except BudgetExceeded as e:
            result.skip(str(e))
            result.extra = {'k_sks': e.partial.dim, 'certificate': e.partial.to_json(), 'lower_bound': True}
            return result
        bound = n // 2 if n % 2 == 0 else 0
        problems = []
        if dim > bound:
            problems.append(f"{dim}-dimensional rank-{n} skew subspace exceeds n/2")
        if not cert.verify():
            problems.append('the shard certificate does not re-verify')
        result.record(not problems, _witness(shard, problems, certificate=cert.to_json()) if problems else None)
        result.tally('matrices_checked', checked)
        result.extra = {'k_sks': dim, 'certificate': cert.to_json(), 'lower_bound': False}
        return result

    def families(self, field, options) -> ShardResult:
        result = ShardResult('families')
        for m in range(1, 4):
            for l in range(m):
                label = f"h{m}/Z{l}"
                self.guarded(result, label, lambda: self.check_quotient(field, m, l, result, options))
            self.guarded(result, f"double(GF(q^{m}))", lambda: self.check_doubling(field, m))
        return result

    def check_quotient(self, field, m, l, result, options):
        L = camina_quotient(m, l, field)
        problems = []
        camina = is_camina(L, budget=options.get('budget'))
        if not camina:
            problems.append(f"not Camina: {camina.witness}")
        if bool(camina_via_structure_matrices(L)) != bool(camina):
            problems.append('is_camina and the structure-matrix test disagree')
        if not generator_bound(L):
            problems.append("fewer than 2·dim L' generators")
        bt = self.exact_type(L, result, options)
        if bt is None:
            return None
        if bt.breadths != (0, m - l):
            problems.append(f"type {bt}, expected (0,{m - l})")
        result.tally('camina_quotients')
        return problems

    def check_doubling(self, field, m):
        doubled = double_to_skew(extension_rank_subspace(m, field))
        problems = []
        if doubled.n != 2 * m or doubled.dim != m:
            problems.append(f"doubled certificate has n = {doubled.n}, dim = {doubled.dim}")
        if not doubled.verify():
            problems.append('doubled certificate has a singular combination')
        return problems

    def summarize(self, field, results, options):
        n = self.size(options)
        searched = [r for r in results if r.shard.startswith('pivot:')]
        if not searched:
            return {'n': n}
        best = max(searched, key=lambda r: r.extra.get('k_sks', 0))
        summary = {
            'n': n,
            'k_sks': best.extra.get('k_sks', 0),
            'bound': n // 2 if n % 2 == 0 else 0,
            'exhaustive': not any(r.budget_exceeded for r in searched),
        }
        if 'certificate' in best.extra:
            cert = RankSubspaceCertificateSerializer.load(best.extra['certificate'])
            summary['certificate'] = best.extra['certificate']
            summary['certificate_verified'] = cert.verify()
        return summary


# correspondence

@CAMPAIGNS.register('correspondence')
class CorrespondenceCampaign(Campaign):
    """Every central subgroup for m <= 2, seeded random ones (in blocks of ten) beyond."""
    key = 'correspondence'
    default_samples = 50
    block = 10

    def resolve_field(self, token):
        field = FieldSpec.parse(token)
        if not field.is_finite or field.n != 1 or field.p == 2:
            raise UnsupportedField(f"The group correspondence needs GF(p) for an odd prime p, got {field}")
        return field

    def size(self, options) -> int:
        return options.get('m') or 2

    def shards(self, field, options):
        m = self.size(options)
        if m <= 2:
            return [f"dim{d}" for d in range(pair_count(m + 1) + 1)]
        return ['examples'] + [f"sample{k}" for k in range(ceil(self.samples(options) / self.block))]

    def subgroups(self, field, shard, options):
        p, m = field.p, self.size(options)
        P = pair_count(m + 1)
        if shard.startswith('dim'):
            for S in enumerate_subspaces(field, P, int(shard[3:])):
                yield CentralSubgroup(p, m, S)
        elif shard == 'examples':
            yield CentralSubgroup.trivial(p, m)
            yield CentralSubgroup.span(p, m, [[1] + [0] * (P - 2) + [1]])
        else:
            k = int(shard[6:])
            rng = _rng(options, k)
            for _ in range(min(self.block, self.samples(options) - self.block * k)):
                yield CentralSubgroup(p, m, _random_subspace(field, P, int(rng.integers(0, P + 1)), rng))

    def run_shard(self, field, shard, options):
        result = ShardResult(shard)
        for N in self.subgroups(field, shard, options):
            self.guarded(result, repr(N), lambda: self.check(field, N, result, options))
        return result

    def check(self, field, N, result, options):
        outcome = verify_correspondence(field.p, N.m, N, budget=options.get('budget'))
        result.tally(f"conjugate_type.{outcome.conjugate}")
        result.tally(f"breadth_type.{outcome.breadth}")
        if outcome.ok:
            return []
        return [f"conjugate type {outcome.conjugate} but breadth type {outcome.breadth}"]


# rational-camina

@CAMPAIGNS.register('rational-camina')
class RationalCaminaCampaign(Campaign):
    """
    The rational quaternion family, the three-dimensional ideal that is
    bracket-free over Q but not over a finite field, and the theorem families
    over Q. The finite comparison field is --field when it is finite, else GF(3).
    """
    key = 'rational-camina'
    default_samples = 100

    def shards(self, field, options):
        return ['quaternion', 'ideal', 'families']

    def run_shard(self, field, shard, options):
        result = ShardResult(shard)
        check = {'quaternion': self.quaternion, 'ideal': self.ideal, 'families': self.families}[shard]
        self.guarded(result, shard, lambda: check(field, result, options))
        return result

    def quaternion(self, field, result, options):
        samples = self.samples(options)
        rational_quaternion_family(samples=samples, seed=options.get('seed'))
        result.tally('quaternion.points', 125 + samples)
        if quaternion_det(1, 1, 1) != 9:
            return ['det(X1 + X2 + X3) is not 9']
        return []

    def ideal(self, field, result, options):
        Q = FieldSpec.rational()
        finite = field if field.is_finite else GF3
        problems = []
        over_q = bracket_free(CentralIdeal.from_terms(Q, 4, RATIONAL_CAMINA_IDEAL))
        result.extra['rational'] = over_q.to_json()
        if not over_q:
            problems.append(f"not bracket-free over Q: {over_q.witness!r}")
        I = CentralIdeal.from_terms(finite, 4, RATIONAL_CAMINA_IDEAL)
        over_f = bracket_free(I)
        result.extra['finite'] = dict(over_f.to_json(), field=finite.token)
        if over_f:
            problems.append(f"bracket-free over {finite}")
        elif not (is_decomposable(over_f.witness) and I.contains(over_f.witness)):
            problems.append(f"witness {over_f.witness!r} over {finite} does not verify")
        L = free_quotient(Q, 3, CentralIdeal.from_terms(Q, 4, RATIONAL_CAMINA_IDEAL).subspace)
        if not camina_via_structure_matrices(L):
            problems.append('the rational quotient is not Camina by structure matrices')
        return problems

    def families(self, field, result, options):
        problems = []
        for tag, L in theorem_families(FieldSpec.rational()):
            family = classify_4gen_2step(L).family
            result.tally(f"family.{tag}")
            if family != tag:
                problems.append(f"{L!r} classified as {family}, expected {tag}")
        return problems
