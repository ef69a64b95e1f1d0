from unittest import mock

import numpy as np
from django.test import SimpleTestCase, tag
from hypothesis import assume, given, settings, strategies as st

from bivectors.bivector import Bivector, pair_count, skew_rank, to_skew
from bivectors.ideals import CentralIdeal, bracket_free, iter_ideals
from core.exceptions import (
    CharacteristicTwo,
    NotClassTwo,
    NotFourGenerated,
    OddCharacteristic,
    SingularLinearPart,
    WrongDimension,
)
from fields.spec import FieldSpec, is_square, least_trace_one, quadratic_irreducible
from lie.algebra import LieAlgebra
from lie.constructions import (
    NOT_BREADTH_TYPE,
    five_dim_three_step,
    free_quotient,
    free_two_step,
    heisenberg,
    sl2,
    theorem_families,
)
from linalg.matrix import det_array
from .classify import classify_4gen_2step, generator_ideal
from .maps import GeneratorMap, apply_generator_map, canonical_bivector, darboux, push_ideal, standard_form
from .reduce import (
    DIM_ONE,
    J1_SHAPE,
    J2_SHAPE,
    FamilyTag,
    ideal_shape,
    reduce_dim1,
    reduce_dim2,
    reduce_dim2_even,
    reduce_dim2_odd,
)

GF2 = FieldSpec.parse('gf2')
GF3 = FieldSpec.parse('gf3')
GF4 = FieldSpec.parse('gf4')
GF5 = FieldSpec.parse('gf5')
QQ = FieldSpec.rational()

E1234 = {'e12': 1, 'e34': 1}


def random_map(field, g, seed, central=False):
    rng = np.random.default_rng(seed)
    while True:
        A = field.random(rng, (g, g))
        if det_array(field, A) != field.zero:
            break
    h = field.random(rng, (g, pair_count(g))) if central else None
    return GeneratorMap(field, A, h)


def odd_canonical(field, t):
    return CentralIdeal.from_terms(field, 4, [E1234, {'e13': 1, 'e24': t}])


def even_canonical(field):
    z = least_trace_one(field)
    return CentralIdeal.from_terms(field, 4, [E1234, {'e13': z, 'e24': 1, 'e34': 1}])


class GeneratorMapTests(SimpleTestCase):
    def test_identity(self):
        I = CentralIdeal.from_terms(GF3, 4, [E1234, {'e13': 1}])
        self.assertEqual(push_ideal(GeneratorMap.identity(GF3, 4), I), I)

    def test_swap(self):
        phi = GeneratorMap.permutation(GF3, (2, 1, 0, 3))
        b = Bivector.from_terms(GF3, 4, {'e12': 1})
        self.assertEqual(apply_generator_map(phi, b), Bivector.from_terms(GF3, 4, {'e23': -1}))

    def test_singular(self):
        with self.assertRaises(SingularLinearPart):
            GeneratorMap(GF3, GF3.zeros((4, 4)))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2 ** 32), st.integers(0, 2 ** 32))
    def test_skew_rank_is_invariant(self, map_seed, vector_seed):
        rng = np.random.default_rng(vector_seed)
        b = Bivector(GF3, 5, GF3.random(rng, 10))
        phi = random_map(GF3, 5, map_seed)
        self.assertEqual(skew_rank(apply_generator_map(phi, b)), skew_rank(b))

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 2 ** 32))
    def test_matrix_is_automorphism(self, seed):
        L = free_two_step(3, GF3)
        M = random_map(GF3, 4, seed, central=True).matrix().data
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                lhs = GF3.matmul(M, L.bracket(L.basis_vector(i), L.basis_vector(j))[:, None])[:, 0]
                rhs = L.bracket(M[:, i], M[:, j])
                self.assertTrue(np.array_equal(lhs, rhs))

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 2 ** 32), st.integers(0, 2 ** 32))
    def test_compose_matches_matrices(self, s1, s2):
        phi = random_map(GF5, 4, s1, central=True)
        psi = random_map(GF5, 4, s2, central=True)
        self.assertEqual(phi.compose(psi).matrix(), phi.matrix() @ psi.matrix())

    def test_darboux(self):
        rng = np.random.default_rng(3)
        for field in (GF2, GF3, GF5):
            for _ in range(50):
                b = Bivector(field, 6, field.random(rng, 15))
                M = to_skew(b).data
                A, r = darboux(field, M)
                self.assertEqual(2 * r, skew_rank(b))
                expected = standard_form(field, 6, r)
                self.assertTrue(np.array_equal(field.matmul(field.matmul(A, M), A.T), expected))


class DimOneTests(SimpleTestCase):
    def test_examples(self):
        result = reduce_dim1(CentralIdeal.from_terms(GF3, 4, [{'e13': 1, 'e24': 1}]))
        self.assertEqual(result.tag, FamilyTag(DIM_ONE, 2))
        self.assertEqual(str(result.tag), 'DimOne(r=2)')
        self.assertEqual(result.canonical_ideal, CentralIdeal.from_terms(GF3, 4, [E1234]))

        result = reduce_dim1(CentralIdeal.from_terms(GF3, 4, [{'e12': 1}]))
        self.assertFalse(result.tag.breadth_type)
        self.assertEqual(str(result.tag), 'NotBreadthType')
        self.assertEqual(result.witness, Bivector.from_terms(GF3, 4, {'e12': 1}))

        canonical = CentralIdeal.from_terms(QQ, 4, [E1234])
        result = reduce_dim1(canonical)
        self.assertEqual(result.canonical_ideal, canonical)

        result = reduce_dim1(CentralIdeal.from_terms(QQ, 6, [{'e13': 2, 'e24': 1, 'e56': '1/3'}]))
        self.assertEqual(str(result.tag), 'DimOne(r=3)')

    def test_agrees_with_bracket_free(self):
        for field, g in ((GF2, 4), (GF3, 4), (GF2, 5)):
            with self.subTest(field=str(field), g=g):
                for I in iter_ideals(field, g, 1):
                    self.assertEqual(reduce_dim1(I).tag.breadth_type, bracket_free(I).free)

    def test_distinct_ranks_stay_apart(self):
        # the skew rank of the generator separates the normal forms for m <= 5
        for field in (GF2, GF3):
            for g in (4, 5, 6):
                for r in range(2, g // 2 + 1):
                    b = canonical_bivector(field, g, r)
                    for seed in range(5):
                        moved = push_ideal(random_map(field, g, seed), CentralIdeal.span(field, g, b.coords))
                        with self.subTest(field=str(field), g=g, r=r, seed=seed):
                            self.assertEqual(reduce_dim1(moved).tag, FamilyTag(DIM_ONE, r))

    def test_wrong_dimension(self):
        with self.assertRaises(WrongDimension):
            reduce_dim1(CentralIdeal.from_terms(GF3, 4, [E1234, {'e13': 1}]))


class DimTwoOddTests(SimpleTestCase):
    def test_canonical_is_fixed(self):
        J = odd_canonical(GF5, 2)
        result = reduce_dim2(J)
        self.assertEqual(str(result.tag), 'DimTwoOdd(t=2)')
        self.assertEqual(result.canonical_ideal, J)
        self.assertEqual(result.shape, J2_SHAPE)

    def test_not_breadth_type(self):
        result = reduce_dim2(odd_canonical(GF5, 1))
        self.assertFalse(result.tag.breadth_type)
        self.assertTrue(result.canonical_ideal.contains(Bivector.from_terms(GF5, 4, {'e12': 1})))

        J = CentralIdeal.from_terms(GF3, 4, [{'e12': 1}, {'e34': 1}])
        self.assertEqual(ideal_shape(J), (J1_SHAPE, None))
        result = reduce_dim2(J)
        self.assertEqual(result.shape, J1_SHAPE)
        self.assertFalse(result.tag.breadth_type)

    def test_rational(self):
        result = reduce_dim2(odd_canonical(QQ, -1))
        self.assertEqual(str(result.tag), 'DimTwoOdd(t=-1)')
        result = reduce_dim2(odd_canonical(QQ, -2))
        self.assertEqual(str(result.tag), 'DimTwoOdd(t=-2)')
        self.assertFalse(reduce_dim2(odd_canonical(QQ, 1)).tag.breadth_type)
        # square classes: pf(e13 - 4e24) = 4, pf(2e13 - e24) = 2
        self.assertEqual(reduce_dim2(odd_canonical(QQ, -4)).canonical_ideal, odd_canonical(QQ, -1))
        J = CentralIdeal.from_terms(QQ, 4, [E1234, {'e13': 2, 'e24': -1}])
        self.assertEqual(reduce_dim2(J).canonical_ideal, odd_canonical(QQ, -2))

    @settings(max_examples=20, deadline=None)
    @given(st.lists(st.integers(-3, 3), min_size=16, max_size=16))
    def test_rational_orbit(self, entries):
        A = QQ.array(np.array(entries).reshape(4, 4).tolist())
        assume(det_array(QQ, A) != 0)
        J = push_ideal(GeneratorMap(QQ, A), odd_canonical(QQ, -1))
        result = reduce_dim2(J)
        self.assertEqual(result.canonical_ideal, odd_canonical(QQ, -1))

    @settings(max_examples=20, deadline=None)
    @given(st.sampled_from([(GF3, 2), (GF5, 2)]), st.integers(0, 2 ** 32))
    def test_finite_orbit(self, case, seed):
        field, t = case
        J = push_ideal(random_map(field, 4, seed), odd_canonical(field, t))
        result = reduce_dim2(J)
        self.assertEqual(result.canonical_ideal, odd_canonical(field, t))
        self.assertEqual(push_ideal(result.applied, J), result.canonical_ideal)

    def test_discriminant_decides(self):
        for alpha in GF5.iter_elements():
            for beta in GF5.iter_elements():
                J = CentralIdeal.from_terms(GF5, 4, [E1234, {'e13': 1, 'e24': alpha, 'e34': beta}])
                with mock.patch('bivectors.ideals.bracket_free', side_effect=AssertionError):
                    result = reduce_dim2_odd(J)
                with self.subTest(alpha=str(alpha), beta=str(beta)):
                    self.assertEqual((result.stage.alpha, result.stage.beta), (alpha, beta))
                    self.assertEqual(result.tag.breadth_type, not is_square(beta * beta + 4 * alpha))
                    self.assertEqual(result.tag.breadth_type, bracket_free(J).free)
                    if not result.tag.breadth_type:
                        self.assertTrue(J.contains(result.witness))
                        self.assertEqual(skew_rank(result.witness), 2)

    def test_witness_from_root(self):
        # α = 1, β = 0: t² = 1, so E + F is a bracket
        result = reduce_dim2_odd(odd_canonical(GF5, 1))
        self.assertEqual(result.witness, Bivector.from_terms(GF5, 4, {'e12': 1, 'e13': 1, 'e24': 1, 'e34': 1}))
        self.assertEqual(result.to_json()['stage'], {'alpha': 1, 'beta': 0})

    def test_moved_stage(self):
        J = push_ideal(random_map(GF5, 4, 7), CentralIdeal.from_terms(GF5, 4, [E1234, {'e13': 1, 'e24': 3, 'e34': 1}]))
        result = reduce_dim2_odd(J)
        disc = result.stage.beta * result.stage.beta + 4 * result.stage.alpha
        # 1 + 12 = 3 is a non-square mod 5, and square classes survive the move
        self.assertFalse(is_square(disc))
        self.assertEqual(result.canonical_ideal, odd_canonical(GF5, 2))

    @tag('slow')
    def test_exhaustive_gf3(self):
        canonical = odd_canonical(GF3, 2)
        for J in iter_ideals(GF3, 4, 2):
            result = reduce_dim2(J)
            free = bracket_free(J).free
            self.assertEqual(result.tag.breadth_type, free)
            if free:
                self.assertEqual(result.canonical_ideal, canonical)

    def test_errors(self):
        with self.assertRaises(CharacteristicTwo):
            reduce_dim2_odd(even_canonical(GF2))
        with self.assertRaises(WrongDimension):
            reduce_dim2(CentralIdeal.from_terms(GF3, 5, [E1234, {'e15': 1}]))
        with self.assertRaises(WrongDimension):
            reduce_dim2(CentralIdeal.from_terms(GF3, 4, [E1234]))


class DimTwoEvenTests(SimpleTestCase):
    def test_canonical_is_fixed(self):
        J = even_canonical(GF2)
        result = reduce_dim2(J)
        self.assertEqual(str(result.tag), 'DimTwoEven(r=1)')
        self.assertEqual(result.canonical_ideal, J)

    def test_not_breadth_type(self):
        # e12 + e34 + e13 + e24 = (x1 + x4) ∧ (x2 + x3)
        result = reduce_dim2(CentralIdeal.from_terms(GF2, 4, [E1234, {'e13': 1, 'e24': 1}]))
        self.assertFalse(result.tag.breadth_type)
        self.assertEqual(result.witness, Bivector.from_terms(GF2, 4, {'e12': 1, 'e13': 1, 'e24': 1, 'e34': 1}))

    def test_trace_criterion_decides(self):
        one = GF4(1)
        for alpha in GF4.iter_elements():
            for beta in GF4.iter_elements():
                J = CentralIdeal.from_terms(GF4, 4, [E1234, {'e13': 1, 'e24': alpha, 'e34': beta}])
                with mock.patch('bivectors.ideals.bracket_free', side_effect=AssertionError):
                    result = reduce_dim2_even(J)
                expected = bool(alpha) and quadratic_irreducible(alpha, beta, one)
                with self.subTest(alpha=str(alpha), beta=str(beta)):
                    self.assertEqual(result.tag.breadth_type, expected)
                    self.assertEqual(result.tag.breadth_type, bracket_free(J).free)
                    if expected:
                        self.assertEqual(result.canonical_ideal, even_canonical(GF4))
                    else:
                        self.assertTrue(J.contains(result.witness))

    def test_exhaustive_gf2(self):
        canonical = even_canonical(GF2)
        free_count = 0
        for J in iter_ideals(GF2, 4, 2):
            result = reduce_dim2(J)
            free = bracket_free(J).free
            self.assertEqual(result.tag.breadth_type, free)
            if free:
                free_count += 1
                self.assertEqual(result.canonical_ideal, canonical)
        self.assertGreater(free_count, 0)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2 ** 32))
    def test_gf4_orbit(self, seed):
        J = push_ideal(random_map(GF4, 4, seed), even_canonical(GF4))
        result = reduce_dim2(J)
        self.assertEqual(result.canonical_ideal, even_canonical(GF4))

    def test_errors(self):
        with self.assertRaises(OddCharacteristic):
            reduce_dim2_even(odd_canonical(GF3, 2))


class ClassifyTests(SimpleTestCase):
    def test_theorem_families(self):
        labels = {GF3: 'DimTwoOdd(t=2)', GF2: 'DimTwoEven(r=1)', QQ: 'DimTwoOdd(t=-1)'}
        for field in (GF3, GF2, QQ):
            for family, L in theorem_families(field):
                with self.subTest(field=str(field), family=family):
                    result = classify_4gen_2step(L)
                    self.assertEqual(result.family, family)
                    self.assertTrue(result.breadth_type)
                    if family == '(iii)':
                        self.assertEqual(str(result.normal_form.tag), 'DimOne(r=2)')
                    if family == '(iv)':
                        self.assertEqual(str(result.normal_form.tag), labels[field])

    def test_generator_ideal(self):
        I = CentralIdeal.from_terms(GF3, 4, [E1234, {'e13': 1, 'e24': 2}])
        self.assertEqual(generator_ideal(free_quotient(GF3, 3, I.subspace)), I)

    def test_abelian_summand(self):
        L = free_quotient(GF3, 3, [E1234]).direct_sum_abelian(2)
        result = classify_4gen_2step(L)
        self.assertEqual(result.family, '(iii)')
        self.assertEqual(result.abelian_summand, 2)
        data = result.to_json()
        self.assertEqual(data['family'], '(iii)')
        self.assertIn('automorphism', data)
        self.assertIn('canonical_ideal', data)

    def test_not_breadth_type(self):
        self.assertEqual(classify_4gen_2step(free_quotient(GF3, 3, [{'e12': 1}])).family, NOT_BREADTH_TYPE)
        L = free_quotient(GF3, 3, [{'e12': 1}, {'e34': 1}, {'e13': 1}])
        result = classify_4gen_2step(L)
        self.assertEqual(result.family, NOT_BREADTH_TYPE)
        self.assertFalse(result.camina)
        self.assertEqual(classify_4gen_2step(heisenberg(2, GF3)).family, NOT_BREADTH_TYPE)

    def test_errors(self):
        for L in (heisenberg(1, GF3), free_two_step(2, GF3)):
            with self.assertRaises(NotFourGenerated):
                classify_4gen_2step(L)
        for L in (five_dim_three_step(GF3), LieAlgebra.abelian(GF3, 3), sl2(GF5)):
            with self.assertRaises(NotClassTwo):
                classify_4gen_2step(L)
