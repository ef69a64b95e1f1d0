import numpy as np
from django.test import SimpleTestCase, tag
from hypothesis import given, settings, strategies as st
from rest_framework.exceptions import ValidationError

from core.exceptions import (
    AlgebraAxiomError,
    BudgetExceeded,
    NoExtensionTable,
    NotCentralIdeal,
    NotNilpotent,
    UnknownTheorem,
    Unsupported,
)
from fields.spec import FieldSpec
from linalg.subspace import Subspace
from .algebra import ANTISYMMETRY, JACOBI, LieAlgebra
from .constructions import (
    build_family,
    camina_quotient,
    five_dim_three_step,
    free_quotient,
    free_two_step,
    heisenberg,
    heisenberg_degree,
    is_irreducible,
    non_nilpotent_camina,
    quotient_by_central_ideal,
    sl2,
    theorem_families,
)
from .invariants import breadth_of_algebra, breadth_three_cases, breadth_type_bounds
from .serializer import LieAlgebraSerializer

GF2 = FieldSpec.parse('gf2')
GF3 = FieldSpec.parse('gf3')
GF4 = FieldSpec.parse('gf4')
GF5 = FieldSpec.parse('gf5')
QQ = FieldSpec.rational()

E1234 = {'e12': 1, 'e34': 1}


class ValidateTests(SimpleTestCase):
    def test_examples(self):
        self.assertTrue(heisenberg(1, GF3).validate())
        self.assertTrue(sl2(GF5).validate())

        sc = GF3.zeros((2, 2, 2))
        sc[0, 1, 0] = 1
        sc[1, 0, 0] = 1
        report = LieAlgebra(GF3, sc, validate=False).validate()
        self.assertFalse(report)
        self.assertEqual(report.kind, ANTISYMMETRY)
        self.assertEqual(report.indices, (1, 2))
        with self.assertRaises(AlgebraAxiomError):
            LieAlgebra(GF3, sc)

    def test_jacobi_violation(self):
        # [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e1 breaks Jacobi over GF(5)
        sc = GF5.zeros((3, 3, 3))
        for (i, j), k in (((0, 1), 2), ((1, 2), 0), ((0, 2), 0)):
            sc[i, j, k] = 1
            sc[j, i, k] = GF5.neg(1)
        report = LieAlgebra(GF5, sc, validate=False).validate()
        self.assertEqual(report.kind, JACOBI)
        self.assertEqual(report.indices, (1, 2, 3))

    def test_every_family_validates(self):
        for field in (GF2, GF3, GF5):
            algebras = [free_two_step(3, field), heisenberg(2, field), heisenberg_degree(2, field),
                        five_dim_three_step(field), sl2(field), non_nilpotent_camina(field)]
            algebras += [alg for _, alg in theorem_families(field)]
            for L in algebras:
                with self.subTest(field=str(field), algebra=L.name):
                    self.assertTrue(L.validate())


class BracketTests(SimpleTestCase):
    def test_heisenberg_bracket(self):
        H = heisenberg(1, GF3)
        x1, y1, z = (H.basis_element(label) for label in ('x1', 'y1', 'z'))
        self.assertEqual(H.bracket(x1, y1), z)
        self.assertTrue(H.bracket(x1, x1).is_zero())
        self.assertEqual(H.bracket(y1, x1), -z)

    def test_sl2_ad(self):
        L = sl2(GF5)
        h = L.basis_element('h')
        self.assertEqual(L.ad_matrix(h).rank(), 2)
        e = L.basis_element('e')
        self.assertEqual(L.bracket(h, e), 2 * e)
        # columns of ad_x are [x, e_j]
        ad = L.ad_matrix(h).data
        self.assertEqual(ad[:, 0].tolist(), L.bracket(h.coords, L.basis_vector(0)).tolist())

    def test_coset_invariance(self):
        rng = np.random.default_rng(1)
        for L in (five_dim_three_step(GF3), free_two_step(2, GF3), heisenberg_degree(2, GF3)):
            Z = L.center()
            for _ in range(50):
                x = L.field.random(rng, L.dim)
                z = Z.random_element(rng)
                with self.subTest(algebra=L.name):
                    self.assertEqual(L.ad_matrix(L.field.add(x, z)), L.ad_matrix(x))


class StructureTests(SimpleTestCase):
    def test_free_two_step(self):
        L3 = free_two_step(3, GF3)
        self.assertEqual(L3.dim, 10)
        self.assertEqual(L3.derived().dim, 6)
        self.assertEqual(L3.center(), L3.derived())
        self.assertTrue(L3.is_stem())
        for m in range(1, 5):
            self.assertEqual(free_two_step(m, GF3).dim, (m + 1) * (m + 2) // 2)

    def test_abelian(self):
        A = LieAlgebra.abelian(GF3, 4)
        self.assertEqual(A.nilpotency_class(), 1)
        self.assertEqual(A.center(), A.full())
        self.assertFalse(A.is_stem())

    def test_five_dim_class_three(self):
        for field in (GF3, GF2):
            L = five_dim_three_step(field)
            self.assertEqual(L.nilpotency_class(), 3)
            self.assertEqual([S.dim for S in L.lower_central_series()], [5, 3, 2, 0])

    def test_not_nilpotent(self):
        with self.assertRaises(NotNilpotent):
            sl2(GF5).nilpotency_class()
        with self.assertRaises(NotNilpotent):
            non_nilpotent_camina(GF3).nilpotency_class()

    def test_breadth_and_centralizer(self):
        H = heisenberg(1, GF3)
        self.assertEqual(H.breadth(H.basis_element('x1')), 1)
        self.assertEqual(H.breadth(H.basis_element('z')), 0)

        L3 = free_two_step(3, GF3)
        x1 = L3.basis_vector(0)
        self.assertEqual(L3.breadth(x1), 3)
        expected = Subspace.span(GF3, L3.dim, x1).sum(L3.center())
        self.assertEqual(L3.centralizer(x1), expected)
        self.assertEqual(L3.breadth(x1), L3.dim - L3.centralizer(x1).dim)

    def test_heisenberg_structure(self):
        H = heisenberg(2, GF3)
        self.assertEqual(H.dim, 5)
        self.assertEqual(H.center().dim, 1)

    def test_central_bracket_lemma(self):
        rng = np.random.default_rng(42)
        checked = 0
        for field in (GF3, GF5, FieldSpec.parse('gf7')):
            L = five_dim_three_step(field)
            self.assertEqual(L.nilpotency_class(), 3)
            x1, x2 = L.basis_vector(0), L.basis_vector(1)
            self.assertTrue(np.any(L.bracket(L.bracket(x1, x2), x1) != 0))
            Z = L.center()
            Zperp = Z.annihilator().basis
            for _ in range(500):
                z = field.random(rng, L.dim)
                # {w : [z, w] ∈ Z}
                W = Subspace.kernel_of(field, field.matmul(Zperp, L.ad_matrix(z).data))
                for _ in range(7):
                    x, y = W.random_element(rng), W.random_element(rng)
                    self.assertTrue(Z.member(L.bracket(x, z)) and Z.member(L.bracket(y, z)))
                    self.assertFalse(np.any(L.bracket(L.bracket(x, y), z) != 0))
                    checked += 1
        self.assertGreaterEqual(checked, 10 ** 4)


class BreadthTypeTests(SimpleTestCase):
    def test_free_two_step_families(self):
        for m in range(1, 5):
            bt = free_two_step(m, GF3).breadth_type()
            with self.subTest(m=m):
                self.assertTrue(bt.exact)
                self.assertEqual(bt.breadths, (0, m))

    def test_heisenberg_families(self):
        for field in (GF3, GF5):
            for m in range(1, 4):
                with self.subTest(field=str(field), m=m):
                    self.assertEqual(heisenberg(m, field).breadth_type(mode='exact', budget=5 ** 6).breadths, (0, 1))

    @tag('slow')
    def test_heisenberg_four(self):
        for field in (GF3, GF5):
            self.assertEqual(heisenberg(4, field).breadth_type(mode='exact', budget=5 ** 8).breadths, (0, 1))

    def test_degree_m_heisenberg(self):
        for m in range(1, 4):
            h = heisenberg_degree(m, GF3)
            with self.subTest(m=m):
                self.assertEqual(h.dim, 3 * m)
                self.assertEqual(h.center(), h.derived())
                self.assertEqual(h.breadth_type().breadths, (0, m))

    def test_named_examples(self):
        self.assertEqual(sl2(GF5).breadth_type().breadths, (0, 2))
        self.assertEqual(five_dim_three_step(GF3).breadth_type().breadths, (0, 2))
        self.assertEqual(free_two_step(2, GF3).breadth_type().breadths, (0, 2))
        self.assertEqual(LieAlgebra.abelian(GF3, 3).breadth_type().breadths, (0,))
        self.assertEqual(LieAlgebra.abelian(GF3, 0).breadth_type().breadths, (0,))

    def test_direct_sum_keeps_breadth_type(self):
        H = heisenberg(1, GF3)
        self.assertIs(H.direct_sum_abelian(0), H)
        self.assertEqual(H.direct_sum_abelian(1).breadth_type().breadths, (0, 1))
        big = free_two_step(3, GF3).direct_sum_abelian(2)
        self.assertEqual(big.dim, 12)
        self.assertEqual(big.breadth_type().breadths, (0, 3))
        for L in (sl2(GF5), five_dim_three_step(GF2), heisenberg_degree(2, GF3)):
            for d in range(4):
                with self.subTest(algebra=L.name, d=d):
                    self.assertEqual(L.direct_sum_abelian(d).breadth_type().breadths, L.breadth_type().breadths)

    def test_sampling_over_rationals(self):
        L = free_two_step(2, QQ)
        bt = L.breadth_type(samples=300, seed=9)
        self.assertFalse(bt.exact)
        self.assertEqual(bt.seed, 9)
        self.assertEqual(bt.upper_bound, 2)
        self.assertEqual(bt.breadths, (0, 2))
        self.assertIn('observed', str(bt))
        self.assertEqual(L.breadth_type(samples=300, seed=9), bt)
        with self.assertRaises(Unsupported):
            L.breadth_type(mode='exact')

    def test_budget(self):
        with self.assertRaises(BudgetExceeded):
            free_two_step(4, GF3).breadth_type(mode='exact', budget=10)
        sampled = free_two_step(4, GF3).breadth_type(budget=10, samples=200, seed=1)
        self.assertFalse(sampled.exact)
        self.assertLessEqual(sampled.max, sampled.upper_bound)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=3))
    def test_breadth_type_bounded(self, m, d):
        L = free_two_step(m, GF2).direct_sum_abelian(d)
        bt = L.breadth_type()
        self.assertLessEqual(bt.max, L.breadth_upper_bound())


class QuotientTests(SimpleTestCase):
    def test_bracket_free_line(self):
        Q = free_quotient(GF3, 3, [E1234])
        self.assertEqual(Q.dim, 9)
        self.assertEqual(Q.breadth_type().breadths, (0, 3))

    def test_line_containing_a_bracket(self):
        Q = free_quotient(GF3, 3, [{'e12': 1}])
        self.assertLess(Q.breadth(Q.basis_vector(0)), 3)

    def test_quotient_by_centre_is_abelian(self):
        L3 = free_two_step(3, GF3)
        Q = quotient_by_central_ideal(L3, L3.center())
        self.assertEqual(Q.dim, 4)
        self.assertTrue(Q.is_abelian())

    def test_derived_drops_by_ideal_dimension(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            I = Subspace.span(GF3, 6, GF3.random(rng, (int(rng.integers(0, 4)), 6)))
            Q = free_quotient(GF3, 3, I)
            self.assertEqual(Q.derived().dim, 6 - I.dim)

    def test_not_central(self):
        L3 = free_two_step(3, GF3)
        with self.assertRaises(NotCentralIdeal):
            quotient_by_central_ideal(L3, Subspace.span(GF3, 10, L3.basis_vector(0)))

    def test_strip_abelian_summands(self):
        Q = free_quotient(GF3, 3, [E1234])
        padded = Q.direct_sum_abelian(2)
        stem = padded.strip_abelian_summands()
        self.assertEqual(stem.dim, Q.dim)
        self.assertTrue(stem.is_stem())
        self.assertIs(Q.strip_abelian_summands(), Q)

    def test_camina_quotients(self):
        for l in range(3):
            with self.subTest(l=l):
                self.assertEqual(camina_quotient(3, l, GF3).breadth_type().breadths, (0, 3 - l))


class ConstructionTests(SimpleTestCase):
    def test_degree_one_is_heisenberg(self):
        self.assertEqual(heisenberg_degree(1, GF3), heisenberg(1, GF3))

    def test_user_modulus(self):
        # w^2 + 1 is irreducible over GF(3)
        h = heisenberg_degree(2, GF3, modulus=[1, 0, 1])
        self.assertEqual(h.breadth_type().breadths, (0, 2))
        with self.assertRaises(NoExtensionTable):
            heisenberg_degree(2, GF3, modulus=[2, 0, 1])
        with self.assertRaises(NoExtensionTable):
            heisenberg_degree(2, QQ)
        # over Q the modulus is user supplied
        self.assertEqual(heisenberg_degree(2, QQ, modulus=[1, 0, 1]).center().dim, 2)

    def test_irreducibility(self):
        self.assertTrue(is_irreducible(GF2, [1, 1, 1]))
        self.assertFalse(is_irreducible(GF2, [1, 0, 1]))
        self.assertTrue(is_irreducible(QQ, [-2, 0, 0, 1]))
        self.assertFalse(is_irreducible(QQ, [-8, 0, 0, 1]))

    def test_theorem_families(self):
        tags = {tag: L for tag, L in theorem_families(GF3)}
        self.assertEqual(list(tags), ['(i)', '(ii)', '(iii)', '(iv)'])
        self.assertIn('e13+(2)e24', tags['(iv)'].name)
        for tag_, L in tags.items():
            with self.subTest(tag=tag_):
                self.assertTrue(L.is_stem())
                self.assertEqual(L.breadth_type().breadths, (0, 3))

        even = dict(theorem_families(GF2))
        self.assertEqual(list(even), ['(ii)', '(iii)', '(iv)'])
        self.assertIn('(1)e13', even['(iv)'].name)
        self.assertEqual(even['(iv)'].breadth_type().breadths, (0, 3))

    def test_rational_families(self):
        tags = dict(theorem_families(QQ))
        self.assertEqual(list(tags), ['(i)', '(ii)', '(iii)', '(iv)'])
        self.assertEqual(tags['(i)'].dim, 7)
        for tag_, L in tags.items():
            bt = L.breadth_type(samples=200, seed=0)
            with self.subTest(tag=tag_):
                self.assertEqual(bt.max, 3)
                self.assertTrue(set(bt.breadths) <= {0, 3})

    def test_registry(self):
        self.assertEqual(build_family('L3', GF3), free_two_step(3, GF3))
        self.assertEqual(build_family('H2', GF5), heisenberg(2, GF5))
        self.assertEqual(build_family('sl2', GF5), sl2(GF5))
        self.assertEqual(build_family('theorem:iv', GF3), theorem_families(GF3)[3][1])
        with self.assertRaises(UnknownTheorem):
            build_family('nonsense', GF3)
        with self.assertRaises(UnknownTheorem):
            build_family('theorem:i', GF2)


class InvariantTests(SimpleTestCase):
    def test_breadth_of_algebra(self):
        self.assertEqual(breadth_of_algebra(sl2(GF5)), 2)
        self.assertEqual(breadth_of_algebra(free_two_step(3, GF3)), 3)

    def test_bounds_hold_on_families(self):
        algebras = [five_dim_three_step(GF3), heisenberg(2, GF3), free_two_step(2, GF3)]
        algebras += [L for _, L in theorem_families(GF3)]
        for L in algebras:
            report = breadth_type_bounds(L, L.breadth_type())
            with self.subTest(algebra=L.name):
                self.assertTrue(report.ok, report.failed())

    def test_breadth_three_cases(self):
        for tag_, L in theorem_families(GF3):
            cases = breadth_three_cases(L)
            with self.subTest(tag=tag_):
                self.assertTrue(cases & {'a', 'b'})
        self.assertEqual(breadth_three_cases(heisenberg_degree(3, GF3)), {'a'})
        self.assertIn('b', breadth_three_cases(free_two_step(3, GF3)))


class SerializerTests(SimpleTestCase):
    def test_load(self):
        data = {
            'field': {'kind': 'finite', 'p': 3},
            'dim': 3,
            'brackets': [[1, 2, [[3, 1]]]],
        }
        H = LieAlgebraSerializer.load(data)
        self.assertEqual(H, heisenberg(1, GF3))

    def test_exported_families_load_back(self):
        for L in (sl2(GF5), free_quotient(GF3, 3, [E1234]), heisenberg_degree(2, GF4), five_dim_three_step(QQ)):
            with self.subTest(algebra=L.name):
                self.assertEqual(LieAlgebraSerializer.load(L.to_json()), L)

    def test_negative_coefficients_embed(self):
        data = {'field': {'kind': 'finite', 'p': 5}, 'dim': 3,
                'brackets': [[1, 2, [[1, -2]]], [2, 3, [[3, -2]]], [1, 3, [[2, 1]]]]}
        self.assertEqual(LieAlgebraSerializer.load(data), sl2(GF5))

    def test_rejects(self):
        base = {'field': {'kind': 'finite', 'p': 3}, 'dim': 2}
        for brackets in ([[2, 1, [[1, 1]]]], [[1, 2, [[3, 1]]]], [[1, 2, [[1, 7]]]],
                         [[1, 2, [[1, 1]]], [1, 2, [[2, 1]]]]):
            with self.subTest(brackets=brackets):
                with self.assertRaises(ValidationError):
                    LieAlgebraSerializer.load({**base, 'brackets': brackets})
        jacobi = {'field': {'kind': 'finite', 'p': 5}, 'dim': 3,
                  'brackets': [[1, 2, [[3, 1]]], [2, 3, [[1, 1]]], [1, 3, [[1, 1]]]]}
        with self.assertRaises(ValidationError):
            LieAlgebraSerializer.load(jacobi)
