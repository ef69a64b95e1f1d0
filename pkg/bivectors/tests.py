import numpy as np
from django.test import SimpleTestCase, tag
from rest_framework.exceptions import ValidationError

from core.exceptions import NotSkewSymmetric, Undetermined
from fields.spec import FieldSpec
from lie.constructions import RATIONAL_CAMINA_IDEAL
from linalg.matrix import Matrix
from linalg.subspace import all_vectors, gaussian_binomial
from .bivector import (
    Bivector,
    factor_decomposable,
    from_skew,
    is_decomposable,
    skew_ranks,
    to_skew,
    wedge,
)
from .ideals import (
    BINARY_FORM,
    DEFINITE,
    DEGENERATE,
    CentralIdeal,
    bracket_free,
    breadth_type_of_quotient,
    iter_ideals,
)
from .serializer import CentralIdealSerializer

GF2 = FieldSpec.parse('gf2')
GF3 = FieldSpec.parse('gf3')
GF5 = FieldSpec.parse('gf5')
QQ = FieldSpec.rational()

E1234 = {'e12': 1, 'e34': 1}


class SkewTests(SimpleTestCase):
    def test_examples(self):
        M = to_skew(Bivector.from_terms(GF3, 4, {'e12': 1}))
        expected = GF3.zeros((4, 4))
        expected[0, 1] = 1
        expected[1, 0] = 2
        self.assertEqual(M, Matrix(GF3, expected))

        J = to_skew(Bivector.from_terms(QQ, 4, E1234))
        self.assertEqual(J, Matrix.from_rows(QQ, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]))

    def test_from_skew_inverts_to_skew(self):
        rng = np.random.default_rng(0)
        for field in (GF3, QQ):
            for _ in range(250):
                b = Bivector(field, 5, field.random(rng, 10))
                self.assertEqual(from_skew(to_skew(b)), b)

    def test_from_skew_rejects(self):
        with self.assertRaises(NotSkewSymmetric):
            from_skew(Matrix.identity(GF2, 4))

    def test_repr(self):
        b = Bivector.from_terms(GF5, 4, {'e12': 1, 'e34': -1})
        self.assertEqual(repr(b), 'e12 + 4*e34')
        self.assertEqual(repr(Bivector.zero(GF5, 4)), '0')


class DecomposableTests(SimpleTestCase):
    def test_examples(self):
        self.assertTrue(is_decomposable(Bivector.from_terms(GF3, 4, {'e12': 1})))
        self.assertFalse(is_decomposable(Bivector.from_terms(GF3, 4, E1234)))
        self.assertTrue(is_decomposable(Bivector.zero(GF3, 4)))
        self.assertTrue(is_decomposable(wedge(GF5, [1, 2, 0, 3, 4], [0, 1, 1, 1, 0])))

    def test_exhaustive_four_generators(self):
        # nonzero decomposables are the (q-1) nonzero multiples of each 2-plane
        for q, field in ((2, GF2), (3, GF3)):
            vectors = all_vectors(field, 6)
            flags = [is_decomposable(Bivector(field, 4, v)) for v in vectors]
            ranks = skew_ranks(field, 4, vectors)
            with self.subTest(q=q):
                self.assertEqual(sum(flags) - 1, gaussian_binomial(4, 2, q) * (q - 1))
                self.assertEqual(flags, list(ranks <= 2))

    def test_factor(self):
        rng = np.random.default_rng(4)
        for field in (GF3, GF5, QQ):
            for _ in range(50):
                u, v = field.random(rng, (2, 5))
                b = wedge(field, u, v)
                if b.is_zero():
                    continue
                a, c = factor_decomposable(b)
                self.assertEqual(wedge(field, a, c), b)
        with self.assertRaises(ValueError):
            factor_decomposable(Bivector.from_terms(GF3, 4, E1234))


class BracketFreeTests(SimpleTestCase):
    def test_finite_examples(self):
        self.assertTrue(bracket_free(CentralIdeal.from_terms(GF3, 4, [E1234])))
        self.assertTrue(bracket_free(CentralIdeal.zero(GF3, 4)))

        I3 = CentralIdeal.from_terms(GF3, 4, RATIONAL_CAMINA_IDEAL)
        result = bracket_free(I3)
        self.assertFalse(result)
        self.assertTrue(I3.contains(result.witness))
        self.assertTrue(is_decomposable(result.witness))
        self.assertFalse(result.witness.is_zero())
        # the bracket [x1 + 2x3 + x4, x2 + x3 + x4] lies in the ideal
        known = wedge(GF3, [1, 0, 2, 1], [0, 1, 1, 1])
        self.assertIn(known, I3)
        self.assertTrue(is_decomposable(known))

    def test_line_counts(self):
        lines = list(iter_ideals(GF3, 4, 1))
        self.assertEqual(len(lines), 364)
        self.assertEqual(sum(1 for I in lines if bracket_free(I)), 234)

    def test_rational_definite(self):
        I3 = CentralIdeal.from_terms(QQ, 4, RATIONAL_CAMINA_IDEAL)
        result = bracket_free(I3)
        self.assertTrue(result)
        self.assertEqual(result.method, DEFINITE)
        self.assertTrue(bracket_free(CentralIdeal.from_terms(QQ, 4, [E1234, {'e13': 1, 'e24': -1}])))

    def test_rational_binary_forms(self):
        # e13 + t e24 with t = 2 a non-square, then t = 1 a square
        free = bracket_free(CentralIdeal.from_terms(QQ, 4, [E1234, {'e13': 1, 'e24': 2}]))
        self.assertTrue(free)
        self.assertEqual(free.method, BINARY_FORM)
        found = bracket_free(CentralIdeal.from_terms(QQ, 4, [E1234, {'e13': 1, 'e24': 1}]))
        self.assertFalse(found)
        self.assertEqual(found.method, BINARY_FORM)
        self.assertTrue(is_decomposable(found.witness))

    def test_rational_degenerate(self):
        I = CentralIdeal.from_terms(QQ, 4, [E1234, {'e13': 1, 'e14': 1, 'e23': 1, 'e34': 2}])
        result = bracket_free(I)
        self.assertFalse(result)
        self.assertEqual(result.method, DEGENERATE)
        self.assertTrue(I.contains(result.witness))
        self.assertTrue(is_decomposable(result.witness))

    def test_rational_undetermined(self):
        I = CentralIdeal.from_terms(QQ, 4, [E1234, {'e13': 1, 'e24': 1}, {'e14': 1, 'e23': 1}])
        with self.assertRaises(Undetermined):
            bracket_free(I)
        with self.assertRaises(Undetermined):
            bracket_free(CentralIdeal.from_terms(QQ, 6, [{'e12': 1, 'e34': 1}, {'e13': 1, 'e56': 1}]))


class QuotientTypeTests(SimpleTestCase):
    def test_examples(self):
        bt = breadth_type_of_quotient(CentralIdeal.from_terms(GF3, 4, [{'e12': 1}]))
        self.assertNotEqual(bt.breadths, (0, 3))
        self.assertIn(2, bt.breadths)
        self.assertEqual(breadth_type_of_quotient(CentralIdeal.from_terms(GF5, 4, [E1234, {'e13': 1, 'e24': 2}])).breadths,
                         (0, 3))
        self.assertEqual(breadth_type_of_quotient(CentralIdeal.zero(GF3, 4)).breadths, (0, 3))

    def test_equivalence_small(self):
        for d in (1, 2):
            for I in iter_ideals(GF2, 4, d):
                breadth_type_of_quotient(I)
        for I in iter_ideals(GF3, 4, 1):
            breadth_type_of_quotient(I)

    @tag('slow')
    def test_equivalence_dim_two_gf3(self):
        for I in iter_ideals(GF3, 4, 2):
            breadth_type_of_quotient(I)

    @tag('slow')
    def test_no_bracket_free_dim_three(self):
        for field in (GF2, GF3):
            with self.subTest(field=str(field)):
                self.assertFalse(any(bracket_free(I) for I in iter_ideals(field, 4, 3)))


class SerializerTests(SimpleTestCase):
    def test_load(self):
        I = CentralIdealSerializer.load({'m_plus_1': 4, 'basis': [[1, 0, 0, 0, 0, 1]]}, field=GF3)
        self.assertEqual(I, CentralIdeal.from_terms(GF3, 4, [E1234]))
        with_field = {'m_plus_1': 4, 'basis': [[0, 1, 0, 0, '-1', 0]], 'field': {'kind': 'rational'}}
        self.assertEqual(CentralIdealSerializer.load(with_field), CentralIdeal.from_terms(QQ, 4, [{'e13': 1, 'e24': -1}]))
        self.assertEqual(CentralIdealSerializer.load(I.to_json(), field=GF3), I)

    def test_rejects(self):
        with self.assertRaises(ValidationError):
            CentralIdealSerializer.load({'m_plus_1': 4, 'basis': [[1, 0, 0]]}, field=GF3)
        with self.assertRaises(ValidationError):
            CentralIdealSerializer.load({'m_plus_1': 4, 'basis': [[1, 0, 0, 0, 0, 1]]})
        with self.assertRaises(ValidationError):
            CentralIdealSerializer.load({'m_plus_1': 4, 'basis': [[1, 0, 0, 0, 0, 5]]}, field=GF3)
