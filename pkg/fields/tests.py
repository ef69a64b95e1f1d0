from fractions import Fraction
from itertools import product

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, strategies as st
from rest_framework.exceptions import ValidationError

from core.exceptions import (
    DegenerateLeadingCoefficient,
    DivisionByZero,
    FieldMismatch,
    NoNonsquare,
    Unsupported,
    UnsupportedField,
)
from .serializer import FieldSpecSerializer
from .spec import (
    FieldSpec,
    find_nonsquare,
    inv,
    is_square,
    least_trace_one,
    quadratic_irreducible,
    quadratic_roots,
    sqrt,
    squarefree_class,
    trace,
    trace_raw,
)

SMALL_FIELDS = ['gf2', 'gf3', 'gf4', 'gf5', 'gf7', 'gf8', 'gf9', 'gf16', 'gf25', 'gf27', 'gf32', 'gf49', 'gf64']


class ScalarArithmeticTests(SimpleTestCase):
    def test_gf3_addition_wraps(self):
        F = FieldSpec.parse('gf3')
        self.assertEqual(F(2) + F(2), F(1))

    def test_gf4_w_squared_is_w_plus_one(self):
        F = FieldSpec.parse('gf4')
        w = F.element(2)
        self.assertEqual(w * w, F.element(3))
        self.assertEqual(str(w * w), 'w+1')

    def test_rational_inverse(self):
        Q = FieldSpec.rational()
        self.assertEqual(inv(Q('-2/3')), Q('-3/2'))

    def test_inverse_of_zero(self):
        with self.assertRaises(DivisionByZero):
            FieldSpec.parse('gf5')(0).inverse()
        with self.assertRaises(DivisionByZero):
            inv(FieldSpec.rational()(0))

    def test_integer_comparison_agrees_with_hash(self):
        F = FieldSpec.parse('gf5')
        self.assertEqual(F(2), 2)
        self.assertNotEqual(F(2), 7)
        self.assertIn(F(2), {2})
        self.assertIn(2, {F(2)})
        self.assertEqual({F(7), 2}, {2})
        Q = FieldSpec.rational()
        self.assertIn(Q('4/2'), {2})
        self.assertIn(Fraction(1, 2), {Q('1/2')})
        w = FieldSpec.parse('gf4').element(2)
        self.assertNotEqual(w, 2)
        self.assertEqual(FieldSpec.parse('gf4')(1), 1)

    @given(st.sampled_from(SMALL_FIELDS), st.integers(-100, 100))
    def test_equal_means_equal_hash(self, token, k):
        F = FieldSpec.parse(token)
        x = F(k)
        if x == k:
            self.assertEqual(hash(x), hash(k))
        self.assertEqual(hash(x), hash(F.element(x.value)))

    def test_mixed_fields_rejected(self):
        with self.assertRaises(FieldMismatch):
            FieldSpec.parse('gf3')(1) + FieldSpec.parse('gf5')(1)

    def test_user_modulus(self):
        F = FieldSpecSerializer.load({'kind': 'finite', 'p': 3, 'n': 2, 'modulus': [1, 0, 1]})
        w = F.element(3)
        self.assertEqual(w * w, F(-1))

    def test_reducible_modulus_rejected(self):
        with self.assertRaises(UnsupportedField):
            FieldSpec.finite(3, 2, (2, 0, 1))
        with self.assertRaises(ValidationError):
            FieldSpecSerializer.load({'kind': 'finite', 'p': 3, 'n': 2, 'modulus': [2, 0, 1]})

    def test_parse_tokens(self):
        self.assertEqual(FieldSpec.parse('gf2^3').order, 8)
        self.assertEqual(FieldSpec.parse('gf9'), FieldSpec.finite(3, 2))
        self.assertTrue(FieldSpec.parse('rational').is_rational)
        for bad in ('gf6', 'gf1', 'reals', 'gf4^2'):
            with self.assertRaises(UnsupportedField):
                FieldSpec.parse(bad)

    def test_field_axioms_exhaustive(self):
        for token in SMALL_FIELDS:
            F = FieldSpec.parse(token)
            x = F.elements()
            a, b, c = x[:, None, None], x[None, :, None], x[None, None, :]
            with self.subTest(field=token):
                self.assertTrue(np.array_equal(F.add(a, b), F.add(b, a)))
                self.assertTrue(np.array_equal(F.mul(a, b), F.mul(b, a)))
                self.assertTrue(np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c))))
                self.assertTrue(np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c))))
                self.assertTrue(np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c))))
                self.assertTrue(np.all(F.add(x, F.neg(x)) == 0))
                nonzero = x[1:]
                self.assertTrue(np.all(F.mul(nonzero, F.inv(nonzero)) == 1))
                # the table generator really generates
                self.assertEqual(len(set(F._tables.exp.tolist())), F.order - 1)

    @given(st.fractions(), st.fractions(), st.fractions())
    def test_rational_axioms(self, x, y, z):
        Q = FieldSpec.rational()
        a, b, c = Q(x), Q(y), Q(z)
        self.assertEqual((a + b) + c, a + (b + c))
        self.assertEqual(a * (b + c), a * b + a * c)
        if x != 0:
            self.assertEqual(a * a.inverse(), Q(1))


class TraceTests(SimpleTestCase):
    def test_gf2_trace_of_one(self):
        F = FieldSpec.parse('gf2')
        self.assertEqual(trace(F(1)), F(1))

    def test_gf4_trace_of_w(self):
        F = FieldSpec.parse('gf4')
        self.assertEqual(trace(F.element(2)), F(1))
        self.assertEqual(least_trace_one(F), F.element(2))

    def test_gf8_trace_one_count(self):
        F = FieldSpec.parse('gf8')
        self.assertEqual(sum(1 for x in F.iter_elements() if trace(x) == 1), 4)

    def test_trace_is_additive_into_prime_subfield(self):
        for token in SMALL_FIELDS:
            F = FieldSpec.parse(token)
            x = F.elements()
            tr = trace_raw(F, x)
            with self.subTest(field=token):
                self.assertTrue(np.all(tr < F.p))
                lhs = trace_raw(F, F.add(x[:, None], x[None, :]))
                rhs = F.add(tr[:, None], tr[None, :])
                self.assertTrue(np.array_equal(lhs, rhs))

    def test_trace_over_rationals_unsupported(self):
        with self.assertRaises(Unsupported):
            trace(FieldSpec.rational()(1))


class SquareTests(SimpleTestCase):
    def test_examples(self):
        F = FieldSpec.parse('gf5')
        self.assertTrue(is_square(F(4)))
        self.assertEqual(find_nonsquare(F), F(2))
        self.assertEqual(find_nonsquare(FieldSpec.parse('gf3')), FieldSpec.parse('gf3')(2))
        Q = FieldSpec.rational()
        self.assertFalse(is_square(Q(-1)))
        self.assertTrue(is_square(Q('9/4')))
        self.assertEqual(find_nonsquare(Q), Q(-1))

    def test_nonzero_square_count(self):
        for token in ('gf3', 'gf5', 'gf7', 'gf9', 'gf11', 'gf13', 'gf25', 'gf27', 'gf49'):
            F = FieldSpec.parse(token)
            count = sum(1 for x in F.iter_elements() if x and is_square(x))
            with self.subTest(field=token):
                self.assertEqual(count, (F.order - 1) // 2)

    def test_sqrt_round_trip(self):
        for token in ('gf7', 'gf9', 'gf8'):
            F = FieldSpec.parse(token)
            for x in F.iter_elements():
                if F.p == 2 or is_square(x):
                    r = sqrt(x)
                    self.assertEqual(r * r, x)

    def test_characteristic_two(self):
        F = FieldSpec.parse('gf4')
        with self.assertRaises(NoNonsquare):
            find_nonsquare(F)
        with self.assertRaises(Unsupported):
            is_square(F(1))

    def test_squarefree_class(self):
        Q = FieldSpec.rational()
        self.assertEqual(squarefree_class(Q('-8/9')), (-2, Fraction(2, 3)))
        self.assertEqual(squarefree_class(Q(-4))[0], -1)
        self.assertEqual(squarefree_class(Q(12))[0], 3)


class QuadraticTests(SimpleTestCase):
    def test_examples(self):
        F2 = FieldSpec.parse('gf2')
        self.assertTrue(quadratic_irreducible(F2(1), F2(1), F2(1)))
        F4 = FieldSpec.parse('gf4')
        self.assertTrue(quadratic_irreducible(F4(1), F4(1), F4.element(2)))
        F5 = FieldSpec.parse('gf5')
        self.assertFalse(quadratic_irreducible(F5(1), F5(0), F5(-1)))

    def test_degenerate_leading_coefficient(self):
        F = FieldSpec.parse('gf3')
        with self.assertRaises(DegenerateLeadingCoefficient):
            quadratic_irreducible(F(0), F(1), F(1))

    def test_agrees_with_root_search(self):
        for token in ('gf2', 'gf3', 'gf4', 'gf5', 'gf8', 'gf9'):
            F = FieldSpec.parse(token)
            elems = list(F.iter_elements())
            for a, b, c in product(elems[1:], elems, elems):
                with self.subTest(field=token, a=str(a), b=str(b), c=str(c)):
                    self.assertEqual(quadratic_irreducible(a, b, c), not quadratic_roots(a, b, c))
