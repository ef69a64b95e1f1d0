from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from core.exceptions import NonSquare, NotSkewSymmetric, OddDimension, Unsupported
from fields.spec import FieldSpec
from .matrix import Matrix, batch_rank, det, kernel, pfaffian, rank, rank_array, rref
from .subspace import (
    Subspace,
    enumerate_subspace_bases,
    enumerate_subspaces,
    gaussian_binomial,
    pivot_patterns,
    projective_points,
)

GF2 = FieldSpec.parse('gf2')
GF3 = FieldSpec.parse('gf3')
GF4 = FieldSpec.parse('gf4')
GF5 = FieldSpec.parse('gf5')
QQ = FieldSpec.rational()


def random_skew(field, n, rng):
    upper = np.triu(field.random(rng, (n, n)), 1)
    return field.sub(upper, upper.T)


class MatrixTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(rank(Matrix.zeros(GF3, 3, 3)), 0)
        self.assertEqual(det(Matrix.identity(GF3, 4)), GF3(1))
        K = kernel(Matrix.from_rows(GF5, [[1, 2], [2, 4]]))
        self.assertEqual(K.dim, 1)
        self.assertEqual(K, Subspace.from_rows(GF5, 2, [[3, 1]]))
        self.assertTrue(K.member(GF5.array([3, 1])))

    def test_det_needs_square(self):
        with self.assertRaises(NonSquare):
            det(Matrix.zeros(GF3, 2, 3))

    def test_matrix_is_immutable(self):
        M = Matrix.identity(GF3, 2)
        with self.assertRaises(ValueError):
            M.data[0, 0] = 2
        with self.assertRaises(AttributeError):
            M.field = GF5

    def test_rank_properties(self):
        rng = np.random.default_rng(7)
        for field in (GF3, GF4, QQ):
            for _ in range(40):
                r, c, k = rng.integers(1, 6, size=3)
                A = Matrix(field, field.random(rng, (r, c)))
                B = Matrix(field, field.random(rng, (c, k)))
                R = rref(A)
                with self.subTest(field=str(field)):
                    self.assertEqual(A.rank(), R.rank())
                    self.assertEqual(A.rank(), len(A.pivots()))
                    self.assertEqual(A.rank() + A.kernel().dim, A.cols)
                    self.assertLessEqual((A @ B).rank(), min(A.rank(), B.rank()))
                    self.assertTrue(np.all(field.matmul(A.data, A.kernel().basis.T) == 0))

    def test_inverse(self):
        rng = np.random.default_rng(3)
        for field in (GF5, GF4, QQ):
            A = Matrix(field, field.random(rng, (4, 4)))
            if A.det() == 0:
                continue
            self.assertEqual(A @ A.inverse(), Matrix.identity(field, 4))

    def test_batch_rank_agrees_with_elimination(self):
        rng = np.random.default_rng(11)
        for field in (GF2, GF3, GF4, QQ):
            stack = field.random(rng, (60, 4, 5))
            stack[::3, 2] = stack[::3, 0]
            stack[::5] = field.zeros((4, 5))
            expected = [rank_array(field, m) for m in stack]
            with self.subTest(field=str(field)):
                self.assertEqual(batch_rank(field, stack).tolist(), expected)


class PfaffianTests(SimpleTestCase):
    def test_examples(self):
        J = Matrix.from_rows(GF3, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
        self.assertEqual(pfaffian(J), GF3(1))
        self.assertEqual(pfaffian(Matrix.zeros(GF3, 4, 4)), GF3(0))
        # bivector e12 + e34 + e13
        B = Matrix.from_rows(GF3, [[0, 1, 1, 0], [-1, 0, 0, 0], [-1, 0, 0, 1], [0, 0, -1, 0]])
        self.assertEqual(pfaffian(B), GF3(1))

    def test_symplectic_block_six(self):
        J = QQ.zeros((6, 6))
        for k in (0, 2, 4):
            J[k, k + 1] = Fraction(1)
            J[k + 1, k] = Fraction(-1)
        self.assertEqual(pfaffian(Matrix(QQ, J)), QQ(1))

    def test_errors(self):
        with self.assertRaises(NotSkewSymmetric):
            pfaffian(Matrix.identity(GF3, 2))
        # symmetric equals skew in characteristic 2, the diagonal still counts
        with self.assertRaises(NotSkewSymmetric):
            pfaffian(Matrix.identity(GF2, 2))
        with self.assertRaises(OddDimension):
            pfaffian(Matrix.zeros(GF3, 3, 3))

    def test_square_is_determinant(self):
        rng = np.random.default_rng(2024)
        for field in (GF3, GF5, QQ):
            for _ in range(334):
                n = int(rng.choice([2, 4, 6, 8]))
                M = Matrix(field, random_skew(field, n, rng))
                pf = M.pfaffian()
                with self.subTest(field=str(field), n=n):
                    self.assertEqual(pf * pf, M.det())

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.fractions(max_denominator=9), min_size=15, max_size=15))
    def test_rational_square_is_determinant(self, upper):
        M = QQ.zeros((6, 6))
        k = 0
        for i in range(6):
            for j in range(i + 1, 6):
                M[i, j] = upper[k]
                M[j, i] = -upper[k]
                k += 1
        M = Matrix(QQ, M)
        self.assertEqual(M.pfaffian() ** 2, M.det())


class SubspaceTests(SimpleTestCase):
    def test_enumeration_examples(self):
        self.assertEqual(sum(1 for _ in enumerate_subspaces(GF3, 6, 1)), 364)
        self.assertEqual(sum(1 for _ in enumerate_subspaces(GF3, 6, 2)), 11011)

    def test_counts_match_gaussian_binomial(self):
        for q, field in ((2, GF2), (3, GF3)):
            for n in range(0, 7):
                for d in range(0, n + 1):
                    seen = set()
                    for pattern in pivot_patterns(n, d):
                        for basis in enumerate_subspace_bases(field, n, pattern):
                            seen.add(basis.tobytes())
                    with self.subTest(q=q, n=n, d=d):
                        self.assertEqual(len(seen), gaussian_binomial(n, d, q))

    def test_enumeration_order_is_canonical(self):
        spaces = list(enumerate_subspaces(GF2, 3, 1))
        self.assertEqual([s.pivots for s in spaces][:4], [(0,)] * 4)
        self.assertEqual(spaces[0].basis.tolist(), [[1, 0, 0]])
        self.assertEqual(spaces[1].basis.tolist(), [[1, 0, 1]])
        for s in spaces:
            self.assertEqual(Subspace.span(GF2, 3, s.basis), s)

    def test_rational_enumeration_unsupported(self):
        with self.assertRaises(Unsupported):
            next(enumerate_subspaces(QQ, 3, 1))

    def test_lattice_operations(self):
        rng = np.random.default_rng(5)
        for field in (GF3, QQ):
            for _ in range(30):
                S = Subspace.span(field, 5, field.random(rng, (int(rng.integers(0, 4)), 5)))
                T = Subspace.span(field, 5, field.random(rng, (int(rng.integers(0, 4)), 5)))
                with self.subTest(field=str(field)):
                    self.assertEqual(S.intersect(S), S)
                    self.assertEqual(S.sum(T).dim + S.intersect(T).dim, S.dim + T.dim)
                    self.assertTrue(S.intersect(T).issubspace(S))
                    self.assertTrue(S.issubspace(S + T))

    def test_elements_and_points(self):
        S = Subspace.from_rows(GF3, 4, [[1, 0, 1, 0], [0, 1, 0, 2]])
        elements = list(S.enumerate_elements())
        self.assertEqual(len(elements), 9)
        self.assertTrue(all(S.member(v) for v in elements))
        self.assertEqual(len({v.tobytes() for v in elements}), 9)
        self.assertEqual(len(S.projective_representatives()), 4)
        self.assertEqual(len(projective_points(GF3, 6)), 364)
        self.assertEqual(len(projective_points(GF3, 6, lead=5)), 1)
