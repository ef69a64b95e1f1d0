from django.test import SimpleTestCase, tag
from hypothesis import given, settings, strategies as st
from rest_framework.exceptions import ValidationError

from core.exceptions import (
    BudgetExceeded,
    HypothesisViolated,
    InvalidInputCertificate,
    NotSkewSymmetric,
    Undetermined,
    Unsupported,
    VerificationFailed,
)
from fields.spec import FieldSpec
from lie.algebra import LieAlgebra
from lie.constructions import (
    RATIONAL_CAMINA_IDEAL,
    camina_quotient,
    five_dim_three_step,
    free_quotient,
    free_two_step,
    heisenberg,
    heisenberg_degree,
    non_nilpotent_camina,
    sl2,
    theorem_families,
)
from linalg.matrix import Matrix
from .camina import (
    ODD_GENERATORS,
    STRUCTURE_MATRICES,
    camina_via_structure_matrices,
    generator_bound,
    is_camina,
    structure_matrices,
)
from .certificates import RankSubspaceCertificate
from .search import (
    double_to_skew,
    extension_rank_subspace,
    max_sks_rank_subspace,
    quaternion_det,
    rational_quaternion_family,
    sks_search_shard,
)
from .serializer import RankSubspaceCertificateSerializer

GF2 = FieldSpec.parse('gf2')
GF3 = FieldSpec.parse('gf3')
GF5 = FieldSpec.parse('gf5')
QQ = FieldSpec.rational()

I2 = [[1, 0], [0, 1]]
B = [[0, -1], [1, 0]]
D = [[1, 0], [0, -1]]


def class_two_examples(field):
    """Class-2 algebras with Z(L) = L′ over a finite field."""
    examples = [heisenberg(1, field), heisenberg(2, field), heisenberg_degree(2, field),
                camina_quotient(2, 1, field), free_two_step(2, field), free_two_step(3, field)]
    for _, L in theorem_families(field):
        examples.append(L.strip_abelian_summands())
    return examples


class IsCaminaTests(SimpleTestCase):
    def test_examples(self):
        self.assertTrue(is_camina(heisenberg_degree(2, GF3)))
        self.assertTrue(is_camina(non_nilpotent_camina(GF3)))
        self.assertTrue(is_camina(LieAlgebra.abelian(GF3, 3)))

        result = is_camina(free_two_step(2, GF3))
        self.assertFalse(result)
        self.assertTrue(result.witness)
        self.assertFalse(is_camina(five_dim_three_step(GF3)))

    def test_heisenberg_degree_quotients(self):
        for l in range(3):
            self.assertTrue(is_camina(camina_quotient(3, l, GF2)))

    def test_errors(self):
        with self.assertRaises(Unsupported):
            is_camina(heisenberg(1, QQ))
        with self.assertRaises(BudgetExceeded):
            is_camina(free_two_step(3, GF3), budget=10)


class StructureMatrixTests(SimpleTestCase):
    def test_heisenberg(self):
        cert = structure_matrices(heisenberg(2, GF3))
        self.assertEqual(cert.dim, 1)
        J4 = Matrix.from_rows(GF3, [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
        self.assertEqual(cert.basis[0], J4)
        result = camina_via_structure_matrices(heisenberg(2, GF3))
        self.assertTrue(result)
        self.assertEqual(result.method, STRUCTURE_MATRICES)

    def test_rational_camina_quotient(self):
        self.assertTrue(camina_via_structure_matrices(free_quotient(QQ, 3, RATIONAL_CAMINA_IDEAL)))
        self.assertFalse(camina_via_structure_matrices(free_quotient(GF3, 3, RATIONAL_CAMINA_IDEAL)))
        self.assertFalse(is_camina(free_quotient(GF3, 3, RATIONAL_CAMINA_IDEAL)))

    def test_odd_generators(self):
        result = camina_via_structure_matrices(free_two_step(2, GF3))
        self.assertFalse(result)
        self.assertEqual(result.method, ODD_GENERATORS)

    def test_hypotheses(self):
        for L in (five_dim_three_step(GF3), sl2(GF5), heisenberg(1, GF3).direct_sum_abelian(1),
                  LieAlgebra.abelian(GF3, 2)):
            with self.subTest(L=repr(L)):
                with self.assertRaises(HypothesisViolated):
                    camina_via_structure_matrices(L)
        with self.assertRaises(HypothesisViolated):
            camina_via_structure_matrices(heisenberg(2, GF3), generators=3)
        self.assertTrue(camina_via_structure_matrices(heisenberg(2, GF3), generators=4))

    def test_agrees_with_definition(self):
        for field in (GF2, GF3, GF5):
            for L in class_two_examples(field):
                with self.subTest(field=str(field), L=repr(L)):
                    expected = is_camina(L).camina
                    self.assertEqual(camina_via_structure_matrices(L).camina, expected)
                    if expected:
                        self.assertTrue(generator_bound(L))


class CertificateTests(SimpleTestCase):
    def test_finite(self):
        cert = RankSubspaceCertificate.from_rows(GF3, [I2, B], skew=False)
        self.assertEqual(cert.dim, 2)
        self.assertTrue(cert.verify())
        self.assertIs(cert.check(), cert)

        # 1 + 2^2 = 0 in GF(5)
        bad = RankSubspaceCertificate.from_rows(GF5, [I2, B], skew=False)
        xi = bad.find_singular()
        self.assertIsNotNone(xi)
        self.assertEqual(bad.combination(xi).rank(), 1)
        with self.assertRaises(VerificationFailed):
            bad.check()

    def test_dependent_basis(self):
        cert = RankSubspaceCertificate.from_rows(GF3, [I2, [[2, 0], [0, 2]]], skew=False)
        xi = cert.find_singular()
        self.assertEqual(cert.combination(xi), Matrix.zeros(GF3, 2, 2))

    def test_rational(self):
        self.assertTrue(RankSubspaceCertificate.from_rows(QQ, [I2, B], skew=False).verify())
        self.assertTrue(RankSubspaceCertificate.from_rows(QQ, [B]).verify())

        split = RankSubspaceCertificate.from_rows(QQ, [I2, D], skew=False)
        xi = split.find_singular()
        self.assertEqual(split.combination(xi).det(), QQ(0))
        self.assertFalse(split.verify())

        odd = RankSubspaceCertificate.from_rows(QQ, [[[0, 1, 0], [-1, 0, 0], [0, 0, 0]]])
        self.assertFalse(odd.verify())
        with self.assertRaises(Undetermined):
            RankSubspaceCertificate.from_rows(QQ, [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]], skew=False).verify()

    def test_rejects_non_skew(self):
        with self.assertRaises(NotSkewSymmetric):
            RankSubspaceCertificate.from_rows(GF3, [I2])


class SearchTests(SimpleTestCase):
    def test_small_values(self):
        self.assertEqual(max_sks_rank_subspace(3, GF3)[0], 0)
        k, cert = max_sks_rank_subspace(2, GF3)
        self.assertEqual(k, 1)
        self.assertTrue(cert.verify())

    def test_four_by_four(self):
        for field in (GF2, GF3):
            with self.subTest(field=str(field)):
                k, cert = max_sks_rank_subspace(4, field)
                self.assertEqual(k, 2)
                self.assertEqual(cert.dim, 2)
                self.assertFalse(cert.lower_bound)
                self.assertTrue(cert.verify())

    def test_shards_cover_the_search(self):
        best = max(sks_search_shard(4, GF3, pivot)[0] for pivot in range(6))
        self.assertEqual(best, max_sks_rank_subspace(4, GF3)[0])

    def test_budget(self):
        with self.assertRaises(BudgetExceeded) as ctx:
            max_sks_rank_subspace(4, GF3, budget=50)
        partial = ctx.exception.partial
        self.assertTrue(partial.lower_bound)
        self.assertTrue(partial.verify())
        with self.assertRaises(Unsupported):
            max_sks_rank_subspace(4, QQ)

    @tag('slow')
    def test_six_by_six_bound(self):
        for field in (GF2, GF3):
            with self.subTest(field=str(field)):
                try:
                    _, cert = max_sks_rank_subspace(6, field)
                except BudgetExceeded as e:
                    cert = e.partial
                self.assertLessEqual(cert.dim, 3)
                self.assertTrue(cert.verify())


class DoubleToSkewTests(SimpleTestCase):
    def test_identity(self):
        cert = double_to_skew(RankSubspaceCertificate.from_rows(GF3, [I2], skew=False))
        self.assertEqual((cert.n, cert.dim), (4, 1))
        Y = cert.basis[0]
        self.assertTrue(Y.is_skew())
        self.assertEqual(Y.rank(), 4)

    def test_rational_pair(self):
        cert = double_to_skew(RankSubspaceCertificate.from_rows(QQ, [I2, B], skew=False))
        self.assertEqual((cert.n, cert.dim), (4, 2))
        self.assertTrue(cert.verify())

    def test_empty(self):
        cert = double_to_skew(RankSubspaceCertificate(3, GF3, (), skew=False))
        self.assertEqual((cert.n, cert.dim), (6, 0))

    def test_invalid_input(self):
        with self.assertRaises(InvalidInputCertificate):
            double_to_skew(RankSubspaceCertificate.from_rows(QQ, [I2, D], skew=False))
        with self.assertRaises(InvalidInputCertificate):
            double_to_skew(RankSubspaceCertificate.from_rows(GF5, [I2, B], skew=False))
        with self.assertRaises(InvalidInputCertificate):
            double_to_skew(RankSubspaceCertificate.from_rows(QQ, [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]], skew=False))

    def test_extension_fields(self):
        for m, field in ((2, GF2), (2, GF3), (3, GF2)):
            with self.subTest(m=m, field=str(field)):
                cert = extension_rank_subspace(m, field)
                self.assertEqual((cert.n, cert.dim), (m, m))
                self.assertEqual(cert.basis[0], Matrix.identity(field, m))
                self.assertTrue(cert.verify())
                self.assertTrue(double_to_skew(cert).verify())


class QuaternionTests(SimpleTestCase):
    def test_family(self):
        cert = rational_quaternion_family()
        self.assertEqual((cert.n, cert.dim), (4, 3))
        self.assertTrue(cert.verify())

    def test_examples(self):
        self.assertEqual(quaternion_det(1, 0, 0), QQ(1))
        self.assertEqual(quaternion_det(1, 1, 1), QQ(9))
        self.assertEqual(quaternion_det(0, 0, 0), QQ(0))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
    def test_determinant_identity(self, a, b, c):
        self.assertEqual(quaternion_det(a, b, c), QQ((a * a + b * b + c * c) ** 2))


class SerializerTests(SimpleTestCase):
    def test_load(self):
        data = {'n': 2, 'field': {'kind': 'finite', 'p': 3}, 'skew': False, 'basis': [I2, [[0, 2], [1, 0]]]}
        cert = RankSubspaceCertificateSerializer.load(data)
        self.assertEqual(cert, RankSubspaceCertificate.from_rows(GF3, [I2, B], skew=False))
        quaternions = rational_quaternion_family()
        self.assertEqual(RankSubspaceCertificateSerializer.load(quaternions.to_json()), quaternions)

    def test_rejects(self):
        with self.assertRaises(ValidationError):
            RankSubspaceCertificateSerializer.load({'n': 2, 'field': {'kind': 'rational'}, 'basis': [[[0, 1]]]})
        with self.assertRaises(ValidationError):
            RankSubspaceCertificateSerializer.load({'n': 2, 'field': {'kind': 'rational'}, 'basis': [I2]})
        with self.assertRaises(ValidationError):
            RankSubspaceCertificateSerializer.load({'n': 2, 'field': {'kind': 'finite', 'p': 3},
                                                    'skew': False, 'basis': [[[0, 5], [1, 0]]]})
