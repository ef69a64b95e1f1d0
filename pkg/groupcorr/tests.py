import numpy as np
from django.test import SimpleTestCase, tag
from hypothesis import given, settings, strategies as st

from bivectors.bivector import pair_count
from bivectors.ideals import CentralIdeal
from core.exceptions import BudgetExceeded, EvenPrime
from fields.spec import FieldSpec
from linalg.matrix import det_array
from normalform.maps import push_ideal
from .correspondence import (
    CentralSubgroup,
    Psi,
    apply_automorphism,
    central_subgroup_of,
    conjugate_type,
    iter_central_subgroups,
    psi,
    psi_I,
    psi_R,
    push_subgroup,
    verify_correspondence,
)
from .groups import (
    GroupElement,
    all_elements,
    brute_force_conjugacy,
    collect,
    commutator,
    gcommutator,
    ginv,
    gmul,
    gpow,
)

GF3 = FieldSpec.parse('gf3')


def element(p, m, seed):
    rng = np.random.default_rng(seed)
    g = m + 1
    return GroupElement.from_arrays(p, rng.integers(0, p, g), rng.integers(0, p, pair_count(g)))


def random_automorphism(p, m, seed):
    """Images of the generators with an invertible generator part."""
    rng = np.random.default_rng(seed)
    field = FieldSpec.finite(p)
    g = m + 1
    while True:
        A = rng.integers(0, p, (g, g))
        if det_array(field, A) != 0:
            break
    return [GroupElement.from_arrays(p, A[:, j], rng.integers(0, p, pair_count(g))) for j in range(g)]


class CollectionTests(SimpleTestCase):
    def test_identity(self):
        e = GroupElement.identity(3, 2)
        g = element(3, 2, 7)
        self.assertEqual(gmul(e, g), g)
        self.assertEqual(gmul(g, e), g)
        self.assertEqual(repr(e), '1')

    def test_commutator_of_generators(self):
        g1 = GroupElement.generator(3, 1, 0)
        g2 = GroupElement.generator(3, 1, 1)
        explicit = gmul(gmul(gmul(g1, g2), ginv(g1)), ginv(g2))
        self.assertEqual(explicit, GroupElement.central(3, 1, (1,)))
        self.assertEqual(gcommutator(g1, g2), explicit)
        self.assertEqual(repr(explicit), '[g1,g2]')

    def test_exponent(self):
        g1 = GroupElement.generator(3, 1, 0)
        self.assertTrue(gpow(g1, 3).is_identity())
        for seed in range(20):
            g = element(5, 2, seed)
            self.assertTrue(gpow(g, 5).is_identity())
            self.assertEqual(gmul(g, ginv(g)), GroupElement.identity(5, 2))
            self.assertEqual(gpow(g, -1), ginv(g))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2 ** 32), st.integers(0, 6))
    def test_power_is_repeated_product(self, seed, k):
        g = element(3, 3, seed)
        product = GroupElement.identity(3, 3)
        for _ in range(k):
            product = gmul(product, g)
        self.assertEqual(gpow(g, k), product)

    def test_associativity_exhaustive_m1(self):
        alpha, beta = all_elements(3, 1)
        n = len(alpha)
        i, j, k = (ix.ravel() for ix in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing='ij'))
        left = collect(3, *collect(3, alpha[i], beta[i], alpha[j], beta[j]), alpha[k], beta[k])
        right = collect(3, alpha[i], beta[i], *collect(3, alpha[j], beta[j], alpha[k], beta[k]))
        self.assertTrue(np.array_equal(left[0], right[0]))
        self.assertTrue(np.array_equal(left[1], right[1]))

    def test_associativity_sampled(self):
        rng = np.random.default_rng(0)
        for m in (2, 3):
            g = m + 1
            a, b, c = ((rng.integers(0, 3, (100000, g)), rng.integers(0, 3, (100000, pair_count(g))))
                       for _ in range(3))
            left = collect(3, *collect(3, *a, *b), *c)
            right = collect(3, *a, *collect(3, *b, *c))
            with self.subTest(m=m):
                self.assertTrue(np.array_equal(left[0], right[0]))
                self.assertTrue(np.array_equal(left[1], right[1]))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2 ** 32), st.integers(0, 2 ** 32), st.integers(0, 2 ** 32))
    def test_commutator_is_bilinear(self, s1, s2, s3):
        a, b, c = element(3, 2, s1), element(3, 2, s2), element(3, 2, s3)
        self.assertEqual(gcommutator(gmul(a, b), c), gmul(gcommutator(a, c), gcommutator(b, c)))

    def test_even_prime(self):
        g = GroupElement.generator(2, 1, 0)
        with self.assertRaises(EvenPrime):
            gmul(g, g)
        with self.assertRaises(EvenPrime):
            conjugate_type(2, 1)


class PsiTests(SimpleTestCase):
    def test_examples(self):
        self.assertTrue(psi(GroupElement.identity(3, 2)).is_zero())
        L_element = psi(GroupElement.generator(3, 2, 0))
        self.assertEqual(L_element.algebra.format_vector(L_element.coords), 'x1')
        N = CentralSubgroup.span(3, 3, [[1, 0, 0, 0, 0, 1]])
        self.assertEqual(psi_R(N), CentralIdeal.from_terms(GF3, 4, [{'e12': 1, 'e34': 1}]))
        self.assertEqual(central_subgroup_of(psi_R(N)), N)

    def test_commuting_square_m1(self):
        alpha, beta = all_elements(3, 1)
        elements = [GroupElement.from_arrays(3, a, b) for a, b in zip(alpha, beta)]
        for a in elements:
            for b in elements:
                x, y = psi(a), psi(b)
                self.assertEqual(psi(gcommutator(a, b)), x.algebra.element(x.algebra.bracket(x.coords, y.coords)))

    def test_commuting_square_batched(self):
        # [a, b] has β equal to the wedge of the generator parts, which is [psi(a), psi(b)] in 𝓛_m
        rng = np.random.default_rng(1)
        for m in (2, 3):
            g = m + 1
            if m == 2:
                grid = np.array(np.meshgrid(*[np.arange(3)] * (2 * g), indexing='ij')).reshape(2 * g, -1).T
                a_alpha, b_alpha = grid[:, :g], grid[:, g:]
            else:
                a_alpha, b_alpha = rng.integers(0, 3, (10000, g)), rng.integers(0, 3, (10000, g))
            a_beta = rng.integers(0, 3, (len(a_alpha), pair_count(g)))
            b_beta = rng.integers(0, 3, (len(a_alpha), pair_count(g)))
            c_alpha, c_beta = commutator(3, a_alpha, a_beta, b_alpha, b_beta)
            rows, cols = np.triu_indices(g, 1)
            wedge = (a_alpha[:, rows] * b_alpha[:, cols] - a_alpha[:, cols] * b_alpha[:, rows]) % 3
            with self.subTest(m=m):
                self.assertFalse(c_alpha.any())
                self.assertTrue(np.array_equal(c_beta, wedge))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2 ** 32), st.integers(0, 2 ** 32))
    def test_automorphism_compatibility(self, seed, element_seed):
        theta = random_automorphism(3, 2, seed)
        phi = Psi(theta)
        M = phi.matrix().data
        # generators
        for j in range(3):
            image = psi(apply_automorphism(theta, GroupElement.generator(3, 2, j))).coords
            self.assertTrue(np.array_equal(image, M[:, j]))
        # central elements
        rng = np.random.default_rng(element_seed)
        c = GroupElement.central(3, 2, rng.integers(0, 3, 3))
        image = psi(apply_automorphism(theta, c)).coords
        self.assertTrue(np.array_equal(image, GF3.matmul(M, psi(c).coords[:, None])[:, 0]))
        # G/G′
        g = element(3, 2, element_seed)
        self.assertTrue(np.array_equal(psi_I(apply_automorphism(theta, g)),
                                       GF3.matmul(phi.linear, psi_I(g)[:, None])[:, 0]))
        # central subgroups
        N = CentralSubgroup.span(3, 2, [[1, 1, 0]])
        self.assertEqual(push_ideal(phi, psi_R(N)), psi_R(push_subgroup(theta, N)))


class ConjugateTypeTests(SimpleTestCase):
    def test_heisenberg_group(self):
        ct = conjugate_type(3, 1)
        self.assertEqual(ct.exponents, (0, 1))
        self.assertEqual(str(ct), '(1, 3)')
        self.assertEqual(ct.order, 27)
        self.assertEqual(ct.class_sizes, {1: 3, 3: 8})
        self.assertEqual(ct.class_count, 11)

    def test_examples(self):
        self.assertEqual(str(conjugate_type(3, 2)), '(1, 3^2)')
        full = CentralSubgroup.span(3, 2, np.eye(3, dtype=int).tolist())
        self.assertEqual(conjugate_type(3, 2, full).exponents, (0,))
        N = CentralSubgroup.span(3, 3, [[1, 0, 0, 0, 0, 1]])
        self.assertEqual(str(conjugate_type(3, 3, N)), '(1, 3^3)')

    def test_matches_brute_force(self):
        cases = [(3, 1, CentralSubgroup.trivial(3, 1)), (3, 2, CentralSubgroup.trivial(3, 2)),
                 (3, 2, CentralSubgroup.span(3, 2, [[1, 2, 0]])), (5, 1, CentralSubgroup.trivial(5, 1))]
        for p, m, N in cases:
            with self.subTest(p=p, m=m, N=repr(N)):
                expected = brute_force_conjugacy(p, m, N.subspace.basis, N.subspace.pivots)
                self.assertEqual(conjugate_type(p, m, N).class_sizes, expected)

    def test_budget(self):
        with self.assertRaises(BudgetExceeded):
            conjugate_type(3, 3, budget=10)


class CorrespondenceTests(SimpleTestCase):
    def test_all_subgroups_m2(self):
        subgroups = list(iter_central_subgroups(3, 2))
        self.assertEqual(len(subgroups), 28)
        self.assertEqual(sorted(N.dim for N in subgroups).count(1), 13)
        for N in subgroups:
            with self.subTest(N=repr(N)):
                self.assertTrue(verify_correspondence(3, 2, N))

    def test_examples(self):
        result = verify_correspondence(3, 1)
        self.assertTrue(result)
        self.assertEqual(result.breadth.breadths, (0, 1))
        N = CentralSubgroup.span(3, 3, [[1, 0, 0, 0, 0, 1]])
        result = verify_correspondence(3, 3, N)
        self.assertTrue(result)
        self.assertEqual(result.breadth.breadths, (0, 3))
        self.assertEqual(result.to_json()['conjugate_type']['label'], '(1, 3^3)')

    @tag('slow')
    def test_random_subgroups_m3(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            d = int(rng.integers(0, 7))
            N = CentralSubgroup.span(3, 3, rng.integers(0, 3, (d, 6))) if d else CentralSubgroup.trivial(3, 3)
            with self.subTest(N=repr(N)):
                self.assertTrue(verify_correspondence(3, 3, N))
