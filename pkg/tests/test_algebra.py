import random
import unittest

from algebra.field import SUPPORTED_ORDERS, check_field_axioms, field_make
from algebra.matrix import (
    Mat,
    conjugate,
    diagonal,
    identity,
    is_unipotent,
    jordan_block,
    mat_inv,
    mat_mul,
    permutation_matrix,
    random_invertible,
)
from algebra.subspace import (
    contains_vector,
    coordinate_subspace,
    enumerate_subspaces,
    full_space,
    gaussian_binomial,
    image,
    intersect,
    is_complement,
    is_subspace_of,
    span,
    subspace_sum,
    zero_subspace,
)
from utils.errors import (
    DimensionMismatchError,
    EnumerationTooLargeError,
    InputError,
    NotInvertibleError,
    UnsupportedFieldError,
)


class TestField(unittest.TestCase):
    def testFieldMake_SupportedOrdersSatisfyAxioms(self):
        for q in SUPPORTED_ORDERS:
            with self.subTest(q=q):
                self.assertTrue(check_field_axioms(field_make(q)))

    def testFieldMake_UnsupportedOrderRaises(self):
        with self.assertRaises(UnsupportedFieldError) as context:
            field_make(6)
        self.assertIn("unsupported field", str(context.exception))

    def testFieldMake_ExtensionFieldCodesFollowPolynomial(self):
        f4 = field_make(4)
        # t^2 = t + 1 under x^2 + x + 1; t has code 2, t + 1 code 3
        self.assertEqual(f4.mul[2][2], 3)
        self.assertEqual(f4.add[2][3], 1)
        self.assertEqual(f4.add[2][2], 0)

    def testFieldMake_IsCached(self):
        self.assertIs(field_make(9), field_make(9))

    def testPrimitiveElement_PowersCoverNonzeroElements(self):
        for q in (3, 4, 5, 8, 9):
            field = field_make(q)
            omega = field.primitive_element
            seen, x = set(), 1
            for _ in range(q - 1):
                x = field.mul[x][omega]
                seen.add(x)
            self.assertEqual(seen, set(range(1, q)))


class TestMatrix(unittest.TestCase):
    def setUp(self):
        self.f2 = field_make(2)
        self.f3 = field_make(3)

    def testMatInv_ProductIsIdentity(self):
        rng = random.Random(7)
        for q in (2, 3, 4, 5):
            field = field_make(q)
            for _ in range(5):
                g = random_invertible(field, 3, rng)
                self.assertEqual(mat_mul(g, mat_inv(g)), identity(field, 3))

    def testMatInv_SingularRaises(self):
        with self.assertRaises(NotInvertibleError):
            mat_inv(Mat(self.f2, [[1, 1], [1, 1]]))

    def testMat_CodeOutOfRangeRaises(self):
        with self.assertRaises(InputError):
            Mat(self.f2, [[2, 0], [0, 1]])

    def testMat_EqualityIgnoresInvertibleHint(self):
        self.assertEqual(Mat(self.f3, [[1, 0], [0, 1]]), identity(self.f3, 2))

    def testMatMul_DimensionMismatchRaises(self):
        with self.assertRaises(DimensionMismatchError):
            mat_mul(identity(self.f2, 2), identity(self.f2, 3))

    def testIsUnipotent_JordanBlockButNotDiagonal(self):
        self.assertTrue(is_unipotent(jordan_block(self.f2, 3, 3)))
        self.assertTrue(is_unipotent(jordan_block(self.f3, 3, 2)))
        self.assertFalse(is_unipotent(diagonal(self.f3, [2, 1])))

    def testPermutationMatrix_SendsBasisVectors(self):
        g = permutation_matrix(self.f2, [1, 2, 0])
        e1 = coordinate_subspace(self.f2, 3, [0])
        self.assertEqual(image(g, e1), coordinate_subspace(self.f2, 3, [1]))

    def testConjugate_OfIdentityIsIdentity(self):
        g = random_invertible(self.f3, 2, random.Random(1))
        one = identity(self.f3, 2)
        self.assertEqual(conjugate(g, one), one)


class TestSubspace(unittest.TestCase):
    def setUp(self):
        self.f2 = field_make(2)
        self.f3 = field_make(3)

    def testSpan_IsCanonical(self):
        self.assertEqual(span(self.f3, 2, [(2, 2)]).basis, ((1, 1),))
        self.assertEqual(
            span(self.f2, 3, [(1, 1, 0), (0, 1, 1)]), span(self.f2, 3, [(1, 0, 1), (0, 1, 1)])
        )

    def testSpan_WrongLengthRaises(self):
        with self.assertRaises(DimensionMismatchError):
            span(self.f2, 3, [(1, 0)])

    def testIntersect_TwoCoordinatePlanes(self):
        u = coordinate_subspace(self.f2, 3, [0, 1])
        w = coordinate_subspace(self.f2, 3, [1, 2])
        self.assertEqual(intersect(u, w), coordinate_subspace(self.f2, 3, [1]))
        u3 = coordinate_subspace(self.f3, 3, [0, 1])
        w3 = coordinate_subspace(self.f3, 3, [1, 2])
        self.assertEqual(intersect(u3, w3), coordinate_subspace(self.f3, 3, [1]))

    def testSubspaceSum_AndComplement(self):
        e1 = coordinate_subspace(self.f3, 2, [0])
        diagonal_line = span(self.f3, 2, [(1, 1)])
        self.assertTrue(subspace_sum(e1, diagonal_line).is_full)
        self.assertTrue(is_complement(e1, diagonal_line))
        self.assertFalse(is_complement(e1, e1))

    def testContainsVector_AndInclusion(self):
        plane = coordinate_subspace(self.f2, 3, [0, 1])
        self.assertTrue(contains_vector(plane, (1, 1, 0)))
        self.assertFalse(contains_vector(plane, (0, 0, 1)))
        self.assertTrue(is_subspace_of(zero_subspace(self.f2, 3), plane))
        self.assertTrue(is_subspace_of(plane, full_space(self.f2, 3)))

    def testImage_ActsOnColumnVectors(self):
        j2 = jordan_block(self.f2, 2, 2)
        e1 = coordinate_subspace(self.f2, 2, [0])
        e2 = coordinate_subspace(self.f2, 2, [1])
        self.assertEqual(image(j2, e1), e1)
        self.assertEqual(image(j2, e2), span(self.f2, 2, [(1, 1)]))

    def testImage_CommutesWithSums(self):
        rng = random.Random(3)
        for q in (2, 3, 4):
            field = field_make(q)
            subspaces = enumerate_subspaces(field, 3, 4096)
            for _ in range(10):
                g = random_invertible(field, 3, rng)
                u, w = rng.choice(subspaces), rng.choice(subspaces)
                self.assertEqual(
                    image(g, subspace_sum(u, w)), subspace_sum(image(g, u), image(g, w))
                )
                self.assertEqual(image(g, intersect(u, w)), intersect(image(g, u), image(g, w)))

    def testEnumerateSubspaces_CountsAreGaussianBinomials(self):
        for q, n in ((2, 3), (3, 3), (2, 4), (4, 2), (5, 2)):
            field = field_make(q)
            subspaces = enumerate_subspaces(field, n, 4096)
            expected = sum(gaussian_binomial(n, k, q) for k in range(n + 1))
            self.assertEqual(len(subspaces), expected)
            self.assertEqual(len(set(subspaces)), expected)
            self.assertEqual(list(subspaces), sorted(subspaces))

    def testEnumerateSubspaces_KnownCounts(self):
        self.assertEqual(len(enumerate_subspaces(self.f2, 3, 4096)), 16)
        self.assertEqual(gaussian_binomial(4, 2, 2), 35)

    def testEnumerateSubspaces_CapExceededRaises(self):
        with self.assertRaises(EnumerationTooLargeError):
            enumerate_subspaces(self.f3, 8, 4096)

    def testSubspaces_ModularDimensionLawOverF2Cubed(self):
        subspaces = enumerate_subspaces(self.f2, 3, 4096)
        self.assertEqual(len(subspaces), 16)
        for u in subspaces:
            for w in subspaces:
                self.assertEqual(
                    subspace_sum(u, w).dim + intersect(u, w).dim, u.dim + w.dim, (u, w)
                )

    def testSpan_RandomGeneratingSetsGiveOneBasis(self):
        rng = random.Random(5)
        target = span(self.f3, 4, [(1, 0, 2, 1), (0, 1, 1, 2)])
        first, second = target.basis
        spanning = 0
        while spanning < 50:
            vectors = []
            for _ in range(rng.randint(2, 4)):
                a, b = rng.randrange(3), rng.randrange(3)
                vectors.append(tuple((a * x + b * y) % 3 for x, y in zip(first, second)))
            result = span(self.f3, 4, vectors)
            if result.dim < 2:
                continue
            spanning += 1
            self.assertEqual(result, target)
            self.assertEqual(result.basis, target.basis)


if __name__ == "__main__":
    unittest.main()
