import unittest
from unittest import mock

from algebra.field import field_make
from algebra.matrix import Mat, diagonal, elementary, identity, jordan_block
from algebra.subspace import coordinate_subspace, span
from building.complex import empty_complex, face_closure, full_building
from building.flags import Flag
from grouplat.closure import GroupSpec, closure, enumerate_gl, standard_gl_generators
from theorems.borel_tits import borel_tits_demo, normalizer
from theorems.centre import check_normal_overgroup, find_centre
from theorems.common import fixed_complex
from theorems.convexity import check_convex, check_intersection_condition, convex_hull
from theorems.fixed_point import check_fixed_point_form
from theorems.loewy import loewy_centres
from theorems.reducibility import (
    CrVerdict,
    contractibility_verdict,
    g_cr_verdicts,
    is_contractible,
    is_g_cr,
    x_cr,
)
from theorems.serre import verify_serre_question
from topology.homology import HomologyReport
from utils.errors import OracleDisagreementError, PreconditionError, VerificationFailure

F2 = field_make(2)
F3 = field_make(3)


def group(field, n, generators, name="H"):
    return GroupSpec(field, n, generators, name=name)


def unitriangular(field, n):
    return group(field, n, [elementary(field, n, i, i + 1, 1) for i in range(n - 1)], name="U")


def standard_chamber():
    return Flag([coordinate_subspace(F2, 3, [0]), coordinate_subspace(F2, 3, [0, 1])])


def two_points(field):
    return face_closure(
        field,
        2,
        [Flag([coordinate_subspace(field, 2, [0])]), Flag([coordinate_subspace(field, 2, [1])])],
    )


class TestReducibility(unittest.TestCase):
    def testGcrVerdicts_KnownGroups(self):
        cases = [
            (group(F2, 2, [identity(F2, 2)]), True, False),
            (group(F2, 2, [jordan_block(F2, 2, 2)]), False, False),
            (group(F3, 2, [Mat(F3, [[0, 2], [1, 0]])]), True, True),
            (group(F3, 2, [diagonal(F3, [2, 1]), diagonal(F3, [1, 2])]), True, False),
            (group(F2, 3, [jordan_block(F2, 3, 3)]), False, False),
            (group(F2, 3, [identity(F2, 3)]), True, False),
            (unitriangular(F2, 3), False, False),
        ]
        for spec, g_cr, g_ir in cases:
            with self.subTest(spec=spec):
                verdict = g_cr_verdicts(spec)
                self.assertTrue(verdict.agree)
                self.assertEqual(verdict.is_g_cr, g_cr)
                self.assertEqual(verdict.is_g_ir, g_ir)
                self.assertEqual(is_g_cr(spec), g_cr)

    def testXCr_WitnessesAreOpposites(self):
        verdict = x_cr(full_building(F2, 3))
        self.assertTrue(verdict.is_x_cr)
        self.assertEqual(len(verdict.witnesses), 35)
        self.assertIsNone(verdict.failure)

    def testXCr_ChamberFailsOnFirstFlag(self):
        chamber = face_closure(F2, 3, [standard_chamber()])
        verdict = x_cr(chamber)
        self.assertFalse(verdict.is_x_cr)
        self.assertEqual(verdict.failure, chamber.ordered[0])

    def testXCr_EmptyComplexIsXCr(self):
        self.assertTrue(x_cr(empty_complex(F2, 3)).is_x_cr)

    def testCrVerdict_RejectsInconsistentFields(self):
        with self.assertRaises(VerificationFailure):
            CrVerdict(True)
        with self.assertRaises(VerificationFailure):
            CrVerdict(False, witnesses={})

    def testContractibility_EmptyComplexIsNotContractible(self):
        self.assertFalse(is_contractible(empty_complex(F3, 2)))

    def testContractibility_ChamberIsContractible(self):
        verdict = contractibility_verdict(face_closure(F2, 3, [standard_chamber()]))
        self.assertTrue(verdict.contractible)
        self.assertTrue(verdict.homology.is_acyclic)

    def testContractibility_HomologyDisagreementRaises(self):
        _, y = fixed_complex(group(F2, 2, [jordan_block(F2, 2, 2)]))
        fake = HomologyReport(
            reduced_betti=[1], torsion=[()], euler_characteristic=1, simplex_counts=[1]
        )
        with mock.patch("theorems.reducibility.reduced_homology", return_value=fake):
            with self.assertRaises(OracleDisagreementError) as context:
                contractibility_verdict(y)
        self.assertEqual(context.exception.verdicts["reduced_betti"], [1])

    def testContractibility_UsesGivenHomology(self):
        _, y = fixed_complex(group(F2, 2, [jordan_block(F2, 2, 2)]))
        fake = HomologyReport(
            reduced_betti=[0], torsion=[()], euler_characteristic=1, simplex_counts=[1]
        )
        with mock.patch("theorems.reducibility.reduced_homology") as patched:
            verdict = contractibility_verdict(y, fake)
        patched.assert_not_called()
        self.assertIs(verdict.homology, fake)


class TestCentre(unittest.TestCase):
    def testFindCentre_JordanBlockGivesTheStandardChamber(self):
        report = find_centre(group(F2, 3, [jordan_block(F2, 3, 3)]))
        self.assertEqual(report.M.order, 8)
        self.assertEqual(report.K.order, 8)
        self.assertEqual(report.centre, standard_chamber())
        self.assertTrue(all(report.checks.values()))

    def testFindCentre_TransvectionGivesItsLine(self):
        report = find_centre(group(F3, 2, [jordan_block(F3, 2, 2)]))
        self.assertEqual(report.centre, Flag([coordinate_subspace(F3, 2, [0])]))
        self.assertEqual(report.M.order, report.K.order)

    def testFindCentre_GcrGroupRaises(self):
        with self.assertRaises(PreconditionError):
            find_centre(group(F2, 3, [identity(F2, 3)]))

    def testCheckNormalOvergroup_UnitriangularFixesTheCentre(self):
        j3 = group(F2, 3, [jordan_block(F2, 3, 3)])
        verdict = check_normal_overgroup(j3, unitriangular(F2, 3))
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.centre, standard_chamber())

    def testCheckNormalOvergroup_NotNormalRaises(self):
        gl = group(F2, 2, standard_gl_generators(F2, 2), name="G")
        with self.assertRaises(PreconditionError):
            check_normal_overgroup(group(F2, 2, [jordan_block(F2, 2, 2)]), gl)


class TestLoewy(unittest.TestCase):
    def testLoewyCentres_JordanBlockInsideBorel(self):
        report = loewy_centres(group(F2, 3, [jordan_block(F2, 3, 3)]), unitriangular(F2, 3))
        self.assertEqual(report.socle_flag, standard_chamber())
        self.assertEqual(report.radical_flag, standard_chamber())
        self.assertTrue(report.k_stable)
        self.assertEqual(len(report.socle_series), 4)

    def testLoewyCentres_TransvectionOverItself(self):
        j2 = group(F2, 2, [jordan_block(F2, 2, 2)])
        report = loewy_centres(j2, j2)
        self.assertEqual(report.socle_flag, Flag([coordinate_subspace(F2, 2, [0])]))
        self.assertTrue(report.k_stable)

    def testLoewyCentres_SemisimpleRaises(self):
        torus = group(F3, 2, [diagonal(F3, [2, 1])])
        with self.assertRaises(PreconditionError):
            loewy_centres(torus, torus)

    def testLoewyCentres_NonNormalOvergroupRaises(self):
        gl = group(F2, 2, standard_gl_generators(F2, 2), name="G")
        with self.assertRaises(PreconditionError):
            loewy_centres(group(F2, 2, [jordan_block(F2, 2, 2)]), gl)


class TestFixedPointForm(unittest.TestCase):
    def testFixedPointForm_TwoOppositePointsOverF2Fails(self):
        verdict = check_fixed_point_form(two_points(F2))
        self.assertFalse(verdict.is_fixed_point_form)
        self.assertEqual(verdict.H.order, 1)
        self.assertEqual(verdict.counterexample, Flag([span(F2, 2, [(1, 1)])]))

    def testFixedPointForm_TwoOppositePointsOverF3Holds(self):
        verdict = check_fixed_point_form(two_points(F3))
        self.assertTrue(verdict.is_fixed_point_form)
        self.assertEqual(verdict.H.order, 4)
        self.assertIsNone(verdict.counterexample)

    def testFixedPointForm_FullBuildingIsFixedByScalars(self):
        verdict = check_fixed_point_form(full_building(F3, 2))
        self.assertTrue(verdict.is_fixed_point_form)
        self.assertEqual(verdict.H.order, 2)

    def testFixedPointForm_EveryFixedComplexQualifies(self):
        _, y = fixed_complex(group(F2, 3, [jordan_block(F2, 3, 3)]))
        self.assertTrue(check_fixed_point_form(y).is_fixed_point_form)


class TestConvexity(unittest.TestCase):
    def testCheckConvex_TwoOppositePointsOverF2(self):
        verdict = check_convex(two_points(F2))
        self.assertFalse(verdict.holds)
        self.assertFalse(verdict)
        self.assertEqual(len(verdict.witnesses), 2)
        self.assertNotIn(verdict.violation, two_points(F2))

    def testCheckConvex_FixedComplexesAreConvex(self):
        for spec in (
            group(F2, 3, [jordan_block(F2, 3, 3)]),
            group(F3, 2, [diagonal(F3, [2, 1])]),
            group(F3, 2, [Mat(F3, [[0, 2], [1, 0]])]),
        ):
            _, y = fixed_complex(spec)
            self.assertTrue(check_convex(y).holds)

    def testConvexHull_OfOppositePointsOverF3IsThePair(self):
        ambient = enumerate_gl(F3, 2)
        e1 = Flag([coordinate_subspace(F3, 2, [0])])
        e2 = Flag([coordinate_subspace(F3, 2, [1])])
        self.assertEqual(convex_hull(e1, e2, ambient), two_points(F3))

    def testIntersectionCondition_ArityOneHoldsOnEverySubcomplex(self):
        for complex_ in (two_points(F2), face_closure(F2, 3, [standard_chamber()])):
            ambient = enumerate_gl(complex_.field, complex_.n)
            self.assertTrue(check_intersection_condition(complex_, ambient, 1).holds)
        self.assertFalse(check_intersection_condition(two_points(F2), enumerate_gl(F2, 2), 2).holds)

    def testIntersectionCondition_ArityThreeHoldsOnFixedComplexes(self):
        for spec in (group(F2, 3, [jordan_block(F2, 3, 3)]), group(F3, 2, [diagonal(F3, [2, 1])])):
            _, y = fixed_complex(spec)
            ambient = enumerate_gl(spec.field, spec.n)
            self.assertTrue(check_intersection_condition(y, ambient, 3).holds)

    def testIntersectionCondition_PairsDecideFixedPointFormForTwoPoints(self):
        for field in (F2, F3):
            y = two_points(field)
            self.assertEqual(check_convex(y).holds, check_fixed_point_form(y).is_fixed_point_form)

    def testIntersectionCondition_ThreePointsNeedTheTripleIntersection(self):
        points = [Flag([span(F3, 2, [v])]) for v in ((1, 0), (0, 1), (1, 1))]
        y = face_closure(F3, 2, points)
        ambient = enumerate_gl(F3, 2)
        self.assertTrue(check_convex(y).holds)
        self.assertFalse(check_fixed_point_form(y).is_fixed_point_form)
        verdict = check_intersection_condition(y, ambient, 3)
        self.assertFalse(verdict.holds)
        self.assertEqual(verdict.violation, Flag([span(F3, 2, [(1, 2)])]))


class TestSerre(unittest.TestCase):
    def testVerifySerreQuestion_ScalarsInGl(self):
        centre = group(F3, 2, [diagonal(F3, [2, 2])], name="Z")
        gl = group(F3, 2, standard_gl_generators(F3, 2), name="G")
        verdict = verify_serre_question(centre, gl)
        self.assertTrue(verdict.h_g_cr)
        self.assertTrue(verdict.n_g_cr)
        self.assertTrue(verdict.holds)

    def testVerifySerreQuestion_NonGcrOvergroupHoldsVacuously(self):
        j3 = group(F2, 3, [jordan_block(F2, 3, 3)])
        verdict = verify_serre_question(j3, unitriangular(F2, 3))
        self.assertFalse(verdict.h_g_cr)
        self.assertTrue(verdict.holds)

    def testVerifySerreQuestion_DiagonalTorus(self):
        torus = group(F3, 2, [diagonal(F3, [2, 1]), diagonal(F3, [1, 2])], name="T")
        verdict = verify_serre_question(group(F3, 2, [diagonal(F3, [1, 2])], name="N"), torus)
        self.assertTrue(verdict.h_g_cr)
        self.assertTrue(verdict.n_g_cr)
        self.assertTrue(verdict.holds)

    def testVerifySerreQuestion_NotNormalRaises(self):
        gl = group(F2, 2, standard_gl_generators(F2, 2), name="G")
        with self.assertRaises(PreconditionError):
            verify_serre_question(group(F2, 2, [jordan_block(F2, 2, 2)]), gl)

    def testVerifySerreQuestion_NotContainedRaises(self):
        with self.assertRaises(PreconditionError):
            verify_serre_question(
                group(F3, 2, [diagonal(F3, [2, 1])]), group(F3, 2, [diagonal(F3, [1, 2])])
            )


class TestBorelTits(unittest.TestCase):
    def testBorelTitsDemo_UnitriangularOverF2(self):
        report = borel_tits_demo(unitriangular(F2, 3))
        self.assertEqual(report.normalizer.order, 8)
        self.assertEqual(report.complex_normalizer.order, 8)
        self.assertEqual(report.fixed_flag, standard_chamber())
        self.assertTrue(all(report.checks.values()))

    def testBorelTitsDemo_TransvectionOverF3(self):
        report = borel_tits_demo(group(F3, 2, [jordan_block(F3, 2, 2)]))
        # the Borel subgroup of GL_2(F_3)
        self.assertEqual(report.normalizer.order, 12)
        self.assertEqual(report.fixed_flag, Flag([coordinate_subspace(F3, 2, [0])]))

    def testBorelTitsDemo_NonUnipotentRaises(self):
        with self.assertRaises(PreconditionError):
            borel_tits_demo(group(F3, 2, [diagonal(F3, [2, 1])]))

    def testBorelTitsDemo_TrivialRaises(self):
        with self.assertRaises(PreconditionError):
            borel_tits_demo(group(F2, 2, [identity(F2, 2)]))

    def testNormalizer_OfScalarsIsEverything(self):
        ambient = enumerate_gl(F3, 2)
        scalars = closure(group(F3, 2, [diagonal(F3, [2, 2])]))
        self.assertEqual(normalizer(scalars, ambient).order, 48)


if __name__ == "__main__":
    unittest.main()
