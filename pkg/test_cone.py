import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from fanoblow.models.cone import CurveClass, DivisorClass, NefStatus
from fanoblow.models.scenario import Family, Scenario
from fanoblow.services.cone_service import ConeService, ConeServiceError

# 各族の分岐を代表するシナリオ
BRANCH_SCENARIOS = [
    Scenario.main(4, 0, 1),
    Scenario.main(4, 1, 0),
    Scenario.main(5, 1, 3),
    Scenario.main(4, 2, 0),
    Scenario.main(6, 3, 2),
    Scenario.p2(4, 1),
    Scenario.p2(5, 3),
    Scenario.pn(Family.PN_EXAMPLE1, 4),
    Scenario.pn(Family.PN_EXAMPLE2, 5, 2),
    Scenario.pn(Family.PN_EXAMPLE3, 4),
]

coords = st.integers(-20, 20)


class TestConeService(unittest.TestCase):

    def setUp(self):
        """テストの前に呼ばれるセットアップメソッド"""
        self.cone = ConeService()

    def test_kronecker_duality(self):
        """
        すべての分岐で生成元の交点行列が単位行列になるかのテスト
        """
        for scn in BRANCH_SCENARIOS:
            cp = self.cone.presentation(scn)
            self.assertTrue(cp.verified, msg=scn.label)
            self.assertEqual(len(cp.div_gens), scn.family.picard_number)

    def test_pairing_table_values(self):
        """
        E~·e0~ = -1, F·e0~ = 1, F·f = -1, E~·f = 0 をテストする
        """
        fam = Family.PP_N1
        e0 = CurveClass.of(fam, 0, 0, 1, 0)
        f = CurveClass.of(fam, 0, 0, 0, 1)
        big_e = DivisorClass.of(fam, 0, 0, 1, 0)
        big_f = DivisorClass.of(fam, 0, 0, 0, 1)
        self.assertEqual(self.cone.pairing(big_e, e0), -1)
        self.assertEqual(self.cone.pairing(big_f, e0), 1)
        self.assertEqual(self.cone.pairing(big_f, f), -1)
        self.assertEqual(self.cone.pairing(big_e, f), 0)

    def test_pairing_rejects_mismatch(self):
        """
        族や階数が異なる類の交点数がエラーになるかのテスト
        """
        with self.assertRaises(ConeServiceError):
            self.cone.pairing(DivisorClass.of(Family.PP_N1, 1, 0, 0, 0), CurveClass.of(Family.PP_N2, 1, 0, 0, 0))
        with self.assertRaises(ConeServiceError):
            self.cone.pairing(DivisorClass.of(Family.PN_EXAMPLE1, 1, 0, 0), CurveClass.of(Family.PN_EXAMPLE1, 1, 0, 0, 0))

    def test_decompose_anticanonical(self):
        """
        -K の分解係数が既知の値になるかのテスト
        """
        cases = [
            (Scenario.main(4, 2, 1), (1, 1, 1, 1)),
            (Scenario.main(4, 3, 2), (0, 0, 1, 1)),
            (Scenario.main(4, 4, 0), (-1, 1, 1, 1)),
            (Scenario.main(3, 0, 1), (2, 1, 0, 1)),
            (Scenario.p2(4, 1), (1, 1, 1, 1)),
            (Scenario.p2(4, 2), (1, -1, 1, 1)),
            (Scenario.pn(Family.PN_EXAMPLE1, 4), (2, 1, 1)),
            (Scenario.pn(Family.PN_EXAMPLE3, 4), (0, 1, 1)),
        ]
        for scn, expected in cases:
            coeffs = self.cone.decompose(self.cone.anticanonical_class(scn), self.cone.nef_generators(scn))
            self.assertEqual(coeffs, tuple(Fraction(c) for c in expected), msg=scn.label)

    def test_decompose_singular_generators(self):
        """
        一次従属な生成元での分解がエラーになるかのテスト
        """
        fam = Family.PN_EXAMPLE1
        gens = [DivisorClass.of(fam, 1, 0, 0), DivisorClass.of(fam, 2, 0, 0), DivisorClass.of(fam, 0, 0, 1)]
        with self.assertRaises(ConeServiceError):
            self.cone.decompose(DivisorClass.of(fam, 1, 1, 1), gens)

    def test_nef_status(self):
        """
        係数の符号から錐内の位置を判定できるかのテスト
        """
        self.assertEqual(self.cone.nef_status([1, 2, Fraction(1, 2)]), NefStatus.INTERIOR)
        self.assertEqual(self.cone.nef_status([0, 2, 1]), NefStatus.BOUNDARY)
        self.assertEqual(self.cone.nef_status([3, -1, 1]), NefStatus.NOT_NEF)

    def test_divisor_str(self):
        """
        因子類の表示をテストする
        """
        scn = Scenario.main(4, 2, 1)
        self.assertEqual(str(self.cone.anticanonical_class(scn)), "4H~+2L~-2E~-F")
        self.assertEqual(str(DivisorClass.of(Family.PN_EXAMPLE1, 0, 0, 0)), "0")

    @settings(deadline=None)
    @given(coords, coords, coords, coords)
    def test_reassemble_inverts_decompose(self, x0, x1, x2, x3):
        """
        分解した係数から元の因子類が復元できるかのテスト
        """
        scn = Scenario.main(5, 2, 1)
        gens = self.cone.nef_generators(scn)
        divisor = DivisorClass.of(scn.family, x0, x1, x2, x3)
        self.assertEqual(self.cone.reassemble(self.cone.decompose(divisor, gens), gens), divisor)

    @settings(deadline=None, max_examples=50)
    @given(coords, coords, coords, coords, coords, coords)
    def test_decompose_is_linear(self, x0, x1, x2, y0, y1, y2):
        """
        分解が線形であるかのテスト
        """
        scn = Scenario.pn(Family.PN_EXAMPLE3, 5)
        gens = self.cone.nef_generators(scn)
        dx = DivisorClass.of(scn.family, x0, x1, x2)
        dy = DivisorClass.of(scn.family, y0, y1, y2)
        total = self.cone.decompose(dx + dy, gens)
        parts = zip(self.cone.decompose(dx, gens), self.cone.decompose(dy, gens))
        self.assertEqual(total, tuple(p + q for p, q in parts))


if __name__ == '__main__':
    unittest.main()
