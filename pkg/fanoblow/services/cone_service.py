"""
ネフ錐・曲線錐の生成元と反標準因子の分解
"""
import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy

from fanoblow.models.cone import ConePresentation, CurveClass, DivisorClass, NefStatus, PairingTable
from fanoblow.models.scenario import Family, Scenario
from fanoblow.utils.rational import to_fraction, to_sympy

logger = logging.getLogger(__name__)


class ConeServiceError(Exception):
    """
    錐の計算関連のエラー
    """
    pass


class ConeService:
    """
    交点数の表と Kronecker 双対性に基づく錐の計算サービス
    """

    def pairing(self, divisor: DivisorClass, curve: CurveClass) -> Fraction:
        """
        D · C を交点数の表の双線形拡張で計算

        Raises:
            ConeServiceError: 族または階数が一致しない場合
        """
        if divisor.family != curve.family:
            raise ConeServiceError(
                f"族が一致しません: divisor={divisor.family.value}, curve={curve.family.value}"
            )
        if divisor.rank != curve.rank:
            raise ConeServiceError(f"階数が一致しません: {divisor.rank} != {curve.rank}")
        table = PairingTable.for_rank(divisor.rank)
        total = Fraction(0)
        for i, c_i in enumerate(curve.coords):
            if c_i == 0:
                continue
            for j, d_j in enumerate(divisor.coords):
                total += c_i * table.rows[i][j] * d_j
        return total

    def nef_generators(self, scn: Scenario) -> List[DivisorClass]:
        """
        ネフ錐の生成元

        Args:
            scn: シナリオ

        Returns:
            Picard 数と同じ個数の因子類
        """
        family = scn.validate().family
        if family == Family.PP_N1:
            return [
                DivisorClass.of(family, 1, 0, 0, 0),
                DivisorClass.of(family, 0, 1, 0, 0),
                DivisorClass.of(family, 1, 0, -1, 0),
                self._main_family_divisor(scn),
            ]
        if family == Family.PP_N2:
            d = scn.d
            return [
                DivisorClass.of(family, 1, 0, 0, 0),
                DivisorClass.of(family, 0, 1, 0, 0),
                DivisorClass.of(family, 1, d, -1, 0),
                DivisorClass.of(family, 1, d, -1, -1),
            ]
        if family == Family.PN_EXAMPLE3:
            return [
                DivisorClass.of(family, 1, 0, 0),
                DivisorClass.of(family, 2, -1, 0),
                DivisorClass.of(family, 3, -1, -1),
            ]
        return [
            DivisorClass.of(family, 1, 0, 0),
            DivisorClass.of(family, 1, -1, 0),
            DivisorClass.of(family, 2, -1, -1),
        ]

    def curve_generators(self, scn: Scenario) -> List[CurveClass]:
        """
        曲線錐の生成元（nef_generators の双対基底）
        """
        family = scn.validate().family
        if family == Family.PP_N1:
            a, b = scn.a, scn.b
            if a == 0:
                l_coeff = 1
            elif a == 1:
                l_coeff = 2
            else:
                l_coeff = a
            h_coeff = 1 if b == 0 else b
            return [
                CurveClass.of(family, 1, 0, -1, -l_coeff),
                CurveClass.of(family, 0, 1, 0, -h_coeff),
                CurveClass.of(family, 0, 0, 1, 0),
                CurveClass.of(family, 0, 0, 0, 1),
            ]
        if family == Family.PP_N2:
            d = scn.d
            return [
                CurveClass.of(family, 1, 0, -1, -1),
                CurveClass.of(family, 0, 1, -d, -d),
                CurveClass.of(family, 0, 0, 1, 0),
                CurveClass.of(family, 0, 0, 0, 1),
            ]
        if family == Family.PN_EXAMPLE3:
            first = CurveClass.of(family, 1, -2, -3)
        else:
            first = CurveClass.of(family, 1, -1, -2)
        return [
            first,
            CurveClass.of(family, 0, 1, 0),
            CurveClass.of(family, 0, 0, 1),
        ]

    def anticanonical_class(self, scn: Scenario) -> DivisorClass:
        """
        -K_X~ の座標

        K_X~ = K_Y + (n-2)E~ + F より
        P^{n-1} x P^1: nH~ + 2L~ - (n-2)E~ - F
        P^{n-2} x P^2: (n-1)H~ + 3L~ - (n-2)E~ - F
        P^n: (n+1)H~ - (n-2)E~ - F
        """
        n = scn.n
        alpha, beta = scn.anticanonical_coefficients
        if scn.family.is_projective_example:
            return DivisorClass.of(scn.family, alpha, -(n - 2), -1)
        return DivisorClass.of(scn.family, alpha, beta, -(n - 2), -1)

    def pairing_matrix(self, div_gens: Sequence[DivisorClass], curve_gens: Sequence[CurveClass]) -> List[List[Fraction]]:
        return [[self.pairing(div, curve) for curve in curve_gens] for div in div_gens]

    def kronecker_check(self, cp: ConePresentation) -> bool:
        """
        生成元の交点行列が単位行列かどうか

        Args:
            cp: 錐の提示

        Returns:
            D_i · C_j = δ_ij ならば True
        """
        if len(cp.div_gens) != len(cp.curve_gens):
            return False
        if cp.div_gens and len(cp.div_gens) != cp.div_gens[0].rank:
            return False
        matrix = self.pairing_matrix(cp.div_gens, cp.curve_gens)
        for i, row in enumerate(matrix):
            for j, value in enumerate(row):
                if value != (1 if i == j else 0):
                    logger.debug(f"Kronecker 条件を満たしません: ({i},{j}) = {value}")
                    return False
        return True

    def presentation(self, scn: Scenario) -> ConePresentation:
        """
        生成元の組を作成し、Kronecker 条件を検証
        """
        div_gens = self.nef_generators(scn)
        curve_gens = self.curve_generators(scn)
        cp = ConePresentation(div_gens=div_gens, curve_gens=curve_gens)
        cp.pairing_matrix = self.pairing_matrix(div_gens, curve_gens)
        cp.verified = self.kronecker_check(cp)
        if not cp.verified:
            logger.warning(f"錐の提示が検証できません: {scn.label}")
        return cp

    def decompose(self, divisor: DivisorClass, gens: Sequence[DivisorClass]) -> Tuple[Fraction, ...]:
        """
        D = Σ c_i gens_i となる係数を厳密に求める

        Args:
            divisor: 分解する因子類
            gens: 一次独立な生成元

        Returns:
            係数のタプル

        Raises:
            ConeServiceError: 生成元行列が正則でない場合
        """
        if len(gens) != divisor.rank or any(g.rank != divisor.rank for g in gens):
            raise ConeServiceError(f"生成元の個数または階数が一致しません: {len(gens)} != {divisor.rank}")
        matrix = sympy.Matrix(
            [[to_sympy(g.coords[row]) for g in gens] for row in range(divisor.rank)]
        )
        if matrix.det() == 0:
            raise ConeServiceError("生成元行列が正則ではありません")
        target = sympy.Matrix([to_sympy(c) for c in divisor.coords])
        solution = matrix.LUsolve(target)
        return tuple(to_fraction(x) for x in solution)

    def reassemble(self, coeffs: Sequence, gens: Sequence[DivisorClass]) -> DivisorClass:
        """
        Σ c_i gens_i を計算
        """
        if len(coeffs) != len(gens) or not gens:
            raise ConeServiceError(f"係数と生成元の個数が一致しません: {len(coeffs)} != {len(gens)}")
        total = gens[0].scale(coeffs[0])
        for coef, gen in zip(coeffs[1:], gens[1:]):
            total = total + gen.scale(coef)
        return total

    def nef_status(self, coeffs: Sequence) -> NefStatus:
        """
        分解係数からネフ錐内の位置を判定

        すべて正なら内部（豊富）、すべて非負で 0 を含むなら境界、それ以外はネフでない。
        """
        values = [Fraction(c) for c in coeffs]
        if any(c < 0 for c in values):
            return NefStatus.NOT_NEF
        if any(c == 0 for c in values):
            return NefStatus.BOUNDARY
        return NefStatus.INTERIOR

    def _main_family_divisor(self, scn: Scenario) -> DivisorClass:
        """
        D(a, b) の場合分け
        """
        a, b, family = scn.a, scn.b, scn.family
        if a == 0:
            return DivisorClass.of(family, 1, 1, -1, -1)
        if a == 1:
            return DivisorClass.of(family, 2, 1 if b == 0 else b, -1, -1)
        return DivisorClass.of(family, a, 1 if b == 0 else b, -1, -1)
