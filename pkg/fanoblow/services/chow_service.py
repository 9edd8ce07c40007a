"""
周囲空間と中心 S の次数写像（単項式の積分）
"""
import logging
from fractions import Fraction
from math import comb
from typing import Callable

import sympy

from fanoblow.models.geometry import Ambient, AmbientDegree, BlownUpCenterDegree, SurfaceDegreeTable
from fanoblow.models.segre import SegreVector
from fanoblow.utils.rational import to_fraction

logger = logging.getLogger(__name__)

# 中心上の類: h = H|_S, l = L|_S, e = 点の例外因子の和
h, l, e = sympy.symbols("h l e")


class ChowServiceError(Exception):
    """
    次数計算関連のエラー
    """
    pass


class ChowService:
    """
    単項式を指数の参照で有理数に落とすサービス
    """

    def ambient_degree(self, amb: AmbientDegree, i: int, j: int) -> Fraction:
        """
        周囲空間での H^i L^j の次数

        Args:
            amb: 周囲空間
            i: H の指数
            j: L の指数

        Returns:
            次数（0 または 1）

        Raises:
            ChowServiceError: 指数が負、または P^n で j > 0 の場合
        """
        if i < 0 or j < 0:
            raise ChowServiceError(f"指数は非負である必要があります: (i,j)=({i},{j})")
        if amb.n < amb.minimum_dimension:
            raise ChowServiceError(f"{amb.ambient.value} では n >= {amb.minimum_dimension} が必要です: n={amb.n}")
        if amb.ambient == Ambient.PN and j != 0:
            raise ChowServiceError(f"P^n には L がありません: j={j}")
        return Fraction(1) if (i, j) == amb.top_monomial else Fraction(0)

    def ambient_top_power(self, amb: AmbientDegree, alpha: int, beta: int) -> Fraction:
        """
        (αH + βL)^n の次数
        """
        n = amb.n
        exponents = range(n + 1) if amb.ambient != Ambient.PN else (0,)
        return sum(
            (comb(n, j) * Fraction(alpha) ** (n - j) * Fraction(beta) ** j * self.ambient_degree(amb, n - j, j)
             for j in exponents),
            Fraction(0),
        )

    def surface_degree(self, tbl: SurfaceDegreeTable, i: int, j: int) -> Fraction:
        """
        S 上の h^i l^j の次数

        Raises:
            ChowServiceError: 次数が dim S = n-2 と一致しない場合
        """
        if i < 0 or j < 0:
            raise ChowServiceError(f"指数は非負である必要があります: (i,j)=({i},{j})")
        if i + j != tbl.dimension:
            raise ChowServiceError(f"次数は dim S = {tbl.dimension} である必要があります: (i,j)=({i},{j})")
        if j == 0:
            return tbl.top
        if j == 1:
            return tbl.mixed
        return Fraction(0)

    def surface_degree_via_ambient(self, tbl: SurfaceDegreeTable, i: int, j: int) -> Fraction:
        """
        H^i L^j (aH+bL)(H+L) を周囲空間で計算した値
        """
        if i + j != tbl.dimension:
            raise ChowServiceError(f"次数は dim S = {tbl.dimension} である必要があります: (i,j)=({i},{j})")
        amb = AmbientDegree(n=tbl.n, ambient=Ambient.PP_N1)
        a, b = tbl.a, tbl.b
        return (
            a * self.ambient_degree(amb, i + 2, j)
            + (a + b) * self.ambient_degree(amb, i + 1, j + 1)
            + b * self.ambient_degree(amb, i, j + 2)
        )

    def blown_up_degree(self, center: BlownUpCenterDegree, i: int, j: int, k: int) -> Fraction:
        """
        S' = Bl_t(S) 上の h^i l^j e^k の次数
        """
        if min(i, j, k) < 0:
            raise ChowServiceError(f"指数は非負である必要があります: (i,j,k)=({i},{j},{k})")
        if i + j + k != center.dimension:
            raise ChowServiceError(
                f"次数は dim S' = {center.dimension} である必要があります: (i,j,k)=({i},{j},{k})"
            )
        if k == 0:
            return self.surface_degree(center.table, i, j)
        # 引き戻し類は点の例外因子上で自明
        if i + j > 0:
            return Fraction(0)
        return center.exceptional_top

    def integrate(self, expr, dimension: int, degree: Callable[[int, int, int], Fraction]) -> Fraction:
        """
        h, l, e の多項式を単項式ごとに次数写像で評価

        Args:
            expr: sympy の多項式（次数 dimension の斉次式）
            dimension: 中心の次元
            degree: (i, j, k) -> h^i l^j e^k の次数

        Returns:
            積分値
        """
        poly = sympy.Poly(sympy.expand(expr), h, l, e)
        total = Fraction(0)
        for (i, j, k), coeff in poly.terms():
            if coeff == 0:
                continue
            if i + j + k != dimension:
                raise ChowServiceError(f"斉次でない項があります: h^{i} l^{j} e^{k}")
            total += to_fraction(coeff) * degree(i, j, k)
        return total

    def integrate_on_center(self, expr, center: BlownUpCenterDegree) -> Fraction:
        return self.integrate(
            expr,
            center.dimension,
            lambda i, j, k: self.blown_up_degree(center, i, j, k),
        )

    def restricted_anticanonical_power(
        self,
        tbl: SurfaceDegreeTable,
        j: int,
        segre: SegreVector,
        alpha: int,
        beta: int,
    ) -> Fraction:
        """
        (αh + βl)^j · (P h^m + Q h^{m-1} l) の S 上の次数

        l^2 = 0 より (αh + βl)^j = α^j h^j + j α^{j-1} β h^{j-1} l。

        Args:
            tbl: S の次数表
            j: 冪指数
            segre: s_m の係数
            alpha: h の係数
            beta: l の係数

        Returns:
            次数
        """
        dim = tbl.dimension
        if j < 0 or j + segre.m != dim:
            raise ChowServiceError(f"次数は dim S = {dim} である必要があります: j={j}, m={segre.m}")
        alpha = Fraction(alpha)
        power = alpha ** j
        linear = j * alpha ** (j - 1) * beta if j >= 1 else Fraction(0)
        top_coeff = power * segre.p
        mixed_coeff = power * segre.q + linear * segre.p
        value = top_coeff * self.surface_degree(tbl, dim, 0)
        if dim >= 1:
            value += mixed_coeff * self.surface_degree(tbl, dim - 1, 1)
        return value
