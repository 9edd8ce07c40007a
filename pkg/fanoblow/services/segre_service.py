"""
法束の Segre 類を計算するサービス

規約は s(N*) = 1/c(N*)。分裂束 N = ⊕ O(r_i) に対して
s(N*) = Π 1/(1 - r_i) = Π Σ_k r_i^k。
"""
import logging
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

import sympy

from fanoblow.models.segre import CurveSegreData, SegreVector
from fanoblow.services.chow_service import e, h, l
from fanoblow.utils.rational import to_fraction

logger = logging.getLogger(__name__)

# 単項式 (i, j, k) = h^i l^j e^k が数値的に 0 かどうか
VanishingRule = Callable[[int, int, int], bool]


def surface_vanishing(i: int, j: int, k: int) -> bool:
    """
    S 上の規則: l^2 = 0
    """
    return j >= 2


def blown_up_surface_vanishing(i: int, j: int, k: int) -> bool:
    """
    S' = Bl_t(S) 上の規則: l^2 = 0、h e = l e = 0
    """
    return j >= 2 or (k >= 1 and i + j >= 1)


class SegreServiceError(Exception):
    """
    Segre 類計算関連のエラー
    """
    pass


class SegreService:
    """
    完全交叉の閉じた式と、級数の逆元による汎用計算
    """

    def segre_ci(self, m: int, a: int, b: int) -> SegreVector:
        """
        S = U ∩ V, U ~ aH + bL, V ~ H + L の s_m(N*_{S/Y}) の係数

        P(m) = Σ_{i=0}^{m} a^i,  Q(m) = Σ_{i=0}^{m} (i a^{i-1} b + (m-i) a^i)。
        a = 0 のときは 0^0 = 1 とし、i a^{i-1} は i = 1 の項だけが残る。

        Args:
            m: 次数
            a: U の H 次数
            b: U の L 次数

        Returns:
            (P(m), Q(m))

        Raises:
            SegreServiceError: m が負の場合
        """
        self._check_degree(m, a, b)
        p = sum((Fraction(a) ** i for i in range(m + 1)), Fraction(0))
        q = Fraction(0)
        for i in range(m + 1):
            if i >= 1:
                q += i * Fraction(a) ** (i - 1) * b
            q += (m - i) * Fraction(a) ** i
        return SegreVector(m=m, p=p, q=q)

    def conormal_segre_classes(
        self,
        roots: Sequence,
        top: int,
        vanishing: Optional[VanishingRule] = None,
    ) -> List:
        """
        分裂束の Chern 根から s_0(N*), ..., s_top(N*) を計算

        c(N*) = Π(1 - r_i) を作り、c·s = 1 を次数ごとに解く。

        Args:
            roots: 法束の Chern 根（h, l, e の一次式）
            top: 打ち切り次数（中心の次元）
            vanishing: 数値的に 0 となる単項式の判定

        Returns:
            s_m(N*) の sympy 式のリスト（長さ top + 1）
        """
        if top < 0:
            raise SegreServiceError(f"打ち切り次数は非負である必要があります: top={top}")
        vanishing = vanishing or surface_vanishing
        chern = sympy.Integer(1)
        for root in roots:
            chern = self._truncate(sympy.expand(chern * (1 - root)), top, vanishing)
        chern_parts = self._graded_parts(chern, top)

        segre = [sympy.Integer(1)]
        for m in range(1, top + 1):
            part = -sum((chern_parts[k] * segre[m - k] for k in range(1, m + 1)), sympy.Integer(0))
            segre.append(self._truncate(sympy.expand(part), top, vanishing))
        logger.debug(f"Segre 類を計算しました: roots={list(roots)}, top={top}")
        return segre

    def segre_by_inversion(self, m: int, a: int, b: int) -> SegreVector:
        """
        (1 - u)(1 - v) の逆元から s_m(N*) を計算（segre_ci の検算用）

        Args:
            m: 次数
            a: U の H 次数
            b: U の L 次数

        Returns:
            (P(m), Q(m))
        """
        self._check_degree(m, a, b)
        u = a * h + b * l
        v = h + l
        s_m = self.conormal_segre_classes([u, v], m)[m]
        poly = sympy.Poly(s_m, h, l) if s_m != 0 else None
        p = poly.coeff_monomial(h ** m) if poly is not None else 0
        q = poly.coeff_monomial(h ** (m - 1) * l) if (poly is not None and m >= 1) else 0
        return SegreVector(m=m, p=to_fraction(p), q=to_fraction(q))

    def curve_s1(self, data: CurveSegreData) -> int:
        """
        曲線中心の s_1(N*) = c_1(N)
        """
        return data.c1N

    def recurrence_holds(self, m: int, a: int, b: int) -> bool:
        """
        P(m) = a P(m-1) + 1、Q(m) = Q(m-1) + m a^{m-1} b + P(m-1) の成立を確認
        """
        if m < 1:
            raise SegreServiceError(f"漸化式は m >= 1 で定義されます: m={m}")
        current = self.segre_ci(m, a, b)
        previous = self.segre_ci(m - 1, a, b)
        p_ok = current.p == a * previous.p + 1
        q_ok = current.q == previous.q + m * Fraction(a) ** (m - 1) * b + previous.p
        return p_ok and q_ok

    def _check_degree(self, m: int, a: int, b: int) -> None:
        if m < 0:
            raise SegreServiceError(f"次数は非負である必要があります: m={m}")
        if a < 0 or b < 0:
            raise SegreServiceError(f"a, b は非負である必要があります: (a,b)=({a},{b})")

    def _truncate(self, expr, top: int, vanishing: VanishingRule):
        if expr == 0:
            return sympy.Integer(0)
        poly = sympy.Poly(expr, h, l, e)
        kept = sympy.Integer(0)
        for (i, j, k), coeff in poly.terms():
            if i + j + k > top or vanishing(i, j, k):
                continue
            kept += coeff * h ** i * l ** j * e ** k
        return kept

    def _graded_parts(self, expr, top: int) -> List:
        parts = [sympy.Integer(0)] * (top + 1)
        if expr == 0:
            return parts
        for (i, j, k), coeff in sympy.Poly(expr, h, l, e).terms():
            degree = i + j + k
            if degree <= top:
                parts[degree] += coeff * h ** i * l ** j * e ** k
        return parts
