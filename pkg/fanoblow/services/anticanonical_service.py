"""
反標準因子の自己交点数 (-K)^n を計算するサービス

3 通りの計算を持つ:
  closed   : 閉じた式
  pipeline : S を先にブローアップし、曲線のブローアップとフリップで補正
  direct   : 曲線 C を先にブローアップし、狭義変換 S' = Bl_t(S) をブローアップ
"""
import logging
from fractions import Fraction
from math import comb

from fanoblow.models.geometry import AmbientDegree, BlownUpCenterDegree
from fanoblow.models.scenario import Family, Scenario, ScenarioError
from fanoblow.models.segre import CurveSegreData
from fanoblow.models.verdict import SumTriple
from fanoblow.services.blowup_service import BlowupService
from fanoblow.services.chow_service import ChowService, e, h, l
from fanoblow.services.segre_service import SegreService, blown_up_surface_vanishing, surface_vanishing

logger = logging.getLogger(__name__)

METHODS = ("closed", "pipeline", "direct")


class AnticanonicalServiceError(Exception):
    """
    自己交点数計算関連のエラー
    """
    pass


class AnticanonicalService:
    """
    (-K_X~)^n の閉じた式と独立な検算経路
    """

    def __init__(self):
        self.chow = ChowService()
        self.segre = SegreService()
        self.blowup = BlowupService()

    # --- 閉じた和 ---

    def sums_direct(self, n: int, a: int, b: int) -> SumTriple:
        """
        I_n, I'_n, J_n を項ごとに足し上げる

        I_n  = Σ_{k=2}^{n} C(n,k) (-1)^k P(k-2) n^{n-k}
        I'_n = Σ_{k=2}^{n} C(n,k) (-1)^k k P(k-2) n^{n-k}
        J_n  = Σ_{k=2}^{n} C(n,k) (-1)^k Q(k-2) n^{n-k}
        """
        self._check_sums_domain(n, a, b)
        i_sum = i_prime = j_sum = Fraction(0)
        for k in range(2, n + 1):
            weight = comb(n, k) * (-1) ** k * n ** (n - k)
            segre = self.segre.segre_ci(k - 2, a, b)
            i_sum += weight * segre.p
            i_prime += weight * k * segre.p
            j_sum += weight * segre.q
        return SumTriple(I=i_sum, Iprime=i_prime, J=j_sum)

    def sums_closed(self, n: int, a: int, b: int) -> SumTriple:
        """
        I_n, I'_n, J_n の閉じた式

        a >= 2 の I_n は二項恒等式から
        ((n-a)^n + (a-1) n^n - a (n-1)^n) / (a(a-1))。

        Raises:
            AnticanonicalServiceError: a = 0 の場合
        """
        self._check_sums_domain(n, a, b)
        if a == 0:
            raise AnticanonicalServiceError("a = 0 の閉じた和はありません。sums_direct を使ってください")
        if a == 1:
            return SumTriple(
                I=Fraction(n ** n - (2 * n - 1) * (n - 1) ** (n - 1)),
                Iprime=Fraction(n * (n - 1) ** (n - 1)),
                J=Fraction(b + 1, 2) * ((5 * n - 2) * (n - 1) ** (n - 1) - 2 * n ** n),
            )
        i_sum = Fraction((n - a) ** n + (a - 1) * n ** n - a * (n - 1) ** n, a * (a - 1))
        i_prime = Fraction(n, a - 1) * ((n - 1) ** (n - 1) - (n - a) ** (n - 1))
        j_sum = (
            Fraction((a + b - 2 * a * b) * (n - a) - a * b * (a - 1) * n, a ** 2 * (a - 1) ** 2) * (n - a) ** (n - 1)
            + Fraction((a - 1) * n + (a + b - 2) * (n - 1), (a - 1) ** 2) * (n - 1) ** (n - 1)
            - Fraction(a + b, a ** 2) * n ** n
        )
        return SumTriple(I=i_sum, Iprime=i_prime, J=j_sum)

    # --- P^{n-1} x P^1 族の閉じた式 ---

    def kz_selfint_from_sums(self, n: int, a: int, b: int) -> Fraction:
        """
        (-K_Z)^n = 2n^n - (3a+b) I_n + (2a/n) I'_n - a J_n
        """
        sums = self.sums_direct(n, a, b)
        return 2 * Fraction(n) ** n - (3 * a + b) * sums.I + Fraction(2 * a, n) * sums.Iprime - a * sums.J

    def kz_selfint_closed(self, n: int, a: int, b: int) -> Fraction:
        """
        S のブローアップ Z の (-K_Z)^n の閉じた式
        """
        Scenario.main(n, a, b)
        if a == 1:
            return Fraction((7 - b) * n, 2) * (n - 1) ** (n - 1)
        denominator = (a - 1) ** 2
        return (
            Fraction((n - a) ** (n - 1) * ((-3 * a + 2 + a * b) * n + a ** 2 - a * b), denominator)
            + Fraction((n - 1) ** (n - 1) * ((a ** 2 - b) * n - a + b), denominator)
        )

    def kx_selfint_closed(self, n: int, a: int, b: int) -> Fraction:
        """
        P^{n-1} x P^1 族の (-K_X~)^n の閉じた式

        Args:
            n: 次元
            a: U の H 次数
            b: U の L 次数

        Returns:
            自己交点数

        Raises:
            ScenarioError: パラメータ領域外の場合
        """
        value = self.kz_selfint_closed(n, a, b) - 2 * (n - 1) * Fraction(n - 2) ** (n - 1) + Fraction(n - 3) ** n
        logger.debug(f"closed: n={n}, a={a}, b={b} -> {value}")
        return value

    def kx_selfint_case01(self, n: int) -> Fraction:
        """
        (a, b) = (0, 1) の直接計算

        X = Bl_C(Y) ≅ P^1 x Bl_z(P^{n-1}) から (-K_X)^n = 2n(n^{n-1} - (n-2)^{n-1})、
        S' 上の混合項は (n-2)^{n-k} - n^{n-k}。
        """
        if n < 3:
            raise ScenarioError(f"n >= 3 が必要です: n={n}")
        base = 2 * n * (n ** (n - 1) - (n - 2) ** (n - 1))
        total = base + sum(
            comb(n, k) * (-1) ** k * ((n - 2) ** (n - k) - n ** (n - k)) for k in range(2, n + 1)
        )
        return Fraction(total)

    def kx_selfint_p2family(self, n: int, d: int) -> Fraction:
        """
        P^{n-2} x P^2 族の (-K_X~)^n

        4n(n-1)^{n-1} + (n-2)^{n-1}(d(d-3)n - 2d^2 + 2) + (n-3)^n
        """
        Scenario.p2(n, d)
        return Fraction(
            4 * n * (n - 1) ** (n - 1)
            + (n - 2) ** (n - 1) * (d * (d - 3) * n - 2 * d ** 2 + 2)
            + (n - 3) ** n
        )

    # --- 補正項 ---

    def curve_blowup_correction(self, n: int, d_dot_c: int, data: CurveSegreData) -> Fraction:
        """
        曲線中心のブローアップによる (-K)^n の変化（例外因子の係数 n-2）

        補正は -n (n-2)^{n-1} (D·C) + (n-2)^n s_1(N*)。
        """
        center = self.blowup.curve_center(n, d_dot_c, self.segre.curve_s1(data))
        return self.blowup.correction(center, n - 2)

    def flip_correction(self, n: int) -> Fraction:
        """
        1 つのフリップによる (-K)^n の変化

        Γ~_0 の法束 O(-1)^{n-1} から -K·Γ~_0 = 3-n, s_1 = -(n-1)。係数 n-3 で展開すると (n-3)^n。
        """
        data = CurveSegreData(c1N=-(n - 1))
        center = self.blowup.curve_center(n, 3 - n, self.segre.curve_s1(data))
        return self.blowup.correction(center, n - 3)

    # --- 独立な計算経路 ---

    def kz_selfint_pipeline(self, scn: Scenario) -> Fraction:
        """
        S のブローアップ Z の (-K_Z)^n を級数の和から計算
        """
        scn.validate()
        n = scn.n
        alpha, beta = scn.anticanonical_coefficients
        base = self.chow.ambient_top_power(AmbientDegree(n=n, ambient=scn.family.ambient), alpha, beta)
        tbl = scn.center_table

        if scn.family == Family.PP_N1:
            a, b = scn.a, scn.b

            def restricted_power(k: int) -> Fraction:
                segre = self.segre.segre_ci(k - 2, a, b)
                return self.chow.restricted_anticanonical_power(tbl, n - k, segre, alpha, beta)
        else:
            classes = self.segre.conormal_segre_classes(self._center_roots(scn), n - 2, surface_vanishing)
            divisor = alpha * h + beta * l

            def restricted_power(k: int) -> Fraction:
                expr = divisor ** (n - k) * classes[k - 2]
                return self.chow.integrate(expr, tbl.dimension, lambda i, j, _k: self.chow.surface_degree(tbl, i, j))

        center = self.blowup.surface_center(n, restricted_power)
        return self.blowup.expand_power(center, base, 1)

    def kx_selfint_pipeline(self, scn: Scenario) -> Fraction:
        """
        S を先にブローアップする経路

        Z = Bl_S(Y) から曲線 C' をブローアップし、t 回のフリップ補正 (n-3)^n を加える。
        -K_Z · C' = -K_Y · C - t。

        Args:
            scn: シナリオ

        Returns:
            自己交点数
        """
        scn.validate()
        n, t = scn.n, scn.t
        kz = self.kz_selfint_pipeline(scn)
        d_dot_c = scn.curve_anticanonical_degree - t
        data = CurveSegreData.from_anticanonical_degree(d_dot_c, scn.curve_genus)
        kzt = kz + self.curve_blowup_correction(n, d_dot_c, data)
        value = kzt + t * self.flip_correction(n)
        logger.debug(f"pipeline: {scn.label}: (-K_Z)^n={kz}, after curve={kzt}, result={value}")
        return value

    def kx_selfint_direct(self, scn: Scenario) -> Fraction:
        """
        曲線 C を先にブローアップする経路

        X = Bl_C(Y) 上で S' = Bl_t(S)、c(N_{S'/X}) = (1+u)(1+v-e)、
        -K_X|_{S'} = -K_Y|_S - (n-2)e として S' をブローアップする。

        Args:
            scn: シナリオ

        Returns:
            自己交点数
        """
        scn.validate()
        n, t = scn.n, scn.t
        alpha, beta = scn.anticanonical_coefficients
        kx = self.kx_selfint_curve_blowup(scn)

        center_degree = BlownUpCenterDegree(table=scn.center_table, points=t)
        u, v = self._center_roots(scn)
        classes = self.segre.conormal_segre_classes([u, v - e], n - 2, blown_up_surface_vanishing)
        divisor = alpha * h + beta * l - (n - 2) * e

        def restricted_power(k: int) -> Fraction:
            return self.chow.integrate_on_center(divisor ** (n - k) * classes[k - 2], center_degree)

        center = self.blowup.surface_center(n, restricted_power)
        value = self.blowup.expand_power(center, kx, 1)
        logger.debug(f"direct: {scn.label}: (-K_X)^n={kx}, result={value}")
        return value

    def kx_selfint_curve_blowup(self, scn: Scenario) -> Fraction:
        """
        曲線 C だけをブローアップした X の (-K_X)^n
        """
        scn.validate()
        alpha, beta = scn.anticanonical_coefficients
        base = self.chow.ambient_top_power(AmbientDegree(n=scn.n, ambient=scn.family.ambient), alpha, beta)
        d_dot_c = scn.curve_anticanonical_degree
        data = CurveSegreData.from_anticanonical_degree(d_dot_c, scn.curve_genus)
        return base + self.curve_blowup_correction(scn.n, d_dot_c, data)

    def kx_selfint(self, scn: Scenario, method: str = "closed") -> Fraction:
        """
        手法を指定して (-K_X~)^n を計算

        closed は P^n の例では閉じた式がないため pipeline を使う。

        Raises:
            AnticanonicalServiceError: 未知の手法の場合
        """
        scn.validate()
        if method == "pipeline":
            return self.kx_selfint_pipeline(scn)
        if method == "direct":
            return self.kx_selfint_direct(scn)
        if method != "closed":
            raise AnticanonicalServiceError(f"未知の手法です: {method}")
        if scn.family == Family.PP_N1:
            return self.kx_selfint_closed(scn.n, scn.a, scn.b)
        if scn.family == Family.PP_N2:
            return self.kx_selfint_p2family(scn.n, scn.d)
        return self.kx_selfint_pipeline(scn)

    def _center_roots(self, scn: Scenario):
        (uh, ul), (vh, vl) = scn.center_roots
        return uh * h + ul * l, vh * h + vl * l

    def _check_sums_domain(self, n: int, a: int, b: int) -> None:
        if n < 2:
            raise AnticanonicalServiceError(f"n >= 2 が必要です: n={n}")
        if a < 0 or b < 0 or (a == 0 and b != 1):
            raise AnticanonicalServiceError(f"(a,b) が領域外です: ({a},{b})")

