"""
ブローアップの交点数公式と二項展開
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

logger = logging.getLogger(__name__)


class BlowupServiceError(Exception):
    """
    ブローアップ計算関連のエラー
    """
    pass


@dataclass(frozen=True)
class CenterData:
    """
    余次元 r の中心のデータ

    restricted_power(k) は (D|_S)^{n-k} s_{k-r}(N*_{S/Y}) の値を返す。
    """
    r: int
    n: int
    restricted_power: Callable[[int], Fraction]


class BlowupService:
    """
    (μ*D - cF)^n の展開を扱うサービス
    """

    def mixed_term(self, center: CenterData, k: int) -> Fraction:
        """
        (μ*D)^{n-k} F^k = (-1)^{r-1} (D|_S)^{n-k} s_{k-r}(N*)

        Args:
            center: 中心のデータ
            k: F の冪

        Returns:
            交点数（k < r では 0）

        Raises:
            BlowupServiceError: k が 1..n の範囲外の場合
        """
        if k < 1 or k > center.n:
            raise BlowupServiceError(f"k は 1..{center.n} の範囲である必要があります: k={k}")
        if k < center.r:
            return Fraction(0)
        return (-1) ** (center.r - 1) * Fraction(center.restricted_power(k))

    def expand_power(self, center: CenterData, base_selfint, c) -> Fraction:
        """
        (μ*D - cF)^n = D^n + Σ_{k=1}^{n} C(n,k) (-c)^k (μ*D)^{n-k} F^k

        Args:
            center: 中心のデータ
            base_selfint: D^n
            c: 差し引く例外因子の係数

        Returns:
            自己交点数
        """
        c = Fraction(c)
        total = Fraction(base_selfint)
        if c == 0:
            return total
        for k in range(1, center.n + 1):
            total += comb(center.n, k) * (-c) ** k * self.mixed_term(center, k)
        return total

    def correction(self, center: CenterData, c) -> Fraction:
        """
        expand_power から D^n を除いた補正項
        """
        return self.expand_power(center, 0, c)

    def curve_center(self, n: int, d_dot_c, s1) -> CenterData:
        """
        曲線中心（r = n - 1）のデータを作成

        Args:
            n: 次元
            d_dot_c: D · C
            s1: s_1(N*_{C}) = c_1(N_{C})

        Returns:
            中心のデータ
        """
        if n < 3:
            raise BlowupServiceError(f"n >= 3 が必要です: n={n}")
        d_dot_c = Fraction(d_dot_c)
        s1 = Fraction(s1)

        def restricted_power(k: int) -> Fraction:
            if k == n - 1:
                return d_dot_c
            if k == n:
                return s1
            return Fraction(0)

        return CenterData(r=n - 1, n=n, restricted_power=restricted_power)

    def surface_center(self, n: int, restricted_power: Callable[[int], Fraction]) -> CenterData:
        """
        余次元 2 の中心のデータを作成
        """
        if n < 3:
            raise BlowupServiceError(f"n >= 3 が必要です: n={n}")
        return CenterData(r=2, n=n, restricted_power=restricted_power)

    # --- 閉じた和の補題で使う二項恒等式 ---

    def binomial_sum(self, n: int, x: int, power: int) -> int:
        """
        Σ_{k=2}^{n} C(n,k) k^power (-x)^k n^{n-k}
        """
        self._check_power(power)
        return sum(comb(n, k) * k ** power * (-x) ** k * n ** (n - k) for k in range(2, n + 1))

    def binomial_closed(self, n: int, x: int, power: int) -> int:
        """
        binomial_sum の閉じた形

        power = 0: (n-x)^n + (x-1) n^n
        power = 1: x n^n - x n (n-x)^{n-1}
        power = 2: x(x-1) n^2 (n-x)^{n-2} + x n^n
        """
        self._check_power(power)
        if power == 0:
            return (n - x) ** n + (x - 1) * n ** n
        if power == 1:
            return x * n ** n - x * n * (n - x) ** (n - 1)
        return x * (x - 1) * n ** 2 * (n - x) ** (n - 2) + x * n ** n

    def identities_hold(self, n: int, x: int) -> bool:
        """
        3 つの二項恒等式がすべて成り立つか
        """
        if n < 2:
            raise BlowupServiceError(f"n >= 2 が必要です: n={n}")
        for power in (0, 1, 2):
            if self.binomial_sum(n, x, power) != self.binomial_closed(n, x, power):
                logger.warning(f"二項恒等式が一致しません: n={n}, x={x}, power={power}")
                return False
        return True

    def _check_power(self, power: int) -> None:
        if power not in (0, 1, 2):
            raise BlowupServiceError(f"power は 0, 1, 2 のいずれかです: power={power}")
