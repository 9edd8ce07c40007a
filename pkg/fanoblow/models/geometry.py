"""
交差理論で使う次数表のデータモデル
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class Ambient(str, Enum):
    """
    周囲空間 Y の種類
    """
    PP_N1 = "P^(n-1)xP^1"
    PP_N2 = "P^(n-2)xP^2"
    PN = "P^n"


@dataclass(frozen=True)
class AmbientDegree:
    """
    周囲空間 Y 上の H^i L^j の次数写像

    H は第1因子、L は第2因子の超平面類の引き戻し。P^n では L を使わない。
    """
    n: int
    ambient: Ambient

    @property
    def top_monomial(self) -> tuple:
        """
        次数 1 を持つ唯一の単項式の指数 (i, j)
        """
        if self.ambient == Ambient.PP_N1:
            return (self.n - 1, 1)
        if self.ambient == Ambient.PP_N2:
            return (self.n - 2, 2)
        return (self.n, 0)

    @property
    def minimum_dimension(self) -> int:
        return 4 if self.ambient == Ambient.PN else 3


@dataclass(frozen=True)
class SurfaceDegreeTable:
    """
    中心 S 上の最高次単項式の値

    S = U ∩ V, U ~ aH + bL, V ~ H + L のとき h^{n-2} = a + b, h^{n-3} l = a、
    l を 2 回以上含む単項式は 0。
    """
    n: int
    a: int
    b: int

    @property
    def dimension(self) -> int:
        return self.n - 2

    @property
    def top(self) -> Fraction:
        """
        h^{n-2} の値
        """
        return Fraction(self.a + self.b)

    @property
    def mixed(self) -> Fraction:
        """
        h^{n-3} l の値
        """
        return Fraction(self.a)

    @classmethod
    def linear(cls, n: int, degree: int = 1) -> "SurfaceDegreeTable":
        """
        l が数値的に自明な中心の表を作成

        P^n 内の次数 degree の中心や P^{n-2} x {pt} のファイバーでは
        h^{n-2} = degree, h^{n-3} l = 0 となり、(a, b) = (0, degree) の表と一致する。

        Args:
            n: 周囲空間の次元
            degree: 中心の次数

        Returns:
            次数表
        """
        return cls(n=n, a=0, b=degree)


@dataclass(frozen=True)
class BlownUpCenterDegree:
    """
    S' = Bl_t(S) 上の h^i l^j e^k の次数写像

    e = e_1 + ... + e_t は t 個の点の例外因子の和。
    """
    table: SurfaceDegreeTable
    points: int

    @property
    def dimension(self) -> int:
        return self.table.dimension

    @property
    def exceptional_top(self) -> Fraction:
        """
        e^{dim} = t (-1)^{dim-1}
        """
        return Fraction(self.points * (-1) ** (self.dimension - 1))
