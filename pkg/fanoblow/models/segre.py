"""
Segre 類関連のデータモデル
"""
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class SegreVector:
    """
    s_m(N*_{S/Y}) = p h^m + q h^{m-1} l の係数
    """
    m: int
    p: Fraction
    q: Fraction

    def as_tuple(self) -> tuple:
        return (self.p, self.q)


@dataclass(frozen=True)
class CurveSegreData:
    """
    曲線中心の法束データ

    符号の規約は s(N*) = 1/c(N*)。よって s_1(N*) = -c_1(N*) = c_1(N)。
    """
    c1N: int
    genus: int = 0

    @classmethod
    def from_anticanonical_degree(cls, anticanonical_degree: int, genus: int = 0) -> "CurveSegreData":
        """
        -K · C と種数から法束の次数を求めて作成

        deg N_{C} = -K · C + 2g - 2

        Args:
            anticanonical_degree: -K · C
            genus: 曲線の種数

        Returns:
            曲線中心の法束データ
        """
        return cls(c1N=anticanonical_degree + 2 * genus - 2, genus=genus)
