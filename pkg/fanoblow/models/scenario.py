"""
二重ブローアップの設定（シナリオ）を表すデータモデル
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from fanoblow.models.geometry import Ambient, SurfaceDegreeTable


class ScenarioError(ValueError):
    """
    パラメータ領域外のシナリオ
    """
    pass


class ScenarioSpecError(ScenarioError):
    """
    シナリオ記述の解析エラー（1 始まりの行と列を持つ）
    """
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class Family(str, Enum):
    """
    シナリオの族
    """
    PP_N1 = "pp-n1"
    PP_N2 = "pp-n2"
    PN_EXAMPLE1 = "pn-ex1"
    PN_EXAMPLE2 = "pn-ex2"
    PN_EXAMPLE3 = "pn-ex3"

    @property
    def ambient(self) -> Ambient:
        if self == Family.PP_N1:
            return Ambient.PP_N1
        if self == Family.PP_N2:
            return Ambient.PP_N2
        return Ambient.PN

    @property
    def is_projective_example(self) -> bool:
        return self.ambient == Ambient.PN

    @property
    def picard_number(self) -> int:
        return 3 if self.is_projective_example else 4

    @property
    def default_points(self) -> int:
        """
        C ∩ S の点の個数の既定値
        """
        return 2 if self == Family.PN_EXAMPLE3 else 1

    @property
    def sort_order(self) -> int:
        return list(Family).index(self)


@dataclass(frozen=True)
class Scenario:
    """
    族と整数パラメータで決まるブローアップの設定

    pp-n1: Y = P^{n-1} x P^1, C は p のファイバー, S は (a,b) と (1,1) の完全交叉
    pp-n2: Y = P^{n-2} x P^2, C は p のファイバー内の d 次平面曲線, S は q のファイバー
    pn-ex1/2/3: Y = P^n の例 (直線と (n-2) 平面, 直線と超平面・超二次曲面の交叉, 二次曲線と (n-2) 平面)
    """
    family: Family
    n: int
    a: Optional[int] = None
    b: Optional[int] = None
    d: Optional[int] = None
    t: int = 1

    @classmethod
    def main(cls, n: int, a: int, b: int) -> "Scenario":
        """
        P^{n-1} x P^1 族のシナリオを作成
        """
        return cls(family=Family.PP_N1, n=n, a=a, b=b).validate()

    @classmethod
    def p2(cls, n: int, d: int) -> "Scenario":
        """
        P^{n-2} x P^2 族のシナリオを作成
        """
        return cls(family=Family.PP_N2, n=n, d=d).validate()

    @classmethod
    def pn(cls, family: Family, n: int, t: Optional[int] = None) -> "Scenario":
        """
        P^n の例のシナリオを作成
        """
        if t is None:
            t = family.default_points
        return cls(family=family, n=n, t=t).validate()

    def validate(self) -> "Scenario":
        """
        パラメータ領域を検証

        Returns:
            検証済みのシナリオ自身

        Raises:
            ScenarioError: 領域外の場合
        """
        family = self.family
        if family == Family.PP_N1:
            if self.a is None or self.b is None:
                raise ScenarioError("pp-n1 には a と b が必要です")
            if self.d is not None:
                raise ScenarioError("pp-n1 では d は使えません")
            if self.n < 3:
                raise ScenarioError(f"n >= 3 が必要です: n={self.n}")
            if self.a < 0 or self.b < 0:
                raise ScenarioError(f"a, b は非負である必要があります: (a,b)=({self.a},{self.b})")
            # S の既約性から a = 0 ならば b = 1
            if self.a == 0 and self.b != 1:
                raise ScenarioError(f"a = 0 のときは b = 1 のみ許されます: b={self.b}")
            if self.t != 1:
                raise ScenarioError(f"pp-n1 では C と S は1点で交わります: t={self.t}")
        elif family == Family.PP_N2:
            if self.d is None:
                raise ScenarioError("pp-n2 には d が必要です")
            if self.a is not None or self.b is not None:
                raise ScenarioError("pp-n2 では a, b は使えません")
            if self.n < 3:
                raise ScenarioError(f"n >= 3 が必要です: n={self.n}")
            if self.d < 1:
                raise ScenarioError(f"d >= 1 が必要です: d={self.d}")
            if self.t != 1:
                raise ScenarioError(f"pp-n2 では C と S は1点で交わります: t={self.t}")
        else:
            if self.a is not None or self.b is not None or self.d is not None:
                raise ScenarioError(f"{family.value} では a, b, d は使えません")
            if self.n < 4:
                raise ScenarioError(f"P^n の例では n >= 4 が必要です: n={self.n}")
            allowed = (1, 2) if family == Family.PN_EXAMPLE2 else (family.default_points,)
            if self.t not in allowed:
                raise ScenarioError(f"{family.value} の交点数は {allowed} のいずれかです: t={self.t}")
        return self

    @property
    def label(self) -> str:
        params = [f"n={self.n}"]
        if self.a is not None:
            params.append(f"a={self.a}")
        if self.b is not None:
            params.append(f"b={self.b}")
        if self.d is not None:
            params.append(f"d={self.d}")
        if self.family.is_projective_example:
            params.append(f"t={self.t}")
        return f"{self.family.value}({', '.join(params)})"

    @property
    def sort_key(self) -> tuple:
        return (
            self.family.sort_order,
            self.n,
            -1 if self.a is None else self.a,
            -1 if self.b is None else self.b,
            -1 if self.d is None else self.d,
            self.t,
        )

    # --- 幾何データ ---

    @property
    def anticanonical_coefficients(self) -> Tuple[int, int]:
        """
        -K_Y = αH + βL の (α, β)
        """
        if self.family == Family.PP_N1:
            return (self.n, 2)
        if self.family == Family.PP_N2:
            return (self.n - 1, 3)
        return (self.n + 1, 0)

    @property
    def curve_anticanonical_degree(self) -> int:
        """
        -K_Y · C
        """
        if self.family == Family.PP_N1:
            return 2
        if self.family == Family.PP_N2:
            return 3 * self.d
        if self.family == Family.PN_EXAMPLE3:
            return 2 * (self.n + 1)
        return self.n + 1

    @property
    def curve_genus(self) -> int:
        if self.family == Family.PP_N2:
            return (self.d - 1) * (self.d - 2) // 2
        return 0

    @property
    def center_roots(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        """
        N_{S/Y} = u ⊕ v の (h の係数, l の係数)
        """
        if self.family == Family.PP_N1:
            return ((self.a, self.b), (1, 1))
        if self.family == Family.PP_N2:
            return ((0, 0), (0, 0))
        if self.family == Family.PN_EXAMPLE2:
            return ((2, 0), (1, 0))
        return ((1, 0), (1, 0))

    @property
    def center_table(self) -> SurfaceDegreeTable:
        if self.family == Family.PP_N1:
            return SurfaceDegreeTable(n=self.n, a=self.a, b=self.b)
        if self.family == Family.PN_EXAMPLE2:
            return SurfaceDegreeTable.linear(self.n, degree=2)
        return SurfaceDegreeTable.linear(self.n)
