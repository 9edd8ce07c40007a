"""
出力表の1行を表すモデル（CSV / JSON の往復用）
"""
from fractions import Fraction
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, field_validator

from fanoblow.models.scenario import Family, Scenario
from fanoblow.models.verdict import Verdict, VerdictStatus

COLUMNS = ("family", "n", "a", "b", "d", "status", "c0", "c1", "c2", "c3", "selfint")
COEFF_COLUMNS = ("c0", "c1", "c2", "c3")


def format_fraction(value: Optional[Fraction]) -> Optional[str]:
    """
    有理数を "p/q" 形式（整数は分母なし）の文字列に変換
    """
    if value is None:
        return None
    return str(Fraction(value))


class ResultRow(BaseModel):
    """
    分類結果の1行

    t は P^n の例で既定値と異なる場合だけ持つ。
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    family: Family
    n: int
    a: Optional[int] = None
    b: Optional[int] = None
    d: Optional[int] = None
    t: Optional[int] = None
    status: VerdictStatus
    c0: Optional[str] = None
    c1: Optional[str] = None
    c2: Optional[str] = None
    c3: Optional[str] = None
    selfint: str

    @field_validator("a", "b", "d", "t", "c0", "c1", "c2", "c3", mode="before")
    @classmethod
    def empty_as_none(cls, value: Any) -> Any:
        if value == "":
            return None
        return value

    @field_validator("c0", "c1", "c2", "c3", "selfint")
    @classmethod
    def exact_rational(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return value
        try:
            return str(Fraction(value))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"有理数ではありません: {value!r}") from e

    @classmethod
    def from_result(cls, scn: Scenario, verdict: Verdict) -> "ResultRow":
        """
        シナリオと判定結果から行を作成
        """
        coeffs = {column: format_fraction(c) for column, c in zip(COEFF_COLUMNS, verdict.coeffs)}
        t = scn.t if scn.family.is_projective_example and scn.t != scn.family.default_points else None
        return cls(
            family=scn.family,
            n=scn.n,
            a=scn.a,
            b=scn.b,
            d=scn.d,
            t=t,
            status=verdict.status,
            selfint=format_fraction(verdict.selfint),
            **coeffs,
        )

    def to_scenario(self) -> Scenario:
        t = self.t if self.t is not None else self.family.default_points
        return Scenario(family=self.family, n=self.n, a=self.a, b=self.b, d=self.d, t=t).validate()

    def to_verdict(self) -> Verdict:
        coeffs = tuple(
            Fraction(value) for value in (self.c0, self.c1, self.c2, self.c3) if value is not None
        )
        return Verdict(status=self.status, coeffs=coeffs, selfint=Fraction(self.selfint))

    def to_record(self) -> Dict[str, Any]:
        """
        出力用の辞書（列の順序は COLUMNS、t は値がある場合だけ末尾に追加）
        """
        record = {
            column: (getattr(self, column).value if column in ("family", "status") else getattr(self, column))
            for column in COLUMNS
        }
        if self.t is not None:
            record["t"] = self.t
        return record
