"""
分類結果のデータモデル
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from fanoblow.models.scenario import Scenario


class VerdictStatus(str, Enum):
    """
    分類の結論
    """
    FANO = "Fano"
    WEAK_FANO_NOT_FANO = "WeakFanoNotFano"
    NEF_NOT_BIG = "NefNotBig"
    NOT_NEF = "NotNef"

    @property
    def is_weak_fano(self) -> bool:
        return self in (VerdictStatus.FANO, VerdictStatus.WEAK_FANO_NOT_FANO)


@dataclass(frozen=True)
class Verdict:
    """
    分類の結論と証拠（分解係数と (-K)^n）
    """
    status: VerdictStatus
    coeffs: Tuple[Fraction, ...]
    selfint: Fraction


@dataclass(frozen=True)
class SumTriple:
    """
    I_n, I'_n, J_n の値
    """
    I: Fraction
    Iprime: Fraction
    J: Fraction


@dataclass(frozen=True)
class SkippedRow:
    """
    スイープで除外した点と理由
    """
    params: Tuple
    reason: str


@dataclass
class SweepResult:
    """
    パラメータスイープの結果
    """
    rows: List[Tuple[Scenario, Verdict]] = field(default_factory=list)
    skipped: List[SkippedRow] = field(default_factory=list)

    def weak_fano_params(self, n: Optional[int] = None) -> set:
        """
        弱 Fano 行のパラメータ集合（a, b または n, d）
        """
        return {
            _params(scn) for scn, verdict in self.rows
            if verdict.status.is_weak_fano and (n is None or scn.n == n)
        }

    def fano_params(self, n: Optional[int] = None) -> set:
        return {
            _params(scn) for scn, verdict in self.rows
            if verdict.status == VerdictStatus.FANO and (n is None or scn.n == n)
        }


def _params(scn: Scenario) -> tuple:
    if scn.a is not None:
        return (scn.a, scn.b)
    if scn.d is not None:
        return (scn.n, scn.d)
    return (scn.n, scn.t)
