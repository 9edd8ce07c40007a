"""
因子類・曲線類・錐の提示のデータモデル
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Tuple

from fanoblow.models.scenario import Family

# 基底の名前（表示用）
DIVISOR_BASIS = {
    4: ("H~", "L~", "E~", "F"),
    3: ("H~", "E~", "F"),
}
CURVE_BASIS = {
    4: ("l~", "h~", "e0~", "f"),
    3: ("l~", "e0~", "f"),
}


class NefStatus(str, Enum):
    """
    ネフ錐に対する位置
    """
    NOT_NEF = "NotNef"
    BOUNDARY = "Boundary"
    INTERIOR = "Interior"


def _format_combination(coords: Tuple[Fraction, ...], names: Tuple[str, ...]) -> str:
    parts = []
    for coef, name in zip(coords, names):
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        magnitude = abs(coef)
        body = name if magnitude == 1 else f"{magnitude}{name}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f"{sign}{body}"
    return text


@dataclass(frozen=True)
class DivisorClass:
    """
    N^1 の元。基底は (H~, L~, E~, F)、P^n の例では (H~, E~, F)
    """
    family: Family
    coords: Tuple[Fraction, ...]

    @classmethod
    def of(cls, family: Family, *coords) -> "DivisorClass":
        return cls(family=family, coords=tuple(Fraction(c) for c in coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.family, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def scale(self, factor) -> "DivisorClass":
        return DivisorClass(self.family, tuple(Fraction(factor) * x for x in self.coords))

    def __str__(self) -> str:
        return _format_combination(self.coords, DIVISOR_BASIS[self.rank])


@dataclass(frozen=True)
class CurveClass:
    """
    N_1 の元。基底は (l~, h~, e0~, f)、P^n の例では (l~, e0~, f)
    """
    family: Family
    coords: Tuple[Fraction, ...]

    @classmethod
    def of(cls, family: Family, *coords) -> "CurveClass":
        return cls(family=family, coords=tuple(Fraction(c) for c in coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return _format_combination(self.coords, CURVE_BASIS[self.rank])


@dataclass(frozen=True)
class PairingTable:
    """
    曲線基底 x 因子基底の交点数の表（行が曲線、列が因子）
    """
    rows: Tuple[Tuple[int, ...], ...]

    @classmethod
    def for_rank(cls, rank: int) -> "PairingTable":
        """
        Picard 数に応じた表を作成

        引き戻し類は対応する狭義変換曲線とだけ 1 で交わり、
        E~·e0~ = -1, F·e0~ = 1, F·f = -1, E~·f = 0。
        """
        if rank == 4:
            return cls(rows=(
                (1, 0, 0, 0),
                (0, 1, 0, 0),
                (0, 0, -1, 1),
                (0, 0, 0, -1),
            ))
        return cls(rows=(
            (1, 0, 0),
            (0, -1, 1),
            (0, 0, -1),
        ))

    @property
    def rank(self) -> int:
        return len(self.rows)


@dataclass
class ConePresentation:
    """
    ネフ錐と曲線錐の生成元の組
    """
    div_gens: List[DivisorClass]
    curve_gens: List[CurveClass]
    verified: bool = False
    pairing_matrix: List[List[Fraction]] = field(default_factory=list)
