"""
sympy と Fraction の相互変換
"""
from fractions import Fraction
from typing import Union

import sympy

Number = Union[int, Fraction, sympy.Rational]


def to_fraction(value: Number) -> Fraction:
    """
    sympy の有理数や整数を Fraction に変換

    Raises:
        TypeError: 有理数でない値の場合
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Basic):
        if not value.is_Rational:
            raise TypeError(f"有理数ではありません: {value}")
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"有理数に変換できません: {value!r}")


def to_sympy(value: Number) -> sympy.Rational:
    value = to_fraction(value)
    return sympy.Rational(value.numerator, value.denominator)
