"""
シナリオ記述 "family=pp-n1, n=4, a=2, b=1" の解析
"""
from dataclasses import dataclass, field
from typing import Dict, Tuple
import re

from fanoblow.models.scenario import Family, Scenario, ScenarioSpecError

SPEC_KEYS = ("family", "n", "a", "b", "d", "t")

# key=value の1項目
ITEM_PATTERN = re.compile(r"\s*(?P<key>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?P<value>[^,\s]+)\s*")
INT_PATTERN = re.compile(r"^[+-]?\d+$")


@dataclass
class ScenarioSpec:
    """
    キーと値の組で書かれたシナリオ記述
    """
    text: str
    values: Dict[str, str] = field(default_factory=dict)
    positions: Dict[str, Tuple[int, int]] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "ScenarioSpec":
        """
        記述を解析してキーと値を取り出す

        項目はカンマまたは改行で区切る。

        Args:
            text: シナリオ記述

        Returns:
            解析済みの記述

        Raises:
            ScenarioSpecError: 書式の誤り（行・列つき）
        """
        spec = cls(text=text)
        for line_no, line in enumerate(text.splitlines() or [""], start=1):
            pos = 0
            while pos < len(line):
                if line[pos] in " \t":
                    pos += 1
                    continue
                match = ITEM_PATTERN.match(line, pos)
                if not match:
                    raise ScenarioSpecError("key=value の形式ではありません", line_no, pos + 1)
                key = match.group("key").lower()
                column = match.start("key") + 1
                if key not in SPEC_KEYS:
                    raise ScenarioSpecError(f"未知のキーです: {key}", line_no, column)
                if key in spec.values:
                    raise ScenarioSpecError(f"キーが重複しています: {key}", line_no, column)
                spec.values[key] = match.group("value")
                spec.positions[key] = (line_no, match.start("value") + 1)
                pos = match.end()
                if pos < len(line):
                    if line[pos] != ",":
                        raise ScenarioSpecError("項目の区切りはカンマです", line_no, pos + 1)
                    pos += 1
        if "family" not in spec.values:
            raise ScenarioSpecError("family が指定されていません", 1, 1)
        if "n" not in spec.values:
            raise ScenarioSpecError("n が指定されていません", 1, 1)
        return spec

    def to_scenario(self) -> Scenario:
        """
        シナリオに変換し、パラメータ領域を検証

        Raises:
            ScenarioSpecError: 値の型の誤り
            ScenarioError: 領域外のパラメータ
        """
        line, column = self.positions["family"]
        try:
            family = Family(self.values["family"].lower())
        except ValueError:
            choices = ", ".join(f.value for f in Family)
            raise ScenarioSpecError(f"未知の族です: {self.values['family']} ({choices})", line, column)

        params = {key: self._int(key) for key in ("n", "a", "b", "d", "t") if key in self.values}
        if "t" not in params:
            params["t"] = family.default_points
        return Scenario(family=family, **params).validate()

    def _int(self, key: str) -> int:
        value = self.values[key]
        if not INT_PATTERN.match(value):
            line, column = self.positions[key]
            raise ScenarioSpecError(f"{key} は整数である必要があります: {value}", line, column)
        return int(value)


def parse_scenario(text: str) -> Scenario:
    return ScenarioSpec.parse(text).to_scenario()
