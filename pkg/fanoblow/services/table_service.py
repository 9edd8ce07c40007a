"""
分類表を Markdown で出力するサービス
"""
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional

from jinja2 import Environment, FileSystemLoader

from fanoblow.models.scenario import Family
from fanoblow.models.verdict import SweepResult, Verdict
from fanoblow.services.classify_service import ClassifyService
from fanoblow.services.cone_service import ConeService

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / "utils" / "templates"
TABLES = ("main", "p2", "pn", "all")


class TableServiceError(Exception):
    """
    表の生成関連のエラー
    """
    pass


class TableService:
    """
    スイート結果を分類表にまとめるサービス
    """

    def __init__(self, classify: Optional[ClassifyService] = None):
        self.classify = classify or ClassifyService()
        self.cone = ConeService()
        self.env = Environment(
            loader=FileSystemLoader(str(TEMPLATE_DIR)),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )

    def render(
        self,
        which: str = "all",
        n_range: Iterable[int] = range(3, 7),
        ab_range: Iterable[int] = range(0, 5),
        d_range: Iterable[int] = range(1, 5),
    ) -> str:
        """
        分類表を描画

        Args:
            which: main / p2 / pn / all
            n_range: n の範囲
            ab_range: a, b の範囲（main）
            d_range: d の範囲（p2）

        Returns:
            Markdown 文字列
        """
        if which not in TABLES:
            raise TableServiceError(f"未知の表です: {which}")
        n_values = list(n_range)
        sections: List[Dict] = []
        if which in ("main", "all"):
            sections.extend(self.main_sections(n_values, list(ab_range)))
        if which in ("p2", "all"):
            sections.append(self.p2_section(n_values, list(d_range)))
        if which in ("pn", "all"):
            sections.append(self.pn_section([n for n in n_values if n >= 4] or [4]))

        template = self.env.get_template("classification.md.j2")
        logger.info(f"分類表を生成します: {which}")
        return template.render(title="Weak Fano classification of double blow-ups", sections=sections)

    def main_sections(self, n_values: List[int], ab_values: List[int]) -> List[Dict]:
        result = self.classify.sweep(n_values, ab_values, ab_values)
        summary_rows = []
        for n in n_values:
            summary_rows.append([
                str(n),
                _pairs(result.weak_fano_params(n)),
                _pairs(result.fano_params(n)),
            ])
        summary = {
            "heading": "P^(n-1) x P^1: weak Fano and Fano pairs (a,b)",
            "columns": ["n", "weak Fano", "Fano"],
            "rows": summary_rows,
            "note": f"a, b in {_span(ab_values)}; {len(result.skipped)} invalid parameter point(s) skipped.",
        }
        detail = {
            "heading": "P^(n-1) x P^1: nef rows",
            "columns": ["n", "a", "b", "D(a,b)", "coefficients", "(-K)^n", "status"],
            "rows": [
                [str(scn.n), str(scn.a), str(scn.b), str(self.cone.nef_generators(scn)[-1]),
                 _coeffs(verdict), str(verdict.selfint), verdict.status.value]
                for scn, verdict in result.rows if verdict.status.is_weak_fano
            ],
            "note": None,
        }
        return [summary, detail]

    def p2_section(self, n_values: List[int], d_values: List[int]) -> Dict:
        result = self.classify.sweep_p2(n_values, d_values)
        return {
            "heading": "P^(n-2) x P^2",
            "columns": ["n", "d", "coefficients", "(-K)^n", "status"],
            "rows": [
                [str(scn.n), str(scn.d), _coeffs(verdict), str(verdict.selfint), verdict.status.value]
                for scn, verdict in result.rows
            ],
            "note": f"weak Fano (n,d): {_pairs(result.weak_fano_params())}; Fano: {_pairs(result.fano_params())}",
        }

    def pn_section(self, n_values: List[int]) -> Dict:
        rows = []
        for family in (Family.PN_EXAMPLE1, Family.PN_EXAMPLE2, Family.PN_EXAMPLE3):
            t_range = (1, 2) if family == Family.PN_EXAMPLE2 else None
            result: SweepResult = self.classify.sweep_pn(family, n_values, t_range)
            for scn, verdict in result.rows:
                rows.append([family.value, str(scn.n), str(scn.t), _coeffs(verdict), str(verdict.selfint), verdict.status.value])
        return {
            "heading": "P^n examples",
            "columns": ["family", "n", "t", "coefficients", "(-K)^n", "status"],
            "rows": rows,
            "note": None,
        }


def _pairs(params: set) -> str:
    if not params:
        return "-"
    return ", ".join(f"({x},{y})" for x, y in sorted(params))


def _coeffs(verdict: Verdict) -> str:
    return "(" + ", ".join(str(c) for c in verdict.coeffs) + ")"


def _span(values: List[int]) -> str:
    if not values:
        return "-"
    return f"{min(values)}..{max(values)}"
