"""
結果表の CSV / JSON 変換
"""
import csv
import io
import json
import logging
from typing import Iterable, List, Optional, Tuple

from fanoblow.models.row import COLUMNS, ResultRow
from fanoblow.models.scenario import Scenario
from fanoblow.models.verdict import Verdict

logger = logging.getLogger(__name__)


class SerializationError(ValueError):
    """
    表の読み書き関連のエラー
    """
    pass


def rows_from_results(results: Iterable[Tuple[Scenario, Verdict]]) -> List[ResultRow]:
    return [ResultRow.from_result(scn, verdict) for scn, verdict in results]


def render_rows(rows: List[ResultRow], fmt: str) -> str:
    """
    行を指定形式の文字列に変換

    有理数は "p/q"、整数は分母なしの文字列。該当しない列は CSV では空欄、JSON では null。
    CSV には t の列がないため、既定値以外の t を持つ行は JSON でのみ出力できる。

    Args:
        rows: 出力する行
        fmt: "csv" または "json"

    Returns:
        出力文字列

    Raises:
        SerializationError: 未知の形式、または t を持つ行を CSV に出力する場合
    """
    if fmt == "csv":
        with_points = [row for row in rows if row.t is not None]
        if with_points:
            first = with_points[0]
            raise SerializationError(
                f"CSV には t の列がありません: {first.family.value} n={first.n} t={first.t}。--format json を使ってください"
            )
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(COLUMNS), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            record = row.to_record()
            writer.writerow({key: "" if value is None else value for key, value in record.items()})
        return buffer.getvalue()
    if fmt == "json":
        return json.dumps([row.to_record() for row in rows], ensure_ascii=False, indent=2) + "\n"
    raise SerializationError(f"未知の出力形式です: {fmt}")


def parse_rows(text: str, fmt: str) -> List[ResultRow]:
    """
    render_rows の出力を行に戻す
    """
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        return [ResultRow.model_validate(record) for record in reader]
    if fmt == "json":
        return [ResultRow.model_validate(record) for record in json.loads(text)]
    raise SerializationError(f"未知の出力形式です: {fmt}")


def write_output(text: str, out: Optional[str] = None) -> None:
    """
    標準出力またはファイルに書き出す
    """
    if out is None:
        print(text, end="")
        return
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info(f"出力を書き込みました: {out}")
