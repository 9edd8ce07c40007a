"""
fanoblow コマンドラインアプリケーション
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from fanoblow.cli.scenario_spec import parse_scenario
from fanoblow.config.settings import OUTPUT_FORMATS, get_settings
from fanoblow.models.scenario import Family, Scenario, ScenarioError
from fanoblow.services.anticanonical_service import AnticanonicalService
from fanoblow.services.classify_service import ClassifyService
from fanoblow.services.cone_service import ConeService
from fanoblow.services.table_service import TABLES, TableService
from fanoblow.services.verify_service import SUITES, VerifyService
from fanoblow.utils.error_handler import (
    EXIT_CHECK_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    ErrorHandler,
    error_handler,
)
from fanoblow.utils.serialization import render_rows, rows_from_results, write_output

SELFINT_METHODS = ("closed", "pipeline", "direct", "both", "all")


def setup_logging():
    """
    ロギングシステムを設定

    標準出力は表の出力に使うため、ログは標準エラー出力に出す。
    """
    settings = get_settings()
    log_level = getattr(logging, settings.log_level.upper(), logging.INFO)

    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))

    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
    )

    # 外部ライブラリのロガーレベルを調整
    logging.getLogger("sympy").setLevel(logging.WARNING)

    return logging.getLogger(__name__)


logger = logging.getLogger(__name__)


def int_range(text: str) -> range:
    """
    "lo..hi"（両端を含む）または単一の整数を range に変換
    """
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        value = int(text)
        return range(value, value + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"範囲は lo..hi または整数で指定してください: {text!r}")


def _single(values: Optional[range], name: str) -> Optional[int]:
    if values is None:
        return None
    if len(values) != 1:
        raise ScenarioError(f"--{name} には単一の値を指定してください")
    return values[0]


def scenario_from_args(args: argparse.Namespace) -> Scenario:
    """
    --spec または個別のフラグから単一のシナリオを作成
    """
    if args.spec:
        return parse_scenario(args.spec)
    family = Family(args.family)
    n = _single(args.n, "n")
    if n is None:
        raise ScenarioError("--n または --spec が必要です")
    t = _single(args.t, "t")
    return Scenario(
        family=family,
        n=n,
        a=_single(args.a, "a"),
        b=_single(args.b, "b"),
        d=_single(args.d, "d"),
        t=t if t is not None else family.default_points,
    ).validate()


# --- コマンド ---

@error_handler
def cmd_classify(args: argparse.Namespace) -> int:
    """
    分類表を出力
    """
    service = ClassifyService()
    fmt = args.format or get_settings().default_format
    if args.spec:
        scn = parse_scenario(args.spec)
        rows = rows_from_results([(scn, service.classify_scenario(scn))])
    else:
        family = Family(args.family)
        if not family.is_projective_example and args.t is not None:
            raise ScenarioError(f"{family.value} では --t は使えません")
        n_range = args.n if args.n is not None else range(3, 7)
        if family == Family.PP_N1:
            result = service.sweep(
                n_range,
                args.a if args.a is not None else range(0, 5),
                args.b if args.b is not None else range(0, 4),
            )
        elif family == Family.PP_N2:
            result = service.sweep_p2(n_range, args.d if args.d is not None else range(1, 5))
        else:
            result = service.sweep_pn(family, args.n if args.n is not None else range(4, 7), args.t)
        if not result.rows and result.skipped:
            raise ScenarioError(result.skipped[0].reason)
        rows = rows_from_results(result.rows)
    write_output(render_rows(rows, fmt), args.out)
    return EXIT_OK


@error_handler
def cmd_selfint(args: argparse.Namespace) -> int:
    """
    (-K)^n を出力（both / all では一致を確認）

    P^n の例には閉じた式がないため、both / all では closed を n/a とし
    pipeline と direct を比べる。
    """
    scn = scenario_from_args(args)
    service = AnticanonicalService()
    no_closed = scn.family.is_projective_example
    if args.method == "both":
        methods = ["pipeline", "direct"] if no_closed else ["closed", "pipeline"]
    elif args.method == "all":
        methods = ["pipeline", "direct"] if no_closed else ["closed", "pipeline", "direct"]
    else:
        methods = [args.method]

    values = [(method, service.kx_selfint(scn, method)) for method in methods]
    if len(values) == 1:
        write_output(f"{values[0][1]}\n", args.out)
        return EXIT_OK

    match = len({value for _, value in values}) == 1
    lines = ["closed n/a"] if no_closed else []
    lines += [f"{method} {value}" for method, value in values]
    lines.append("match" if match else "mismatch")
    write_output("\n".join(lines) + "\n", args.out)
    if not match:
        logger.warning(f"計算方法で値が一致しません: {scn.label}: {values}")
        response = ErrorHandler().handle_check_failure({m: str(v) for m, v in values})
        return response.exit_code
    return EXIT_OK


@error_handler
def cmd_cone(args: argparse.Namespace) -> int:
    """
    錐の生成元・交点行列・-K の分解を出力
    """
    scn = scenario_from_args(args)
    service = ConeService()
    cp = service.presentation(scn)
    anticanonical = service.anticanonical_class(scn)
    coeffs = service.decompose(anticanonical, cp.div_gens)
    status = service.nef_status(coeffs)

    if args.format == "json":
        payload = {
            "scenario": scn.label,
            "nef_generators": [str(g) for g in cp.div_gens],
            "curve_generators": [str(c) for c in cp.curve_gens],
            "pairing_matrix": [[str(v) for v in row] for row in cp.pairing_matrix],
            "verified": cp.verified,
            "anticanonical": str(anticanonical),
            "coefficients": [str(c) for c in coeffs],
            "nef_status": status.value,
        }
        write_output(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", args.out)
        return EXIT_OK

    lines = [f"scenario: {scn.label}", "nef generators:"]
    lines += [f"  D{i} = {g}" for i, g in enumerate(cp.div_gens)]
    lines.append("curve generators:")
    lines += [f"  C{i} = {c}" for i, c in enumerate(cp.curve_gens)]
    lines.append("pairing matrix (D_i . C_j):")
    lines += ["  " + " ".join(f"{str(v):>3}" for v in row) for row in cp.pairing_matrix]
    lines.append(f"kronecker: {'verified' if cp.verified else 'FAILED'}")
    lines.append(f"-K = {anticanonical}")
    lines.append("coefficients: (" + ", ".join(str(c) for c in coeffs) + ")")
    lines.append(f"status: {status.value}")
    write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK if cp.verified else EXIT_CHECK_FAILURE


@error_handler
def cmd_verify(args: argparse.Namespace) -> int:
    """
    検証スイートを実行
    """
    report = VerifyService().run_suite(args.suite)
    if args.format == "json":
        payload = {
            "status": report.status,
            "timestamp": report.timestamp.isoformat(),
            "checks": [
                {"name": c.name, "status": c.status, "message": c.message, "details": c.details}
                for c in report.checks
            ],
        }
        write_output(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", args.out)
    else:
        write_output("\n".join(report.summary_lines()) + "\n", args.out)
    if not report.passed:
        failed = {c.name: c.message for c in report.checks if not c.passed}
        return ErrorHandler().handle_check_failure(failed).exit_code
    return EXIT_OK


@error_handler
def cmd_table(args: argparse.Namespace) -> int:
    """
    分類表を Markdown で出力
    """
    text = TableService().render(
        which=args.which,
        n_range=args.n if args.n is not None else range(3, 7),
        ab_range=args.ab if args.ab is not None else range(0, 5),
        d_range=args.d if args.d is not None else range(1, 5),
    )
    write_output(text, args.out)
    return EXIT_OK


# --- 引数 ---

def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--spec", help='シナリオ記述 (例: "family=pp-n1, n=4, a=2, b=1")')
    parser.add_argument("--family", default=Family.PP_N1.value, choices=[f.value for f in Family])
    parser.add_argument("--n", type=int_range, help="次元 n（lo..hi は両端を含む）")
    parser.add_argument("--a", type=int_range, help="U の H 次数")
    parser.add_argument("--b", type=int_range, help="U の L 次数")
    parser.add_argument("--d", type=int_range, help="平面曲線の次数（pp-n2）")
    parser.add_argument("--t", type=int_range, help="C と S の交点数（P^n の例）")
    parser.add_argument("--out", help="出力ファイル")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanoblow",
        description="Exact intersection numbers and weak Fano classification of double blow-ups. "
                    "Ranges are written lo..hi and include both ends.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    classify = subparsers.add_parser("classify", help="classify scenarios and emit a table")
    _add_scenario_flags(classify)
    classify.add_argument("--format", choices=OUTPUT_FORMATS)
    classify.set_defaults(handler=cmd_classify)

    selfint = subparsers.add_parser("selfint", help="print (-K)^n")
    _add_scenario_flags(selfint)
    selfint.add_argument("--method", default="closed", choices=SELFINT_METHODS)
    selfint.set_defaults(handler=cmd_selfint)

    cone = subparsers.add_parser("cone", help="print the cone presentation")
    _add_scenario_flags(cone)
    cone.add_argument("--format", default="text", choices=("text", "json"))
    cone.set_defaults(handler=cmd_cone)

    verify = subparsers.add_parser("verify", help="run the verification suites")
    verify.add_argument("--suite", default="all", choices=SUITES)
    verify.add_argument("--format", default="text", choices=("text", "json"))
    verify.add_argument("--out", help="出力ファイル")
    verify.set_defaults(handler=cmd_verify)

    table = subparsers.add_parser("table", help="render the classification tables as Markdown")
    table.add_argument("--which", default="all", choices=TABLES)
    table.add_argument("--n", type=int_range)
    table.add_argument("--ab", type=int_range, help="a, b の範囲（main）")
    table.add_argument("--d", type=int_range)
    table.add_argument("--out", help="出力ファイル")
    table.set_defaults(handler=cmd_table)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI のエントリポイント

    Returns:
        終了コード（0: 成功, 1: 検証失敗, 2: 使い方・解析エラー）
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    settings = get_settings()
    for key, message in settings.validate_configuration().items():
        logger.warning(f"Configuration issue: {key} - {message}")

    return args.handler(args)
