import io
import json
import os
import tempfile
import unittest
from unittest.mock import patch

from fanoblow.cli.app import int_range, main
from fanoblow.cli.scenario_spec import ScenarioSpec, parse_scenario
from fanoblow.models.scenario import Family, ScenarioError, ScenarioSpecError
from fanoblow.services.verify_service import CheckResult, VerifyReport
from fanoblow.utils.error_handler import error_handler
from fanoblow.utils.serialization import SerializationError


def run_cli(argv):
    """CLI を実行し、終了コードと標準出力・標準エラー出力を返す"""
    with patch('sys.stdout', new_callable=io.StringIO) as out, \
            patch('sys.stderr', new_callable=io.StringIO) as err:
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestScenarioSpec(unittest.TestCase):

    def test_parse_comma_separated(self):
        """
        カンマ区切りの記述がシナリオになるかのテスト
        """
        scn = parse_scenario("family=pp-n1, n=4, a=2, b=1")
        self.assertEqual((scn.family, scn.n, scn.a, scn.b, scn.t), (Family.PP_N1, 4, 2, 1, 1))

    def test_parse_multiline_and_default_points(self):
        """
        改行区切りで t を省略すると族の既定値になるかのテスト
        """
        scn = parse_scenario("family=pn-ex3\nn=5")
        self.assertEqual(scn.t, 2)

    def test_parse_errors_carry_position(self):
        """
        解析エラーが 1 始まりの行と列を持つかのテスト
        """
        with self.assertRaises(ScenarioSpecError) as ctx:
            parse_scenario("family=pp-n1, n=four")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 17))

        with self.assertRaises(ScenarioSpecError) as ctx:
            ScenarioSpec.parse("family=pp-n1, n=4, x=1")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 20))

        with self.assertRaises(ScenarioSpecError) as ctx:
            ScenarioSpec.parse("family=pp-n1\nn=4\nn=5")
        self.assertEqual(ctx.exception.line, 3)

        with self.assertRaises(ScenarioSpecError):
            ScenarioSpec.parse("n=4")

    def test_out_of_domain_is_not_a_parse_error(self):
        """
        領域外の値は解析エラーではなく ScenarioError になるかのテスト
        """
        with self.assertRaises(ScenarioError) as ctx:
            parse_scenario("family=pp-n1, n=4, a=0, b=2")
        self.assertNotIsInstance(ctx.exception, ScenarioSpecError)


class TestMain(unittest.TestCase):

    def test_int_range(self):
        """
        範囲指定が両端を含むかのテスト
        """
        self.assertEqual(list(int_range("3..5")), [3, 4, 5])
        self.assertEqual(list(int_range("7")), [7])

    def test_selfint_single_method(self):
        """
        selfint が値だけを出力するかのテスト
        """
        code, out, _ = run_cli(["selfint", "--family", "pp-n1", "--n", "4", "--a", "2", "--b", "0"])
        self.assertEqual(code, 0)
        self.assertEqual(out, "235\n")

    def test_selfint_all_methods_match(self):
        """
        P^n の例では closed が n/a になり pipeline と direct を比べるかのテスト
        """
        code, out, _ = run_cli(["selfint", "--spec", "family=pn-ex3, n=4", "--method", "all"])
        self.assertEqual(code, 0)
        self.assertEqual(out, "closed n/a\npipeline 354\ndirect 354\nmatch\n")

    def test_selfint_both_without_closed_form(self):
        """
        P^n の例の both が同じ値どうしの比較にならないかのテスト
        """
        code, out, _ = run_cli(["selfint", "--spec", "family=pn-ex1, n=4", "--method", "both"])
        self.assertEqual((code, out), (0, "closed n/a\npipeline 417\ndirect 417\nmatch\n"))

        with patch('fanoblow.cli.app.AnticanonicalService.kx_selfint_direct', return_value=0):
            code, out, _ = run_cli(["selfint", "--spec", "family=pn-ex1, n=4", "--method", "both"])
        self.assertEqual(code, 1)
        self.assertEqual(out, "closed n/a\npipeline 417\ndirect 0\nmismatch\n")

    def test_selfint_a15_anchors(self):
        """
        a = 15 の値を closed と both で出力するテスト
        """
        code, out, _ = run_cli(["selfint", "--spec", "family=pp-n1, n=4, a=15, b=1"])
        self.assertEqual((code, out), (0, "-591\n"))
        code, out, _ = run_cli(["selfint", "--spec", "family=pp-n1, n=5, a=15, b=0", "--method", "both"])
        self.assertEqual((code, out), (0, "closed 1344\npipeline 1344\nmatch\n"))

    def test_selfint_mismatch_exits_1(self):
        """
        手法の値が一致しない場合に終了コード 1 になるかのテスト
        """
        with patch('fanoblow.cli.app.AnticanonicalService.kx_selfint_pipeline', return_value=0):
            code, out, _ = run_cli(["selfint", "--spec", "family=pp-n1, n=4, a=1, b=1", "--method", "both"])
        self.assertEqual(code, 1)
        self.assertTrue(out.endswith("mismatch\n"))

    def test_out_of_domain_exits_2(self):
        """
        領域外のパラメータで終了コード 2 になるかのテスト
        """
        code, out, err = run_cli(["selfint", "--spec", "family=pp-n1, n=4, a=0, b=2"])
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("VALIDATION_ERROR", err)

    def test_parse_error_reports_position(self):
        """
        解析エラーで行と列が報告されるかのテスト
        """
        code, _, err = run_cli(["cone", "--spec", "family=pp-n1, n=four"])
        self.assertEqual(code, 2)
        self.assertIn("line 1, column 17", err)

    def test_bad_range_is_usage_error(self):
        """
        不正な範囲指定で終了コード 2 になるかのテスト
        """
        code, _, _ = run_cli(["classify", "--n", "3..x"])
        self.assertEqual(code, 2)

    def test_classify_csv(self):
        """
        classify が CSV を出力し、無効な点を除外するかのテスト
        """
        code, out, _ = run_cli([
            "classify", "--family", "pp-n1", "--n", "4", "--a", "0..2", "--b", "0..1", "--format", "csv",
        ])
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], "family,n,a,b,d,status,c0,c1,c2,c3,selfint")
        self.assertEqual(lines[1], "pp-n1,4,0,1,,Fano,2,1,1,1,384")
        self.assertEqual(len(lines), 6)

    def test_classify_all_points_invalid(self):
        """
        すべての点が無効な場合に終了コード 2 になるかのテスト
        """
        code, out, _ = run_cli(["classify", "--family", "pp-n1", "--n", "4", "--a", "0", "--b", "0"])
        self.assertEqual(code, 2)
        self.assertEqual(out, "")

    def test_classify_rejects_points_for_product_families(self):
        """
        pp-n1 / pp-n2 で --t を指定すると終了コード 2 になるかのテスト
        """
        code, out, err = run_cli(["classify", "--family", "pp-n1", "--n", "4", "--a", "2", "--b", "1", "--t", "5"])
        self.assertEqual((code, out), (2, ""))
        self.assertIn("VALIDATION_ERROR", err)
        code, out, _ = run_cli(["classify", "--family", "pp-n2", "--n", "4", "--d", "1", "--t", "1"])
        self.assertEqual((code, out), (2, ""))

    def test_classify_csv_refuses_two_point_rows(self):
        """
        t = 2 の行を CSV に出すと終了コード 2 になり、JSON では t が残るかのテスト
        """
        code, out, err = run_cli(["classify", "--family", "pn-ex2", "--n", "4", "--t", "2", "--format", "csv"])
        self.assertEqual((code, out), (2, ""))
        self.assertIn("--format json", err)

        code, out, _ = run_cli(["classify", "--family", "pn-ex2", "--n", "4", "--t", "2", "--format", "json"])
        self.assertEqual(code, 0)
        record = json.loads(out)[0]
        self.assertEqual((record["t"], record["selfint"]), (2, "353"))

    def test_classify_json_to_file(self):
        """
        classify の JSON 出力をファイルに書き込むテスト
        """
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "p2.json")
            code, out, _ = run_cli([
                "classify", "--family", "pp-n2", "--n", "4", "--d", "1", "--format", "json", "--out", path,
            ])
            self.assertEqual(code, 0)
            self.assertEqual(out, "")
            with open(path, encoding="utf-8") as f:
                records = json.load(f)
        self.assertEqual(records[0]["status"], "Fano")
        self.assertEqual(records[0]["selfint"], "369")
        self.assertIsNone(records[0]["a"])

    def test_cone_json(self):
        """
        cone が生成元と分解係数を JSON で出力するかのテスト
        """
        code, out, _ = run_cli(["cone", "--spec", "family=pn-ex1, n=4", "--format", "json"])
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertTrue(payload["verified"])
        self.assertEqual(payload["coefficients"], ["2", "1", "1"])
        self.assertEqual(payload["nef_status"], "Interior")
        self.assertEqual(payload["anticanonical"], "5H~-2E~-F")

    def test_cone_not_nef(self):
        """
        a = 1, b = 3 で L~ の係数が負になりネフでないことをテストする
        """
        code, out, _ = run_cli(["cone", "--spec", "family=pp-n1, n=5, a=1, b=3", "--format", "json"])
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload["coefficients"], ["1", "-1", "2", "1"])
        self.assertEqual(payload["nef_status"], "NotNef")

    def test_cone_text(self):
        """
        cone のテキスト出力をテストする
        """
        code, out, _ = run_cli(["cone", "--family", "pp-n1", "--n", "4", "--a", "3", "--b", "2"])
        self.assertEqual(code, 0)
        self.assertIn("kronecker: verified", out)
        self.assertIn("status: Boundary", out)

    @patch('fanoblow.cli.app.VerifyService')
    def test_verify_failure_exits_1(self, MockVerifyService):
        """
        検証の失敗で終了コード 1 になるかのテスト
        """
        MockVerifyService.return_value.run_suite.return_value = VerifyReport(
            status="fail",
            checks=[
                CheckResult(name="binomial_identities", status="fail", message="1 failing case(s)"),
                CheckResult(name="segre_recurrences", status="pass", message="all cases agree"),
            ],
        )
        code, out, _ = run_cli(["verify", "--suite", "identities"])
        self.assertEqual(code, 1)
        self.assertIn("[FAIL] binomial_identities", out)
        self.assertIn("1/2 checks passed (fail)", out)

    def test_table_markdown(self):
        """
        table が Markdown の表を出力するかのテスト
        """
        code, out, _ = run_cli(["table", "--which", "pn", "--n", "4"])
        self.assertEqual(code, 0)
        self.assertIn("| pn-ex3 | 4 | 2 | (0, 1, 1) | 354 | WeakFanoNotFano |", out)

    def test_internal_value_error_is_processing_error(self):
        """
        コマンド内部の ValueError が入力エラー扱いにならず終了コード 1 になるかのテスト
        """
        @error_handler
        def broken(args):
            raise ValueError("unexpected")

        with patch('sys.stderr', new_callable=io.StringIO) as err:
            code = broken(None)
        self.assertEqual(code, 1)
        self.assertIn("PROCESSING_ERROR", err.getvalue())

        @error_handler
        def bad_format(args):
            raise SerializationError("unknown format")

        with patch('sys.stderr', new_callable=io.StringIO):
            self.assertEqual(bad_format(None), 2)

    def test_unknown_command(self):
        """
        未知のサブコマンドで終了コード 2 になるかのテスト
        """
        with patch('sys.stderr', new_callable=io.StringIO):
            self.assertEqual(main(["fly"]), 2)


if __name__ == '__main__':
    unittest.main()
