"""
不変条件の検証スイートを実行するサービス
"""
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional
import logging

from fanoblow.config.settings import get_settings
from fanoblow.models.geometry import SurfaceDegreeTable
from fanoblow.models.scenario import Family, Scenario
from fanoblow.services.anticanonical_service import AnticanonicalService
from fanoblow.services.blowup_service import BlowupService
from fanoblow.services.chow_service import ChowService
from fanoblow.services.classify_service import ClassifyService
from fanoblow.services.cone_service import ConeService
from fanoblow.services.segre_service import SegreService

logger = logging.getLogger(__name__)

SUITES = ("identities", "duality", "oracle", "all")

# 定理の一覧
WEAK_FANO_PAIRS = {(0, 1), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2)}
FANO_PAIRS = {(0, 1), (1, 0), (1, 1), (2, 0), (2, 1)}
P2_WEAK_FANO = {(3, 1), (3, 2), (3, 3), (4, 1), (5, 1)}
P2_FANO = {(4, 1)}

SEGRE_M_MAX = 10
POSITIVE_REMARK_B_MAX = {1: 5, 2: 6, 3: 8}
DUALITY_BRANCHES = ((0, 1), (1, 0), (1, 3), (2, 0), (3, 2))


class VerifyServiceError(Exception):
    """
    検証スイート関連のエラー
    """
    pass


@dataclass
class CheckResult:
    """
    個々の検証の結果
    """
    name: str
    status: str  # "pass", "fail"
    message: str
    details: Optional[Dict] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerifyReport:
    """
    スイート全体の結果
    """
    status: str  # "pass", "fail"
    checks: List[CheckResult] = field(default_factory=list)
    timestamp: datetime = field(default_factory=datetime.now)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def summary_lines(self) -> List[str]:
        lines = [f"[{check.status.upper()}] {check.name}: {check.message}" for check in self.checks]
        passed = sum(1 for check in self.checks if check.passed)
        lines.append(f"{passed}/{len(self.checks)} checks passed ({self.status})")
        return lines


class VerifyService:
    """
    恒等式・双対性・計算経路の一致を確認するサービス
    """

    def __init__(self):
        self.settings = get_settings()
        self.chow = ChowService()
        self.segre = SegreService()
        self.blowup = BlowupService()
        self.cone = ConeService()
        self.anticanonical = AnticanonicalService()
        self.classify = ClassifyService()

    def run_suite(self, name: str) -> VerifyReport:
        """
        指定したスイートを実行

        Args:
            name: identities / duality / oracle / all

        Returns:
            検証結果のレポート

        Raises:
            VerifyServiceError: 未知のスイート名の場合
        """
        suites: Dict[str, Callable[[], List[CheckResult]]] = {
            "identities": self.check_identities,
            "duality": self.check_duality,
            "oracle": self.check_oracle,
        }
        if name not in SUITES:
            raise VerifyServiceError(f"未知のスイートです: {name}")
        names = list(suites) if name == "all" else [name]

        checks: List[CheckResult] = []
        for suite in names:
            logger.info(f"検証スイートを実行します: {suite}")
            checks.extend(suites[suite]())

        status = "pass" if all(check.passed for check in checks) else "fail"
        for check in checks:
            if not check.passed:
                logger.error(f"検証失敗: {check.name}: {check.message}")
        return VerifyReport(status=status, checks=checks)

    # --- identities ---

    def check_identities(self) -> List[CheckResult]:
        s = self.settings
        checks = []

        def surface_failures():
            for n in range(3, s.oracle_n_max + 1):
                for a, b in product(range(s.sums_ab_max + 1), repeat=2):
                    tbl = SurfaceDegreeTable(n=n, a=a, b=b)
                    for j in range(tbl.dimension + 1):
                        i = tbl.dimension - j
                        if self.chow.surface_degree(tbl, i, j) != self.chow.surface_degree_via_ambient(tbl, i, j):
                            yield (n, a, b, i, j)

        checks.append(self._check(
            "surface_degree_identity",
            {"n": f"3..{s.oracle_n_max}", "a,b": f"0..{s.sums_ab_max}"},
            surface_failures(),
        ))

        def segre_failures():
            for m, a, b in product(range(SEGRE_M_MAX + 1), range(s.sums_ab_max + 1), range(s.sums_ab_max + 1)):
                if self.segre.segre_by_inversion(m, a, b) != self.segre.segre_ci(m, a, b):
                    yield (m, a, b)

        checks.append(self._check(
            "segre_inversion_oracle",
            {"m": f"0..{SEGRE_M_MAX}", "a,b": f"0..{s.sums_ab_max}"},
            segre_failures(),
        ))

        def recurrence_failures():
            for m, a, b in product(range(1, SEGRE_M_MAX + 1), range(s.sums_ab_max + 1), range(s.sums_ab_max + 1)):
                if not self.segre.recurrence_holds(m, a, b):
                    yield (m, a, b)

        checks.append(self._check(
            "segre_recurrences",
            {"m": f"1..{SEGRE_M_MAX}", "a,b": f"0..{s.sums_ab_max}"},
            recurrence_failures(),
        ))

        def binomial_failures():
            for x, n in product(range(1, s.identity_x_max + 1), range(2, s.sums_n_max + 1)):
                if not self.blowup.identities_hold(n, x):
                    yield (n, x)

        checks.append(self._check(
            "binomial_identities",
            {"x": f"1..{s.identity_x_max}", "n": f"2..{s.sums_n_max}"},
            binomial_failures(),
        ))
        return checks

    # --- duality ---

    def check_duality(self) -> List[CheckResult]:
        scenarios = [Scenario.main(4, a, b) for a, b in DUALITY_BRANCHES]
        scenarios += [Scenario.p2(4, d) for d in range(1, 5)]
        scenarios += [Scenario.pn(family, 4) for family in (Family.PN_EXAMPLE1, Family.PN_EXAMPLE2, Family.PN_EXAMPLE3)]

        checks = []
        for scn in scenarios:
            cp = self.cone.presentation(scn)
            if cp.verified:
                checks.append(CheckResult(name=f"kronecker {scn.label}", status="pass", message="identity pairing matrix"))
            else:
                checks.append(CheckResult(
                    name=f"kronecker {scn.label}",
                    status="fail",
                    message="pairing matrix is not the identity",
                    details={"matrix": [[str(v) for v in row] for row in cp.pairing_matrix]},
                ))
        return checks

    # --- oracle ---

    def check_oracle(self) -> List[CheckResult]:
        s = self.settings
        ac = self.anticanonical
        checks = []
        oracle_grid = [(0, 1)] + list(product(range(1, s.oracle_ab_max + 1), range(0, s.oracle_ab_max + 1)))
        oracle_params = {"n": f"3..{s.oracle_n_max}", "(a,b)": f"(0,1) + [1,{s.oracle_ab_max}]x[0,{s.oracle_ab_max}]"}

        checks.append(self._check(
            "sums_closed_equals_direct",
            {"n": f"2..{s.sums_n_max}", "a": f"1..{s.sums_ab_max}", "b": f"0..{s.sums_ab_max}"},
            (
                (n, a, b)
                for n, a, b in product(range(2, s.sums_n_max + 1), range(1, s.sums_ab_max + 1), range(s.sums_ab_max + 1))
                if ac.sums_closed(n, a, b) != ac.sums_direct(n, a, b)
            ),
        ))
        checks.append(self._check(
            "pipeline_equals_closed",
            oracle_params,
            (
                (n, a, b)
                for n, (a, b) in product(range(3, s.oracle_n_max + 1), oracle_grid)
                if ac.kx_selfint_pipeline(Scenario.main(n, a, b)) != ac.kx_selfint_closed(n, a, b)
            ),
        ))
        checks.append(self._check(
            "closed_values_are_integers",
            oracle_params,
            (
                (n, a, b)
                for n, (a, b) in product(range(3, s.oracle_n_max + 1), oracle_grid)
                if ac.kx_selfint_closed(n, a, b).denominator != 1
            ),
        ))
        checks.append(self._check(
            "case01_specialisation",
            {"n": f"3..{s.oracle_n_max}"},
            (
                n for n in range(3, s.oracle_n_max + 1)
                if ac.kx_selfint_closed(n, 0, 1) != ac.kx_selfint_case01(n)
                or ac.kx_selfint_case01(n) != 2 * n ** n - (n - 1) ** n - 2 * (n - 1) * (n - 2) ** (n - 1) + (n - 3) ** n
            ),
        ))
        checks.append(self._check(
            "a15_anchors",
            {"a": 15, "b": "0..10", "n": "4, 5"},
            (
                b for b in range(11)
                if ac.kx_selfint_closed(4, 15, b) != -306 * b - 285
                or ac.kx_selfint_closed(5, 15, b) != 3056 * b + 1344
            ),
        ))
        checks.append(self._check(
            "positivity",
            {"n": f"3..{s.positivity_n_max}", "classes": "weak Fano list + remark ranges"},
            (
                (n, a, b)
                for n, (a, b) in product(range(3, s.positivity_n_max + 1), sorted(self._positive_pairs()))
                if ac.kx_selfint_closed(n, a, b) <= 0
            ),
        ))
        checks.append(self._check_main_classification())
        checks.append(self._check_p2_classification())
        checks.append(self._check(
            "direct_equals_closed",
            {"pp-n1": "n 3..6, (a,b) in (0,1)+[1,3]x[0,3]", "pp-n2": "n 3..7, d 1..4"},
            self._direct_failures(),
        ))
        return checks

    def _positive_pairs(self) -> set:
        pairs = set(WEAK_FANO_PAIRS)
        for a, b_max in POSITIVE_REMARK_B_MAX.items():
            pairs.update((a, b) for b in range(b_max + 1))
        return pairs

    def _check_main_classification(self) -> CheckResult:
        result = self.classify.sweep(range(3, 11), range(9), range(9))
        failures = []
        for n in range(3, 11):
            expected_fano = FANO_PAIRS if n >= 4 else set()
            if result.weak_fano_params(n) != WEAK_FANO_PAIRS or result.fano_params(n) != expected_fano:
                failures.append(n)
        return self._check("main_family_classification", {"n": "3..10", "a,b": "0..8"}, failures)

    def _check_p2_classification(self) -> CheckResult:
        result = self.classify.sweep_p2(range(3, 9), range(1, 5))
        failures = []
        if result.weak_fano_params() != P2_WEAK_FANO:
            failures.append(("weak_fano", sorted(result.weak_fano_params())))
        if result.fano_params() != P2_FANO:
            failures.append(("fano", sorted(result.fano_params())))
        return self._check("p2_family_classification", {"n": "3..8", "d": "1..4"}, failures)

    def _direct_failures(self):
        ac = self.anticanonical
        for n in range(3, 7):
            for a, b in [(0, 1)] + list(product(range(1, 4), range(4))):
                if ac.kx_selfint_direct(Scenario.main(n, a, b)) != ac.kx_selfint_closed(n, a, b):
                    yield ("pp-n1", n, a, b)
        for n, d in product(range(3, 8), range(1, 5)):
            scn = Scenario.p2(n, d)
            expected = ac.kx_selfint_p2family(n, d)
            if ac.kx_selfint_direct(scn) != expected or ac.kx_selfint_pipeline(scn) != expected:
                yield ("pp-n2", n, d)

    def _check(self, name: str, params: Dict, failures: Iterable) -> CheckResult:
        failed = [_jsonable(item) for item in failures]
        if failed:
            return CheckResult(
                name=name,
                status="fail",
                message=f"{len(failed)} failing case(s)",
                details={"params": params, "failures": failed[:20]},
            )
        return CheckResult(name=name, status="pass", message="all cases agree", details={"params": params})


def _jsonable(item):
    if isinstance(item, Fraction):
        return str(item)
    if isinstance(item, (tuple, list)):
        return [_jsonable(x) for x in item]
    return item
