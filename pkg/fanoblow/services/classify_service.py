"""
弱 Fano / Fano の判定とパラメータスイープ
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Callable, Iterable, List, Optional, Tuple

from fanoblow.config.settings import get_settings
from fanoblow.models.cone import NefStatus
from fanoblow.models.scenario import Family, Scenario, ScenarioError
from fanoblow.models.verdict import SkippedRow, SweepResult, Verdict, VerdictStatus
from fanoblow.services.anticanonical_service import AnticanonicalService
from fanoblow.services.cone_service import ConeService

logger = logging.getLogger(__name__)


class ClassifyServiceError(Exception):
    """
    分類関連のエラー
    """
    pass


class ClassifyService:
    """
    分解係数と自己交点数から結論を出すサービス
    """

    def __init__(self, workers: Optional[int] = None):
        self.settings = get_settings()
        self.workers = workers or self.settings.sweep_workers
        self.cone = ConeService()
        self.anticanonical = AnticanonicalService()

    def classify_main(self, n: int, a: int, b: int) -> Verdict:
        """
        P^{n-1} x P^1 族の判定

        Args:
            n: 次元
            a: U の H 次数
            b: U の L 次数

        Returns:
            判定結果

        Raises:
            ScenarioError: パラメータ領域外の場合
        """
        return self.classify_scenario(Scenario.main(n, a, b))

    def classify_p2family(self, n: int, d: int) -> Verdict:
        """
        P^{n-2} x P^2 族の判定
        """
        return self.classify_scenario(Scenario.p2(n, d))

    def classify_pn(self, family: Family, n: int, t: Optional[int] = None) -> Verdict:
        """
        P^n の例の判定
        """
        if not family.is_projective_example:
            raise ClassifyServiceError(f"P^n の例ではありません: {family.value}")
        return self.classify_scenario(Scenario.pn(family, n, t))

    def classify_scenario(self, scn: Scenario) -> Verdict:
        """
        -K を生成元で分解し、ネフ性と (-K)^n の符号から結論を出す
        """
        scn.validate()
        gens = self.cone.nef_generators(scn)
        coeffs = self.cone.decompose(self.cone.anticanonical_class(scn), gens)
        nef = self.cone.nef_status(coeffs)
        selfint = self.anticanonical.kx_selfint(scn)
        status = self.verdict_status(nef, selfint)
        logger.debug(f"{scn.label}: coeffs={coeffs}, selfint={selfint}, status={status.value}")
        return Verdict(status=status, coeffs=coeffs, selfint=selfint)

    def verdict_status(self, nef: NefStatus, selfint) -> VerdictStatus:
        """
        ネフ錐内の位置と自己交点数から結論を決定

        ネフ因子 D が巨大であることと D^n > 0 は同値。
        """
        if nef == NefStatus.NOT_NEF:
            return VerdictStatus.NOT_NEF
        if selfint <= 0:
            if nef == NefStatus.INTERIOR:
                logger.error(f"豊富な -K の自己交点数が正ではありません: {selfint}")
            return VerdictStatus.NEF_NOT_BIG
        if nef == NefStatus.INTERIOR:
            return VerdictStatus.FANO
        return VerdictStatus.WEAK_FANO_NOT_FANO

    # --- スイープ ---

    def sweep(self, n_range: Iterable[int], a_range: Iterable[int], b_range: Iterable[int]) -> SweepResult:
        """
        P^{n-1} x P^1 族のスイープ

        Args:
            n_range: n の範囲
            a_range: a の範囲
            b_range: b の範囲

        Returns:
            (n, a, b) 順に並んだ行と、除外した点の理由
        """
        candidates = [
            ((n, a, b), _builder(Scenario.main, n, a, b))
            for n, a, b in product(list(n_range), list(a_range), list(b_range))
        ]
        return self._run(candidates)

    def sweep_p2(self, n_range: Iterable[int], d_range: Iterable[int]) -> SweepResult:
        """
        P^{n-2} x P^2 族のスイープ
        """
        candidates = [
            ((n, d), _builder(Scenario.p2, n, d))
            for n, d in product(list(n_range), list(d_range))
        ]
        return self._run(candidates)

    def sweep_pn(self, family: Family, n_range: Iterable[int], t_range: Optional[Iterable[int]] = None) -> SweepResult:
        """
        P^n の例のスイープ
        """
        if not family.is_projective_example:
            raise ClassifyServiceError(f"P^n の例ではありません: {family.value}")
        t_values = list(t_range) if t_range is not None else [family.default_points]
        candidates = [
            ((n, t), _builder(Scenario.pn, family, n, t))
            for n, t in product(list(n_range), t_values)
        ]
        return self._run(candidates)

    def _run(self, candidates: List[Tuple[tuple, Callable[[], Scenario]]]) -> SweepResult:
        result = SweepResult()
        scenarios = []
        for params, build in candidates:
            try:
                scenarios.append(build())
            except ScenarioError as e:
                logger.warning(f"スイープから除外しました: {params}: {e}")
                result.skipped.append(SkippedRow(params=params, reason=str(e)))

        if scenarios:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                verdicts = list(executor.map(self.classify_scenario, scenarios))
            result.rows = sorted(zip(scenarios, verdicts), key=lambda row: row[0].sort_key)
        result.skipped.sort(key=lambda row: row.params)
        logger.info(f"スイープ完了: {len(result.rows)} 行, 除外 {len(result.skipped)} 件")
        return result


def _builder(factory: Callable[..., Scenario], *args) -> Callable[[], Scenario]:
    return lambda: factory(*args)
