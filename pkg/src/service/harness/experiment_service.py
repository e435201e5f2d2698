import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from joblib import Parallel, delayed

from src.core.transaction import OutputSession, Transactional
from src.domain.dataset_domain import Dataset, PotentialOutcomes
from src.domain.experiment_domain import ExperimentUnit
from src.domain.graph_domain import CausalDag
from src.domain.model_domain import CandidateModel
from src.domain.report_domain import (
    CurvePoint,
    DagRecord,
    ExperimentReport,
    MethodResult,
    MethodSummary,
    PairedComparison,
    ScoreReport,
    SweepRecord,
    SweepReport,
)
from src.dto.request.config.experiment_config_dto import ExperimentConfigDto
from src.dto.request.config.lambda_policy_dto import LambdaPolicyDto
from src.dto.request.config.validation_risk_dto import ValidationRiskDto
from src.dto.response.report.sweep_report_dto import CurvePointDto
from src.exception.model_exceptions import TooFewModelsException
from src.mapper.report_mapper import (
    dag_record_to_dto,
    experiment_report_to_dto,
    sweep_records_to_dto,
    sweep_report_to_dto,
)
from src.repository.report.report_repository import ReportRepository
from src.service.base_service import BaseService
from src.service.dgp.dgp_service import DgpService
from src.service.fitness.fitness_service import FitnessService
from src.service.graph.graph_service import GraphService
from src.service.harness.metrics_service import MetricsService
from src.service.independence.independence_service import IndependenceService
from src.service.risk.risk_service import RiskService
from src.service.selection.selection_service import SelectionService
from src.service.zoo.zoo_service import ZooService
from src.utils.seed_provider import SeedProvider

logger = logging.getLogger(__name__)

R = TypeVar("R")

EXPERIMENT_REPORT_FILE = "experiment_report.json"


class ExperimentService(BaseService):
    """
    합성 데이터 실험과 민감도 스윕을 조율하는 서비스 클래스.
    DAG 마다 독립된 시드 스트림으로 데이터를 만들고 후보 모델을 학습한 뒤,
    기준 검증 위험과 ICMS 로 감싼 방법의 순위를 실제 잠재 결과로 평가한다.
    """

    def __init__(
        self,
        graph_service: GraphService,
        dgp_service: DgpService,
        zoo_service: ZooService,
        fitness_service: FitnessService,
        risk_service: RiskService,
        selection_service: SelectionService,
        metrics_service: MetricsService,
        independence_service: IndependenceService,
        report_repository: ReportRepository,
    ):
        self.graph_service = graph_service
        self.dgp_service = dgp_service
        self.zoo_service = zoo_service
        self.fitness_service = fitness_service
        self.risk_service = risk_service
        self.selection_service = selection_service
        self.metrics_service = metrics_service
        self.independence_service = independence_service
        self.report_repository = report_repository

    # 실험 단위 준비 / 채점

    def true_pehe(
        self,
        models: Sequence[CandidateModel],
        target_x: Dataset,
        potential_outcomes: PotentialOutcomes,
    ) -> Dict[str, float]:
        return {
            m.model_id: self.metrics_service.pehe(self.zoo_service.predict_po(m, target_x).cate, potential_outcomes.cate)
            for m in models
        }

    def prepare_unit(self, cfg: ExperimentConfigDto, dag_index: int, seed: int) -> ExperimentUnit:
        """
        DAG 하나를 생성하고 소스/타깃 데이터, 학습/검증 분할, 후보 모델, 실제 PEHE 를 준비한다.
        """
        s_nodes, s_dag, s_data, s_split, s_zoo, s_mutation, s_subgraph = SeedProvider.streams(seed, 7)
        dgp = cfg.dgp
        n = dgp.n_nodes
        if dgp.n_nodes_max is not None:
            n = int(self.rng(s_nodes).integers(dgp.n_nodes, dgp.n_nodes_max + 1))

        dag = self.dgp_service.random_dag(n, dgp.edge_budget(n), s_dag, dgp.weight_range)
        benchmark = self.dgp_service.generate_benchmark(dag, dgp, s_data)
        train, val = self.dgp_service.split_source(benchmark.source, s_split)
        models = self.zoo_service.fit_zoo(cfg.zoo, train, s_zoo, dag=dag)
        if len(models) < 2:
            raise TooFewModelsException()
        target_x = benchmark.target.covariates()

        return ExperimentUnit(
            dag_index=dag_index,
            seed=seed,
            dag=dag,
            train=train,
            val=val,
            target_x=target_x,
            potential_outcomes=benchmark.potential_outcomes,
            models=models,
            true_pehe=self.true_pehe(models, target_x, benchmark.potential_outcomes),
            perturb_mean=benchmark.perturb_mean,
            perturb_nodes=benchmark.perturb_nodes,
            mutation_seed=s_mutation,
            subgraph_seed=s_subgraph,
        )

    def resolve_lambda(self, policy: LambdaPolicyDto, scoring_dag: CausalDag, true_dag: CausalDag) -> float:
        """
        fixed 면 설정값, edge_ratio 면 (채점 그래프, 빈 사전 그래프, 참 그래프) 로 계산한 간선 비율
        """
        if policy.kind == "fixed":
            return policy.value
        return self.selection_service.lambda_from_graphs(scoring_dag, true_dag.with_edges(()), true_dag)

    def validation_risks(self, unit: ExperimentUnit, method: ValidationRiskDto) -> List[float]:
        key = method.label
        if key not in unit.validation_cache:
            context = unit.contexts.get(key)
            if context is None:
                context = self.risk_service.prepare_context(method, unit.train, unit.val, unit.target_x)
                unit.contexts[key] = context
            unit.validation_cache[key] = [
                self.risk_service.validation_risk(m, unit.val, method, context) for m in unit.models
            ]
        return unit.validation_cache[key]

    def causal_risks(self, unit: ExperimentUnit, scoring_dag: CausalDag) -> List[float]:
        mutilated = self.graph_service.mutilate(scoring_dag, scoring_dag.treatment_id)
        return [self.fitness_service.causal_risk(m, unit.target_x, mutilated) for m in unit.models]

    def nci_by_model(self, unit: ExperimentUnit, cfg: ExperimentConfigDto) -> Dict[str, int]:
        mutilated = self.graph_service.mutilate(unit.dag, unit.dag.treatment_id)
        return {
            m.model_id: self.independence_service.model_nci(
                mutilated, self.fitness_service.augment_target(m, unit.target_x), cfg.ci
            )
            for m in unit.models
        }

    def method_result(
        self,
        unit: ExperimentUnit,
        label: str,
        v_raw: Sequence[float],
        c_raw: Sequence[float],
        lam: float,
    ) -> MethodResult:
        reports = self.selection_service.rank_from_raw(unit.model_ids, v_raw, c_raw, lam)
        for report in reports:
            report.true_pehe = unit.true_pehe[report.model_id]
        return MethodResult(
            method=label,
            pehe10=self.metrics_service.pehe_top_decile(reports, unit.true_pehe, normalize=True),
            inversion=self.metrics_service.inversion_count_normalized(reports, unit.true_pehe),
            reports=reports,
        )

    def _map_units(self, cfg: ExperimentConfigDto, fn: Callable[[int, int], R]) -> List[R]:
        """
        DAG 단위를 순서대로(또는 joblib 스레드로) 실행한다. 결과 순서는 항상 dag_index 순.
        """
        seeds = SeedProvider.streams(cfg.seed, cfg.n_dags)
        if cfg.n_jobs > 1:
            return Parallel(n_jobs=cfg.n_jobs, prefer="threads")(delayed(fn)(i, s) for i, s in enumerate(seeds))
        return [fn(i, s) for i, s in enumerate(seeds)]

    # 실험

    def run_unit(self, cfg: ExperimentConfigDto, dag_index: int, seed: int, out_dir: Optional[str | Path] = None) -> DagRecord:
        unit = self.prepare_unit(cfg, dag_index, seed)
        lam = self.resolve_lambda(cfg.lambda_policy, unit.dag, unit.dag)
        c_raw = self.causal_risks(unit, unit.dag)
        nci = self.nci_by_model(unit, cfg) if cfg.report_nci else {}

        results: List[MethodResult] = []
        for method in cfg.methods:
            v_raw = self.validation_risks(unit, method)
            for label, weight in ((method.label, 0.0), (method.icms_label, lam)):
                result = self.method_result(unit, label, v_raw, c_raw, weight)
                for report in result.reports:
                    report.nci = nci.get(report.model_id)
                results.append(result)

        record = DagRecord(
            dag_index=dag_index,
            seed=seed,
            n_nodes=len(unit.dag.nodes),
            n_edges=len(unit.dag.edges),
            perturb_mean=unit.perturb_mean,
            perturb_nodes=[unit.dag.name_of(i) for i in unit.perturb_nodes],
            lam=lam,
            true_pehe=unit.true_pehe,
            results=results,
        )
        if out_dir is not None:
            self.report_repository.save_dag_record(dag_record_to_dto(record), out_dir)
        logger.info(
            "Finished DAG unit",
            extra={"dag_index": dag_index, "nodes": record.n_nodes, "edges": record.n_edges},
        )
        return record

    def run_experiment(self, cfg: ExperimentConfigDto, out_dir: Optional[str | Path] = None) -> ExperimentReport:
        """
        설정된 수의 DAG 에 대해 실험을 수행하고 방법별 평균/표준오차, ICMS 대응 비교를 집계한다.
        out_dir 이 있으면 DAG 하나가 끝날 때마다 그 결과를 바로 커밋한다.
        """
        records = self._map_units(cfg, lambda i, s: self.run_unit(cfg, i, s, out_dir))

        labels = [label for m in cfg.methods for label in (m.label, m.icms_label)]
        summaries = []
        for label in labels:
            pehe10 = [r.result(label).pehe10 for r in records]
            inversion = [r.result(label).inversion for r in records]
            mean_pehe10, se_pehe10 = self.metrics_service.mean_and_se(pehe10)
            mean_inversion, se_inversion = self.metrics_service.mean_and_se(inversion)
            summaries.append(MethodSummary(label, mean_pehe10, se_pehe10, mean_inversion, se_inversion))

        comparisons = []
        for method in cfg.methods:
            base = [r.result(method.label) for r in records]
            icms = [r.result(method.icms_label) for r in records]
            diff_pehe10 = self.metrics_service.paired_difference([r.pehe10 for r in icms], [r.pehe10 for r in base])
            diff_inversion = self.metrics_service.paired_difference(
                [r.inversion for r in icms], [r.inversion for r in base]
            )
            comparisons.append(PairedComparison(method.label, method.icms_label, *diff_pehe10, *diff_inversion))

        return ExperimentReport(
            seed=cfg.seed,
            n_dags=cfg.n_dags,
            records=records,
            summaries=summaries,
            comparisons=comparisons,
        )

    @Transactional
    def save_experiment(self, report: ExperimentReport, out_dir: str | Path, session: OutputSession = None) -> Path:
        path = Path(out_dir) / EXPERIMENT_REPORT_FILE
        self.report_repository.save_report(experiment_report_to_dto(report), path, session=session)
        return path

    # 스윕: DAG 마다 데이터와 후보 모델을 고정하고 한 가지 설정만 바꿔 다시 채점

    def _sweep(
        self,
        kind: str,
        cfg: ExperimentConfigDto,
        unit_records: Callable[[ExperimentUnit], List[SweepRecord]],
        out_dir: Optional[str | Path],
    ) -> List[SweepRecord]:
        def run(dag_index: int, seed: int) -> List[SweepRecord]:
            unit = self.prepare_unit(cfg, dag_index, seed)
            records = unit_records(unit)
            if out_dir is not None:
                self.report_repository.save_sweep_records(sweep_records_to_dto(kind, dag_index, records), out_dir)
            logger.info("Finished sweep unit", extra={"sweep": kind, "dag_index": dag_index})
            return records

        return [record for records in self._map_units(cfg, run) for record in records]

    def _curve(self, records: Sequence[SweepRecord]) -> List[CurvePoint]:
        groups: Dict[Tuple[float, str], List[SweepRecord]] = {}
        for record in records:
            groups.setdefault((record.parameter, record.series), []).append(record)

        curve = []
        for (parameter, series), group in sorted(groups.items(), key=lambda item: (item[0][1], item[0][0])):
            mean, se = self.metrics_service.mean_and_se([r.pehe10 for r in group])
            deltas = [r.delta_pehe10 for r in group if r.delta_pehe10 is not None]
            distances = [r.graph_distance for r in group if r.graph_distance is not None]
            curve.append(
                CurvePoint(
                    parameter=parameter,
                    series=series,
                    mean_pehe10=mean,
                    se_pehe10=se,
                    mean_delta_pehe10=self.metrics_service.mean_and_se(deltas)[0] if deltas else None,
                    mean_graph_distance=self.metrics_service.mean_and_se(distances)[0] if distances else None,
                )
            )
        return curve

    def sweep_lambda(
        self,
        cfg: ExperimentConfigDto,
        lambdas: Optional[Sequence[float]] = None,
        out_dir: Optional[str | Path] = None,
    ) -> SweepReport:
        """
        λ 민감도: λ=0 점은 기준 검증 위험 순위와 정확히 같다.
        """
        lambdas = list(lambdas if lambdas is not None else cfg.sweep.lambdas)
        method = cfg.sweep.method

        def unit_records(unit: ExperimentUnit) -> List[SweepRecord]:
            v_raw = self.validation_risks(unit, method)
            c_raw = self.causal_risks(unit, unit.dag)
            baseline = self.method_result(unit, method.label, v_raw, c_raw, 0.0).pehe10
            records = []
            for lam in lambdas:
                pehe10 = self.method_result(unit, method.icms_label, v_raw, c_raw, lam).pehe10
                records.append(SweepRecord(unit.dag_index, lam, method.label, baseline))
                records.append(SweepRecord(unit.dag_index, lam, method.icms_label, pehe10, pehe10 - baseline))
            return records

        records = self._sweep("lambda", cfg, unit_records, out_dir)
        return SweepReport("lambda", cfg.seed, cfg.n_dags, records, self._curve(records))

    def sweep_misspec(
        self,
        cfg: ExperimentConfigDto,
        fractions: Optional[Sequence[float]] = None,
        mode: Optional[str] = None,
        out_dir: Optional[str | Path] = None,
    ) -> SweepReport:
        """
        그래프 오지정: 간선 일부를 뒤집거나 추가한 그래프로 채점한 ICMS 와 참 그래프 ICMS 의 PEHE-10 차이.
        spearman_rho 는 (변이 비율, ΔPEHE-10) 의 순위 상관.
        """
        fractions = list(fractions if fractions is not None else cfg.sweep.fractions)
        mode = mode or cfg.sweep.mode
        method = cfg.sweep.method

        def unit_records(unit: ExperimentUnit) -> List[SweepRecord]:
            v_raw = self.validation_risks(unit, method)
            c_true = self.causal_risks(unit, unit.dag)
            lam_true = self.resolve_lambda(cfg.lambda_policy, unit.dag, unit.dag)
            correct = self.method_result(unit, method.icms_label, v_raw, c_true, lam_true).pehe10
            records = []
            for fraction in fractions:
                mutated = self.dgp_service.perturb_graph(unit.dag, fraction, mode, unit.mutation_seed)
                c_raw = c_true if mutated is unit.dag else self.causal_risks(unit, mutated)
                lam = self.resolve_lambda(cfg.lambda_policy, mutated, unit.dag)
                pehe10 = self.method_result(unit, method.icms_label, v_raw, c_raw, lam).pehe10
                records.append(
                    SweepRecord(
                        dag_index=unit.dag_index,
                        parameter=fraction,
                        series=method.icms_label,
                        pehe10=pehe10,
                        delta_pehe10=pehe10 - correct,
                        graph_distance=self.graph_service.graph_distance(unit.dag, mutated),
                    )
                )
            return records

        records = self._sweep("misspec", cfg, unit_records, out_dir)
        rho = self.metrics_service.spearman([r.parameter for r in records], [r.delta_pehe10 for r in records])
        return SweepReport("misspec", cfg.seed, cfg.n_dags, records, self._curve(records), spearman_rho=rho)

    def subgraph_scoring_graph(self, dag: CausalDag, kept_fraction: float, seed: int) -> CausalDag:
        """
        outcome 으로 들어오는 간선 중 kept_fraction 만 알려진 경우의 채점 그래프.
        일부만 알려지면 outcome 의 부모 집합을 모르는 것으로 보고 outcome 의 모든 비자손을 부모로 둔다.
        """
        subgraph = self.dgp_service.outcome_subgraph(dag, kept_fraction, seed)
        if kept_fraction >= 1.0:
            return subgraph
        return self.graph_service.saturate_parents(subgraph, subgraph.outcome_id)

    def sweep_subgraph(
        self,
        cfg: ExperimentConfigDto,
        kept_fractions: Optional[Sequence[float]] = None,
        out_dir: Optional[str | Path] = None,
    ) -> SweepReport:
        """
        부분 그래프: outcome 으로 들어오는 공변량 간선 중 일부만 아는 경우의 ICMS 와 기준 방법 비교.
        graph_distance 는 참 그래프와 실제 채점 그래프 사이의 거리.
        """
        kept_fractions = list(kept_fractions if kept_fractions is not None else cfg.sweep.kept_fractions)
        method = cfg.sweep.method

        def unit_records(unit: ExperimentUnit) -> List[SweepRecord]:
            v_raw = self.validation_risks(unit, method)
            c_true = self.causal_risks(unit, unit.dag)
            baseline = self.method_result(unit, method.label, v_raw, c_true, 0.0).pehe10
            records = []
            for fraction in kept_fractions:
                subgraph = self.subgraph_scoring_graph(unit.dag, fraction, unit.subgraph_seed)
                c_raw = self.causal_risks(unit, subgraph)
                lam = self.resolve_lambda(cfg.lambda_policy, subgraph, unit.dag)
                pehe10 = self.method_result(unit, method.icms_label, v_raw, c_raw, lam).pehe10
                records.append(SweepRecord(unit.dag_index, fraction, method.label, baseline))
                records.append(
                    SweepRecord(
                        dag_index=unit.dag_index,
                        parameter=fraction,
                        series=method.icms_label,
                        pehe10=pehe10,
                        delta_pehe10=pehe10 - baseline,
                        graph_distance=self.graph_service.graph_distance(unit.dag, subgraph),
                    )
                )
            return records

        records = self._sweep("subgraph", cfg, unit_records, out_dir)
        return SweepReport("subgraph", cfg.seed, cfg.n_dags, records, self._curve(records))

    @Transactional
    def save_sweep(self, report: SweepReport, out_dir: str | Path, session: OutputSession = None) -> Tuple[Path, Path]:
        """ 스윕 리포트 JSON 과 곡선 CSV 를 같은 세션에서 함께 커밋 """
        dto = sweep_report_to_dto(report)
        report_path = Path(out_dir) / f"{report.kind}_sweep.json"
        curve_path = Path(out_dir) / f"{report.kind}_curve.csv"
        self.report_repository.save_report(dto, report_path, session=session)
        self.report_repository.save_curve(
            [CurvePointDto.model_validate(p, from_attributes=True) for p in report.curve], curve_path, session=session
        )
        return report_path, curve_path

    # 외부 데이터셋 (CSV) 경로

    def fit_dataset_zoo(
        self,
        cfg: ExperimentConfigDto,
        source: Dataset,
        dag: Optional[CausalDag] = None,
    ) -> Tuple[Dataset, Dataset, List[CandidateModel]]:
        """
        소스 데이터를 학습/검증으로 나누고 후보 모델을 학습한다.
        :return: (train, val, models)
        """
        s_split, s_zoo = SeedProvider.streams(cfg.seed, 2)
        train, val = self.dgp_service.split_source(source, s_split)
        models = self.zoo_service.fit_zoo(cfg.zoo, train, s_zoo, dag=dag)
        return train, val, models

    def rank_dataset(
        self,
        cfg: ExperimentConfigDto,
        source: Dataset,
        target: Dataset,
        dag: CausalDag,
        method: ValidationRiskDto,
        lam: float,
        score: str = "nll",
        potential_outcomes: Optional[PotentialOutcomes] = None,
    ) -> Tuple[List[ScoreReport], Optional[float], Optional[float]]:
        """
        주어진 데이터셋과 그래프로 후보 모델의 ICMS 순위를 매긴다.
        평가 전용 잠재 결과가 있으면 실제 PEHE, PEHE-10, 정규화 역전 수를 함께 돌려준다.
        :return: (순위 리포트, PEHE-10, 역전 수)
        """
        train, val, models = self.fit_dataset_zoo(cfg, source, dag=dag)
        target_x = target.covariates()
        context = self.risk_service.prepare_context(method, train, val, target_x)
        reports = self.selection_service.rank_models(
            models,
            val,
            target_x,
            dag,
            lam,
            method,
            context=context,
            score=score,
            report_nci=cfg.report_nci,
            ci=cfg.ci,
        )
        if potential_outcomes is None:
            return reports, None, None

        true_pehe = self.true_pehe(models, target_x, potential_outcomes)
        for report in reports:
            report.true_pehe = true_pehe[report.model_id]
        pehe10 = self.metrics_service.pehe_top_decile(reports, true_pehe, normalize=True)
        inversion = self.metrics_service.inversion_count_normalized(reports, true_pehe) if len(reports) > 1 else None
        return reports, pehe10, inversion
