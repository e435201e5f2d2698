from typing import Optional

import click
from dependency_injector.wiring import Provide, inject

from src.cli.cli_context import CliContext, echo_success
from src.cli.data_commands import SOURCE_NAME, TARGET_NAME
from src.cli.graph_commands import GRAPH_FILE
from src.core.container import Container
from src.dto.request.config.validation_risk_dto import ValidationRiskDto
from src.dto.response.report.score_report_dto import FittedModelDto, ZooFitReportDto
from src.mapper.report_mapper import score_reports_to_dto
from src.repository.dataset.dataset_repository import DatasetRepository
from src.repository.graph.graph_repository import GraphRepository
from src.repository.report.report_repository import ReportRepository
from src.service.harness.experiment_service import ExperimentService

ZOO_FILE = "zoo.json"
RANKING_FILE = "ranking.json"


@click.command("fit-zoo")
@click.option("--data-dir", type=click.Path(file_okay=False), default=None, help="source/target 데이터 디렉터리 (기본: <out>)")
@click.option("--graph", "graph_path", type=click.Path(dir_okay=False), default=None, help="oracle 계열에 필요한 가중치 그래프")
@click.pass_obj
@inject
def fit_zoo(
    ctx: CliContext,
    data_dir: Optional[str],
    graph_path: Optional[str],
    experiment_service: ExperimentService = Provide[Container.experiment_service],
    graph_repository: GraphRepository = Provide[Container.graph_repository],
    dataset_repository: DatasetRepository = Provide[Container.dataset_repository],
    report_repository: ReportRepository = Provide[Container.report_repository],
):
    """
    소스 데이터의 학습 분할로 후보 모델 zoo 를 학습합니다.
    타깃의 평가 전용 잠재 결과 파일이 있으면 모델별 실제 PEHE 를 함께 기록합니다.
    """
    data_dir = data_dir or ctx.out_dir
    graph_path = graph_path or ctx.path(GRAPH_FILE)
    dag = graph_repository.load(graph_path) if graph_repository.exists(graph_path) else None

    source = dataset_repository.load(data_dir, SOURCE_NAME)
    train, _, models = experiment_service.fit_dataset_zoo(ctx.config, source, dag=dag)

    true_pehe = {}
    if dataset_repository.has_potential_outcomes(data_dir, TARGET_NAME):
        target = dataset_repository.load(data_dir, TARGET_NAME)
        potential_outcomes = dataset_repository.load_potential_outcomes(data_dir, TARGET_NAME)
        true_pehe = experiment_service.true_pehe(models, target.covariates(), potential_outcomes)

    dto = ZooFitReportDto(
        n_train=train.n_rows,
        models=[
            FittedModelDto(model_id=m.model_id, family=m.family.value, true_pehe=true_pehe.get(m.model_id))
            for m in models
        ],
    )
    report_repository.save_report(dto, ctx.path(ZOO_FILE))
    echo_success(dto)


@click.command("rank")
@click.option("--data-dir", type=click.Path(file_okay=False), default=None, help="source/target 데이터 디렉터리 (기본: <out>)")
@click.option("--graph", "graph_path", type=click.Path(dir_okay=False), default=None, help="점수 계산에 쓸 그래프 (기본: <out>/graph.json)")
@click.option("--loss", default="mse", show_default=True, help="검증 손실 (mse, iptw)")
@click.option("--uda", type=click.Choice(["none", "iwcv", "dev"]), default="none", show_default=True)
@click.option("--lambda", "lam", type=click.FloatRange(min=0.0), default=1.0, show_default=True)
@click.option("--score", type=click.Choice(["nll", "bic"]), default="nll", show_default=True)
@click.pass_obj
@inject
def rank(
    ctx: CliContext,
    data_dir: Optional[str],
    graph_path: Optional[str],
    loss: str,
    uda: str,
    lam: float,
    score: str,
    experiment_service: ExperimentService = Provide[Container.experiment_service],
    graph_repository: GraphRepository = Provide[Container.graph_repository],
    dataset_repository: DatasetRepository = Provide[Container.dataset_repository],
    report_repository: ReportRepository = Provide[Container.report_repository],
):
    """
    후보 모델을 ICMS 점수(v_r + λ·c_r)로 순위 매깁니다.
    임의의 CSV 데이터셋(sidecar 포함)과 Graph JSON 에 대해 동작합니다.
    """
    data_dir = data_dir or ctx.out_dir
    method = ValidationRiskDto(loss=loss, uda=uda)
    dag = graph_repository.load(graph_path or ctx.path(GRAPH_FILE))
    source = dataset_repository.load(data_dir, SOURCE_NAME)
    target = dataset_repository.load(data_dir, TARGET_NAME)
    potential_outcomes = (
        dataset_repository.load_potential_outcomes(data_dir, TARGET_NAME)
        if dataset_repository.has_potential_outcomes(data_dir, TARGET_NAME)
        else None
    )

    reports, pehe10, inversion = experiment_service.rank_dataset(
        ctx.config, source, target, dag, method, lam, score=score, potential_outcomes=potential_outcomes
    )
    label = method.icms_label if lam > 0 else method.label
    dto = score_reports_to_dto(label, lam, reports, pehe10=pehe10, inversion=inversion)
    report_repository.save_report(dto, ctx.path(RANKING_FILE))
    echo_success(dto)
