from typing import Optional, Tuple

import click
from dependency_injector.wiring import Provide, inject

from src.cli.cli_context import CliContext, echo_success
from src.core.container import Container
from src.domain.report_domain import SweepReport
from src.dto.response.command.command_result_dto import ExperimentResultDto, SweepResultDto
from src.mapper.report_mapper import experiment_report_to_dto, sweep_report_to_dto
from src.service.harness.experiment_service import ExperimentService


@click.command("evaluate")
@click.option("--n-dags", type=click.IntRange(min=1), default=None, help="DAG 개수 (기본: 설정의 n_dags)")
@click.pass_obj
@inject
def evaluate(
    ctx: CliContext,
    n_dags: Optional[int],
    experiment_service: ExperimentService = Provide[Container.experiment_service],
):
    """
    합성 DAG 여러 개에 대해 기준 방법과 ICMS 방법의 PEHE-10, 역전 수를 평가합니다.
    DAG 별 결과는 <out>/dags/ 에 즉시 기록됩니다.
    """
    config = ctx.config if n_dags is None else ctx.config.model_copy(update={"n_dags": n_dags})
    report = experiment_service.run_experiment(config, out_dir=ctx.out_dir)
    path = experiment_service.save_experiment(report, ctx.out_dir)

    dto = experiment_report_to_dto(report)
    echo_success(ExperimentResultDto(files=[str(path)], summaries=dto.summaries, comparisons=dto.comparisons))


def _echo_sweep(report: SweepReport, paths: Tuple) -> None:
    dto = sweep_report_to_dto(report)
    echo_success(
        SweepResultDto(
            kind=dto.kind,
            files=[str(p) for p in paths],
            spearman_rho=dto.spearman_rho,
            curve=dto.curve,
        )
    )


@click.command("sweep-lambda")
@click.option("--lambda", "lambdas", type=click.FloatRange(min=0.0), multiple=True, help="λ 값 (여러 번 지정 가능)")
@click.pass_obj
@inject
def sweep_lambda(
    ctx: CliContext,
    lambdas: Tuple[float, ...],
    experiment_service: ExperimentService = Provide[Container.experiment_service],
):
    """ λ 에 대한 PEHE-10 민감도 곡선 """
    report = experiment_service.sweep_lambda(ctx.config, lambdas=lambdas or None, out_dir=ctx.out_dir)
    _echo_sweep(report, experiment_service.save_sweep(report, ctx.out_dir))


@click.command("sweep-misspec")
@click.option("--fraction", "fractions", type=click.FloatRange(0.0, 1.0), multiple=True, help="변형할 간선 비율")
@click.option("--mode", type=click.Choice(["reverse", "add"]), default=None, help="간선 뒤집기 또는 추가 (기본: 설정값)")
@click.pass_obj
@inject
def sweep_misspec(
    ctx: CliContext,
    fractions: Tuple[float, ...],
    mode: Optional[str],
    experiment_service: ExperimentService = Provide[Container.experiment_service],
):
    """ 잘못 지정된 그래프로 점수를 매겼을 때의 ΔPEHE-10 """
    report = experiment_service.sweep_misspec(
        ctx.config, fractions=fractions or None, mode=mode, out_dir=ctx.out_dir
    )
    _echo_sweep(report, experiment_service.save_sweep(report, ctx.out_dir))


@click.command("sweep-subgraph")
@click.option("--kept-fraction", "kept_fractions", type=click.FloatRange(0.0, 1.0), multiple=True, help="유지할 outcome 부모 간선 비율")
@click.pass_obj
@inject
def sweep_subgraph(
    ctx: CliContext,
    kept_fractions: Tuple[float, ...],
    experiment_service: ExperimentService = Provide[Container.experiment_service],
):
    """ outcome 부모 일부만 아는 부분 그래프로 점수를 매겼을 때의 PEHE-10 """
    report = experiment_service.sweep_subgraph(ctx.config, kept_fractions=kept_fractions or None, out_dir=ctx.out_dir)
    _echo_sweep(report, experiment_service.save_sweep(report, ctx.out_dir))
