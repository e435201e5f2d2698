from typing import Optional

import click
from dependency_injector.wiring import Provide, inject

from src.cli.cli_context import CliContext, echo_success
from src.cli.graph_commands import GRAPH_FILE
from src.core.container import Container
from src.core.transaction import OutputSession
from src.dto.response.command.command_result_dto import ArtifactResultDto
from src.repository.dataset.dataset_repository import DatasetRepository
from src.repository.graph.graph_repository import GraphRepository
from src.service.dgp.dgp_service import DgpService

SOURCE_NAME = "source"
TARGET_NAME = "target"


@click.command("gen-data")
@click.option("--graph", "graph_path", type=click.Path(dir_okay=False), default=None, help="Graph JSON (기본: <out>/graph.json)")
@click.pass_obj
@inject
def gen_data(
    ctx: CliContext,
    graph_path: Optional[str],
    dgp_service: DgpService = Provide[Container.dgp_service],
    graph_repository: GraphRepository = Provide[Container.graph_repository],
    dataset_repository: DatasetRepository = Provide[Container.dataset_repository],
):
    """
    가중치 DAG 로 관측(소스) 데이터와 평균 이동된 개입(타깃) 데이터를 생성합니다.
    타깃의 실제 잠재 결과는 평가 전용 파일로 따로 저장됩니다.
    """
    dag = graph_repository.load(graph_path or ctx.path(GRAPH_FILE))
    benchmark = dgp_service.generate_benchmark(dag, ctx.config.dgp, ctx.config.dgp.seed)

    def save_all(session: OutputSession):
        return [
            dataset_repository.save(benchmark.source, ctx.out_dir, SOURCE_NAME, session=session),
            dataset_repository.save(
                benchmark.target,
                ctx.out_dir,
                TARGET_NAME,
                potential_outcomes=benchmark.potential_outcomes,
                session=session,
            ),
        ]

    paths = dgp_service.execute_transaction(save_all)
    echo_success(
        ArtifactResultDto(
            files=[str(p) for p in paths],
            summary={
                "n_source": benchmark.source.n_rows,
                "n_target": benchmark.target.n_rows,
                "perturb_mean": benchmark.perturb_mean,
                "perturb_nodes": ",".join(dag.name_of(i) for i in benchmark.perturb_nodes),
            },
        )
    )
