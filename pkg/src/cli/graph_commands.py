from typing import Optional

import click
from dependency_injector.wiring import Provide, inject

from src.cli.cli_context import CliContext, echo_success
from src.core.container import Container
from src.dto.response.command.command_result_dto import ArtifactResultDto
from src.repository.graph.graph_repository import GraphRepository
from src.service.dgp.dgp_service import DgpService

GRAPH_FILE = "graph.json"


@click.command("gen-dag")
@click.option("--n-nodes", type=click.IntRange(min=3), default=None, help="노드 수 (기본: 설정의 dgp.n_nodes)")
@click.option("--max-edges", type=click.IntRange(min=2), default=None, help="간선 수 상한")
@click.pass_obj
@inject
def gen_dag(
    ctx: CliContext,
    n_nodes: Optional[int],
    max_edges: Optional[int],
    dgp_service: DgpService = Provide[Container.dgp_service],
    graph_repository: GraphRepository = Provide[Container.graph_repository],
):
    """
    무작위 가중치 인과 DAG 를 생성해 Graph JSON 으로 저장합니다.
    """
    dgp = ctx.config.dgp
    n = n_nodes or dgp.n_nodes
    dag = dgp_service.random_dag(n, max_edges or dgp.edge_budget(n), dgp.seed, dgp.weight_range)
    path = graph_repository.save(dag, ctx.path(GRAPH_FILE))

    echo_success(
        ArtifactResultDto(
            files=[str(path)],
            summary={
                "n_nodes": len(dag.nodes),
                "n_edges": len(dag.edges),
                "treatment": dag.name_of(dag.treatment_id),
                "outcome": dag.name_of(dag.outcome_id),
            },
        )
    )
