from typing import Optional

import click

from src.cli.cli_context import load_context
from src.cli.data_commands import gen_data
from src.cli.experiment_commands import evaluate, sweep_lambda, sweep_misspec, sweep_subgraph
from src.cli.graph_commands import gen_dag
from src.cli.model_commands import fit_zoo, rank
from src.config.logging_config import configure_logging
from src.core.container import container
from src.core.exception_handlers import register_exception_handlers


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="실행 설정 JSON")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="마스터 시드 (u64)")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None, help="출력 디렉터리")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], seed: Optional[int], out_dir: Optional[str]):
    """
    ICMS 모델 선택: 검증 위험과 인과 적합도로 CATE 모델을 고른다.
    """
    ctx.obj = load_context(config_path, seed, out_dir)


cli.add_command(gen_dag)
cli.add_command(gen_data)
cli.add_command(fit_zoo)
cli.add_command(rank)
cli.add_command(evaluate)
cli.add_command(sweep_lambda)
cli.add_command(sweep_misspec)
cli.add_command(sweep_subgraph)

# 로깅 설정 적용
configure_logging()

# CLI 모듈의 Provide[...] 주입 연결
container.wire(packages=["src.cli"])

# 예외 핸들러 등록
register_exception_handlers(cli)

if __name__ == "__main__":
    cli()
