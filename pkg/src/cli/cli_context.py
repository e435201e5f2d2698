from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click
from dependency_injector.wiring import Provide, inject
from pydantic import BaseModel

from src.core.container import Container
from src.core.settings import settings
from src.dto.request.config.experiment_config_dto import ExperimentConfigDto
from src.dto.response.common_response_dto import CommonResponseDto
from src.repository.config.config_repository import ConfigRepository


@dataclass
class CliContext:
    """ 전역 옵션(--config, --seed, --out)을 반영한 실행 설정 """

    config: ExperimentConfigDto
    out_dir: Path

    def path(self, name: str) -> Path:
        return self.out_dir / name


@inject
def load_context(
    config_path: Optional[str],
    seed: Optional[int],
    out_dir: Optional[str],
    config_repository: ConfigRepository = Provide[Container.config_repository],
) -> CliContext:
    """
    설정 파일을 읽고 CLI 전역 플래그로 덮어쓴다.
    :param seed: 주어지면 실험 마스터 시드와 DGP 시드를 모두 덮어씀
    """
    config = config_repository.load(config_path)
    if seed is not None:
        config = config.model_copy(update={"seed": seed, "dgp": config.dgp.model_copy(update={"seed": seed})})
    resolved = Path(out_dir or config.output_dir or settings.OUTPUT_DIR)
    return CliContext(config=config, out_dir=resolved)


def echo_success(data: BaseModel) -> None:
    """ 성공 응답을 공통 응답 포맷으로 stdout 에 기록 """
    envelope = CommonResponseDto[type(data)](status="success", data=data, message=None)
    click.echo(envelope.model_dump_json(by_alias=True))
