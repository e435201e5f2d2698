from pathlib import Path
from typing import Optional

from src.dto.request.config.experiment_config_dto import ExperimentConfigDto
from src.exception.config_exceptions import ConfigFileNotFoundException
from src.repository.base_repository import BaseRepository


class ConfigRepository(BaseRepository[ExperimentConfigDto]):
    """
    실행 설정 JSON 을 읽는 리포지토리 클래스.
    """

    def __init__(self):
        super().__init__(ExperimentConfigDto)

    def load(self, path: Optional[str | Path]) -> ExperimentConfigDto:
        """
        :param path: 설정 파일 경로, 없으면 기본값
        :raises ConfigFileNotFoundException: 경로가 주어졌는데 파일이 없는 경우
        :raises pydantic.ValidationError: 설정 값이 제약을 위반하는 경우
        """
        if path is None:
            return ExperimentConfigDto()
        return self.read_model(path, not_found=ConfigFileNotFoundException)
