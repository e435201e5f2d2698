from pathlib import Path
from typing import Callable, Generic, Optional, Type, TypeVar

import pandas as pd
from pydantic import BaseModel

from src.core.transaction import OutputSession
from src.exception.data_exceptions import DataFileNotFoundException

# T 는 항상 pydantic BaseModel 을 상속하는 파일 포맷 DTO
T = TypeVar("T", bound=BaseModel)


class BaseRepository(Generic[T]):
    """
    공통적인 파일 접근 로직을 제공하는 클래스.
    JSON 은 pydantic DTO 로, 표 데이터는 pandas DataFrame 으로 읽고 쓴다.
    모든 쓰기는 OutputSession 에 스테이징되어 커밋 시점에 최종 경로로 이동한다.
    """

    def __init__(self, model: Type[T]):
        """
        :param model: 이 리포지토리가 다루는 DTO 클래스
        """
        self.model = model

    @staticmethod
    def _require_file(path: Path, not_found: Callable[[Path], Exception]) -> None:
        if not path.is_file():
            raise not_found(path)

    def read_model(
        self,
        path: str | Path,
        not_found: Callable[[Path], Exception] = DataFileNotFoundException,
    ) -> T:
        """
        JSON 파일을 DTO 로 읽는 메서드.
        :param path: 파일 경로
        :param not_found: 파일이 없을 때 던질 예외 생성자
        :raises pydantic.ValidationError: 포맷이 DTO 와 맞지 않는 경우
        """
        path = Path(path)
        self._require_file(path, not_found)
        return self.model.model_validate_json(path.read_text(encoding="utf-8"))

    @staticmethod
    def write_model(
        path: str | Path,
        dto: BaseModel,
        session: OutputSession,
        exclude_none: bool = False,
    ) -> Path:
        """
        DTO 를 JSON 으로 기록하는 메서드. 같은 입력이면 바이트 단위로 같은 파일이 나온다.
        :param session: 트랜잭션 세션
        """
        text = dto.model_dump_json(by_alias=True, exclude_none=exclude_none, indent=2) + "\n"
        session.stage(path).write_text(text, encoding="utf-8")
        return Path(path)

    @staticmethod
    def read_frame(path: str | Path) -> pd.DataFrame:
        path = Path(path)
        BaseRepository._require_file(path, DataFileNotFoundException)
        return pd.read_csv(path, float_precision="round_trip")

    @staticmethod
    def write_frame(path: str | Path, frame: pd.DataFrame, session: OutputSession) -> Path:
        frame.to_csv(session.stage(path), index=False, lineterminator="\n")
        return Path(path)

    @staticmethod
    def exists(path: Optional[str | Path]) -> bool:
        return path is not None and Path(path).is_file()
