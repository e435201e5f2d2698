from pathlib import Path
from typing import Optional

import pandas as pd

from src.core.transaction import OutputSession, Transactional
from src.domain.dataset_domain import Dataset, PotentialOutcomes
from src.dto.response.dataset.dataset_meta_dto import DatasetMetaDto
from src.exception.data_exceptions import ColumnMismatchException, SchemaMismatchException
from src.mapper.dataset_mapper import dataset_to_meta, meta_to_kinds
from src.repository.base_repository import BaseRepository

EVAL_ONLY_SUFFIX = ".potential_outcomes.eval.csv"


class DatasetRepository(BaseRepository[DatasetMetaDto]):
    """
    데이터셋 파일 접근을 담당하는 리포지토리 클래스.
    <name>.csv (헤더 포함 데이터), <name>.meta.json (컬럼 타입 sidecar),
    <name>.potential_outcomes.eval.csv (평가 전용 잠재 결과) 세 파일로 구성된다.
    """

    def __init__(self):
        super().__init__(DatasetMetaDto)

    @staticmethod
    def data_path(directory: str | Path, name: str) -> Path:
        return Path(directory) / f"{name}.csv"

    @staticmethod
    def meta_path(directory: str | Path, name: str) -> Path:
        return Path(directory) / f"{name}.meta.json"

    @staticmethod
    def potential_outcomes_path(directory: str | Path, name: str) -> Path:
        return Path(directory) / f"{name}{EVAL_ONLY_SUFFIX}"

    def load(self, directory: str | Path, name: str) -> Dataset:
        """
        CSV 와 sidecar 를 읽어 Dataset 을 만든다.
        :raises ColumnMismatchException: sidecar 에 선언된 컬럼이 CSV 에 없는 경우
        :raises SchemaMismatchException: CSV 에 선언되지 않은 컬럼이 있는 경우
        """
        meta = self.read_model(self.meta_path(directory, name))
        frame = self.read_frame(self.data_path(directory, name))

        kinds = meta_to_kinds(meta)
        missing = set(kinds) - set(frame.columns)
        if missing:
            raise ColumnMismatchException(missing)
        undeclared = [c for c in frame.columns if c not in kinds]
        if undeclared:
            raise SchemaMismatchException(f"Columns not declared in sidecar: {undeclared}")

        frame = frame[[c.name for c in meta.columns]]
        return Dataset(frame=frame, kinds=kinds, treatment=meta.treatment, outcome=meta.outcome)

    def load_potential_outcomes(self, directory: str | Path, name: str) -> PotentialOutcomes:
        frame = self.read_frame(self.potential_outcomes_path(directory, name))
        return PotentialOutcomes(y0=frame["y0"].to_numpy(), y1=frame["y1"].to_numpy())

    def has_potential_outcomes(self, directory: str | Path, name: str) -> bool:
        return self.exists(self.potential_outcomes_path(directory, name))

    @Transactional
    def save(
        self,
        dataset: Dataset,
        directory: str | Path,
        name: str,
        potential_outcomes: Optional[PotentialOutcomes] = None,
        session: OutputSession = None,
    ) -> Path:
        """
        :param potential_outcomes: 있으면 평가 전용 파일로 따로 기록
        :param session: 트랜잭션 세션
        """
        self.write_frame(self.data_path(directory, name), dataset.frame, session)
        self.write_model(self.meta_path(directory, name), dataset_to_meta(dataset), session)
        if potential_outcomes is not None:
            po_frame = pd.DataFrame(
                {"y0": potential_outcomes.y0, "y1": potential_outcomes.y1, "cate": potential_outcomes.cate}
            )
            self.write_frame(self.potential_outcomes_path(directory, name), po_frame, session)
        return self.data_path(directory, name)
