from pathlib import Path
from typing import List

import pandas as pd
from pydantic import BaseModel

from src.core.transaction import OutputSession, Transactional
from src.dto.response.report.experiment_report_dto import DagRecordDto
from src.dto.response.report.sweep_report_dto import CurvePointDto, SweepDagRecordsDto
from src.repository.base_repository import BaseRepository


class ReportRepository(BaseRepository[DagRecordDto]):
    """
    실험 리포트(JSON)와 곡선 데이터(CSV) 기록을 담당하는 리포지토리 클래스.
    """

    def __init__(self):
        super().__init__(DagRecordDto)

    @staticmethod
    def dag_record_path(directory: str | Path, dag_index: int) -> Path:
        return Path(directory) / "dags" / f"dag_{dag_index:04d}.json"

    @Transactional
    def save_report(self, dto: BaseModel, path: str | Path, session: OutputSession = None) -> Path:
        return self.write_model(path, dto, session)

    @Transactional
    def save_dag_record(self, dto: DagRecordDto, directory: str | Path, session: OutputSession = None) -> Path:
        """ DAG 하나의 결과를 개별 파일로 바로 커밋 (부분 결과 보존) """
        return self.write_model(self.dag_record_path(directory, dto.dag_index), dto, session)

    def load_dag_record(self, directory: str | Path, dag_index: int) -> DagRecordDto:
        return self.read_model(self.dag_record_path(directory, dag_index))

    @Transactional
    def save_curve(self, points: List[CurvePointDto], path: str | Path, session: OutputSession = None) -> Path:
        columns = list(CurvePointDto.model_fields)
        frame = pd.DataFrame([p.model_dump() for p in points], columns=columns)
        return self.write_frame(path, frame, session)

    @staticmethod
    def sweep_record_path(directory: str | Path, kind: str, dag_index: int) -> Path:
        return Path(directory) / f"{kind}_sweep" / f"dag_{dag_index:04d}.json"

    @Transactional
    def save_sweep_records(self, dto: SweepDagRecordsDto, directory: str | Path, session: OutputSession = None) -> Path:
        return self.write_model(self.sweep_record_path(directory, dto.kind, dto.dag_index), dto, session)
