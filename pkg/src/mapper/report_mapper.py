from typing import List, Optional

from src.domain.report_domain import DagRecord, ExperimentReport, ScoreReport, SweepRecord, SweepReport
from src.dto.response.report.experiment_report_dto import DagRecordDto, ExperimentReportDto
from src.dto.response.report.score_report_dto import RankingReportDto, ScoreReportDto
from src.dto.response.report.sweep_report_dto import SweepDagRecordsDto, SweepRecordDto, SweepReportDto


def score_reports_to_dto(
    method: str,
    lam: float,
    reports: List[ScoreReport],
    pehe10: Optional[float] = None,
    inversion: Optional[float] = None,
) -> RankingReportDto:
    return RankingReportDto(
        method=method,
        lam=lam,
        reports=[ScoreReportDto.model_validate(r) for r in reports],
        pehe10=pehe10,
        inversion=inversion,
    )


def experiment_report_to_dto(report: ExperimentReport) -> ExperimentReportDto:
    return ExperimentReportDto.model_validate(report, from_attributes=True)


def sweep_report_to_dto(report: SweepReport) -> SweepReportDto:
    return SweepReportDto.model_validate(report, from_attributes=True)


def dag_record_to_dto(record: DagRecord) -> DagRecordDto:
    return DagRecordDto.model_validate(record, from_attributes=True)


def sweep_records_to_dto(kind: str, dag_index: int, records: List[SweepRecord]) -> SweepDagRecordsDto:
    return SweepDagRecordsDto(
        kind=kind,
        dag_index=dag_index,
        records=[SweepRecordDto.model_validate(r, from_attributes=True) for r in records],
    )
