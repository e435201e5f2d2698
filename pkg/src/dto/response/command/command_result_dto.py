from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field

from src.dto.response.report.experiment_report_dto import MethodSummaryDto, PairedComparisonDto
from src.dto.response.report.sweep_report_dto import CurvePointDto

SummaryValue = Union[int, float, str, None]


class ArtifactResultDto(BaseModel):
    """ 파일을 생성하는 명령(gen-dag, gen-data)의 결과 """

    files: List[str]
    summary: Dict[str, SummaryValue] = Field(default_factory=dict)


class ExperimentResultDto(BaseModel):
    files: List[str]
    summaries: List[MethodSummaryDto]
    comparisons: List[PairedComparisonDto]


class SweepResultDto(BaseModel):
    kind: str
    files: List[str]
    spearman_rho: Optional[float] = None
    curve: List[CurvePointDto]
