from typing import Dict, List

from pydantic import BaseModel, Field

from src.dto.response.report.score_report_dto import ScoreReportDto


class MethodResultDto(BaseModel):
    method: str
    pehe10: float
    inversion: float
    reports: List[ScoreReportDto]

    model_config = {
        "from_attributes": True,
    }


class DagRecordDto(BaseModel):
    dag_index: int
    seed: int
    n_nodes: int
    n_edges: int
    perturb_mean: float
    perturb_nodes: List[str]
    lam: float = Field(..., serialization_alias="lambda")
    true_pehe: Dict[str, float]
    results: List[MethodResultDto]

    model_config = {
        "from_attributes": True,
    }


class MethodSummaryDto(BaseModel):
    method: str
    mean_pehe10: float
    se_pehe10: float
    mean_inversion: float
    se_inversion: float

    model_config = {
        "from_attributes": True,
    }


class PairedComparisonDto(BaseModel):
    baseline: str
    icms: str
    mean_diff_pehe10: float
    se_diff_pehe10: float
    mean_diff_inversion: float
    se_diff_inversion: float

    model_config = {
        "from_attributes": True,
    }


class ExperimentReportDto(BaseModel):
    seed: int
    n_dags: int
    summaries: List[MethodSummaryDto]
    comparisons: List[PairedComparisonDto]
    records: List[DagRecordDto]

    model_config = {
        "from_attributes": True,
    }
