from typing import List, Optional

from pydantic import BaseModel, Field


class ScoreReportDto(BaseModel):
    model_id: str
    v_r_raw: float
    c_r_raw: float
    v_r_norm: float
    c_r_norm: float
    lam: float = Field(..., serialization_alias="lambda")
    icms: float
    rank: int = Field(..., ge=1)
    true_pehe: Optional[float] = None
    nci: Optional[int] = None

    model_config = {
        "from_attributes": True,
    }


class RankingReportDto(BaseModel):
    """ rank / evaluate 명령 결과 """

    method: str
    lam: float = Field(..., serialization_alias="lambda")
    reports: List[ScoreReportDto]
    pehe10: Optional[float] = None
    inversion: Optional[float] = None


class FittedModelDto(BaseModel):
    model_id: str
    family: str
    true_pehe: Optional[float] = None


class ZooFitReportDto(BaseModel):
    """ fit-zoo 명령 결과 """

    n_train: int
    models: List[FittedModelDto]
