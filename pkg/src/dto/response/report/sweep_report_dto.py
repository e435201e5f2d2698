from typing import List, Optional

from pydantic import BaseModel


class SweepRecordDto(BaseModel):
    dag_index: int
    parameter: float
    series: str
    pehe10: float
    delta_pehe10: Optional[float] = None
    graph_distance: Optional[int] = None

    model_config = {
        "from_attributes": True,
    }


class CurvePointDto(BaseModel):
    parameter: float
    series: str
    mean_pehe10: float
    se_pehe10: float
    mean_delta_pehe10: Optional[float] = None
    mean_graph_distance: Optional[float] = None

    model_config = {
        "from_attributes": True,
    }


class SweepReportDto(BaseModel):
    kind: str               # lambda | misspec | subgraph
    seed: int
    n_dags: int
    spearman_rho: Optional[float] = None
    curve: List[CurvePointDto]
    records: List[SweepRecordDto]

    model_config = {
        "from_attributes": True,
    }


class SweepDagRecordsDto(BaseModel):
    """ 스윕 중 DAG 하나가 끝날 때마다 기록하는 부분 결과 """

    kind: str
    dag_index: int
    records: List[SweepRecordDto]
