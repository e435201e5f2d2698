from dataclasses import dataclass, field
from typing import Dict, List, Optional


@dataclass
class ScoreReport:
    model_id: str
    v_r_raw: float
    c_r_raw: float
    v_r_norm: float
    c_r_norm: float
    lam: float
    icms: float
    rank: int
    true_pehe: Optional[float] = None
    nci: Optional[int] = None


@dataclass
class MethodResult:
    """ 하나의 선택 방법(예: "ICMS(MSE)")이 한 DAG 에서 낸 결과 """

    method: str
    pehe10: float
    inversion: float
    reports: List[ScoreReport] = field(default_factory=list)


@dataclass
class DagRecord:
    dag_index: int
    seed: int
    n_nodes: int
    n_edges: int
    perturb_mean: float
    perturb_nodes: List[str]
    lam: float
    true_pehe: Dict[str, float]
    results: List[MethodResult] = field(default_factory=list)

    def result(self, method: str) -> MethodResult:
        for r in self.results:
            if r.method == method:
                return r
        raise KeyError(method)


@dataclass
class MethodSummary:
    method: str
    mean_pehe10: float
    se_pehe10: float
    mean_inversion: float
    se_inversion: float


@dataclass
class PairedComparison:
    """ ICMS 로 감싼 방법과 그 기준 방법의 DAG 단위 대응 비교 (icms − baseline) """

    baseline: str
    icms: str
    mean_diff_pehe10: float
    se_diff_pehe10: float
    mean_diff_inversion: float
    se_diff_inversion: float


@dataclass
class ExperimentReport:
    seed: int
    n_dags: int
    records: List[DagRecord]
    summaries: List[MethodSummary]
    comparisons: List[PairedComparison]


@dataclass
class SweepRecord:
    """ 스윕의 한 점에서 한 DAG 가 낸 값 """

    dag_index: int
    parameter: float
    series: str
    pehe10: float
    delta_pehe10: Optional[float] = None
    graph_distance: Optional[int] = None


@dataclass
class CurvePoint:
    parameter: float
    series: str
    mean_pehe10: float
    se_pehe10: float
    mean_delta_pehe10: Optional[float] = None
    mean_graph_distance: Optional[float] = None


@dataclass
class SweepReport:
    kind: str
    seed: int
    n_dags: int
    records: List[SweepRecord]
    curve: List[CurvePoint]
    spearman_rho: Optional[float] = None
