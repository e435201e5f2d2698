from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.domain.dataset_domain import Dataset, PotentialOutcomes
from src.domain.graph_domain import CausalDag
from src.domain.model_domain import CandidateModel
from src.domain.risk_domain import RiskContext


@dataclass(eq=False)
class ExperimentUnit:
    """
    DAG 하나에 대한 실험 단위: 생성된 데이터, 학습된 후보 모델, 평가 전용 실제 PEHE.
    스윕은 데이터와 모델을 고정한 채 이 단위를 반복 채점한다.
    """

    dag_index: int
    seed: int
    dag: CausalDag
    train: Dataset
    val: Dataset
    target_x: Dataset
    potential_outcomes: PotentialOutcomes
    models: List[CandidateModel]
    true_pehe: Dict[str, float]
    perturb_mean: float
    perturb_nodes: List[int]
    mutation_seed: int
    subgraph_seed: int
    contexts: Dict[str, RiskContext] = field(default_factory=dict)
    validation_cache: Dict[str, List[float]] = field(default_factory=dict)
    lam: Optional[float] = None

    @property
    def model_ids(self) -> List[str]:
        return [m.model_id for m in self.models]
