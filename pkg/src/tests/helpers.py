from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.domain.dataset_domain import Dataset
from src.domain.graph_domain import CausalDag, Edge, Node, NodeKind, NodeRole
from src.domain.model_domain import CandidateModel, ModelFamily


def build_dag(
    n: int,
    edges: Iterable[Tuple[int, int]],
    treatment: Optional[int] = None,
    outcome: Optional[int] = None,
    weights: Optional[Dict[Tuple[int, int], float]] = None,
) -> CausalDag:
    """ 테스트용 DAG. treatment 는 T(binary), outcome 은 Y, 나머지는 X{i} """

    def node(i: int) -> Node:
        if i == treatment:
            return Node(id=i, name="T", role=NodeRole.TREATMENT, kind=NodeKind.BINARY)
        if i == outcome:
            return Node(id=i, name="Y", role=NodeRole.OUTCOME)
        return Node(id=i, name=f"X{i}")

    weights = weights or {}
    return CausalDag(
        nodes=tuple(node(i) for i in range(n)),
        edges=tuple(Edge(src=s, dst=d, weight=weights.get((s, d))) for s, d in edges),
    )


def dataset(columns: Dict[str, Sequence[float]], treatment: Optional[str] = "T", outcome: Optional[str] = "Y") -> Dataset:
    return Dataset.from_frame(pd.DataFrame(columns), treatment=treatment, outcome=outcome)


class FunctionPredictor:
    """ f(x, t) 를 직접 지정하는 예측기 """

    def __init__(self, fn):
        self.fn = fn

    def predict(self, x: np.ndarray, t: np.ndarray) -> np.ndarray:
        return self.fn(x, t)


def function_model(fn, feature_names: Sequence[str], model_id: str = "fn") -> CandidateModel:
    return CandidateModel(
        model_id=model_id,
        family=ModelFamily.ORACLE,
        predictor=FunctionPredictor(fn),
        feature_names=tuple(feature_names),
    )
