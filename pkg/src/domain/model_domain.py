from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Protocol, Tuple

import numpy as np


class ModelFamily(str, Enum):
    T_RIDGE = "t_ridge"
    S_POLY = "s_poly"
    T_KNN = "t_knn"
    ORACLE = "oracle"
    CORRUPTED_ORACLE = "corrupted_oracle"


class PotentialOutcomePredictor(Protocol):
    def predict(self, x: np.ndarray, t: np.ndarray) -> np.ndarray:
        ...


@dataclass(eq=False)
class CandidateModel:
    """
    학습이 끝난 잠재 결과 예측기 f(x, t) 와 그 메타데이터.
    feature_names 는 학습 시 공변량 스키마이며 예측 입력의 순서도 이를 따른다.
    """

    model_id: str
    family: ModelFamily
    predictor: PotentialOutcomePredictor
    feature_names: Tuple[str, ...]
    treatment: str = "T"
    outcome: str = "Y"
    hyperparams: Dict[str, Any] = field(default_factory=dict)

    def predict(self, x: np.ndarray, t: np.ndarray) -> np.ndarray:
        return np.asarray(self.predictor.predict(x, np.asarray(t, dtype=float)), dtype=float).reshape(-1)
