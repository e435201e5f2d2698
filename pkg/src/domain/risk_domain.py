from dataclasses import dataclass
from typing import Any, Optional, Tuple

import numpy as np

from src.domain.dataset_domain import Dataset
from src.exception.base_exceptions import DataException
from src.exception.data_exceptions import NonFiniteValuesException


@dataclass(eq=False)
class SampleLoss:
    """ 검증 표본별 손실값 (유한, 0 이상) """

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(self.values)):
            raise NonFiniteValuesException("Sample losses must be finite")
        if np.any(self.values < 0):
            raise DataException("Sample losses must be non-negative")

    def __len__(self) -> int:
        return len(self.values)

    def mean(self) -> float:
        return float(self.values.mean())


@dataclass(eq=False)
class ImportanceWeights:
    """ 소스 검증 표본별 중요도 가중치, 항상 [w_min, w_max] 안에 있다 """

    values: np.ndarray
    w_min: float = 0.01
    w_max: float = 100.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(self.values)):
            raise NonFiniteValuesException("Importance weights must be finite")
        if np.any(self.values < self.w_min) or np.any(self.values > self.w_max):
            raise DataException("Importance weights outside clip bounds")

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def uniform(cls, n: int) -> "ImportanceWeights":
        return cls(values=np.ones(n), w_min=1.0, w_max=1.0)


@dataclass(eq=False)
class PropensityScorer:
    """
    p̂(t=1|x) 추정기. 출력은 [clip_min, clip_max] 로 잘린다.
    estimator 는 predict_proba 를 가진 sklearn 추정기(파이프라인)이다.
    """

    estimator: Any
    feature_names: Tuple[str, ...]
    clip_min: float = 0.05
    clip_max: float = 0.95

    def predict(self, data: Dataset) -> np.ndarray:
        x = data.numeric_matrix(self.feature_names)
        p = self.estimator.predict_proba(x)[:, 1]
        return np.clip(p, self.clip_min, self.clip_max)


@dataclass(eq=False)
class RiskContext:
    """ 한 번 학습해 여러 모델의 검증 위험 계산에 재사용하는 보조 추정치 """

    propensity: Optional[PropensityScorer] = None
    weights: Optional[ImportanceWeights] = None
