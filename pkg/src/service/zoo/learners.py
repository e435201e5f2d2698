from typing import Callable, Dict

import numpy as np
from sklearn.base import RegressorMixin, clone
from sklearn.linear_model import Ridge
from sklearn.neighbors import KNeighborsRegressor
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import PolynomialFeatures, StandardScaler


class TwoArmLearner:
    """ 처치군/대조군 각각에 회귀 모델을 따로 학습 (T-learner) """

    def __init__(self, make_estimator: Callable[[int], RegressorMixin]):
        """
        :param make_estimator: 해당 arm 의 표본 수를 받아 추정기를 만드는 함수
        """
        self.make_estimator = make_estimator
        self.arms: Dict[int, RegressorMixin] = {}

    def fit(self, x: np.ndarray, t: np.ndarray, y: np.ndarray) -> "TwoArmLearner":
        for arm in (0, 1):
            mask = t == arm
            self.arms[arm] = self.make_estimator(int(mask.sum())).fit(x[mask], y[mask])
        return self

    def predict(self, x: np.ndarray, t: np.ndarray) -> np.ndarray:
        out = np.empty(len(x), dtype=float)
        for arm, estimator in self.arms.items():
            mask = t == arm
            if mask.any():
                out[mask] = estimator.predict(x[mask])
        return out


class SingleModelLearner:
    """ treatment 를 입력 특성으로 넣은 단일 회귀 모델 (S-learner) """

    def __init__(self, estimator: RegressorMixin):
        self.estimator = clone(estimator)

    def fit(self, x: np.ndarray, t: np.ndarray, y: np.ndarray) -> "SingleModelLearner":
        self.estimator.fit(np.column_stack([x, t]), y)
        return self

    def predict(self, x: np.ndarray, t: np.ndarray) -> np.ndarray:
        return self.estimator.predict(np.column_stack([x, t]))


class LinearStructuralPredictor:
    """
    선형 구조 방정식 예측기.
    f(x, 0) = x·coef_control,  f(x, 1) = x·coef_treated + effect
    """

    def __init__(self, coef_control: np.ndarray, coef_treated: np.ndarray, effect: float):
        self.coef_control = np.asarray(coef_control, dtype=float)
        self.coef_treated = np.asarray(coef_treated, dtype=float)
        self.effect = float(effect)

    def predict(self, x: np.ndarray, t: np.ndarray) -> np.ndarray:
        control = x @ self.coef_control
        treated = x @ self.coef_treated + self.effect
        return np.where(t == 1, treated, control)


def ridge(alpha: float) -> Callable[[int], RegressorMixin]:
    return lambda _: Ridge(alpha=alpha)


def knn(k: int) -> Callable[[int], RegressorMixin]:
    return lambda n_arm: KNeighborsRegressor(n_neighbors=max(1, min(k, n_arm)))


def polynomial_ridge(degree: int, alpha: float) -> RegressorMixin:
    return make_pipeline(PolynomialFeatures(degree=degree, include_bias=False), StandardScaler(), Ridge(alpha=alpha))
