import math
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import spearmanr

from src.domain.report_domain import ScoreReport
from src.exception.data_exceptions import EmptyInputException, LengthMismatchException
from src.exception.model_exceptions import TooFewModelsException
from src.service.base_service import BaseService
from src.service.selection.selection_service import SelectionService


class MetricsService(BaseService):
    """
    평가 지표(PEHE, PEHE-10, 정규화 역전 수)와 집계 통계를 담당하는 서비스 클래스.
    """

    def __init__(self, selection_service: SelectionService):
        self.selection_service = selection_service

    def pehe(self, cate_hat: Sequence[float], cate_true: Sequence[float]) -> float:
        """
        mean((τ(x) − τ̂(x))²)
        :raises LengthMismatchException: 길이가 다른 경우
        :raises EmptyInputException: 비어 있는 경우
        """
        cate_hat = np.asarray(cate_hat, dtype=float)
        cate_true = np.asarray(cate_true, dtype=float)
        if cate_hat.shape != cate_true.shape:
            raise LengthMismatchException(len(cate_hat), len(cate_true))
        if cate_hat.size == 0:
            raise EmptyInputException()
        return float(np.mean((cate_true - cate_hat) ** 2))

    @staticmethod
    def top_decile_size(n_models: int) -> int:
        """ k = max(1, ⌊0.1·N_f⌋) """
        return max(1, n_models // 10)

    @staticmethod
    def _ranked_ids(reports: Sequence[ScoreReport]) -> list:
        return [r.model_id for r in sorted(reports, key=lambda r: r.rank)]

    def pehe_top_decile(
        self,
        reports: Sequence[ScoreReport],
        true_pehe: Mapping[str, float],
        normalize: bool = True,
    ) -> float:
        """
        순위 상위 k 개 모델의 평균 실제 PEHE.
        :param normalize: True 면 후보 집합 안에서 실제 PEHE 를 먼저 min-max 정규화
        :raises EmptyInputException: 모델이 없는 경우
        """
        if not reports:
            raise EmptyInputException("No ranked models")
        ids = self._ranked_ids(reports)
        values = [true_pehe[i] for i in ids]
        if normalize:
            values = self.selection_service.minmax_normalize(values)
        k = self.top_decile_size(len(ids))
        return float(np.mean(values[:k]))

    def inversion_count_normalized(self, reports: Sequence[ScoreReport], true_pehe: Mapping[str, float]) -> float:
        """
        실제 PEHE 순서와 반대로 놓인 쌍의 수 / (n(n−1)/2). 실제 PEHE 동률은 일치로 본다.
        :raises TooFewModelsException: 모델이 2개 미만인 경우
        """
        if len(reports) < 2:
            raise TooFewModelsException()
        values = [true_pehe[i] for i in self._ranked_ids(reports)]
        n = len(values)
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if values[i] > values[j])
        return inversions / (n * (n - 1) / 2)

    @staticmethod
    def mean_and_se(values: Sequence[float]) -> Tuple[float, float]:
        """ 평균과 표준오차 (표본 1개면 표준오차 0) """
        array = np.asarray(values, dtype=float)
        if array.size == 0:
            raise EmptyInputException()
        if array.size == 1:
            return float(array[0]), 0.0
        return float(array.mean()), float(array.std(ddof=1) / math.sqrt(array.size))

    def paired_difference(self, treated: Sequence[float], baseline: Sequence[float]) -> Tuple[float, float]:
        """ 대응 차이 (treated − baseline) 의 평균과 표준오차 """
        if len(treated) != len(baseline):
            raise LengthMismatchException(len(treated), len(baseline))
        return self.mean_and_se(np.asarray(treated, dtype=float) - np.asarray(baseline, dtype=float))

    @staticmethod
    def spearman(x: Sequence[float], y: Sequence[float]) -> Optional[float]:
        """ 한쪽이 상수라 정의되지 않으면 None """
        if len(x) != len(y):
            raise LengthMismatchException(len(x), len(y))
        if len(x) < 2 or len(set(x)) < 2 or len(set(y)) < 2:
            return None
        rho = spearmanr(x, y).statistic
        return None if np.isnan(rho) else float(rho)
