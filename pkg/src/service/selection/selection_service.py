import logging
from typing import List, Optional, Sequence

import numpy as np

from src.domain.dataset_domain import Dataset
from src.domain.graph_domain import CausalDag
from src.domain.model_domain import CandidateModel
from src.domain.report_domain import ScoreReport
from src.domain.risk_domain import RiskContext
from src.dto.request.config.ci_test_config_dto import CiTestConfigDto
from src.dto.request.config.validation_risk_dto import ValidationRiskDto
from src.exception.data_exceptions import (
    EmptyInputException,
    LengthMismatchException,
    NonFiniteValuesException,
)
from src.exception.graph_exceptions import NodeSetMismatchException
from src.service.base_service import BaseService
from src.service.fitness.fitness_service import FitnessService
from src.service.graph.graph_service import GraphService
from src.service.independence.independence_service import IndependenceService
from src.service.risk.risk_service import RiskService

logger = logging.getLogger(__name__)


class SelectionService(BaseService):
    """
    ICMS 점수 계산과 후보 모델 순위 매기기를 담당하는 서비스 클래스.
    점수는 r = v_r_norm + λ·c_r_norm 이며 오름차순(동률은 model_id 순)으로 정렬한다.
    """

    def __init__(
        self,
        graph_service: GraphService,
        fitness_service: FitnessService,
        risk_service: RiskService,
        independence_service: IndependenceService,
    ):
        self.graph_service = graph_service
        self.fitness_service = fitness_service
        self.risk_service = risk_service
        self.independence_service = independence_service

    def lambda_from_graphs(self, g: CausalDag, g_prior: CausalDag, g_discovered: CausalDag) -> float:
        """
        λ = |E(G)| / |E(G_π) ∪ E(G_d)|, 분모가 0 이면 1
        :raises NodeSetMismatchException: 세 그래프의 노드 집합이 다른 경우
        """
        nodes = set(g.node_ids)
        if nodes != set(g_prior.node_ids) or nodes != set(g_discovered.node_ids):
            raise NodeSetMismatchException()
        union = g_prior.edge_pairs | g_discovered.edge_pairs
        if not union:
            return 1.0
        return len(g.edge_pairs) / len(union)

    def minmax_normalize(self, values: Sequence[float]) -> List[float]:
        """
        (v − min)/(max − min), 모든 값이 같으면 전부 0
        :raises EmptyInputException: 입력이 비어 있는 경우
        """
        array = np.asarray(values, dtype=float)
        if array.size == 0:
            raise EmptyInputException()
        if not np.all(np.isfinite(array)):
            raise NonFiniteValuesException("Cannot normalize non-finite values")
        low, high = array.min(), array.max()
        if high == low:
            return [0.0] * array.size
        return ((array - low) / (high - low)).tolist()

    @staticmethod
    def icms_score(v_norm: float, c_norm: float, lam: float) -> float:
        return v_norm + lam * c_norm

    def rank_from_raw(
        self,
        model_ids: Sequence[str],
        v_raw: Sequence[float],
        c_raw: Sequence[float],
        lam: float,
    ) -> List[ScoreReport]:
        """
        원시 v_r, c_r 을 후보 집합 안에서 정규화한 뒤 ICMS 점수로 정렬한다.
        """
        if not model_ids:
            raise EmptyInputException("No candidate models to rank")
        if len(v_raw) != len(model_ids) or len(c_raw) != len(model_ids):
            raise LengthMismatchException(len(model_ids), min(len(v_raw), len(c_raw)))

        v_norm = self.minmax_normalize(v_raw)
        c_norm = self.minmax_normalize(c_raw)
        scores = [self.icms_score(v, c, lam) for v, c in zip(v_norm, c_norm)]
        order = sorted(range(len(model_ids)), key=lambda i: (scores[i], model_ids[i]))

        return [
            ScoreReport(
                model_id=model_ids[i],
                v_r_raw=float(v_raw[i]),
                c_r_raw=float(c_raw[i]),
                v_r_norm=v_norm[i],
                c_r_norm=c_norm[i],
                lam=float(lam),
                icms=scores[i],
                rank=position + 1,
            )
            for position, i in enumerate(order)
        ]

    def rank_models(
        self,
        models: Sequence[CandidateModel],
        val: Dataset,
        target_x: Dataset,
        dag: CausalDag,
        lam: float,
        v_r_kind: ValidationRiskDto,
        context: Optional[RiskContext] = None,
        train: Optional[Dataset] = None,
        score: str = "nll",
        report_nci: bool = False,
        ci: Optional[CiTestConfigDto] = None,
    ) -> List[ScoreReport]:
        """
        G 를 treatment 에서 절단하고, 모델별 v_r 과 c_r 을 구해 정규화·정렬한다.
        :param context: 미리 학습한 성향 점수/중요도 가중치 (없으면 train 또는 val 로 학습)
        :param report_nci: True 면 모델별 NCI 진단값을 함께 기록
        """
        if not models:
            raise EmptyInputException("No candidate models to rank")
        if context is None:
            context = self.risk_service.prepare_context(v_r_kind, train or val, val, target_x)

        mutilated = self.graph_service.mutilate(dag, dag.treatment_id)
        v_raw = [self.risk_service.validation_risk(m, val, v_r_kind, context) for m in models]
        c_raw = [self.fitness_service.causal_risk(m, target_x, mutilated, score=score) for m in models]
        reports = self.rank_from_raw([m.model_id for m in models], v_raw, c_raw, lam)

        if report_nci:
            by_id = {m.model_id: m for m in models}
            for report in reports:
                augmented = self.fitness_service.augment_target(by_id[report.model_id], target_x)
                report.nci = self.independence_service.model_nci(mutilated, augmented, ci)

        logger.info(
            "Ranked candidate models",
            extra={"models": len(models), "method": v_r_kind.label, "lam": lam, "top": reports[0].model_id},
        )
        return reports
