import logging
from typing import Iterable, List, Optional

import numpy as np
from scipy.stats import norm

from src.domain.dataset_domain import AugmentedTargetSet, Dataset
from src.domain.graph_domain import CausalDag, CiStatement
from src.dto.request.config.ci_test_config_dto import CiTestConfigDto
from src.exception.data_exceptions import InsufficientSamplesException
from src.exception.graph_exceptions import InvalidCiStatementException, NotMutilatedException
from src.service.base_service import BaseService
from src.service.graph.graph_service import GraphService

logger = logging.getLogger(__name__)


def _residualize(column: np.ndarray, design: np.ndarray) -> np.ndarray:
    coef, *_ = np.linalg.lstsq(design, column, rcond=None)
    return column - design @ coef


def _is_degenerate(residual: np.ndarray, column: np.ndarray, tolerance: float) -> bool:
    ss_tot = float(np.sum((column - column.mean()) ** 2))
    ss_res = float(residual @ residual)
    return ss_tot == 0.0 or ss_res <= tolerance * ss_tot


class IndependenceService(BaseService):
    """
    데이터 기반 조건부 독립성 검정과 NCI(위반된 CI 관계 수) 계산을 담당하는 서비스 클래스.
    """

    def __init__(self, graph_service: GraphService):
        """
        :param graph_service: 국소 마르코프 CI 집합을 만들기 위한 GraphService
        """
        self.graph_service = graph_service

    def fisher_z_test(
        self,
        data: Dataset,
        a: str,
        b: str,
        given: Iterable[str] = (),
        cfg: Optional[CiTestConfigDto] = None,
    ) -> bool:
        """
        회귀 잔차로 구한 편상관의 Fisher-z 검정.
        :return: True 면 독립, False 면 종속
        :raises InsufficientSamplesException: N <= |given| + 3
        :raises NonNumericColumnException: categorical 컬럼
        """
        cfg = cfg or CiTestConfigDto()
        given = sorted(set(given))
        if a == b or a in given or b in given:
            raise InvalidCiStatementException()

        n, k = data.n_rows, len(given)
        if n <= k + 3:
            raise InsufficientSamplesException(f"Fisher-z needs more than {k + 3} rows, got {n}")

        xa = data.numeric_matrix([a])[:, 0]
        xb = data.numeric_matrix([b])[:, 0]
        design = np.column_stack([np.ones(n), data.numeric_matrix(given)])
        ra = _residualize(xa, design)
        rb = _residualize(xb, design)

        # 조건부 집합의 결정적 함수는 그 집합이 주어지면 무엇과도 독립
        if _is_degenerate(ra, xa, cfg.degenerate_tolerance) or _is_degenerate(rb, xb, cfg.degenerate_tolerance):
            return True

        r = float(ra @ rb / np.sqrt((ra @ ra) * (rb @ rb)))
        r = float(np.clip(r, -cfg.correlation_clamp, cfg.correlation_clamp))
        statistic = np.sqrt(n - k - 3) * abs(np.arctanh(r))
        return bool(statistic <= norm.ppf(1 - cfg.alpha / 2))

    def statement_holds(self, dag: CausalDag, data: Dataset, statement: CiStatement, cfg: CiTestConfigDto) -> bool:
        return self.fisher_z_test(
            data,
            dag.name_of(statement.a),
            dag.name_of(statement.b),
            [dag.name_of(z) for z in sorted(statement.given)],
            cfg,
        )

    def violated_statements(
        self,
        dag: CausalDag,
        data: Dataset,
        cfg: Optional[CiTestConfigDto] = None,
    ) -> List[CiStatement]:
        """
        :raises ColumnMismatchException: 그래프 노드에 대응하는 컬럼이 없는 경우
        """
        cfg = cfg or CiTestConfigDto()
        data.require_columns(n.name for n in dag.nodes)
        return [s for s in self.graph_service.local_markov_set(dag) if not self.statement_holds(dag, data, s, cfg)]

    def nci_count(self, dag: CausalDag, data: Dataset, cfg: Optional[CiTestConfigDto] = None) -> int:
        """
        국소 마르코프 집합 중 데이터에서 종속으로 판정된 문장의 수.
        """
        violations = self.violated_statements(dag, data, cfg)
        logger.debug("Counted violated CI statements", extra={"nci": len(violations)})
        return len(violations)

    def model_nci(
        self,
        mutilated_dag: CausalDag,
        augmented: AugmentedTargetSet,
        cfg: Optional[CiTestConfigDto] = None,
    ) -> int:
        """
        후보 모델 하나의 NCI 진단값.
        outcome 이 들어간 국소 마르코프 문장만 세며, 보강 데이터의 arm 별로 따로 검정해
        한 arm 에서라도 종속이면 위반으로 센다.
        :raises NotMutilatedException: treatment 로 들어오는 간선이 남아 있는 경우
        """
        cfg = cfg or CiTestConfigDto()
        if mutilated_dag.in_degree(mutilated_dag.treatment_id) > 0:
            raise NotMutilatedException()
        outcome = mutilated_dag.outcome_id
        statements = [s for s in self.graph_service.local_markov_set(mutilated_dag) if outcome in (s.a, s.b)]

        violated = set()
        for t in (0, 1):
            data = augmented.arm(t)
            data.require_columns(n.name for n in mutilated_dag.nodes)
            violated.update(s for s in statements if not self.statement_holds(mutilated_dag, data, s, cfg))
        return len(violated)
