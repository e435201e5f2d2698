import logging
from typing import List, Sequence

import numpy as np
import pandas as pd

from src.core.settings import settings
from src.domain.dataset_domain import AugmentedTargetSet, Dataset
from src.domain.graph_domain import CausalDag, NodeKind
from src.domain.model_domain import CandidateModel
from src.exception.config_exceptions import InvalidConfigException
from src.exception.data_exceptions import EmptyDatasetException, InsufficientSamplesException
from src.exception.graph_exceptions import NotMutilatedException
from src.service.base_service import BaseService
from src.service.graph.graph_service import GraphService
from src.service.zoo.zoo_service import ZooService

logger = logging.getLogger(__name__)

SCORES = ("nll", "bic")


class FitnessService(BaseService):
    """
    DAG 와 데이터의 적합도를 계산하는 서비스 클래스.
    조건부 엔트로피(nats), 로그우도, BIC, 그리고 예측으로 보강한 타깃 데이터에 대한 인과 위험 c_r 을 제공한다.
    """

    def __init__(self, graph_service: GraphService, zoo_service: ZooService):
        self.graph_service = graph_service
        self.zoo_service = zoo_service

    def _design_matrix(self, data: Dataset, parents: Sequence[str]) -> np.ndarray:
        """ 절편 + 연속형 부모 + 이산형 부모 원-핫(첫 수준 제외) """
        blocks = [np.ones((data.n_rows, 1))]
        for p in parents:
            if data.kind_of(p).is_discrete:
                dummies = pd.get_dummies(data.frame[p].astype("category"), drop_first=True, dtype=float)
                blocks.append(dummies.to_numpy())
            else:
                blocks.append(data.numeric_matrix([p]))
        return np.hstack(blocks)

    def _gaussian_entropy(self, data: Dataset, child: str, parents: Sequence[str]) -> float:
        y = data.numeric_matrix([child])[:, 0]
        design = self._design_matrix(data, parents)
        coef, *_ = np.linalg.lstsq(design, y, rcond=None)
        residual = y - design @ coef
        variance = max(float(residual @ residual) / data.n_rows, settings.VARIANCE_FLOOR)
        return 0.5 * np.log(2 * np.pi * np.e * variance)

    def _plugin_entropy(self, data: Dataset, child: str, parents: Sequence[str]) -> float:
        frame = data.frame[[child, *parents]].copy()
        for p in parents:
            if data.kind_of(p).is_discrete:
                continue
            if frame[p].nunique() <= 1:
                frame[p] = 0
            else:
                frame[p] = pd.qcut(frame[p], q=settings.ENTROPY_BINS, labels=False, duplicates="drop")

        n = len(frame)
        if not parents:
            p_child = frame[child].value_counts(dropna=False).to_numpy() / n
            return float(-(p_child * np.log(p_child)).sum())

        joint = frame.groupby([*parents, child], dropna=False).size()
        parent_totals = joint.groupby(level=list(range(len(parents)))).transform("sum")
        return float(-((joint / n) * np.log(joint / parent_totals)).sum())

    def conditional_entropy(self, data: Dataset, child: str, parents: Sequence[str] = ()) -> float:
        """
        H(child | parents) 추정치 (nats).
        - 연속형 child: 부모에 대한 최소제곱 잔차분산 σ̂² 로 0.5·ln(2πe·σ̂²), σ̂² 하한 1e-12
        - 이산형 child: 결합 빈도 기반 plug-in 엔트로피 (연속형 부모는 4개 등빈도 구간으로 나눔)
        :raises EmptyDatasetException: 행이 없는 경우
        :raises InsufficientSamplesException: N < |parents| + 2
        """
        parents = list(parents)
        if data.n_rows == 0:
            raise EmptyDatasetException()
        if data.n_rows < len(parents) + 2:
            raise InsufficientSamplesException(
                f"Entropy of {child} needs at least {len(parents) + 2} rows, got {data.n_rows}"
            )
        data.require_columns([child, *parents])

        if data.kind_of(child) is NodeKind.CONTINUOUS:
            return self._gaussian_entropy(data, child, parents)
        return self._plugin_entropy(data, child, parents)

    def log_likelihood(self, dag: CausalDag, data: Dataset) -> float:
        """
        LL = −N · Σ_i H(X_i | PA_i)
        :raises ColumnMismatchException: 그래프 노드에 대응하는 컬럼이 없는 경우
        """
        data.require_columns(n.name for n in dag.nodes)
        total = 0.0
        for node_id in self.graph_service.topological_sort(dag):
            parents = [dag.name_of(p) for p in dag.parents(node_id)]
            total += self.conditional_entropy(data, dag.name_of(node_id), parents)
        return -data.n_rows * total

    @staticmethod
    def bic_penalty(n_rows: int, dag: CausalDag) -> float:
        """ (log₂N / 2)·‖G‖, ‖G‖ = |V| + |E| """
        return np.log2(n_rows) / 2 * (len(dag.nodes) + len(dag.edges))

    def bic_score(self, dag: CausalDag, data: Dataset) -> float:
        return -self.log_likelihood(dag, data) + self.bic_penalty(data.n_rows, dag)

    def augment_target(self, model: CandidateModel, target_covariates: Dataset) -> AugmentedTargetSet:
        """
        타깃 공변량을 t=0 행 묶음, t=1 행 묶음 순서로 쌓고 모델 예측 결과를 outcome 으로 붙인다.
        :raises SchemaMismatchException: 공변량 스키마가 학습 시와 다른 경우
        """
        outcomes = self.zoo_service.predict_po(model, target_covariates)
        covariates = target_covariates.covariates().frame.reset_index(drop=True)

        arms: List[pd.DataFrame] = []
        for arm, predicted in ((0, outcomes.y0), (1, outcomes.y1)):
            block = covariates.copy()
            block[model.treatment] = arm
            block[model.outcome] = predicted
            arms.append(block)
        frame = pd.concat(arms, ignore_index=True)

        kinds = {c: target_covariates.kinds[c] for c in covariates.columns}
        kinds[model.treatment] = NodeKind.BINARY
        kinds[model.outcome] = NodeKind.CONTINUOUS
        return AugmentedTargetSet(
            frame=frame,
            kinds=kinds,
            treatment=model.treatment,
            outcome=model.outcome,
            source_size=len(covariates),
        )

    def causal_risk(
        self,
        model: CandidateModel,
        target_covariates: Dataset,
        mutilated_dag: CausalDag,
        score: str = "nll",
    ) -> float:
        """
        c_r = −LL(G_T̄ | D̂_tgt) (score="bic" 이면 BIC, 모델 간 순위는 동일)
        :raises NotMutilatedException: treatment 노드로 들어오는 간선이 남아 있는 경우
        """
        if score not in SCORES:
            raise InvalidConfigException(f"Unknown causal score: {score}")
        if mutilated_dag.in_degree(mutilated_dag.treatment_id) > 0:
            raise NotMutilatedException()

        augmented = self.augment_target(model, target_covariates).as_dataset()
        if score == "bic":
            return self.bic_score(mutilated_dag, augmented)
        return -self.log_likelihood(mutilated_dag, augmented)
