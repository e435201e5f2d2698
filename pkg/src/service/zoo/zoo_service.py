import logging
from typing import List, Optional

import numpy as np

from src.domain.dataset_domain import Dataset, PotentialOutcomes
from src.domain.graph_domain import CausalDag
from src.domain.model_domain import CandidateModel, ModelFamily
from src.dto.request.config.zoo_config_dto import ModelSpecDto, ZooConfigDto
from src.exception.config_exceptions import InvalidConfigException
from src.exception.graph_exceptions import MissingWeightsException
from src.exception.model_exceptions import (
    MissingStructureException,
    SingleArmDataException,
    UnknownFamilyException,
)
from src.service.base_service import BaseService
from src.service.graph.graph_service import GraphService
from src.service.zoo.learners import (
    LinearStructuralPredictor,
    SingleModelLearner,
    TwoArmLearner,
    knn,
    polynomial_ridge,
    ridge,
)
from src.utils.seed_provider import SeedProvider

logger = logging.getLogger(__name__)

CORRUPTION_ARMS = ("treated", "both")


class ZooService(BaseService):
    """
    후보 ITE 모델 학습과 잠재 결과 예측을 담당하는 서비스 클래스.
    t_ridge, s_poly, t_knn 은 학습 데이터로, oracle 계열은 가중치가 있는 인과 그래프로 만든다.
    """

    def __init__(self, graph_service: GraphService):
        self.graph_service = graph_service

    def fit_zoo(
        self,
        zoo: ZooConfigDto,
        train: Dataset,
        seed: int,
        dag: Optional[CausalDag] = None,
    ) -> List[CandidateModel]:
        """
        모델마다 독립된 시드 스트림으로 후보 모델 전체를 학습한다.
        """
        seeds = SeedProvider.streams(seed, len(zoo.models))
        models = [self.fit_candidate(spec, train, s, dag=dag) for spec, s in zip(zoo.models, seeds)]
        logger.info("Fitted model zoo", extra={"models": len(models), "n_train": train.n_rows})
        return models

    def fit_candidate(
        self,
        spec: ModelSpecDto,
        train: Dataset,
        seed: int,
        dag: Optional[CausalDag] = None,
    ) -> CandidateModel:
        """
        :param spec: 모델 계열과 하이퍼파라미터
        :param train: treatment/outcome 컬럼이 있고 두 arm 이 모두 있는 학습 데이터
        :param dag: oracle 계열에 필요한 가중치 인과 그래프
        :raises SingleArmDataException: 한쪽 arm 만 있는 경우
        :raises MissingStructureException: oracle 계열인데 그래프가 없는 경우
        """
        t = train.treatment_values()
        y = train.outcome_values()
        if len(np.unique(t)) < 2:
            raise SingleArmDataException()
        features = tuple(train.covariate_names)
        x = train.numeric_matrix(features)
        params = spec.hyperparams

        if spec.family is ModelFamily.T_RIDGE:
            predictor = TwoArmLearner(ridge(float(params.get("alpha", 1.0)))).fit(x, t, y)
        elif spec.family is ModelFamily.S_POLY:
            estimator = polynomial_ridge(int(params.get("degree", 2)), float(params.get("alpha", 1.0)))
            predictor = SingleModelLearner(estimator).fit(x, t, y)
        elif spec.family is ModelFamily.T_KNN:
            predictor = TwoArmLearner(knn(int(params.get("k", 5)))).fit(x, t, y)
        elif spec.family in (ModelFamily.ORACLE, ModelFamily.CORRUPTED_ORACLE):
            predictor = self._structural_predictor(spec, features, dag, seed)
        else:
            raise UnknownFamilyException(spec.family)

        return CandidateModel(
            model_id=spec.model_id,
            family=spec.family,
            predictor=predictor,
            feature_names=features,
            treatment=train.treatment,
            outcome=train.outcome,
            hyperparams=dict(params),
        )

    def _structural_predictor(
        self,
        spec: ModelSpecDto,
        features: tuple,
        dag: Optional[CausalDag],
        seed: int,
    ) -> LinearStructuralPredictor:
        """
        y(t) = Σ_{p ∈ PA(Y), p ≠ T} w_p·x_p + w_TY·t
        corrupted_oracle 은 Y 의 부모가 아닌 공변량 x_j 에 c·x_j 를 더한다 (arm="treated" 면 처치군만).
        """
        if dag is None:
            raise MissingStructureException()
        if not dag.has_weights:
            raise MissingWeightsException()

        treatment, outcome = dag.treatment_id, dag.outcome_id
        coef = np.zeros(len(features))
        parents = dag.parents(outcome)
        for p in parents:
            if p == treatment:
                continue
            name = dag.name_of(p)
            if name not in features:
                raise MissingStructureException(f"Outcome parent {name} is not a model feature")
            coef[features.index(name)] = dag.weight(p, outcome)
        effect = dag.weight(treatment, outcome) if treatment in parents else 0.0

        if spec.family is ModelFamily.ORACLE:
            return LinearStructuralPredictor(coef, coef, effect)

        strength = float(spec.hyperparams.get("strength", 1.0))
        arm = str(spec.hyperparams.get("arm", "treated"))
        if arm not in CORRUPTION_ARMS:
            raise InvalidConfigException(f"Unknown corruption arm: {arm}")

        parent_names = {dag.name_of(p) for p in parents}
        candidates = [i for i, name in enumerate(features) if name not in parent_names]
        if "feature" in spec.hyperparams:
            name = str(spec.hyperparams["feature"])
            if name not in features or name in parent_names:
                raise InvalidConfigException(f"Corruption feature must be a non-parent covariate: {name}")
            j = features.index(name)
        elif candidates:
            j = int(self.rng(seed).choice(candidates))
        else:
            raise InvalidConfigException("No non-parent covariate available for corruption")

        spurious = np.zeros(len(features))
        spurious[j] = strength
        coef_control = coef + spurious if arm == "both" else coef
        return LinearStructuralPredictor(coef_control, coef + spurious, effect)

    def predict_po(self, model: CandidateModel, x: Dataset) -> PotentialOutcomes:
        """
        :return: (ŷ(0), ŷ(1)), cate = ŷ(1) − ŷ(0)
        :raises SchemaMismatchException: 공변량 스키마가 학습 시와 다른 경우
        """
        features = x.covariate_matrix(model.feature_names)
        n = len(features)
        return PotentialOutcomes(
            y0=model.predict(features, np.zeros(n)),
            y1=model.predict(features, np.ones(n)),
        )
