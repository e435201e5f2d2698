import logging
from typing import Callable, Dict, List, Optional

import numpy as np
from sklearn.linear_model import LogisticRegression
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from src.core.settings import settings
from src.domain.dataset_domain import Dataset
from src.domain.model_domain import CandidateModel
from src.domain.risk_domain import ImportanceWeights, PropensityScorer, RiskContext, SampleLoss
from src.dto.request.config.validation_risk_dto import ValidationRiskDto
from src.exception.config_exceptions import InvalidConfigException
from src.exception.data_exceptions import (
    DegenerateTreatmentException,
    EmptyDatasetException,
    InsufficientSamplesException,
    LengthMismatchException,
    SchemaMismatchException,
)
from src.exception.model_exceptions import UnknownLossException
from src.service.base_service import BaseService
from src.service.zoo.zoo_service import ZooService

logger = logging.getLogger(__name__)

# (model, 검증 데이터, 보조 추정치) -> 표본별 손실
LossFn = Callable[[CandidateModel, Dataset, RiskContext], SampleLoss]

_PROBABILITY_EPS = 1e-12


def _logistic_discriminator():
    return make_pipeline(StandardScaler(), LogisticRegression(max_iter=1000))


class RiskService(BaseService):
    """
    소스 검증 데이터에서의 검증 위험 v_r 과 도메인 적응 재가중치(밀도비, IWCV, DEV)를 담당하는 서비스 클래스.
    검증 손실은 이름으로 등록되며 mse, iptw 가 기본 제공된다.
    """

    def __init__(self, zoo_service: ZooService):
        """
        :param zoo_service: 모델 예측을 위한 ZooService
        """
        self.zoo_service = zoo_service
        self._losses: Dict[str, LossFn] = {}
        self.register_loss("mse", lambda model, val, _: self.factual_mse(model, val))
        self.register_loss("iptw", self._iptw_loss)

    def register_loss(self, name: str, fn: LossFn) -> None:
        """
        검증 손실 함수를 등록한다. 같은 이름이면 덮어쓴다.
        """
        self._losses[name.lower()] = fn

    @property
    def loss_names(self) -> List[str]:
        return sorted(self._losses)

    def sample_loss(self, name: str, model: CandidateModel, val: Dataset, context: RiskContext) -> SampleLoss:
        try:
            fn = self._losses[name.lower()]
        except KeyError:
            raise UnknownLossException(name) from None
        return fn(model, val, context)

    def factual_mse(self, model: CandidateModel, val: Dataset) -> SampleLoss:
        """
        표본별 (y_i − f(x_i, t_i))²
        :raises MissingOutcomeException: treatment/outcome 컬럼이 없는 경우
        """
        t = val.treatment_values()
        y = val.outcome_values()
        prediction = model.predict(val.covariate_matrix(model.feature_names), t)
        return SampleLoss((y - prediction) ** 2)

    def fit_propensity(self, train: Dataset) -> PropensityScorer:
        """
        로지스틱 판별기로 p̂(t=1|x) 추정, 출력은 [0.05, 0.95] 로 자른다.
        :raises DegenerateTreatmentException: treatment 가 한 종류뿐인 경우
        """
        t = train.treatment_values()
        if len(np.unique(t)) < 2:
            raise DegenerateTreatmentException()
        features = tuple(train.covariate_names)
        estimator = _logistic_discriminator().fit(train.numeric_matrix(features), t.astype(int))
        return PropensityScorer(
            estimator=estimator,
            feature_names=features,
            clip_min=settings.PROPENSITY_CLIP_MIN,
            clip_max=settings.PROPENSITY_CLIP_MAX,
        )

    def iptw_risk(self, model: CandidateModel, val: Dataset, propensity: PropensityScorer) -> SampleLoss:
        """
        사실 제곱오차 / p̂(t_i|x_i)
        """
        losses = self.factual_mse(model, val)
        t = val.treatment_values()
        p = propensity.predict(val)
        return SampleLoss(losses.values * np.where(t == 1, 1.0 / p, 1.0 / (1.0 - p)))

    def _iptw_loss(self, model: CandidateModel, val: Dataset, context: RiskContext) -> SampleLoss:
        if context.propensity is None:
            raise InvalidConfigException("IPTW validation needs a fitted propensity scorer")
        return self.iptw_risk(model, val, context.propensity)

    def density_ratio(self, source_val_x: Dataset, target_x: Dataset) -> ImportanceWeights:
        """
        소스(d=0) 대 타깃(d=1) 판별기로 w(x) = p̂(d=1|x)/p̂(d=0|x)·(N_src/N_tgt) 를 추정한다.
        :raises SchemaMismatchException: 공변량 스키마가 다른 경우
        :raises EmptyDatasetException: 어느 한쪽이 비어 있는 경우
        """
        features = source_val_x.covariate_names
        if features != target_x.covariate_names:
            raise SchemaMismatchException(
                f"Source covariates {features} differ from target covariates {target_x.covariate_names}"
            )
        if source_val_x.n_rows == 0 or target_x.n_rows == 0:
            raise EmptyDatasetException()

        xs = source_val_x.numeric_matrix(features)
        xt = target_x.numeric_matrix(features)
        domain = np.concatenate([np.zeros(len(xs), dtype=int), np.ones(len(xt), dtype=int)])
        discriminator = _logistic_discriminator().fit(np.vstack([xs, xt]), domain)
        return self.weights_from_probabilities(discriminator.predict_proba(xs)[:, 1], len(xs), len(xt))

    @staticmethod
    def weights_from_probabilities(p_target: np.ndarray, n_source: int, n_target: int) -> ImportanceWeights:
        p = np.clip(np.asarray(p_target, dtype=float), _PROBABILITY_EPS, 1 - _PROBABILITY_EPS)
        ratio = p / (1 - p) * (n_source / n_target)
        return ImportanceWeights(
            values=np.clip(ratio, settings.WEIGHT_CLIP_MIN, settings.WEIGHT_CLIP_MAX),
            w_min=settings.WEIGHT_CLIP_MIN,
            w_max=settings.WEIGHT_CLIP_MAX,
        )

    @staticmethod
    def _check_lengths(losses: SampleLoss, weights: ImportanceWeights) -> None:
        if len(losses) != len(weights):
            raise LengthMismatchException(len(losses), len(weights))

    def iwcv_risk(self, losses: SampleLoss, weights: ImportanceWeights) -> float:
        """ (1/N_v)·Σ w_i·l_i """
        self._check_lengths(losses, weights)
        return float(np.mean(weights.values * losses.values))

    def dev_risk(self, losses: SampleLoss, weights: ImportanceWeights) -> float:
        """
        mean(w·l) + η·(mean(w) − 1),  η = −Cov(w·l, w)/Var(w)
        Var(w) 가 1e-12 미만이면 η = 0 (IWCV 와 동일)
        """
        self._check_lengths(losses, weights)
        if len(losses) < 2:
            raise InsufficientSamplesException("DEV needs at least two validation samples")
        w = weights.values
        weighted = w * losses.values
        variance = float(np.var(w, ddof=1))
        if variance < settings.DEV_VARIANCE_GUARD:
            eta = 0.0
        else:
            eta = -float(np.cov(weighted, w, ddof=1)[0, 1]) / variance
        return float(weighted.mean() + eta * (w.mean() - 1.0))

    def prepare_context(
        self,
        method: ValidationRiskDto,
        train: Dataset,
        val: Dataset,
        target_x: Optional[Dataset] = None,
    ) -> RiskContext:
        """
        검증 방법에 필요한 성향 점수 추정기와 중요도 가중치를 한 번만 학습한다.
        """
        propensity = self.fit_propensity(train)
        weights = None
        if method.uda != "none":
            if target_x is None:
                raise InvalidConfigException(f"{method.label} needs target covariates")
            weights = self.density_ratio(val.covariates(), target_x.covariates())
        return RiskContext(propensity=propensity, weights=weights)

    def validation_risk(
        self,
        model: CandidateModel,
        val: Dataset,
        method: ValidationRiskDto,
        context: RiskContext,
    ) -> float:
        """
        v_r: 등록된 손실의 평균, uda 가 iwcv/dev 면 중요도 가중 평균
        """
        losses = self.sample_loss(method.loss, model, val, context)
        if method.uda == "none":
            return losses.mean()
        if context.weights is None:
            raise InvalidConfigException(f"{method.label} needs importance weights")
        if method.uda == "iwcv":
            return self.iwcv_risk(losses, context.weights)
        return self.dev_risk(losses, context.weights)
