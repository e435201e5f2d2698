from typing import Dict, List, Union

from pydantic import BaseModel, Field, model_validator

from src.domain.model_domain import ModelFamily

HyperValue = Union[int, float, str]

RIDGE_ALPHAS = [1e-4, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2]
POLY_DEGREES = [1, 2, 3]
POLY_ALPHAS = [1e-4, 1.0, 1e2]
KNN_NEIGHBORS = [1, 5, 25]
CORRUPTION_STRENGTHS = [0.1, 0.25, 0.5, 1.0]


class ModelSpecDto(BaseModel):
    family: ModelFamily
    hyperparams: Dict[str, HyperValue] = Field(default_factory=dict)

    @property
    def model_id(self) -> str:
        if not self.hyperparams:
            return self.family.value
        params = ",".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}" for k, v in sorted(self.hyperparams.items()))
        return f"{self.family.value}[{params}]"


def default_model_grid() -> List[ModelSpecDto]:
    """ 기본 24개 후보 모델 그리드 """
    specs = [ModelSpecDto(family=ModelFamily.T_RIDGE, hyperparams={"alpha": a}) for a in RIDGE_ALPHAS]
    specs += [
        ModelSpecDto(family=ModelFamily.S_POLY, hyperparams={"degree": d, "alpha": a})
        for d in POLY_DEGREES
        for a in POLY_ALPHAS
    ]
    specs += [ModelSpecDto(family=ModelFamily.T_KNN, hyperparams={"k": k}) for k in KNN_NEIGHBORS]
    specs.append(ModelSpecDto(family=ModelFamily.ORACLE))
    specs += [
        ModelSpecDto(family=ModelFamily.CORRUPTED_ORACLE, hyperparams={"strength": c}) for c in CORRUPTION_STRENGTHS
    ]
    return specs


class ZooConfigDto(BaseModel):
    models: List[ModelSpecDto] = Field(default_factory=default_model_grid, min_length=1)

    @model_validator(mode="after")
    def check_unique_ids(self) -> "ZooConfigDto":
        ids = [m.model_id for m in self.models]
        if len(set(ids)) != len(ids):
            raise ValueError("Model ids must be unique within a zoo")
        return self
