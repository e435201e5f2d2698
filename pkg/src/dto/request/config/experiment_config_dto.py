from typing import List, Optional

from pydantic import BaseModel, Field

from src.dto.request.config.ci_test_config_dto import CiTestConfigDto
from src.dto.request.config.dgp_config_dto import MAX_SEED, DgpConfigDto
from src.dto.request.config.lambda_policy_dto import LambdaPolicyDto
from src.dto.request.config.sweep_config_dto import SweepConfigDto
from src.dto.request.config.validation_risk_dto import ValidationRiskDto
from src.dto.request.config.zoo_config_dto import ZooConfigDto


def default_methods() -> List[ValidationRiskDto]:
    return [
        ValidationRiskDto(loss="mse", uda="none"),
        ValidationRiskDto(loss="iptw", uda="none"),
        ValidationRiskDto(loss="mse", uda="iwcv"),
        ValidationRiskDto(loss="mse", uda="dev"),
    ]


class ExperimentConfigDto(BaseModel):
    dgp: DgpConfigDto = Field(default_factory=DgpConfigDto)
    zoo: ZooConfigDto = Field(default_factory=ZooConfigDto)
    methods: List[ValidationRiskDto] = Field(default_factory=default_methods, min_length=1)
    lambda_policy: LambdaPolicyDto = Field(default_factory=LambdaPolicyDto)
    ci: CiTestConfigDto = Field(default_factory=CiTestConfigDto)
    sweep: SweepConfigDto = Field(default_factory=SweepConfigDto)
    n_dags: int = Field(20, ge=1)
    n_jobs: int = Field(1, ge=1, description="DAG 단위 병렬 스레드 수")
    report_nci: bool = False
    seed: int = Field(0, ge=0, lt=MAX_SEED)
    output_dir: Optional[str] = None
