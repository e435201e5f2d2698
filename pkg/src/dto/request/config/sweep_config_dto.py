from typing import List, Literal

from pydantic import BaseModel, Field

from src.dto.request.config.validation_risk_dto import ValidationRiskDto


class SweepConfigDto(BaseModel):
    lambdas: List[float] = Field(default_factory=lambda: [0.0, 0.25, 0.5, 1.0, 2.0, 4.0], min_length=1)
    fractions: List[float] = Field(default_factory=lambda: [0.0, 0.1, 0.25, 0.5, 1.0], min_length=1)
    mode: Literal["reverse", "add"] = "reverse"
    kept_fractions: List[float] = Field(default_factory=lambda: [0.25, 0.5, 0.75, 1.0], min_length=1)
    method: ValidationRiskDto = Field(default_factory=ValidationRiskDto)
