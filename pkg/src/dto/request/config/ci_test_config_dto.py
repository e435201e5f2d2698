from pydantic import BaseModel, Field

from src.core.settings import settings


class CiTestConfigDto(BaseModel):
    alpha: float = Field(settings.CI_ALPHA, gt=0, lt=1, description="유의수준")
    correlation_clamp: float = Field(settings.CI_CORRELATION_CLAMP, gt=0, lt=1, description="Fisher 변환 전 |r| 상한")
    degenerate_tolerance: float = Field(
        settings.CI_DEGENERATE_TOLERANCE, ge=0, description="잔차 제곱합/총 제곱합 이하이면 퇴화 잔차로 간주"
    )
