from typing import Literal

from pydantic import BaseModel, Field


class LambdaPolicyDto(BaseModel):
    """
    fixed      : value 를 그대로 λ 로 사용
    edge_ratio : 채점 그래프, 빈 사전 그래프, 참 그래프의 간선 비율로 λ 계산
    """

    kind: Literal["fixed", "edge_ratio"] = "fixed"
    value: float = Field(1.0, ge=0)
