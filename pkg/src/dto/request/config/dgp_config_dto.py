from typing import Optional, Tuple

from pydantic import BaseModel, Field, model_validator

MAX_SEED = 2**64


class DgpConfigDto(BaseModel):
    n_nodes: int = Field(10, ge=3, description="DAG 노드 수 (n_nodes_max 가 있으면 하한)")
    n_nodes_max: Optional[int] = Field(None, ge=3, description="DAG 마다 [n_nodes, n_nodes_max] 에서 균등 추출")
    max_edges: Optional[int] = Field(None, ge=2, description="간선 수 상한, 기본값 2·n")
    noise_mean: float = 0.0
    noise_sd: float = Field(1.0, gt=0)
    weight_range: Tuple[float, float] = (-1.0, 1.0)
    n_source: int = Field(2000, ge=10)
    n_target: int = Field(1000, ge=2)
    perturb_mean: Optional[float] = Field(None, ge=1, le=10, description="μ_p, 비우면 DAG 마다 U[1, 10] 추출")
    perturb_sd: float = Field(1.0, gt=0)
    n_perturb: int = Field(1, ge=1, description="평균을 이동시킬 결과 조상 노드 수")
    seed: int = Field(0, ge=0, lt=MAX_SEED)

    @model_validator(mode="after")
    def check_ranges(self) -> "DgpConfigDto":
        low, high = self.weight_range
        if not low < high:
            raise ValueError("weight_range must be an increasing interval")
        if self.n_nodes_max is not None and self.n_nodes_max < self.n_nodes:
            raise ValueError("n_nodes_max must not be smaller than n_nodes")
        return self

    def edge_budget(self, n: int) -> int:
        budget = self.max_edges if self.max_edges is not None else 2 * n
        return min(budget, n * (n - 1) // 2)
