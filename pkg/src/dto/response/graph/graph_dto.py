from typing import List, Optional

from pydantic import BaseModel, Field

from src.domain.graph_domain import NodeKind, NodeRole


class NodeDto(BaseModel):
    id: int
    name: str
    role: NodeRole = NodeRole.FEATURE
    kind: NodeKind = NodeKind.CONTINUOUS

    model_config = {
        "from_attributes": True,
    }


class EdgeDto(BaseModel):
    src: int
    dst: int
    weight: Optional[float] = None      # 읽을 때는 선택, DGP 에서는 필수

    model_config = {
        "from_attributes": True,
    }


class GraphDto(BaseModel):
    nodes: List[NodeDto] = Field(..., min_length=1)
    edges: List[EdgeDto] = Field(default_factory=list)

    model_config = {
        "from_attributes": True,
    }
