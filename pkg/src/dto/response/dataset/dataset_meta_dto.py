from typing import List, Optional

from pydantic import BaseModel

from src.domain.graph_domain import NodeKind


class ColumnDto(BaseModel):
    name: str
    kind: NodeKind


class DatasetMetaDto(BaseModel):
    """ 데이터셋 CSV 옆에 놓이는 메타데이터 (sidecar) """

    columns: List[ColumnDto]
    treatment: Optional[str] = "T"
    outcome: Optional[str] = "Y"
