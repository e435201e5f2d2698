from typing import Dict

from src.domain.dataset_domain import Dataset
from src.domain.graph_domain import CausalDag, NodeKind
from src.dto.response.dataset.dataset_meta_dto import ColumnDto, DatasetMetaDto


def meta_to_kinds(meta: DatasetMetaDto) -> Dict[str, NodeKind]:
    return {c.name: c.kind for c in meta.columns}


def dataset_to_meta(dataset: Dataset) -> DatasetMetaDto:
    return DatasetMetaDto(
        columns=[ColumnDto(name=c, kind=dataset.kinds[c]) for c in dataset.columns],
        treatment=dataset.treatment,
        outcome=dataset.outcome,
    )


def dag_kinds(dag: CausalDag) -> Dict[str, NodeKind]:
    """ 그래프 노드 이름 → 컬럼 타입 """
    return {n.name: n.kind for n in dag.nodes}
