from src.domain.graph_domain import CausalDag, Edge, Node
from src.dto.response.graph.graph_dto import EdgeDto, GraphDto, NodeDto


def dto_to_domain(graph_dto: GraphDto) -> CausalDag:
    """
    (Graph JSON DTO → 도메인 객체 변환)
    파일 포맷 검증은 DTO 가 담당하고, id 중복/간선 끝점 검증은 CausalDag 가 담당한다.
    """
    return CausalDag(
        nodes=tuple(Node(id=n.id, name=n.name, role=n.role, kind=n.kind) for n in graph_dto.nodes),
        edges=tuple(Edge(src=e.src, dst=e.dst, weight=e.weight) for e in graph_dto.edges),
    )


def domain_to_dto(dag: CausalDag) -> GraphDto:
    return GraphDto(
        nodes=[NodeDto.model_validate(n) for n in dag.nodes],
        edges=[EdgeDto.model_validate(e) for e in dag.edges],
    )
