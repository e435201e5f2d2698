from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Optional, Tuple

import networkx as nx

from src.exception.graph_exceptions import (
    CycleDetectedException,
    InvalidCiStatementException,
    InvalidGraphException,
    RoleAssignmentException,
    UnknownNodeException,
)


class NodeRole(str, Enum):
    FEATURE = "feature"
    TREATMENT = "treatment"
    OUTCOME = "outcome"


class NodeKind(str, Enum):
    CONTINUOUS = "continuous"
    BINARY = "binary"
    CATEGORICAL = "categorical"

    @property
    def is_discrete(self) -> bool:
        return self is not NodeKind.CONTINUOUS


@dataclass(frozen=True)
class Node:
    id: int
    name: str
    role: NodeRole = NodeRole.FEATURE
    kind: NodeKind = NodeKind.CONTINUOUS


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    weight: Optional[float] = None


@dataclass(frozen=True)
class CausalDag:
    """
    노드 역할(feature/treatment/outcome)과 선택적 간선 가중치를 가진 인과 DAG.
    생성 이후 변경되지 않으며, 노드는 id 순, 간선은 (src, dst) 순으로 정규화된다.
    순환 여부는 GraphService.topological_sort 에서 검사한다.
    """

    nodes: Tuple[Node, ...]
    edges: Tuple[Edge, ...] = field(default_factory=tuple)

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes, key=lambda n: n.id))
        edges = tuple(sorted(self.edges, key=lambda e: (e.src, e.dst)))

        ids = [n.id for n in nodes]
        if len(set(ids)) != len(ids):
            raise InvalidGraphException("Node ids must be unique")
        names = [n.name for n in nodes]
        if len(set(names)) != len(names):
            raise InvalidGraphException("Node names must be unique")

        known = set(ids)
        pairs = set()
        for edge in edges:
            for endpoint in (edge.src, edge.dst):
                if endpoint not in known:
                    raise UnknownNodeException(endpoint)
            if edge.src == edge.dst:
                raise CycleDetectedException(f"Self loop on node {edge.src}")
            if (edge.src, edge.dst) in pairs:
                raise InvalidGraphException(f"Duplicate edge {edge.src}->{edge.dst}")
            pairs.add((edge.src, edge.dst))

        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)

    @cached_property
    def _by_id(self) -> Dict[int, Node]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(n.id for n in self.nodes)
        graph.add_edges_from((e.src, e.dst) for e in self.edges)
        return graph

    @property
    def node_ids(self) -> Tuple[int, ...]:
        return tuple(n.id for n in self.nodes)

    @property
    def edge_pairs(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((e.src, e.dst) for e in self.edges)

    @property
    def has_weights(self) -> bool:
        return all(e.weight is not None for e in self.edges)

    def node(self, node_id: int) -> Node:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise UnknownNodeException(node_id) from None

    def require(self, *node_ids: int) -> None:
        for node_id in node_ids:
            self.node(node_id)

    def id_of(self, name: str) -> int:
        for n in self.nodes:
            if n.name == name:
                return n.id
        raise UnknownNodeException(name)

    def name_of(self, node_id: int) -> str:
        return self.node(node_id).name

    def parents(self, node_id: int) -> Tuple[int, ...]:
        self.node(node_id)
        return tuple(sorted(e.src for e in self.edges if e.dst == node_id))

    def children(self, node_id: int) -> Tuple[int, ...]:
        self.node(node_id)
        return tuple(sorted(e.dst for e in self.edges if e.src == node_id))

    def in_degree(self, node_id: int) -> int:
        return len(self.parents(node_id))

    def weight(self, src: int, dst: int) -> Optional[float]:
        for e in self.edges:
            if e.src == src and e.dst == dst:
                return e.weight
        raise InvalidGraphException(f"No edge {src}->{dst}")

    def _single_role(self, role: NodeRole) -> int:
        matches = [n.id for n in self.nodes if n.role is role]
        if len(matches) != 1:
            raise RoleAssignmentException()
        return matches[0]

    @property
    def treatment_id(self) -> int:
        return self._single_role(NodeRole.TREATMENT)

    @property
    def outcome_id(self) -> int:
        return self._single_role(NodeRole.OUTCOME)

    @property
    def feature_ids(self) -> Tuple[int, ...]:
        return tuple(n.id for n in self.nodes if n.role is NodeRole.FEATURE)

    def with_edges(self, edges) -> "CausalDag":
        return CausalDag(nodes=self.nodes, edges=tuple(edges))


@dataclass(frozen=True)
class CiStatement:
    """a ⊥ b | given"""

    a: int
    b: int
    given: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "given", frozenset(self.given))
        if self.a == self.b or self.a in self.given or self.b in self.given:
            raise InvalidCiStatementException()
