import logging
from itertools import combinations
from typing import Iterable, List, Set

import networkx as nx

from src.domain.graph_domain import CausalDag, CiStatement, Edge
from src.exception.graph_exceptions import (
    CycleDetectedException,
    InvalidCiStatementException,
    NodeSetMismatchException,
)
from src.service.base_service import BaseService

logger = logging.getLogger(__name__)


class GraphService(BaseService):
    """
    인과 DAG 구조 연산을 담당하는 서비스 클래스.
    위상 정렬, do-연산자 절단(mutilation), d-분리, 국소 마르코프 CI 집합을 제공한다.
    모든 연산은 순수 함수이며 동률은 node id 오름차순으로 정한다.
    """

    def topological_sort(self, dag: CausalDag) -> List[int]:
        """
        :return: 모든 간선이 앞에서 뒤로 향하는 node id 순서 (동률은 id 오름차순)
        :raises CycleDetectedException: 방향 순환이 있는 경우
        """
        try:
            return list(nx.lexicographical_topological_sort(dag.digraph))
        except nx.NetworkXUnfeasible:
            raise CycleDetectedException() from None

    def is_acyclic(self, dag: CausalDag) -> bool:
        return nx.is_directed_acyclic_graph(dag.digraph)

    def mutilate(self, dag: CausalDag, treatment: int) -> CausalDag:
        """
        do(T) 에 해당하는 그래프: treatment 로 들어오는 간선을 모두 제거한다.
        :raises UnknownNodeException: treatment 노드가 없는 경우
        """
        dag.require(treatment)
        return dag.with_edges(e for e in dag.edges if e.dst != treatment)

    def descendants(self, dag: CausalDag, node: int) -> Set[int]:
        dag.require(node)
        return nx.descendants(dag.digraph, node)

    def ancestors(self, dag: CausalDag, node: int) -> Set[int]:
        dag.require(node)
        return nx.ancestors(dag.digraph, node)

    def d_separated(self, dag: CausalDag, a: int, b: int, given: Iterable[int] = ()) -> bool:
        """
        a 와 b 가 given 조건부로 d-분리되는지 판정한다.
        :raises UnknownNodeException: 존재하지 않는 노드
        :raises InvalidCiStatementException: a == b 이거나 a, b 가 given 에 포함된 경우
        """
        given = frozenset(given)
        dag.require(a, b, *given)
        if a == b or a in given or b in given:
            raise InvalidCiStatementException()
        return nx.is_d_separator(dag.digraph, {a}, {b}, set(given))

    def saturate_parents(self, dag: CausalDag, node: int) -> CausalDag:
        """
        node 의 비자손을 모두 node 의 부모로 연결한다 (추가 간선은 가중치 없음).
        부모 집합 일부만 알려진 경우에도 참 분포가 이 그래프에 대해 마르코프 성질을 만족한다.
        :raises UnknownNodeException: node 가 없는 경우
        """
        dag.require(node)
        excluded = self.descendants(dag, node) | set(dag.parents(node)) | {node}
        added = [Edge(src=u, dst=node) for u in dag.node_ids if u not in excluded]
        return dag.with_edges([*dag.edges, *added])

    def local_markov_set(self, dag: CausalDag) -> List[CiStatement]:
        """
        각 노드 v 와 v 의 비자손·비부모 u 에 대해 v ⊥ u | parents(v) 를 id 오름차순으로 나열한다.
        """
        statements = []
        for v in dag.node_ids:
            parents = frozenset(dag.parents(v))
            excluded = self.descendants(dag, v) | parents | {v}
            statements.extend(CiStatement(a=v, b=u, given=parents) for u in dag.node_ids if u not in excluded)
        return statements

    def graph_distance(self, g1: CausalDag, g2: CausalDag) -> int:
        """
        구조적 해밍 거리. 노드 쌍마다 (없음, u→v, v→u) 상태가 다르면 1 (역방향도 1회로 센다).
        :raises NodeSetMismatchException: 노드 집합이 다른 경우
        """
        if set(g1.node_ids) != set(g2.node_ids):
            raise NodeSetMismatchException()
        e1, e2 = g1.edge_pairs, g2.edge_pairs
        distance = 0
        for u, v in combinations(sorted(g1.node_ids), 2):
            state1 = ((u, v) in e1, (v, u) in e1)
            state2 = ((u, v) in e2, (v, u) in e2)
            if state1 != state2:
                distance += 1
        return distance
