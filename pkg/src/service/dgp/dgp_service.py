import logging
import math
from typing import Collection, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.special import expit

from src.core.settings import settings
from src.domain.dataset_domain import Dataset, PotentialOutcomes, SyntheticBenchmark
from src.domain.graph_domain import CausalDag, Edge, Node, NodeKind, NodeRole
from src.dto.request.config.dgp_config_dto import DgpConfigDto
from src.exception.config_exceptions import InvalidConfigException
from src.exception.graph_exceptions import (
    InfeasibleRolesException,
    InvalidPerturbSetException,
    MissingWeightsException,
    NoAcyclicCompletionException,
)
from src.exception.model_exceptions import SingleArmDataException
from src.mapper.dataset_mapper import dag_kinds
from src.service.base_service import BaseService
from src.service.graph.graph_service import GraphService
from src.utils.seed_provider import SeedProvider

logger = logging.getLogger(__name__)

MUTATION_MODES = ("reverse", "add")
TRAIN_FRACTION = 0.8


class DgpService(BaseService):
    """
    합성 벤치마크 생성을 담당하는 서비스 클래스.
    무작위 DAG, 관측(소스) 데이터, 평균 이동된 개입(타깃) 데이터, 그래프 오지정(misspecification)을 만든다.
    같은 (설정, 시드) 면 항상 같은 결과를 낸다.
    """

    def __init__(self, graph_service: GraphService):
        self.graph_service = graph_service

    def random_dag(
        self,
        n: int,
        max_edges: int,
        seed: int,
        weight_range: Tuple[float, float] = (-1.0, 1.0),
    ) -> CausalDag:
        """
        id 순서가 곧 인과 순서인 무작위 DAG.
        Y 는 마지막 노드(싱크), T 는 중간 노드이며 부모 p 를 하나 이상 가진다.
        T→Y 간선은 항상 있고 p→Y 간선은 만들지 않는다 (corrupted oracle 용 비부모 공변량 보장).
        공변량은 모두 처치 이전 변수이므로 T 의 자식은 Y 하나뿐이다.
        :raises InfeasibleRolesException: n < 3 이거나 max_edges < 2
        """
        if n < 3 or max_edges < 2:
            raise InfeasibleRolesException()
        if max_edges > n * (n - 1) // 2:
            raise InvalidConfigException(f"max_edges {max_edges} exceeds n(n-1)/2 for n={n}")

        rng = self.rng(seed)
        outcome = n - 1
        treatment = int(rng.integers(1, n - 1))
        treatment_parent = int(rng.integers(0, treatment))
        required = [(treatment_parent, treatment), (treatment, outcome)]
        forbidden = {(treatment_parent, outcome), *required}

        candidates = [
            (i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in forbidden and i != treatment
        ]
        n_extra = min(int(rng.integers(0, max_edges - 2 + 1)), len(candidates))
        chosen = rng.choice(len(candidates), size=n_extra, replace=False) if n_extra else []
        pairs = sorted(required + [candidates[int(c)] for c in chosen])
        weights = rng.uniform(weight_range[0], weight_range[1], size=len(pairs))

        def make_node(i: int) -> Node:
            if i == treatment:
                return Node(id=i, name="T", role=NodeRole.TREATMENT, kind=NodeKind.BINARY)
            if i == outcome:
                return Node(id=i, name="Y", role=NodeRole.OUTCOME, kind=NodeKind.CONTINUOUS)
            return Node(id=i, name=f"X{i}")

        return CausalDag(
            nodes=tuple(make_node(i) for i in range(n)),
            edges=tuple(Edge(src=s, dst=d, weight=float(w)) for (s, d), w in zip(pairs, weights)),
        )

    @staticmethod
    def _linear_term(dag: CausalDag, node: int, values: Dict[int, np.ndarray], n: int, skip: Collection[int] = ()) -> np.ndarray:
        total = np.zeros(n)
        for p in dag.parents(node):
            if p not in skip:
                total = total + dag.weight(p, node) * values[p]
        return total

    def gen_obs_data(self, dag: CausalDag, cfg: DgpConfigDto, seed: Optional[int] = None) -> Dataset:
        """
        위상 순서로 X_i = Σ w·PA + N(μ, σ), treatment 는 sigmoid 후 0.5 에서 이진화한다.
        이진화된 treatment 가 자손 노드 계산에 쓰인다.
        :raises MissingWeightsException: 가중치 없는 간선이 있는 경우
        """
        if not dag.has_weights:
            raise MissingWeightsException()
        rng = self.rng(cfg.seed if seed is None else seed)
        treatment = dag.treatment_id
        ids = dag.node_ids
        noise = rng.normal(cfg.noise_mean, cfg.noise_sd, size=(cfg.n_source, len(ids)))

        values: Dict[int, np.ndarray] = {}
        for node in self.graph_service.topological_sort(dag):
            column = noise[:, ids.index(node)] + self._linear_term(dag, node, values, cfg.n_source)
            if node == treatment:
                column = (expit(column) > 0.5).astype(float)
            values[node] = column

        return self._to_dataset(dag, values)

    def gen_treat_data(
        self,
        dag: CausalDag,
        cfg: DgpConfigDto,
        perturb_nodes: Collection[int],
        perturb_mean: Optional[float] = None,
        seed: Optional[int] = None,
    ) -> Tuple[Dataset, PotentialOutcomes]:
        """
        개입(타깃) 데이터 생성.
        - perturb_nodes 의 잡음은 N(μ_p, σ_p), 나머지는 N(μ, σ)
        - 전파 루프는 treatment 와 outcome 을 건너뛴다 (treatment 는 잡음값 그대로 자손에 전달)
        - 앞쪽 ⌊n/2⌋ 행은 t=0, 나머지는 t=1
        - y(t) = Σ_{p ∈ PA(Y), p ≠ T} w·x_p + w_TY·t  (잡음 없음)
        :return: (공변량 + 할당된 treatment + 사실 결과, 평가 전용 잠재 결과)
        :raises InvalidPerturbSetException: perturb_nodes 가 outcome 의 feature 조상이 아닌 경우
        """
        if not dag.has_weights:
            raise MissingWeightsException()
        treatment, outcome = dag.treatment_id, dag.outcome_id
        perturb_nodes = sorted(set(perturb_nodes))
        allowed = self.graph_service.ancestors(dag, outcome) & set(dag.feature_ids)
        if not perturb_nodes or not set(perturb_nodes) <= allowed:
            raise InvalidPerturbSetException()

        rng = self.rng(cfg.seed if seed is None else seed)
        mu_p = perturb_mean if perturb_mean is not None else cfg.perturb_mean
        if mu_p is None:
            mu_p = float(rng.uniform(1.0, 10.0))

        n = cfg.n_target
        ids = dag.node_ids
        noise = rng.normal(cfg.noise_mean, cfg.noise_sd, size=(n, len(ids)))
        for node in perturb_nodes:
            noise[:, ids.index(node)] = rng.normal(mu_p, cfg.perturb_sd, size=n)

        values: Dict[int, np.ndarray] = {}
        for node in self.graph_service.topological_sort(dag):
            column = noise[:, ids.index(node)]
            if node not in (treatment, outcome):
                column = column + self._linear_term(dag, node, values, n)
            values[node] = column

        t = np.zeros(n)
        t[n // 2:] = 1.0
        y0 = self._linear_term(dag, outcome, values, n, skip={treatment})
        effect = dag.weight(treatment, outcome) if treatment in dag.parents(outcome) else 0.0
        y1 = y0 + effect
        values[treatment] = t
        values[outcome] = np.where(t == 1, y1, y0)

        logger.debug(
            "Generated interventional data",
            extra={"rows": n, "perturb_mean": mu_p, "perturbed": len(perturb_nodes)},
        )
        return self._to_dataset(dag, values), PotentialOutcomes(y0=y0, y1=y1)

    def _to_dataset(self, dag: CausalDag, values: Dict[int, np.ndarray]) -> Dataset:
        treatment, outcome = dag.treatment_id, dag.outcome_id
        frame = pd.DataFrame({dag.name_of(i): values[i] for i in dag.node_ids})
        frame[dag.name_of(treatment)] = frame[dag.name_of(treatment)].astype(int)
        return Dataset(
            frame=frame,
            kinds=dag_kinds(dag),
            treatment=dag.name_of(treatment),
            outcome=dag.name_of(outcome),
        )

    def choose_perturb_nodes(self, dag: CausalDag, count: int, seed: int) -> List[int]:
        """
        outcome 의 feature 조상 가운데 count 개(가능한 만큼)를 고른다.
        :raises InvalidPerturbSetException: 후보가 없는 경우
        """
        candidates = sorted(self.graph_service.ancestors(dag, dag.outcome_id) & set(dag.feature_ids))
        if not candidates:
            raise InvalidPerturbSetException("Outcome has no feature ancestors to perturb")
        picked = self.rng(seed).choice(candidates, size=min(count, len(candidates)), replace=False)
        return sorted(int(p) for p in picked)

    def draw_perturb_mean(self, seed: int) -> float:
        """ μ_p ~ U[1, 10] """
        return float(self.rng(seed).uniform(1.0, 10.0))

    def generate_benchmark(self, dag: CausalDag, cfg: DgpConfigDto, seed: int) -> SyntheticBenchmark:
        """
        소스(관측) 데이터, 섭동 노드 선택, μ_p 추출, 타깃(개입) 데이터 생성을 독립된 시드 스트림으로 수행한다.
        """
        s_obs, s_perturb, s_mu, s_treat = SeedProvider.streams(seed, 4)
        source = self.gen_obs_data(dag, cfg, seed=s_obs)
        perturb_nodes = self.choose_perturb_nodes(dag, cfg.n_perturb, s_perturb)
        perturb_mean = cfg.perturb_mean if cfg.perturb_mean is not None else self.draw_perturb_mean(s_mu)
        target, potential_outcomes = self.gen_treat_data(
            dag, cfg, perturb_nodes, perturb_mean=perturb_mean, seed=s_treat
        )
        logger.info(
            "Generated synthetic benchmark",
            extra={"nodes": len(dag.nodes), "edges": len(dag.edges), "perturb_mean": perturb_mean},
        )
        return SyntheticBenchmark(
            source=source,
            target=target,
            potential_outcomes=potential_outcomes,
            perturb_mean=perturb_mean,
            perturb_nodes=perturb_nodes,
        )

    def split_source(self, data: Dataset, seed: int, train_fraction: float = TRAIN_FRACTION) -> Tuple[Dataset, Dataset]:
        """
        소스 데이터를 학습/검증(기본 80/20)으로 나눈다.
        :raises SingleArmDataException: 학습 쪽에 한 arm 만 남는 경우
        """
        n = data.n_rows
        n_train = int(round(train_fraction * n))
        if n_train < 1 or n_train >= n:
            raise InvalidConfigException(f"Cannot split {n} rows with train fraction {train_fraction}")
        order = self.rng(seed).permutation(n)
        train, val = data.select_rows(np.sort(order[:n_train])), data.select_rows(np.sort(order[n_train:]))
        if len(np.unique(train.treatment_values())) < 2:
            raise SingleArmDataException()
        return train, val

    def perturb_graph(self, dag: CausalDag, fraction: float, mode: str, seed: int) -> CausalDag:
        """
        ⌊fraction·|E|⌋ 개 간선을 뒤집거나(reverse) 가짜 간선을 추가(add)한다.
        add 는 인접하지 않은 노드 쌍 수를 넘지 않는다. 실제 변이 수는 graph_distance 로 확인한다.
        순환이 생기는 변이는 다시 뽑고, 재시도 한도를 넘으면 예외를 던진다.
        :raises NoAcyclicCompletionException: 재시도 안에 비순환 결과를 못 찾은 경우
        """
        if not 0.0 <= fraction <= 1.0:
            raise InvalidConfigException(f"Mutation fraction must lie in [0, 1], got {fraction}")
        if mode not in MUTATION_MODES:
            raise InvalidConfigException(f"Unknown mutation mode: {mode}")

        count = math.floor(fraction * len(dag.edges))
        if count == 0:
            return dag
        rng = self.rng(seed)
        if mode == "reverse":
            edges = self._reverse_edges(dag, count, rng)
        else:
            edges = self._add_edges(dag, count, rng)
        logger.debug("Mutated graph", extra={"mode": mode, "mutations": count})
        return dag.with_edges(edges)

    def _acyclic(self, dag: CausalDag, edges: List[Edge]) -> bool:
        return self.graph_service.is_acyclic(dag.with_edges(edges))

    def _reverse_edges(self, dag: CausalDag, count: int, rng: np.random.Generator) -> List[Edge]:
        for _ in range(settings.MAX_MUTATION_RETRIES):
            order = [dag.edges[int(i)] for i in rng.permutation(len(dag.edges))]
            current = {(e.src, e.dst): e for e in dag.edges}
            reversed_pairs = set()
            progress = True
            while len(reversed_pairs) < count and progress:
                progress = False
                for edge in order:
                    if (edge.src, edge.dst) in reversed_pairs:
                        continue
                    trial = dict(current)
                    del trial[(edge.src, edge.dst)]
                    trial[(edge.dst, edge.src)] = Edge(src=edge.dst, dst=edge.src, weight=edge.weight)
                    if self._acyclic(dag, list(trial.values())):
                        current = trial
                        reversed_pairs.add((edge.src, edge.dst))
                        progress = True
                        if len(reversed_pairs) == count:
                            break
            if len(reversed_pairs) == count:
                return list(current.values())
        raise NoAcyclicCompletionException()

    def _add_edges(self, dag: CausalDag, count: int, rng: np.random.Generator) -> List[Edge]:
        """
        인접하지 않은 노드 쌍에 가짜 간선을 추가한다. 빈 쌍이 count 보다 적으면 빈 쌍 수만큼만 추가한다.
        """
        existing = dag.edge_pairs
        free = [
            (u, v)
            for u in dag.node_ids
            for v in dag.node_ids
            if u < v and (u, v) not in existing and (v, u) not in existing
        ]
        if len(free) < count:
            logger.debug("Capped spurious edge count", extra={"requested": count, "available": len(free)})
            count = len(free)

        edges = list(dag.edges)
        for index in rng.permutation(len(free))[:count]:
            u, v = free[int(index)]
            first, second = ((u, v), (v, u)) if rng.random() < 0.5 else ((v, u), (u, v))
            for src, dst in (first, second):
                trial = edges + [Edge(src=src, dst=dst)]
                if self._acyclic(dag, trial):
                    edges = trial
                    break
            else:
                raise NoAcyclicCompletionException()
        return edges

    def outcome_subgraph(self, dag: CausalDag, kept_fraction: float, seed: int) -> CausalDag:
        """
        outcome 으로 들어오는 공변량 간선 k 개 중 ⌈f·k⌉ 개만 남긴다. treatment→outcome 간선은 항상 유지.
        """
        if not 0.0 <= kept_fraction <= 1.0:
            raise InvalidConfigException(f"Kept fraction must lie in [0, 1], got {kept_fraction}")
        treatment, outcome = dag.treatment_id, dag.outcome_id
        covariate_parents = [p for p in dag.parents(outcome) if p != treatment]
        n_keep = math.ceil(kept_fraction * len(covariate_parents))
        kept = set(self.rng(seed).choice(covariate_parents, size=n_keep, replace=False).tolist()) if n_keep else set()
        dropped = {(p, outcome) for p in covariate_parents if p not in kept}
        return dag.with_edges(e for e in dag.edges if (e.src, e.dst) not in dropped)
