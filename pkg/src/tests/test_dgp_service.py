import math

import numpy as np
import pytest

from src.domain.graph_domain import NodeRole
from src.dto.request.config.dgp_config_dto import DgpConfigDto
from src.exception.config_exceptions import InvalidConfigException
from src.exception.graph_exceptions import (
    InfeasibleRolesException,
    InvalidPerturbSetException,
    MissingWeightsException,
)
from src.tests.helpers import build_dag

# X0 → T → Y,  X0 → X2 → Y,  X3 → Y
WEIGHTED = build_dag(
    5,
    [(0, 1), (1, 4), (0, 2), (2, 4), (3, 4)],
    treatment=1,
    outcome=4,
    weights={(0, 1): 0.8, (1, 4): 1.5, (0, 2): -0.5, (2, 4): 0.7, (3, 4): -1.2},
)


def small_config(**overrides) -> DgpConfigDto:
    values = {"n_nodes": 5, "n_source": 400, "n_target": 301, "perturb_mean": 4.0, "seed": 3}
    values.update(overrides)
    return DgpConfigDto(**values)


@pytest.mark.parametrize("seed", [0, 1, 7, 123])
def test_random_dag_shape(dgp_service, graph_service, seed):
    dag = dgp_service.random_dag(8, 12, seed)
    assert graph_service.is_acyclic(dag)
    assert len(dag.edges) <= 12
    assert dag.node(dag.outcome_id).role is NodeRole.OUTCOME
    assert dag.outcome_id == 7
    assert dag.children(dag.outcome_id) == ()
    assert dag.treatment_id in dag.parents(dag.outcome_id)
    assert dag.parents(dag.treatment_id)
    assert dag.children(dag.treatment_id) == (dag.outcome_id,)
    assert all(e.src < e.dst for e in dag.edges)
    assert all(-1.0 <= e.weight <= 1.0 for e in dag.edges)


def test_random_dag_is_deterministic(dgp_service):
    assert dgp_service.random_dag(6, 8, 42) == dgp_service.random_dag(6, 8, 42)


def test_random_dag_respects_weight_range(dgp_service):
    dag = dgp_service.random_dag(6, 10, 1, weight_range=(0.5, 2.0))
    assert all(0.5 <= e.weight <= 2.0 for e in dag.edges)


def test_random_dag_rejects_infeasible_sizes(dgp_service):
    with pytest.raises(InfeasibleRolesException):
        dgp_service.random_dag(2, 2, 0)
    with pytest.raises(InfeasibleRolesException):
        dgp_service.random_dag(5, 1, 0)
    with pytest.raises(InvalidConfigException):
        dgp_service.random_dag(3, 4, 0)


def test_gen_obs_data_layout(dgp_service):
    data = dgp_service.gen_obs_data(WEIGHTED, small_config())
    assert data.n_rows == 400
    assert data.columns == ["X0", "T", "X2", "X3", "Y"]
    assert set(np.unique(data.treatment_values())) <= {0.0, 1.0}
    assert data.treatment == "T" and data.outcome == "Y"


def test_gen_obs_data_is_deterministic(dgp_service):
    first = dgp_service.gen_obs_data(WEIGHTED, small_config())
    second = dgp_service.gen_obs_data(WEIGHTED, small_config())
    assert first.frame.equals(second.frame)


def test_gen_obs_data_outcome_follows_structural_equation(dgp_service):
    data = dgp_service.gen_obs_data(WEIGHTED, small_config(n_source=5000))
    frame = data.frame
    residual = frame["Y"] - (1.5 * frame["T"] + 0.7 * frame["X2"] - 1.2 * frame["X3"])
    assert abs(residual.mean()) < 0.1
    assert residual.std() == pytest.approx(1.0, abs=0.1)


def test_gen_obs_data_treated_fraction_with_zero_weight_parent(dgp_service):
    dag = build_dag(3, [(0, 1), (1, 2)], treatment=1, outcome=2, weights={(0, 1): 0.0, (1, 2): 1.0})
    data = dgp_service.gen_obs_data(dag, small_config(n_source=5000))
    assert 0.45 <= data.treatment_values().mean() <= 0.55


def test_gen_obs_data_chain_variance(dgp_service):
    # X0 → Y (w = 1.5), T 는 고립된 루트
    dag = build_dag(3, [(0, 2), (1, 2)], treatment=1, outcome=2, weights={(0, 2): 1.5, (1, 2): 0.0})
    frame = dgp_service.gen_obs_data(dag, small_config(n_source=5000)).frame
    expected = 1.5**2 * frame["X0"].var() + 1.0
    assert frame["Y"].var() == pytest.approx(expected, rel=0.1)


def test_gen_obs_data_requires_weights(dgp_service):
    with pytest.raises(MissingWeightsException):
        dgp_service.gen_obs_data(build_dag(3, [(0, 1), (1, 2)], treatment=1, outcome=2), small_config())


def test_gen_treat_data_assignment_and_outcomes(dgp_service):
    target, po = dgp_service.gen_treat_data(WEIGHTED, small_config(), perturb_nodes=[2])
    t = target.treatment_values()
    assert target.n_rows == 301
    assert int(t.sum()) == math.ceil(301 / 2)
    assert np.all(t[:150] == 0) and np.all(t[150:] == 1)

    frame = target.frame
    expected_y0 = 0.7 * frame["X2"] - 1.2 * frame["X3"]
    np.testing.assert_allclose(po.y0, expected_y0)
    np.testing.assert_allclose(po.cate, 1.5)
    np.testing.assert_allclose(frame["Y"], np.where(t == 1, po.y1, po.y0))


def test_gen_treat_data_shifts_perturbed_node(dgp_service):
    target, _ = dgp_service.gen_treat_data(WEIGHTED, small_config(n_target=4000), perturb_nodes=[3], perturb_mean=6.0)
    assert target.frame["X3"].mean() == pytest.approx(6.0, abs=0.1)
    assert target.frame["X0"].mean() == pytest.approx(0.0, abs=0.1)


def test_gen_treat_data_rejects_non_ancestors(dgp_service):
    with pytest.raises(InvalidPerturbSetException):
        dgp_service.gen_treat_data(WEIGHTED, small_config(), perturb_nodes=[1])
    with pytest.raises(InvalidPerturbSetException):
        dgp_service.gen_treat_data(WEIGHTED, small_config(), perturb_nodes=[])


def test_generate_benchmark(dgp_service):
    benchmark = dgp_service.generate_benchmark(WEIGHTED, small_config(), seed=9)
    assert benchmark.source.n_rows == 400
    assert benchmark.target.n_rows == 301
    assert len(benchmark.potential_outcomes) == 301
    assert benchmark.perturb_mean == 4.0
    assert set(benchmark.perturb_nodes) <= {0, 2, 3}


def test_generate_benchmark_draws_perturb_mean(dgp_service):
    benchmark = dgp_service.generate_benchmark(WEIGHTED, small_config(perturb_mean=None), seed=9)
    assert 1.0 <= benchmark.perturb_mean <= 10.0


def test_split_source(dgp_service):
    data = dgp_service.gen_obs_data(WEIGHTED, small_config())
    train, val = dgp_service.split_source(data, seed=0)
    assert train.n_rows == 320
    assert val.n_rows == 80


@pytest.mark.parametrize("mode", ["reverse", "add"])
def test_perturb_graph_fraction_zero_is_identity(dgp_service, mode):
    assert dgp_service.perturb_graph(WEIGHTED, 0.0, mode, seed=1) == WEIGHTED


@pytest.mark.parametrize("seed", range(5))
def test_perturb_graph_reverse(dgp_service, graph_service, seed):
    mutated = dgp_service.perturb_graph(WEIGHTED, 0.4, "reverse", seed)
    assert len(mutated.edges) == len(WEIGHTED.edges)
    assert graph_service.is_acyclic(mutated)
    flipped = {(e.dst, e.src) for e in mutated.edges} & WEIGHTED.edge_pairs
    assert len(flipped) == 2
    assert graph_service.graph_distance(WEIGHTED, mutated) > 0


@pytest.mark.parametrize("seed", range(5))
def test_perturb_graph_add(dgp_service, graph_service, seed):
    mutated = dgp_service.perturb_graph(WEIGHTED, 0.4, "add", seed)
    assert len(mutated.edges) == len(WEIGHTED.edges) + 2
    assert WEIGHTED.edge_pairs <= mutated.edge_pairs
    assert graph_service.is_acyclic(mutated)


def test_perturb_graph_add_stops_at_free_pairs(dgp_service, graph_service):
    # 다섯 간선, 인접하지 않은 쌍은 (0, 3) 하나뿐
    dense = build_dag(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    mutated = dgp_service.perturb_graph(dense, 1.0, "add", seed=0)
    assert len(mutated.edges) == 6
    assert graph_service.is_acyclic(mutated)
    assert graph_service.graph_distance(dense, mutated) == 1


def test_perturb_graph_rejects_bad_arguments(dgp_service):
    with pytest.raises(InvalidConfigException):
        dgp_service.perturb_graph(WEIGHTED, 1.5, "reverse", 0)
    with pytest.raises(InvalidConfigException):
        dgp_service.perturb_graph(WEIGHTED, 0.5, "shuffle", 0)


@pytest.mark.parametrize("kept, expected_parents", [(1.0, 2), (0.5, 1), (0.25, 1), (0.0, 0)])
def test_outcome_subgraph(dgp_service, kept, expected_parents):
    sub = dgp_service.outcome_subgraph(WEIGHTED, kept, seed=4)
    parents = set(sub.parents(4))
    assert 1 in parents
    assert len(parents - {1}) == expected_parents
    assert (0, 1) in sub.edge_pairs and (0, 2) in sub.edge_pairs
