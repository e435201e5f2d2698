import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.container import container
from src.core.settings import settings as app_settings
from src.domain.model_domain import ModelFamily
from src.dto.request.config.dgp_config_dto import DgpConfigDto
from src.dto.request.config.zoo_config_dto import ModelSpecDto
from src.exception.config_exceptions import InvalidConfigException
from src.exception.data_exceptions import (
    ColumnMismatchException,
    EmptyDatasetException,
    InsufficientSamplesException,
    SchemaMismatchException,
)
from src.exception.graph_exceptions import NotMutilatedException
from src.tests.helpers import build_dag, dataset, function_model

FLOOR_ENTROPY = 0.5 * math.log(2 * math.pi * math.e * app_settings.VARIANCE_FLOOR)


def count_table_log_likelihood(dag, frame) -> float:
    """ 이산 변수 결합 빈도표로 직접 계산한 로그우도 """
    total = 0.0
    for node in dag.node_ids:
        child = dag.name_of(node)
        parents = [dag.name_of(p) for p in dag.parents(node)]
        if parents:
            joint = frame.groupby(parents + [child]).size()
            for key, count in joint.items():
                key = key if isinstance(key, tuple) else (key,)
                mask = np.ones(len(frame), dtype=bool)
                for name, value in zip(parents, key[:-1]):
                    mask &= frame[name].to_numpy() == value
                total += count * math.log(count / mask.sum())
        else:
            for count in frame[child].value_counts():
                total += count * math.log(count / len(frame))
    return total


@st.composite
def binary_problems(draw):
    n = draw(st.integers(min_value=1, max_value=5))
    pairs = list(combinations(range(n), 2))
    present = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    dag = build_dag(n, [p for p, keep in zip(pairs, present) if keep])
    rng = np.random.default_rng(seed)
    columns = {dag.name_of(i): rng.integers(0, 2, size=200) for i in dag.node_ids}
    return dag, dataset(columns, None, None)


@settings(max_examples=50, deadline=None)
@given(binary_problems())
def test_log_likelihood_matches_count_tables(problem):
    dag, data = problem
    fitness = container.fitness_service()
    assert fitness.log_likelihood(dag, data) == pytest.approx(count_table_log_likelihood(dag, data.frame), abs=1e-9)


def test_balanced_binary_entropy_is_ln2(fitness_service):
    data = dataset({"A": [0, 1] * 50}, None, None)
    assert fitness_service.conditional_entropy(data, "A") == pytest.approx(math.log(2), abs=1e-12)


def test_binary_child_equal_to_parent_has_zero_entropy(fitness_service):
    values = [0, 1, 1, 0, 1, 0, 0, 1]
    data = dataset({"A": values, "B": values}, None, None)
    assert fitness_service.conditional_entropy(data, "B", ["A"]) == pytest.approx(0.0, abs=1e-12)


def test_deterministic_continuous_child_hits_variance_floor(fitness_service):
    x = np.random.default_rng(0).normal(size=50)
    data = dataset({"P": x, "C": 2.0 * x}, None, None)
    assert fitness_service.conditional_entropy(data, "C", ["P"]) == pytest.approx(FLOOR_ENTROPY, abs=1e-6)


def test_discrete_child_with_continuous_parent_uses_bins(fitness_service):
    x = np.arange(100, dtype=float)
    child = (x >= 50).astype(int)
    data = dataset({"P": x, "C": child}, None, None)
    # 4개 등빈도 구간이면 child 가 구간에 의해 완전히 결정된다
    assert fitness_service.conditional_entropy(data, "C", ["P"]) == pytest.approx(0.0, abs=1e-12)


def test_conditional_entropy_sample_checks(fitness_service):
    with pytest.raises(EmptyDatasetException):
        fitness_service.conditional_entropy(dataset({"A": []}, None, None), "A")
    with pytest.raises(InsufficientSamplesException):
        fitness_service.conditional_entropy(dataset({"A": [0.1, 0.2], "B": [1.0, 2.0]}, None, None), "A", ["B"])


def test_edgeless_log_likelihood_of_balanced_columns(fitness_service):
    data = dataset({"X0": [0, 1] * 50, "X1": [0, 0, 1, 1] * 25}, None, None)
    expected = -100 * 2 * math.log(2)
    assert fitness_service.log_likelihood(build_dag(2, []), data) == pytest.approx(expected, abs=1e-9)


def test_single_node_log_likelihood_is_scaled_entropy(fitness_service):
    x = np.random.default_rng(2).normal(size=80)
    data = dataset({"X0": x}, None, None)
    expected = -80 * fitness_service.conditional_entropy(data, "X0")
    assert fitness_service.log_likelihood(build_dag(1, []), data) == pytest.approx(expected, abs=1e-12)


def test_log_likelihood_prefers_true_edge(fitness_service):
    rng = np.random.default_rng(5)
    a = rng.normal(size=1000)
    data = dataset({"X0": a, "X1": a + 0.1 * rng.normal(size=1000)}, None, None)
    assert fitness_service.log_likelihood(build_dag(2, [(0, 1)]), data) > fitness_service.log_likelihood(
        build_dag(2, []), data
    )


def test_uncorrelated_parent_leaves_entropy_unchanged(fitness_service):
    rng = np.random.default_rng(11)
    child = rng.normal(size=300)
    parent = rng.normal(size=300)
    centered = child - child.mean()
    parent = parent - parent.mean()
    parent = parent - (parent @ centered) / (centered @ centered) * centered
    data = dataset({"C": child, "P": parent}, None, None)
    assert fitness_service.conditional_entropy(data, "C", ["P"]) == pytest.approx(
        fitness_service.conditional_entropy(data, "C"), abs=1e-9
    )


def test_log_likelihood_requires_every_node_column(fitness_service):
    with pytest.raises(ColumnMismatchException):
        fitness_service.log_likelihood(build_dag(3, []), dataset({"X0": [0.0, 1.0, 2.0]}, None, None))


def test_bic_penalty(fitness_service):
    dag = build_dag(3, [(0, 1), (1, 2)])
    assert fitness_service.bic_penalty(1, dag) == 0.0
    assert fitness_service.bic_penalty(1024, dag) == pytest.approx(5 * 5)

    x = np.random.default_rng(8).normal(size=(64, 3))
    data = dataset({"X0": x[:, 0], "X1": x[:, 1], "X2": x[:, 2]}, None, None)
    assert fitness_service.bic_score(dag, data) == pytest.approx(
        -fitness_service.log_likelihood(dag, data) + fitness_service.bic_penalty(64, dag)
    )


def test_bic_prefers_edgeless_graph_on_independent_data(fitness_service):
    x = np.random.default_rng(12).normal(size=(5000, 2))
    data = dataset({"X0": x[:, 0], "X1": x[:, 1]}, None, None)
    assert fitness_service.bic_score(build_dag(2, []), data) < fitness_service.bic_score(build_dag(2, [(0, 1)]), data)


def target_covariates(n: int = 3, seed: int = 0):
    rng = np.random.default_rng(seed)
    return dataset({"X0": rng.normal(size=n), "X1": rng.normal(size=n)})


def test_augment_target_layout(fitness_service):
    target = target_covariates()
    model = function_model(lambda x, t: x[:, 0] + t, ["X0", "X1"])
    augmented = fitness_service.augment_target(model, target)

    assert len(augmented.frame) == 6
    assert augmented.source_size == 3
    assert augmented.frame["T"].tolist() == [0, 0, 0, 1, 1, 1]
    x0 = target.frame["X0"].to_numpy()
    np.testing.assert_allclose(augmented.frame["Y"].to_numpy(), np.concatenate([x0, x0 + 1]))
    np.testing.assert_array_equal(augmented.frame["X1"].to_numpy()[:3], augmented.frame["X1"].to_numpy()[3:])


def test_augment_target_with_constant_model(fitness_service):
    model = function_model(lambda x, t: np.full(len(x), 2.5), ["X0", "X1"])
    augmented = fitness_service.augment_target(model, target_covariates(n=5))
    assert set(augmented.frame["Y"]) == {2.5}


def test_augment_target_rejects_other_schema(fitness_service):
    model = function_model(lambda x, t: x[:, 0], ["X0", "X2"])
    with pytest.raises(SchemaMismatchException):
        fitness_service.augment_target(model, target_covariates())


# X0=0 → T=2, X1=1 → Y=3, T → Y
SCORING_DAG = build_dag(4, [(0, 2), (1, 3), (2, 3)], treatment=2, outcome=3)


def test_causal_risk_is_negative_log_likelihood_of_augmented_set(fitness_service, graph_service):
    mutilated = graph_service.mutilate(SCORING_DAG, 2)
    target = target_covariates(n=200, seed=3)
    model = function_model(lambda x, t: 1.5 * x[:, 1] + 2 * t + 0.3 * x[:, 0] ** 2, ["X0", "X1"])
    augmented = fitness_service.augment_target(model, target).as_dataset()
    assert fitness_service.causal_risk(model, target, mutilated) == pytest.approx(
        -fitness_service.log_likelihood(mutilated, augmented), abs=1e-12
    )
    assert fitness_service.causal_risk(model, target, mutilated, score="bic") == pytest.approx(
        fitness_service.bic_score(mutilated, augmented)
    )


def test_causal_risk_requires_mutilated_graph(fitness_service):
    model = function_model(lambda x, t: t, ["X0", "X1"])
    with pytest.raises(NotMutilatedException):
        fitness_service.causal_risk(model, target_covariates(n=20), SCORING_DAG)


def test_causal_risk_rejects_unknown_score(fitness_service, graph_service):
    model = function_model(lambda x, t: t, ["X0", "X1"])
    with pytest.raises(InvalidConfigException):
        fitness_service.causal_risk(model, target_covariates(n=20), graph_service.mutilate(SCORING_DAG, 2), score="aic")


def test_constant_prediction_has_finite_causal_risk(fitness_service, graph_service):
    model = function_model(lambda x, t: np.zeros(len(x)), ["X0", "X1"])
    risk = fitness_service.causal_risk(model, target_covariates(n=50), graph_service.mutilate(SCORING_DAG, 2))
    assert math.isfinite(risk)


def test_causal_risk_invariant_to_row_order(fitness_service, graph_service):
    mutilated = graph_service.mutilate(SCORING_DAG, 2)
    target = target_covariates(n=150, seed=6)
    shuffled = target.select_rows(np.random.default_rng(1).permutation(150))
    model = function_model(lambda x, t: np.sin(x[:, 0]) + x[:, 1] * t, ["X0", "X1"])
    assert fitness_service.causal_risk(model, shuffled, mutilated) == pytest.approx(
        fitness_service.causal_risk(model, target, mutilated), rel=1e-9
    )


def test_oracle_has_lower_causal_risk_than_corrupted_model(fitness_service, graph_service):
    mutilated = graph_service.mutilate(SCORING_DAG, 2)
    target = target_covariates(n=1000, seed=4)
    oracle = function_model(lambda x, t: 1.5 * x[:, 1] + 2 * t, ["X0", "X1"], "oracle")
    corrupted = function_model(lambda x, t: 1.5 * x[:, 1] + 2 * t + 0.5 * x[:, 0] * t, ["X0", "X1"], "corrupted")
    assert fitness_service.causal_risk(oracle, target, mutilated) < fitness_service.causal_risk(
        corrupted, target, mutilated
    )


@pytest.mark.slow
def test_oracle_beats_corrupted_causal_risk_over_many_seeds(fitness_service, graph_service, dgp_service, zoo_service):
    corrupted_spec = ModelSpecDto(family=ModelFamily.CORRUPTED_ORACLE, hyperparams={"strength": 1.0})
    wins = 0
    for seed in range(50):
        dag = dgp_service.random_dag(6, 10, seed)
        cfg = DgpConfigDto(n_nodes=6, n_source=500, n_target=1000, seed=seed)
        benchmark = dgp_service.generate_benchmark(dag, cfg, seed)
        target_x = benchmark.target.covariates()
        mutilated = graph_service.mutilate(dag, dag.treatment_id)
        oracle = zoo_service.fit_candidate(ModelSpecDto(family=ModelFamily.ORACLE), benchmark.source, seed, dag=dag)
        corrupted = zoo_service.fit_candidate(corrupted_spec, benchmark.source, seed, dag=dag)
        wins += fitness_service.causal_risk(oracle, target_x, mutilated) < fitness_service.causal_risk(
            corrupted, target_x, mutilated
        )
    assert wins >= 45
