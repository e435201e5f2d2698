import json

import pytest

from src.domain.model_domain import ModelFamily
from src.dto.request.config.dgp_config_dto import DgpConfigDto
from src.dto.request.config.experiment_config_dto import ExperimentConfigDto
from src.dto.request.config.lambda_policy_dto import LambdaPolicyDto
from src.dto.request.config.validation_risk_dto import ValidationRiskDto
from src.dto.request.config.zoo_config_dto import ModelSpecDto, ZooConfigDto
from src.utils.seed_provider import SeedProvider


def small_experiment(**overrides) -> ExperimentConfigDto:
    values = dict(
        dgp=DgpConfigDto(n_nodes=5, n_source=300, n_target=200, perturb_mean=3.0),
        zoo=ZooConfigDto(
            models=[
                ModelSpecDto(family=ModelFamily.T_RIDGE, hyperparams={"alpha": 1.0}),
                ModelSpecDto(family=ModelFamily.T_KNN, hyperparams={"k": 5}),
                ModelSpecDto(family=ModelFamily.ORACLE),
                ModelSpecDto(family=ModelFamily.CORRUPTED_ORACLE, hyperparams={"strength": 1.0}),
            ]
        ),
        methods=[ValidationRiskDto(loss="mse", uda="none")],
        n_dags=2,
        seed=11,
    )
    values.update(overrides)
    return ExperimentConfigDto(**values)


def pehe10_table(report):
    return [(r.dag_index, res.method, res.pehe10, res.inversion) for r in report.records for res in r.results]


def test_prepare_unit(experiment_service):
    unit = experiment_service.prepare_unit(small_experiment(), dag_index=0, seed=5)
    assert len(unit.dag.nodes) == 5
    assert unit.train.n_rows == 240 and unit.val.n_rows == 60
    assert unit.target_x.n_rows == 200
    assert not unit.target_x.has_outcome
    assert set(unit.true_pehe) == set(unit.model_ids)
    assert unit.true_pehe["oracle"] == pytest.approx(0.0, abs=1e-12)


def test_run_experiment_reports_every_method(experiment_service):
    report = experiment_service.run_experiment(small_experiment())
    assert report.n_dags == 2
    assert [r.dag_index for r in report.records] == [0, 1]
    assert [s.method for s in report.summaries] == ["MSE", "ICMS(MSE)"]
    assert [(c.baseline, c.icms) for c in report.comparisons] == [("MSE", "ICMS(MSE)")]
    for record in report.records:
        assert record.lam == 1.0
        for result in record.results:
            assert 0.0 <= result.pehe10 <= 1.0
            assert 0.0 <= result.inversion <= 1.0
            assert sorted(r.rank for r in result.reports) == [1, 2, 3, 4]
            assert all(r.true_pehe is not None for r in result.reports)


def test_run_experiment_is_deterministic(experiment_service):
    cfg = small_experiment()
    assert pehe10_table(experiment_service.run_experiment(cfg)) == pehe10_table(experiment_service.run_experiment(cfg))


def test_run_experiment_is_independent_of_parallelism(experiment_service):
    sequential = experiment_service.run_experiment(small_experiment(n_jobs=1))
    threaded = experiment_service.run_experiment(small_experiment(n_jobs=2))
    assert pehe10_table(sequential) == pehe10_table(threaded)


def test_zero_lambda_reproduces_baseline(experiment_service):
    report = experiment_service.run_experiment(small_experiment(lambda_policy=LambdaPolicyDto(kind="fixed", value=0.0)))
    for record in report.records:
        base, icms = record.result("MSE"), record.result("ICMS(MSE)")
        assert [r.model_id for r in icms.reports] == [r.model_id for r in base.reports]
        assert icms.pehe10 == base.pehe10
    comparison = report.comparisons[0]
    assert comparison.mean_diff_pehe10 == 0.0
    assert comparison.mean_diff_inversion == 0.0


def test_edge_ratio_lambda_on_true_graph_is_one(experiment_service):
    report = experiment_service.run_experiment(small_experiment(lambda_policy=LambdaPolicyDto(kind="edge_ratio"), n_dags=1))
    assert report.records[0].lam == 1.0


def test_report_nci(experiment_service):
    report = experiment_service.run_experiment(small_experiment(n_dags=1, report_nci=True))
    reports = report.records[0].result("MSE").reports
    assert all(isinstance(r.nci, int) and r.nci >= 0 for r in reports)


def test_run_experiment_flushes_each_dag(experiment_service, tmp_path):
    report = experiment_service.run_experiment(small_experiment(), out_dir=tmp_path)
    for index in (0, 1):
        saved = json.loads((tmp_path / "dags" / f"dag_{index:04d}.json").read_text())
        assert saved["dag_index"] == index
        assert saved["lambda"] == 1.0

    path = experiment_service.save_experiment(report, tmp_path)
    saved = json.loads(path.read_text())
    assert saved["n_dags"] == 2
    assert len(saved["records"]) == 2
    assert not list(tmp_path.glob(".*.tmp"))


def test_sweep_lambda_zero_matches_baseline(experiment_service):
    report = experiment_service.sweep_lambda(small_experiment(), lambdas=[0.0, 2.0])
    zero = [r for r in report.records if r.parameter == 0.0 and r.series == "ICMS(MSE)"]
    assert len(zero) == 2
    assert all(r.delta_pehe10 == 0.0 for r in zero)
    assert {(p.parameter, p.series) for p in report.curve} == {
        (0.0, "MSE"), (2.0, "MSE"), (0.0, "ICMS(MSE)"), (2.0, "ICMS(MSE)")
    }


def test_sweep_misspec(experiment_service):
    report = experiment_service.sweep_misspec(small_experiment(), fractions=[0.0, 0.5], mode="reverse")
    unchanged = [r for r in report.records if r.parameter == 0.0]
    assert all(r.delta_pehe10 == 0.0 and r.graph_distance == 0 for r in unchanged)
    mutated = [r for r in report.records if r.parameter == 0.5]
    assert all(r.graph_distance > 0 for r in mutated)
    assert report.kind == "misspec"


def test_sweep_subgraph(experiment_service, tmp_path):
    cfg = small_experiment()
    report = experiment_service.sweep_subgraph(cfg, kept_fractions=[0.5, 1.0], out_dir=tmp_path)
    full = [r for r in report.records if r.parameter == 1.0 and r.series == "ICMS(MSE)"]
    assert all(r.graph_distance == 0 for r in full)
    assert (tmp_path / "subgraph_sweep" / "dag_0001.json").is_file()

    report_path, curve_path = experiment_service.save_sweep(report, tmp_path)
    assert json.loads(report_path.read_text())["kind"] == "subgraph"
    header = curve_path.read_text().splitlines()[0]
    assert header == "parameter,series,mean_pehe10,se_pehe10,mean_delta_pehe10,mean_graph_distance"


def test_default_zoo_has_spread_of_true_pehe(experiment_service):
    unit = experiment_service.prepare_unit(small_experiment(zoo=ZooConfigDto()), dag_index=0, seed=5)
    assert len(unit.models) == 24
    values = list(unit.true_pehe.values())
    assert max(values) > min(values)


def test_sweep_misspec_add_mode_on_dense_graphs(experiment_service):
    # n=5, 간선 상한 10: 빈 노드 쌍이 ⌊1.0·|E|⌋ 보다 적을 수 있다
    cfg = small_experiment(dgp=DgpConfigDto(n_nodes=5, max_edges=10, n_source=300, n_target=200, perturb_mean=3.0))
    report = experiment_service.sweep_misspec(cfg, fractions=[0.0, 1.0], mode="add")
    assert len(report.records) == 4

    seeds = SeedProvider.streams(cfg.seed, cfg.n_dags)
    for record in report.records:
        n_edges = len(experiment_service.prepare_unit(cfg, record.dag_index, seeds[record.dag_index]).dag.edges)
        expected = 0 if record.parameter == 0.0 else min(n_edges, 10 - n_edges)
        assert record.graph_distance == expected


def test_partial_outcome_knowledge_scores_every_covariate_as_parent(experiment_service):
    cfg = small_experiment()
    unit = experiment_service.prepare_unit(cfg, dag_index=0, seed=5)
    outcome = unit.dag.outcome_id
    partial = experiment_service.subgraph_scoring_graph(unit.dag, 0.5, unit.subgraph_seed)
    assert set(partial.parents(outcome)) == set(unit.dag.node_ids) - {outcome}
    assert experiment_service.subgraph_scoring_graph(unit.dag, 1.0, unit.subgraph_seed) == unit.dag

    report = experiment_service.sweep_subgraph(cfg, kept_fractions=[0.25, 0.5])
    icms = {(r.dag_index, r.parameter): r.pehe10 for r in report.records if r.series == "ICMS(MSE)"}
    assert icms[(0, 0.25)] == icms[(0, 0.5)]
    assert icms[(1, 0.25)] == icms[(1, 0.5)]
