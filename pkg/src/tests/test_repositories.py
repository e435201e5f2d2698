import numpy as np
import pandas as pd
import pytest

from src.domain.dataset_domain import Dataset, PotentialOutcomes
from src.domain.graph_domain import NodeKind
from src.exception.config_exceptions import ConfigFileNotFoundException
from src.exception.data_exceptions import (
    ColumnMismatchException,
    DataFileNotFoundException,
    SchemaMismatchException,
)
from src.tests.helpers import build_dag


def test_graph_save_and_load(graph_repository, tmp_path):
    dag = build_dag(4, [(0, 1), (1, 3), (2, 3)], treatment=1, outcome=3, weights={(0, 1): 0.25, (1, 3): -1.5})
    path = graph_repository.save(dag, tmp_path / "graph.json")
    loaded = graph_repository.load(path)
    assert loaded == dag
    assert loaded.weight(2, 3) is None
    assert '"weight"' in path.read_text()


def test_graph_load_missing_file(graph_repository, tmp_path):
    with pytest.raises(DataFileNotFoundException):
        graph_repository.load(tmp_path / "absent.json")


def test_dataset_save_and_load(dataset_repository, tmp_path):
    frame = pd.DataFrame({"X0": [0.1, -2.5, 3.0], "T": [0, 1, 1], "Y": [1.0, 2.0, 1e-17]})
    data = Dataset.from_frame(frame)
    po = PotentialOutcomes(y0=[1.0, 1.5, 0.0], y1=[2.0, 2.0, 1e-17])
    dataset_repository.save(data, tmp_path, "target", potential_outcomes=po)

    loaded = dataset_repository.load(tmp_path, "target")
    pd.testing.assert_frame_equal(loaded.frame, frame)
    assert loaded.kinds == {"X0": NodeKind.CONTINUOUS, "T": NodeKind.BINARY, "Y": NodeKind.CONTINUOUS}
    assert loaded.treatment == "T" and loaded.outcome == "Y"
    assert dataset_repository.has_potential_outcomes(tmp_path, "target")
    np.testing.assert_array_equal(dataset_repository.load_potential_outcomes(tmp_path, "target").cate, po.cate)


def test_dataset_without_potential_outcomes(dataset_repository, tmp_path):
    data = Dataset.from_frame(pd.DataFrame({"X0": [1.0, 2.0], "T": [0, 1], "Y": [0.5, 0.7]}))
    dataset_repository.save(data, tmp_path, "source")
    assert not dataset_repository.has_potential_outcomes(tmp_path, "source")


def test_dataset_sidecar_mismatch(dataset_repository, tmp_path):
    data = Dataset.from_frame(pd.DataFrame({"X0": [1.0, 2.0], "T": [0, 1], "Y": [0.5, 0.7]}))
    dataset_repository.save(data, tmp_path, "source")
    csv = tmp_path / "source.csv"

    pd.DataFrame({"X0": [1.0], "T": [0], "Y": [0.5], "X9": [1.0]}).to_csv(csv, index=False)
    with pytest.raises(SchemaMismatchException):
        dataset_repository.load(tmp_path, "source")

    pd.DataFrame({"X0": [1.0], "T": [0]}).to_csv(csv, index=False)
    with pytest.raises(ColumnMismatchException):
        dataset_repository.load(tmp_path, "source")


def test_config_defaults_and_missing_file(tmp_path):
    from src.core.container import container

    repository = container.config_repository()
    assert repository.load(None).n_dags == 20
    with pytest.raises(ConfigFileNotFoundException):
        repository.load(tmp_path / "absent.json")


def test_config_file_overrides(tmp_path):
    from src.core.container import container

    path = tmp_path / "config.json"
    path.write_text('{"n_dags": 3, "dgp": {"n_nodes": 6, "perturb_mean": 2.5}, "methods": [{"loss": "iptw", "uda": "dev"}]}')
    cfg = container.config_repository().load(path)
    assert cfg.n_dags == 3
    assert cfg.dgp.n_nodes == 6 and cfg.dgp.perturb_mean == 2.5
    assert [m.label for m in cfg.methods] == ["DEV(IPTW)"]
    assert len(cfg.zoo.models) == 24
