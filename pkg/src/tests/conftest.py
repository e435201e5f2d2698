import pytest

from src.core.container import container


@pytest.fixture
def graph_service():
    return container.graph_service()


@pytest.fixture
def independence_service():
    return container.independence_service()


@pytest.fixture
def fitness_service():
    return container.fitness_service()


@pytest.fixture
def zoo_service():
    return container.zoo_service()


@pytest.fixture
def risk_service():
    return container.risk_service()


@pytest.fixture
def selection_service():
    return container.selection_service()


@pytest.fixture
def dgp_service():
    return container.dgp_service()


@pytest.fixture
def metrics_service():
    return container.metrics_service()


@pytest.fixture
def experiment_service():
    return container.experiment_service()


@pytest.fixture
def graph_repository():
    return container.graph_repository()


@pytest.fixture
def dataset_repository():
    return container.dataset_repository()


@pytest.fixture
def report_repository():
    return container.report_repository()
