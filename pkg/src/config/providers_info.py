"""
BaseRepository, BaseService 는 직접 인스턴스화해서 사용하지 않고,
구체적인 Repository/Service 가 상속받아 사용하는 기본 클래스이기 때문에,
providers_info에 따로 등록하지 않는다.
Providers_info에는 실제 DI 컨테이너를 통해 인스턴스를 생성할 구체적인 클래스들만 등록한다.

scope:
- "factory"   : 주입할 때마다 새 인스턴스 (기본값)
- "singleton" : 프로세스 전체에서 하나의 인스턴스 (등록된 손실 함수처럼 상태를 가지는 서비스)
"""

PROVIDERS_INFO = {
    "graph_repository": {
        "module": "src.repository.graph.graph_repository",     # 모듈 경로
        "class": "GraphRepository",                            # 클래스명
    },
    "dataset_repository": {
        "module": "src.repository.dataset.dataset_repository",
        "class": "DatasetRepository",
    },
    "report_repository": {
        "module": "src.repository.report.report_repository",
        "class": "ReportRepository",
    },
    "config_repository": {
        "module": "src.repository.config.config_repository",
        "class": "ConfigRepository",
    },
    "graph_service": {
        "module": "src.service.graph.graph_service",
        "class": "GraphService",
    },
    "independence_service": {
        "module": "src.service.independence.independence_service",
        "class": "IndependenceService",
        "dependencies": {
            "graph_service": "graph_service",                  # 의존성: 자동 등록된 graph_service provider 참조
        },
    },
    "zoo_service": {
        "module": "src.service.zoo.zoo_service",
        "class": "ZooService",
        "dependencies": {
            "graph_service": "graph_service",
        },
    },
    "fitness_service": {
        "module": "src.service.fitness.fitness_service",
        "class": "FitnessService",
        "dependencies": {
            "graph_service": "graph_service",
            "zoo_service": "zoo_service",
        },
    },
    "risk_service": {
        "module": "src.service.risk.risk_service",
        "class": "RiskService",
        "scope": "singleton",
        "dependencies": {
            "zoo_service": "zoo_service",
        },
    },
    "selection_service": {
        "module": "src.service.selection.selection_service",
        "class": "SelectionService",
        "dependencies": {
            "graph_service": "graph_service",
            "fitness_service": "fitness_service",
            "risk_service": "risk_service",
            "independence_service": "independence_service",
        },
    },
    "dgp_service": {
        "module": "src.service.dgp.dgp_service",
        "class": "DgpService",
        "dependencies": {
            "graph_service": "graph_service",
        },
    },
    "metrics_service": {
        "module": "src.service.harness.metrics_service",
        "class": "MetricsService",
        "dependencies": {
            "selection_service": "selection_service",
        },
    },
    "experiment_service": {
        "module": "src.service.harness.experiment_service",
        "class": "ExperimentService",
        "dependencies": {
            "graph_service": "graph_service",
            "dgp_service": "dgp_service",
            "zoo_service": "zoo_service",
            "fitness_service": "fitness_service",
            "risk_service": "risk_service",
            "selection_service": "selection_service",
            "independence_service": "independence_service",
            "metrics_service": "metrics_service",
            "report_repository": "report_repository",
        },
    },
}
