from pathlib import Path

from src.core.transaction import OutputSession, Transactional
from src.domain.graph_domain import CausalDag
from src.dto.response.graph.graph_dto import GraphDto
from src.mapper.graph_mapper import domain_to_dto, dto_to_domain
from src.repository.base_repository import BaseRepository


class GraphRepository(BaseRepository[GraphDto]):
    """
    Graph JSON 파일 접근을 담당하는 리포지토리 클래스.
    """

    def __init__(self):
        super().__init__(GraphDto)

    def load(self, path: str | Path) -> CausalDag:
        """
        :param path: Graph JSON 경로
        :return: CausalDag 도메인 객체
        """
        return dto_to_domain(self.read_model(path))

    @Transactional
    def save(self, dag: CausalDag, path: str | Path, session: OutputSession = None) -> Path:
        """
        :param session: 트랜잭션 세션 (없으면 새로 생성해서 커밋)
        """
        return self.write_model(path, domain_to_dto(dag), session, exclude_none=True)
