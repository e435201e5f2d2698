import logging
import os
import tempfile
from functools import wraps
from pathlib import Path
from typing import List, Tuple

logger = logging.getLogger(__name__)


class OutputSession:
    """
    파일 출력용 작업 단위.
    stage() 로 받은 임시 경로에 기록하고, commit() 시 최종 경로로 원자적으로 교체한다.
    rollback() 은 기록 중이던 임시 파일을 모두 삭제한다.
    """

    def __init__(self):
        self._staged: List[Tuple[Path, Path]] = []

    def stage(self, path: str | os.PathLike) -> Path:
        """
        최종 경로에 대응하는 숨김 임시 파일을 만들어 반환한다.
        :param path: 커밋 후 파일이 위치할 최종 경로
        :return: 실제로 기록할 임시 파일 경로
        """
        final = Path(path)
        final.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(prefix=f".{final.name}.", suffix=".tmp", dir=final.parent)
        os.close(fd)
        tmp = Path(tmp_name)
        self._staged.append((tmp, final))
        return tmp

    @property
    def staged_paths(self) -> List[Path]:
        return [final for _, final in self._staged]

    def commit(self) -> None:
        for tmp, final in self._staged:
            os.replace(tmp, final)
        if self._staged:
            logger.debug("Committed output files", extra={"files": len(self._staged)})
        self._staged.clear()

    def rollback(self) -> None:
        for tmp, _ in self._staged:
            tmp.unlink(missing_ok=True)
        if self._staged:
            logger.warning("Rolled back staged output files", extra={"files": len(self._staged)})
        self._staged.clear()

    def close(self) -> None:
        # commit/rollback 이후 남은 임시 파일 정리
        self.rollback()


def Transactional(func):
    """
    Spring의 @Transactional과 유사한 동작을 수행하는 데코레이터 (파일 출력 버전).
    - 새로운 OutputSession 을 생성하고, 예외 발생 시 rollback 처리
    - 정상적으로 실행되면 commit 후 세션 종료
    - 호출자가 이미 session 을 넘긴 경우 그 세션에 참여하고 commit 은 호출자에게 맡긴다
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        if kwargs.get("session") is not None:
            return func(*args, **kwargs)

        from src.core.container import container  # 여기서 import하여 순환 참조 방지

        session: OutputSession = container.output_session()
        try:
            kwargs["session"] = session
            result = func(*args, **kwargs)
            session.commit()
            return result
        except Exception as e:
            session.rollback()
            raise e
        finally:
            session.close()

    return wrapper
