import numpy as np

from src.core.transaction import Transactional


class BaseService:
    """
    모든 서비스가 상속받는 기본 서비스 클래스.
    트랜잭션 데코레이터와 시드 기반 난수 생성기를 활용할 수 있음.
    """

    @staticmethod
    @Transactional
    def execute_transaction(func, *args, **kwargs):
        """
        개별적인 트랜잭션 실행을 위해 서비스에서 호출할 수 있는 메서드.
        func 는 session 키워드 인자를 받아 같은 세션에 기록해야 한다.
        """
        return func(*args, **kwargs)

    @staticmethod
    def rng(seed: int | None) -> np.random.Generator:
        """ 같은 시드면 같은 난수열 """
        return np.random.default_rng(seed)
