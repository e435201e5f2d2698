from typing import List

import numpy as np


class SeedProvider:
    """
    난수 시드 분할 관련 기능을 제공하는 유틸리티 클래스.
    (실험, DAG, 데이터셋) 단위마다 독립된 스트림을 배정하여 병렬 스케줄과 무관하게 같은 결과를 보장한다.
    """

    @staticmethod
    def sequence(seed: int) -> np.random.SeedSequence:
        """ 마스터 시드로부터 SeedSequence 생성 """
        return np.random.SeedSequence(seed)

    @staticmethod
    def spawn(seed: int | np.random.SeedSequence, count: int) -> List[np.random.SeedSequence]:
        """ 독립된 하위 스트림 count 개를 생성 """
        parent = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
        return parent.spawn(count)

    @staticmethod
    def to_int(sequence: np.random.SeedSequence) -> int:
        """ 서비스 API 에 넘길 64비트 정수 시드로 변환 """
        return int(sequence.generate_state(1, dtype=np.uint64)[0])

    @staticmethod
    def streams(seed: int, count: int) -> List[int]:
        """ spawn + to_int 단축 함수 """
        return [SeedProvider.to_int(child) for child in SeedProvider.spawn(seed, count)]
