from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.domain.graph_domain import NodeKind
from src.exception.data_exceptions import (
    ColumnMismatchException,
    LengthMismatchException,
    MissingOutcomeException,
    NonNumericColumnException,
    SchemaMismatchException,
)


def infer_kind(series: pd.Series) -> NodeKind:
    if pd.api.types.is_bool_dtype(series):
        return NodeKind.BINARY
    if not pd.api.types.is_numeric_dtype(series):
        return NodeKind.CATEGORICAL
    values = pd.unique(series.dropna())
    if len(values) > 0 and set(np.asarray(values, dtype=float).tolist()) <= {0.0, 1.0}:
        return NodeKind.BINARY
    return NodeKind.CONTINUOUS


@dataclass(eq=False)
class Dataset:
    """
    컬럼 타입이 지정된 표 형태 데이터.
    타깃 도메인 데이터는 outcome 컬럼이 없고, 공변량 전용 데이터는 treatment 컬럼도 없을 수 있다.
    """

    frame: pd.DataFrame
    kinds: Dict[str, NodeKind]
    treatment: Optional[str] = "T"
    outcome: Optional[str] = "Y"

    def __post_init__(self):
        missing = [c for c in self.frame.columns if c not in self.kinds]
        if missing:
            raise SchemaMismatchException(f"No column kind declared for: {missing}")
        self.kinds = {str(c): NodeKind(self.kinds[c]) for c in self.frame.columns}

    @classmethod
    def from_frame(
        cls,
        frame: pd.DataFrame,
        treatment: Optional[str] = "T",
        outcome: Optional[str] = "Y",
        kinds: Optional[Dict[str, NodeKind]] = None,
    ) -> "Dataset":
        declared = dict(kinds or {})
        resolved = {c: declared.get(c, infer_kind(frame[c])) for c in frame.columns}
        return cls(frame=frame, kinds=resolved, treatment=treatment, outcome=outcome)

    @property
    def n_rows(self) -> int:
        return len(self.frame)

    @property
    def columns(self) -> List[str]:
        return [str(c) for c in self.frame.columns]

    @property
    def has_treatment(self) -> bool:
        return self.treatment is not None and self.treatment in self.frame.columns

    @property
    def has_outcome(self) -> bool:
        return self.outcome is not None and self.outcome in self.frame.columns

    @property
    def covariate_names(self) -> List[str]:
        reserved = {self.treatment, self.outcome}
        return [c for c in self.columns if c not in reserved]

    def kind_of(self, column: str) -> NodeKind:
        if column not in self.kinds:
            raise ColumnMismatchException({column})
        return self.kinds[column]

    def require_columns(self, columns: Iterable[str]) -> None:
        missing = set(columns) - set(self.columns)
        if missing:
            raise ColumnMismatchException(missing)

    def numeric_matrix(self, columns: Sequence[str]) -> np.ndarray:
        """
        지정한 컬럼을 float 행렬로 반환한다. binary 컬럼은 0/1 로 취급한다.
        :raises ColumnMismatchException: 존재하지 않는 컬럼
        :raises NonNumericColumnException: categorical 이거나 숫자형이 아닌 컬럼
        """
        columns = list(columns)
        self.require_columns(columns)
        for c in columns:
            if self.kinds[c] is NodeKind.CATEGORICAL or not pd.api.types.is_numeric_dtype(self.frame[c]):
                raise NonNumericColumnException(c)
        return self.frame[columns].to_numpy(dtype=float).reshape(self.n_rows, len(columns))

    def covariate_matrix(self, feature_names: Sequence[str]) -> np.ndarray:
        if list(feature_names) != self.covariate_names:
            raise SchemaMismatchException(
                f"Expected covariates {list(feature_names)}, got {self.covariate_names}"
            )
        return self.numeric_matrix(feature_names)

    def treatment_values(self) -> np.ndarray:
        if not self.has_treatment:
            raise MissingOutcomeException("Dataset has no treatment column")
        return self.frame[self.treatment].to_numpy(dtype=float)

    def outcome_values(self) -> np.ndarray:
        if not self.has_treatment or not self.has_outcome:
            raise MissingOutcomeException()
        return self.frame[self.outcome].to_numpy(dtype=float)

    def covariates(self) -> "Dataset":
        """ treatment/outcome 컬럼을 제외한 공변량 전용 데이터 """
        names = self.covariate_names
        return Dataset(
            frame=self.frame[names].copy(),
            kinds={c: self.kinds[c] for c in names},
            treatment=self.treatment,
            outcome=self.outcome,
        )

    def select_rows(self, indices: Sequence[int] | np.ndarray) -> "Dataset":
        return Dataset(
            frame=self.frame.iloc[np.asarray(indices)].reset_index(drop=True),
            kinds=dict(self.kinds),
            treatment=self.treatment,
            outcome=self.outcome,
        )


@dataclass(eq=False)
class PotentialOutcomes:
    """ 평가 전용 실제 잠재 결과 (y(0), y(1)) """

    y0: np.ndarray
    y1: np.ndarray

    def __post_init__(self):
        self.y0 = np.asarray(self.y0, dtype=float)
        self.y1 = np.asarray(self.y1, dtype=float)
        if self.y0.shape != self.y1.shape:
            raise LengthMismatchException(len(self.y0), len(self.y1))

    @property
    def cate(self) -> np.ndarray:
        return self.y1 - self.y0

    def __len__(self) -> int:
        return len(self.y0)


@dataclass(eq=False)
class AugmentedTargetSet:
    """
    타깃 공변량을 t=0, t=1 로 복제하고 모델 예측 결과를 붙인 데이터.
    앞쪽 source_size 개 행이 t=0, 뒤쪽 source_size 개 행이 t=1 이며 같은 위치의 공변량은 동일하다.
    """

    frame: pd.DataFrame
    kinds: Dict[str, NodeKind]
    treatment: str
    outcome: str
    source_size: int

    def __post_init__(self):
        if len(self.frame) != 2 * self.source_size:
            raise LengthMismatchException(len(self.frame), 2 * self.source_size)
        t = self.frame[self.treatment].to_numpy()
        if int((t == 0).sum()) != self.source_size or int((t == 1).sum()) != self.source_size:
            raise SchemaMismatchException("Each treatment value must appear exactly source_size times")

    def as_dataset(self) -> Dataset:
        return Dataset(frame=self.frame, kinds=dict(self.kinds), treatment=self.treatment, outcome=self.outcome)

    def arm(self, t: int) -> Dataset:
        """ treatment == t 인 행만 모은 데이터 (공변량 중복 없이 source_size 행) """
        rows = self.frame[self.frame[self.treatment] == t].reset_index(drop=True)
        return Dataset(frame=rows, kinds=dict(self.kinds), treatment=self.treatment, outcome=self.outcome)


@dataclass(eq=False)
class SyntheticBenchmark:
    """ 한 DAG 에서 생성한 소스/타깃 데이터와 평가 전용 잠재 결과 """

    source: Dataset
    target: Dataset
    potential_outcomes: PotentialOutcomes
    perturb_mean: float
    perturb_nodes: List[int]
