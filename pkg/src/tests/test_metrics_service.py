from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from src.domain.report_domain import ScoreReport
from src.exception.data_exceptions import EmptyInputException, LengthMismatchException
from src.exception.model_exceptions import TooFewModelsException


def ranked(ids):
    return [
        ScoreReport(model_id=m, v_r_raw=0.0, c_r_raw=0.0, v_r_norm=0.0, c_r_norm=0.0, lam=0.0, icms=float(i), rank=i + 1)
        for i, m in enumerate(ids)
    ]


def test_pehe(metrics_service):
    assert metrics_service.pehe([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert metrics_service.pehe([0.0, 0.0], [1.0, 3.0]) == pytest.approx(5.0)
    with pytest.raises(LengthMismatchException):
        metrics_service.pehe([1.0], [1.0, 2.0])
    with pytest.raises(EmptyInputException):
        metrics_service.pehe([], [])


@pytest.mark.parametrize("n, k", [(1, 1), (5, 1), (10, 1), (19, 1), (25, 2), (30, 3)])
def test_top_decile_size(metrics_service, n, k):
    assert metrics_service.top_decile_size(n) == k


def test_pehe_top_decile(metrics_service):
    ids = [f"m{i}" for i in range(20)]
    true_pehe = {m: float(i) for i, m in enumerate(ids)}
    assert metrics_service.pehe_top_decile(ranked(ids), true_pehe, normalize=False) == pytest.approx(0.5)
    assert metrics_service.pehe_top_decile(ranked(ids), true_pehe) == pytest.approx(0.5 / 19)
    worst_first = list(reversed(ids))
    assert metrics_service.pehe_top_decile(ranked(worst_first), true_pehe) == pytest.approx((1.0 + 18 / 19) / 2)


def test_inversion_examples(metrics_service):
    true_pehe = {"a": 1.0, "b": 2.0, "c": 3.0}
    assert metrics_service.inversion_count_normalized(ranked(["a", "b", "c"]), true_pehe) == 0.0
    assert metrics_service.inversion_count_normalized(ranked(["c", "b", "a"]), true_pehe) == 1.0
    assert metrics_service.inversion_count_normalized(ranked(["b", "a", "c"]), true_pehe) == pytest.approx(1 / 3)


def test_inversion_ignores_true_ties(metrics_service):
    true_pehe = {"a": 1.0, "b": 1.0}
    assert metrics_service.inversion_count_normalized(ranked(["b", "a"]), true_pehe) == 0.0


def test_inversion_needs_two_models(metrics_service):
    with pytest.raises(TooFewModelsException):
        metrics_service.inversion_count_normalized(ranked(["a"]), {"a": 1.0})


@given(st.lists(st.floats(min_value=0, max_value=10, allow_nan=False), min_size=2, max_size=6))
def test_inversion_matches_permutation_count(values):
    from src.core.container import container

    metrics = container.metrics_service()
    ids = [f"m{i}" for i in range(len(values))]
    true_pehe = dict(zip(ids, values))
    for order in list(permutations(ids))[:24]:
        bad = sum(
            1
            for i in range(len(order))
            for j in range(len(order))
            if i < j and true_pehe[order[i]] > true_pehe[order[j]]
        )
        expected = bad / (len(order) * (len(order) - 1) / 2)
        result = metrics.inversion_count_normalized(ranked(order), true_pehe)
        assert result == pytest.approx(expected)
        assert 0.0 <= result <= 1.0


def test_mean_and_se(metrics_service):
    assert metrics_service.mean_and_se([2.0]) == (2.0, 0.0)
    mean, se = metrics_service.mean_and_se([1.0, 2.0, 3.0])
    assert mean == pytest.approx(2.0)
    assert se == pytest.approx(1.0 / 3**0.5)
    with pytest.raises(EmptyInputException):
        metrics_service.mean_and_se([])


def test_paired_difference(metrics_service):
    mean, se = metrics_service.paired_difference([1.0, 2.0, 3.0], [0.0, 1.0, 2.0])
    assert mean == pytest.approx(1.0)
    assert se == pytest.approx(0.0)
    with pytest.raises(LengthMismatchException):
        metrics_service.paired_difference([1.0], [1.0, 2.0])


def test_spearman(metrics_service):
    assert metrics_service.spearman([1, 2, 3], [10, 20, 30]) == pytest.approx(1.0)
    assert metrics_service.spearman([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)
    assert metrics_service.spearman([1, 1, 1], [1, 2, 3]) is None
    assert metrics_service.spearman([1], [1]) is None
