import pytest

from rainbowgirth.bounds import bs_bound, calibrate_A, expected_excess, log_ratio, nonstarex_bound
from rainbowgirth.container import ClassCensus
from rainbowgirth.errors import ParameterError


def test_bs_bound_values():
    assert bs_bound(4, 2) == pytest.approx(10)
    assert bs_bound(1000, 100) == pytest.approx(98.09, abs=0.01)


@pytest.mark.parametrize("n, k", [(3, 2), (10, 1.5)])
def test_bs_bound_domain(n, k):
    with pytest.raises(ParameterError):
        bs_bound(n, k)


def test_bs_bound_decreases_with_excess():
    values = [bs_bound(1000, 2**i) for i in range(1, 10)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_log_ratio_decreases():
    assert log_ratio(3) > log_ratio(4) > log_ratio(5)


@pytest.mark.parametrize("n_max, expected", [(10**6, 65536), (10**5, 65536), (1000, 1001)])
def test_calibrate_A(n_max, expected):
    assert calibrate_A(n_max) == expected


def test_calibrate_A_needs_room():
    with pytest.raises(ParameterError):
        calibrate_A(10)


def test_expected_excess():
    assert expected_excess(ClassCensus(matching2=10), 10, 0.5) == pytest.approx(-0.625)
    assert expected_excess(ClassCensus(rest=4), 4, 1.0) == pytest.approx(0)
    assert expected_excess(ClassCensus(star2=8), 4, 0.5) == pytest.approx(8 * 0.375 - 2)
    # the (1, 0) schedule on 400 matching classes
    assert expected_excess(ClassCensus(matching2=400), 400, 0.975) >= 1


def test_expected_excess_rejects_bad_input():
    with pytest.raises(ParameterError):
        expected_excess(ClassCensus(matching2=-1), 10, 0.5)
    with pytest.raises(ParameterError):
        expected_excess(ClassCensus(matching2=1), 10, 1.5)


def test_nonstarex_bound():
    assert nonstarex_bound(10**4, 0.25, 1000) == pytest.approx(199.3157, rel=1e-5)
    assert nonstarex_bound(100, 0.5, 10) == 0.0
