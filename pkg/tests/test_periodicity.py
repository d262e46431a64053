import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from modules.errors import PeriodError, PlaneCongError
from modules.modseries import coeff_at
from modules.partitions import ColoredPartMultiset, f_series, restricted_series, s_k_multiset
from modules.periodicity import (
    PeriodCertificate,
    b_of_set,
    detect_min_period,
    ell_valuation,
    f_ell_period,
    f_k_period,
    kwong_period,
    m_of_set,
)

F_ELL_PERIODS = {(2, 1): 1, (2, 2): 2, (3, 1): 6, (3, 2): 18, (5, 1): 300, (7, 1): 2940}


def test_ell_valuation():
    assert ell_valuation(3, 18) == (2, 2)
    assert ell_valuation(2, 7) == (0, 7)
    with pytest.raises(PlaneCongError):
        ell_valuation(3, 0)


def test_m_and_b():
    S3 = s_k_multiset(3)
    assert m_of_set(3, S3) == 2
    assert b_of_set(3, S3) == 1
    S5 = s_k_multiset(5)
    assert m_of_set(5, S5) == 12
    assert b_of_set(5, S5) == 2
    # colors do not change m, they do change b
    assert m_of_set(2, ColoredPartMultiset.parse("6:3")) == 3
    assert b_of_set(2, ColoredPartMultiset.parse("6:3")) == 3
    with pytest.raises(PlaneCongError):
        m_of_set(3, ColoredPartMultiset())


@pytest.mark.parametrize("ell_n, period", sorted(F_ELL_PERIODS.items()))
def test_f_ell_period_matches_closed_form(ell_n, period):
    ell, N = ell_n
    assert f_ell_period(ell, N) == period
    assert kwong_period(ell, N, s_k_multiset(ell)).period == period


@pytest.mark.parametrize("ell, N", [(2, 1), (3, 1), (3, 2), (5, 1)])
def test_f_ell_period_is_minimal(ell, N):
    period = f_ell_period(ell, N)
    series = restricted_series(s_k_multiset(ell), ell**N, 4 * period)
    assert detect_min_period(series, period) == period


def test_single_copy_closed_form_is_a_period_but_not_minimal():
    cert = kwong_period(2, 2, s_k_multiset(2))
    assert cert.period == 2
    assert not cert.closed_form_is_minimal
    series = restricted_series(s_k_multiset(2), 4, 8)
    assert detect_min_period(series, cert.period) == 1

    cert = kwong_period(3, 2, ColoredPartMultiset.parse("2"))
    assert cert.period == 6
    assert detect_min_period(restricted_series(cert.multiset, 9, 24), 6) == 2


def test_f_k_period():
    cert = f_k_period(3, 1, 4)
    assert (cert.m_of_s, cert.b_of_s, cert.period) == (2, 3, 54)
    with pytest.raises(PlaneCongError):
        f_k_period(3, 1, 1)


def test_kwong_period_rejects_bad_input():
    with pytest.raises(PlaneCongError):
        kwong_period(4, 1, s_k_multiset(3))
    with pytest.raises(PlaneCongError):
        kwong_period(3, 0, s_k_multiset(3))
    with pytest.raises(PlaneCongError):
        f_ell_period(9, 1)


def test_detect_min_period_errors():
    series = restricted_series(s_k_multiset(3), 3, 20)
    with pytest.raises(PeriodError):
        detect_min_period(series, 11)
    with pytest.raises(PeriodError, match="not a period"):
        detect_min_period(series, 4)
    with pytest.raises(PeriodError):
        detect_min_period(series, 0)


def test_certificate_dict_round_trip():
    cert = kwong_period(7, 1, s_k_multiset(7))
    assert PeriodCertificate.from_dict(cert.to_dict()) == cert
    assert cert.to_dict()["parts"][0] == [1, 1]


multisets = st.lists(
    st.tuples(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=2)),
    min_size=1,
    max_size=3,
).map(lambda entries: ColoredPartMultiset(tuple(entries)))


@settings(max_examples=40, deadline=None)
@given(S=multisets, ell=st.sampled_from([2, 3]), N=st.sampled_from([1, 2]))
def test_closed_form_period_is_minimal(S, ell, N):
    assume(S.copies <= 4)
    # with a single copy the coefficients are 0/1 and the period stops growing with N
    assume(N == 1 or S.copies >= 2)
    cert = kwong_period(ell, N, S)
    series = restricted_series(S, ell**N, 4 * cert.period)
    assert detect_min_period(series, cert.period) == cert.period


@pytest.mark.parametrize("ell, N, k", [(2, 2, 2), (2, 3, 4), (3, 1, 3), (3, 2, 3), (3, 1, 4), (5, 1, 5)])
def test_f_series_repeats_with_certified_period(ell, N, k):
    period = f_k_period(ell, N, k).period
    series = f_series(k, ell**N, 3 * period)
    for n in range(series.order):
        assert coeff_at(series, n) == coeff_at(series, n % period)
