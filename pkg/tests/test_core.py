from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from streamcode import (
    ParameterError,
    SystemParams,
    achievable_rate,
    coding_window,
    offset_qr,
    y_vector,
)


@pytest.mark.parametrize("a, b, q, r", [(8, 3, 2, 2), (9, 3, 2, 3), (3, 3, 0, 3), (1, 5, 0, 1)])
def test_offset_qr_examples(a, b, q, r):
    qr = offset_qr(a, b)
    assert (qr.q, qr.r) == (q, r)


@given(st.integers(1, 10_000), st.integers(1, 10_000))
def test_offset_qr_reconstructs(a, b):
    qr = offset_qr(a, b)
    assert a == qr.q * b + qr.r
    assert qr.q >= 0 and 1 <= qr.r <= b


def test_offset_qr_matches_search():
    for a in range(1, 40):
        for b in range(1, 12):
            found = [(q, r) for q in range(a + 1) for r in range(1, b + 1) if q * b + r == a]
            assert len(found) == 1
            assert (offset_qr(a, b).q, offset_qr(a, b).r) == found[0]


@pytest.mark.parametrize("a, b", [(0, 3), (3, 0), (-1, 2)])
def test_offset_qr_rejects_nonpositive(a, b):
    with pytest.raises(ParameterError):
        offset_qr(a, b)


@pytest.mark.parametrize("kwargs", [
    dict(c=3, d=3), dict(c=4, d=2), dict(c=0, d=2), dict(c=1, d=3, z=3), dict(c=1, d=3, z=-1),
    dict(c=1, d=3, n=0),
])
def test_params_rejected(kwargs):
    with pytest.raises(ParameterError):
        SystemParams(**kwargs)


def test_params_error_mentions_d_greater_than_c():
    with pytest.raises(ParameterError, match="d must be greater than c"):
        SystemParams(c=5, d=4)


def test_coding_window():
    p = SystemParams(c=3, d=8, n=2)
    assert list(coding_window(p, 1).steps) == list(range(1, 9))
    assert list(coding_window(p, 2).steps) == list(range(4, 12))
    assert list(coding_window(SystemParams(c=1, d=3, z=1, n=3), 3).steps) == [3, 4, 5]
    with pytest.raises(ParameterError):
        coding_window(p, 3)
    with pytest.raises(ParameterError):
        coding_window(p, 0)


def test_horizon_is_union_of_windows():
    for c, d, n in [(1, 3, 3), (3, 8, 5), (2, 7, 1)]:
        p = SystemParams(c, d, 0, n)
        union = set()
        for k in range(1, n + 1):
            union |= set(coding_window(p, k).steps)
        assert union == set(p.time_steps())


def test_y_vector_examples():
    assert y_vector(SystemParams(3, 9)) == (Fraction(1, 3),) * 9
    assert y_vector(SystemParams(3, 8)) == (Fraction(1, 3),) * 6 + (Fraction(1, 2),) * 2


@given(st.integers(1, 12).flatmap(lambda c: st.tuples(st.just(c), st.integers(c + 1, 60))))
def test_y_vector_properties(cd):
    c, d = cd
    y = y_vector(SystemParams(c, d))
    assert len(y) == d
    assert list(y) == sorted(y)
    assert sum(y) == c
    assert len(set(y)) <= 2


def test_achievable_rate_examples():
    assert achievable_rate(SystemParams(3, 9, 3)) == 2
    assert achievable_rate(SystemParams(3, 9, 3)) == Fraction(9 - 3, 9) * 3
    assert achievable_rate(SystemParams(3, 8, 2)) == 2
    assert achievable_rate(SystemParams(5, 13, 0)) == 5


def test_achievable_rate_divisible_closed_form():
    for c in range(1, 6):
        for mult in range(2, 5):
            d = c * mult
            for z in range(d):
                assert achievable_rate(SystemParams(c, d, z)) == Fraction(d - z, d) * c


def test_achievable_rate_nonincreasing_in_z():
    for c in range(1, 6):
        for d in range(c + 1, 14):
            rates = [achievable_rate(SystemParams(c, d, z)) for z in range(d)]
            assert rates[0] == c
            assert all(a >= b for a, b in zip(rates, rates[1:]))
