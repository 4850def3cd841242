from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from streamcode import (
    ErasurePattern,
    Model,
    NotCovered,
    ParameterError,
    SystemParams,
    burst_worst_case,
    coding_window,
    enumerate_admissible,
    is_admissible,
    periodic_pattern,
    worst_case_base_pattern,
    derived_window_patterns,
)
from streamcode.erasure import (
    EnumerationGuardError,
    burst_admissible_implications,
    burst_case,
    burst_closed_form,
)


def all_subsets(p):
    steps = list(p.time_steps())
    for size in range(len(steps) + 1):
        for combo in combinations(steps, size):
            yield ErasurePattern(combo)


def brute_force(model, p):
    return sorted(e for e in all_subsets(p) if is_admissible(e, model, p))


def test_pattern_basics():
    e = ErasurePattern([4, 1, 2, 2])
    assert e.erased == (1, 2, 4)
    assert e.runs() == [(1, 2), (4, 4)]
    assert ErasurePattern.parse("1,4,9") == ErasurePattern([9, 4, 1])
    assert ErasurePattern.parse(" ") == ErasurePattern()
    assert ErasurePattern.parse(e.to_literal()) == e
    with pytest.raises(ParameterError):
        ErasurePattern.parse("1,x")
    with pytest.raises(ParameterError):
        ErasurePattern([0])
    with pytest.raises(AttributeError):
        e.erased = ()


def test_admissibility_examples():
    p = SystemParams(1, 3, 1, 3)
    assert is_admissible(ErasurePattern([1, 4]), Model.CODING_WINDOW, p)
    assert not is_admissible(ErasurePattern([2, 3]), Model.CODING_WINDOW, p)

    p = SystemParams(3, 9, 3, 4)
    periodic = ErasurePattern([1, 2, 3, 10, 11, 12])
    assert is_admissible(periodic, Model.SLIDING_WINDOW, p)

    p = SystemParams(2, 7, 2, 4)
    assert not is_admissible(ErasurePattern([4, 5, 6]), Model.BURST, p)
    assert is_admissible(ErasurePattern([4, 5]), Model.BURST, p)
    assert not is_admissible(ErasurePattern([4, 5, 9]), Model.BURST, p)  # gap 3 < d - z
    assert is_admissible(ErasurePattern([4, 5, 11]), Model.BURST, p)


def test_pattern_past_horizon_rejected():
    with pytest.raises(ParameterError):
        is_admissible(ErasurePattern([6]), Model.CODING_WINDOW, SystemParams(1, 3, 1, 3))


def test_enumeration_examples():
    p = SystemParams(1, 3, 1, 1)
    assert len(list(enumerate_admissible(Model.CODING_WINDOW, p))) == 4
    assert list(enumerate_admissible(Model.BURST, p.with_(z=0))) == [ErasurePattern()]
    assert list(enumerate_admissible(Model.SLIDING_WINDOW, p.with_(z=0))) == [ErasurePattern()]

    cw = set(enumerate_admissible(Model.CODING_WINDOW, SystemParams(1, 3, 1, 3)))
    assert ErasurePattern([1, 4]) in cw and ErasurePattern([2, 5]) in cw
    assert ErasurePattern([2, 3]) not in cw


@pytest.mark.parametrize("model", list(Model))
def test_enumeration_agrees_with_brute_force(model):
    cases = [
        SystemParams(c, d, z, n)
        for d in range(2, 7) for c in range(1, d) for z in range(d) for n in (1, 2, 3, 4)
        if (n - 1) * c + d <= 16
    ]
    for p in cases[::3]:
        got = list(enumerate_admissible(model, p))
        assert got == brute_force(model, p), p


def test_enumeration_is_lexicographic_and_unique():
    got = list(enumerate_admissible(Model.SLIDING_WINDOW, SystemParams(2, 5, 2, 3)))
    keys = [e.erased for e in got]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_enumeration_cap_and_guard():
    stream = enumerate_admissible(Model.CODING_WINDOW, SystemParams(1, 3, 1, 3), cap=4)
    got = list(stream)
    assert len(got) == 4 and stream.truncated
    stream = enumerate_admissible(Model.CODING_WINDOW, SystemParams(1, 3, 1, 3), cap=100)
    list(stream)
    assert not stream.truncated
    with pytest.raises(EnumerationGuardError):
        enumerate_admissible(Model.CODING_WINDOW, SystemParams(1, 3, 1, 30))
    assert len(list(enumerate_admissible(Model.BURST, SystemParams(1, 3, 0, 30), guard=40))) == 1


def test_guard_env(monkeypatch):
    monkeypatch.setenv("STREAMCODE_GUARD", "4")
    with pytest.raises(EnumerationGuardError):
        enumerate_admissible(Model.CODING_WINDOW, SystemParams(1, 3, 1, 3))


def test_model_nesting_and_c1_collapse():
    for p in [SystemParams(2, 5, z, 2) for z in range(5)] + [SystemParams(3, 7, 2, 2)]:
        sw = set(enumerate_admissible(Model.SLIDING_WINDOW, p))
        cw = set(enumerate_admissible(Model.CODING_WINDOW, p))
        assert sw <= cw
        burst = set(enumerate_admissible(Model.BURST, p))
        for e in burst:
            for k in range(1, p.n + 1):
                w = coding_window(p, k)
                assert e.count_in(w.start, w.stop) <= p.z
    for d in range(2, 7):
        for z in range(d):
            p = SystemParams(1, d, z, 4)
            assert set(enumerate_admissible(Model.SLIDING_WINDOW, p)) == set(
                enumerate_admissible(Model.CODING_WINDOW, p))


@settings(max_examples=300)
@given(st.data())
def test_burst_runs_match_implications(data):
    c = data.draw(st.integers(1, 4))
    d = data.draw(st.integers(c + 1, 9))
    z = data.draw(st.integers(0, d - 1))
    n = data.draw(st.integers(1, 4))
    p = SystemParams(c, d, z, n)
    steps = data.draw(st.sets(st.integers(1, p.horizon)))
    e = ErasurePattern(steps)
    assert is_admissible(e, Model.BURST, p) == burst_admissible_implications(e, p, first_t=0)
    if 1 not in steps:
        # interior patterns: starting the implications at step 1 changes nothing
        assert burst_admissible_implications(e, p, first_t=1) == burst_admissible_implications(e, p, 0)


def test_implications_from_step_one_miss_leading_burst():
    p = SystemParams(2, 5, 1, 2)
    e = ErasurePattern([1, 2])
    assert not is_admissible(e, Model.BURST, p)
    assert burst_admissible_implications(e, p, first_t=1)


def test_periodic_pattern():
    assert periodic_pattern(SystemParams(3, 9, 3, 4)) == ErasurePattern([1, 2, 3, 10, 11, 12])
    assert periodic_pattern(SystemParams(3, 9, 0, 4)) == ErasurePattern()
    for c in range(1, 4):
        for mult in range(2, 4):
            d = c * mult
            for z in range(d):
                for n in range(1, 6):
                    p = SystemParams(c, d, z, n)
                    e = periodic_pattern(p)
                    assert is_admissible(e, Model.SLIDING_WINDOW, p)
                    assert is_admissible(e, Model.BURST, p)


def test_burst_case_selection():
    assert burst_case(SystemParams(3, 9, 4)) == 1
    assert burst_case(SystemParams(3, 8, 1)) == 2
    assert burst_case(SystemParams(3, 8, 6)) == 3
    with pytest.raises(NotCovered):
        burst_case(SystemParams(3, 8, 3))


def test_burst_worst_case_examples():
    p = SystemParams(3, 8, 1, 4)
    e = burst_worst_case(p)
    assert e == ErasurePattern([6, 12])  # runs of 1 erased, 5 received
    assert e == burst_closed_form(p)

    p = SystemParams(3, 8, 6, 4)
    e = burst_worst_case(p)
    assert e == burst_closed_form(p)
    # received steps come in runs of d - z = 2
    received = ErasurePattern(set(p.time_steps()) - set(e))
    assert {b - a + 1 for a, b in received.runs()} == {2}
    with pytest.raises(ParameterError):
        burst_worst_case(SystemParams(3, 9, 3, 4))
    with pytest.raises(NotCovered):
        burst_worst_case(SystemParams(3, 8, 3, 4))


def test_burst_worst_case_closed_forms_and_derived_admissibility():
    for c in range(2, 6):
        for d in range(c + 1, 16):
            if d % c == 0:
                continue
            for z in range(d):
                p0 = SystemParams(c, d, z, 1)
                try:
                    burst_case(p0)
                except NotCovered:
                    continue
                for n in range(1, 8):
                    p = p0.with_(n=n)
                    base = burst_worst_case(p)
                    assert base == burst_closed_form(p)
                    for k, ek in enumerate(derived_window_patterns(base, p), start=1):
                        assert len(ek) == z
                        assert is_admissible(ek, Model.BURST, p)
                        assert is_admissible(ek, Model.SLIDING_WINDOW, p)


def test_derived_patterns_sliding_admissible():
    for c in range(1, 5):
        for d in range(c + 1, 10):
            for z in range(d):
                p = SystemParams(c, d, z, 5)
                for ek in derived_window_patterns(worst_case_base_pattern(p), p):
                    assert is_admissible(ek, Model.SLIDING_WINDOW, p)


def test_model_parse():
    assert Model.parse("CW") is Model.CODING_WINDOW
    assert Model.parse("sliding-window") is Model.SLIDING_WINDOW
    assert Model.parse("burst") is Model.BURST
    with pytest.raises(ParameterError):
        Model.parse("iid")
