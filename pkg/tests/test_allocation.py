from fractions import Fraction

import pytest

from streamcode import (
    AllocationTable,
    ParameterError,
    SystemParams,
    active_messages,
    allocation_table,
    coding_window,
    message_allocation_profile,
    offset_qr,
    y_vector,
)

from conftest import small_params


def brute_active(p, t):
    # every integer k (dummies included) whose window formula covers t
    return tuple(k for k in range(-p.d - 2, t + 2) if (k - 1) * p.c + 1 <= t <= (k - 1) * p.c + p.d)


def test_active_examples():
    p = SystemParams(3, 8)
    assert active_messages(p, 1) == (-1, 0, 1)
    assert active_messages(p, 3) == (0, 1)
    assert all(len(active_messages(SystemParams(3, 9), t)) == 3 for t in range(1, 60))
    with pytest.raises(ParameterError):
        active_messages(p, 0)


def test_active_matches_window_definition():
    for c in range(1, 8):
        for d in range(c + 1, 12):
            p = SystemParams(c, d)
            for t in range(1, 60):
                assert active_messages(p, t) == brute_active(p, t)


def test_count_law():
    for c in range(1, 8):
        for d in range(c + 1, 12):
            p = SystemParams(c, d)
            for t in range(1, 50):
                expect = p.qd + 1 if offset_qr(t, c).r <= p.rd else p.qd
                assert len(active_messages(p, t)) == expect


def test_window_consistency_and_conservation():
    for p in small_params(max_d=10, max_n=20):
        table = allocation_table(p)
        assert len(table.steps) == p.horizon
        for step in table.steps:
            assert step.share * len(step.active) == 1
            assert len(step.active) in (p.qd, p.qd + 1)
            for k in range(1, p.n + 1):
                assert (k in step.real) == (step.t in coding_window(p, k))


def test_divisible_has_full_count_everywhere():
    for c in range(1, 5):
        for mult in range(2, 5):
            p = SystemParams(c, c * mult, 0, 6)
            assert all(len(s.active) == p.qd + 1 for s in allocation_table(p).steps)


def test_single_message_share_counts():
    table = allocation_table(SystemParams(3, 8, 0, 1))
    profile = message_allocation_profile(table, 1)
    assert profile.count(Fraction(1, 3)) == 6
    assert profile.count(Fraction(1, 2)) == 2


def test_divisible_two_messages_constant_share():
    table = allocation_table(SystemParams(3, 9, 0, 2))
    assert {s.share for s in table.steps} == {Fraction(1, 3)}


def test_profile_sorts_to_y_vector_and_is_time_invariant():
    for p in small_params(max_d=9, max_n=5):
        table = allocation_table(p)
        profiles = [message_allocation_profile(table, k) for k in range(1, p.n + 1)]
        assert all(pr == profiles[0] for pr in profiles)
        assert tuple(sorted(profiles[0])) == y_vector(p)
        assert sum(profiles[0]) == p.c
        for i, x in enumerate(profiles[0], start=1):
            expect = Fraction(1, p.qd + 1) if offset_qr(i, p.c).r <= p.rd else Fraction(1, p.qd)
            assert x == expect


def test_profile_rejects_bad_index():
    table = allocation_table(SystemParams(3, 8, 0, 2))
    with pytest.raises(ParameterError):
        message_allocation_profile(table, 3)


def test_unused_bandwidth_only_at_edges():
    p = SystemParams(3, 8, 0, 6)
    table = allocation_table(p)
    for step in table.steps:
        if step.unused:
            assert step.t <= p.d or step.t > (p.n - 1) * p.c


def test_table_dict_round_trip():
    table = allocation_table(SystemParams(3, 8, 1, 4))
    assert AllocationTable.from_dict(table.to_dict()) == table
