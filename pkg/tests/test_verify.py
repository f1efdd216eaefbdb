import pytest

from dihedralcodes.codes import FULL, ZERO, DualityClass, allowed_pair_specs, allowed_specs
from dihedralcodes.cyclotomic import profile_for
from dihedralcodes.errors import InvalidInput
from dihedralcodes.field import gf
from dihedralcodes.verify import (
    check_descriptor,
    concatenation_bound,
    inner_distance,
    outer_distance,
    run_sweep,
    select,
    tally_self_dual,
)


def prof(q, n):
    return profile_for(gf(q), n)


@pytest.mark.parametrize("q,n", [(2, 1), (3, 1), (2, 7), (3, 5), (4, 3)])
def test_small_full_sweeps_pass(q, n):
    for cls in DualityClass:
        if cls is DualityClass.SD and q % 2:
            continue
        rep = run_sweep(prof(q, n), cls)
        assert rep.ok, rep.to_json()
        assert rep.checked == rep.formula


def test_binary_one_has_three_codes():
    rep = run_sweep(prof(2, 1))
    assert rep.checked == 3 and rep.ok


def test_sweep_with_limit_is_partial():
    rep = run_sweep(prof(3, 13), DualityClass.ALL, limit=25)
    assert rep.checked == 25 and not rep.full and rep.ok
    assert rep.to_json()["status"] == "pass"


def test_sampling_is_seeded():
    P = prof(2, 21)
    a = list(select(P, DualityClass.ALL, sample=7, seed=3))
    b = list(select(P, DualityClass.ALL, sample=7, seed=3))
    c = list(select(P, DualityClass.ALL, sample=7, seed=4))
    assert a == b and a != c
    assert len(set(a)) == 7


def test_count_mismatch_fails_report():
    rep = run_sweep(prof(2, 7), DualityClass.ALL)
    rep.formula += 1
    assert not rep.ok and rep.to_json()["count_match"] is False


def test_check_descriptor_clean():
    P = prof(3, 10)
    for d in select(P, DualityClass.ALL, sample=30, seed=1):
        assert check_descriptor(d) == []


def test_self_dual_tally_binary_7():
    t = tally_self_dual(prof(2, 7))
    assert (t.formula, t.enumerated, t.gram_verified) == (9, 9, 9)
    assert t.consistent


def test_distances_binary_7():
    P = prof(2, 7)
    assert inner_distance(P, 0) == 7
    assert inner_distance(P, 1) in (3, 4)
    assert outer_distance(P, 1, FULL) == 1
    assert outer_distance(P, 1, ZERO) is None
    a, b = allowed_pair_specs(P, 1, DualityClass.ALL)[-1]
    assert concatenation_bound(P, 1, a).holds
    with pytest.raises(InvalidInput):
        concatenation_bound(P, 1, ZERO)


def test_concatenation_bound_line_codes():
    P = prof(2, 21)
    for spec in allowed_specs(P, 1, DualityClass.ALL):
        if spec.kind == "zero":
            continue
        b = concatenation_bound(P, 1, spec)
        assert b.holds, b
        if spec.kind == "line" and spec.g1 and spec.g2:
            assert b.outer == 2
