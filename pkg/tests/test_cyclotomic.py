import math

import pytest

from dihedralcodes.cyclotomic import (
    build_profile,
    cyclotomic_cosets,
    factor_cyclotomic,
    multiplicative_order,
    profile_for,
)
from dihedralcodes.errors import Inconsistent, InvalidIndex, NotCoprime
from dihedralcodes.field import Poly, gf, is_irreducible, parse_poly, reciprocal_poly, x_pow_minus_one


def polys(q, *texts):
    return [parse_poly(gf(q), t) for t in texts]


@pytest.mark.parametrize("q,n,s", [(2, 21, 6), (3, 10, 4), (3, 13, 3), (2, 7, 3), (9, 4, 1), (2, 1, 1)])
def test_multiplicative_order(q, n, s):
    assert multiplicative_order(q, n) == s


def test_cosets_partition():
    cos = cyclotomic_cosets(2, 21)
    assert cos[0] == [0]
    assert sorted(x for c in cos for x in c) == list(range(21))
    assert [len(c) for c in cos] == [1, 6, 3, 6, 2, 3]
    with pytest.raises(NotCoprime):
        cyclotomic_cosets(3, 6)


def test_binary_21_profile():
    prof = profile_for(gf(2), 21)
    assert (prof.r, prof.t) == (1, 2)
    assert prof.degrees == (1, 2, 3, 6, 3, 6)
    f = prof.factors
    assert f[:2] == tuple(polys(2, "1+x", "1+x+x^2"))
    # the reciprocal pairs, as unordered pairs
    pairs = {frozenset((f[i], f[k])) for i, k in prof.pairs}
    assert pairs == {
        frozenset(polys(2, "1+x+x^3", "1+x^2+x^3")),
        frozenset(polys(2, "1+x^2+x^4+x^5+x^6", "1+x+x^2+x^4+x^6")),
    }
    for i, k in prof.pairs:
        assert reciprocal_poly(f[i]) == f[k]


def test_ternary_10_profile():
    prof = profile_for(gf(3), 10)
    assert (prof.r, prof.t) == (3, 0)
    assert prof.i0 == (0, 1)
    assert list(prof.factors) == polys(3, "x-1", "x+1", "x^4+x^3+x^2+x+1", "x^4+2x^3+x^2+2x+1")


def test_ternary_13_profile():
    prof = profile_for(gf(3), 13)
    assert (prof.r, prof.t) == (0, 2)
    assert list(prof.factors) == polys(
        3, "x-1", "x^3+x^2+2", "x^3+x^2+x+2", "x^3+2x+2", "x^3+2x^2+2x+2"
    )
    assert prof.pairs == ((1, 3), (2, 4))
    assert prof.partner(3) == 1 and prof.partner(0) == 0


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9])
def test_factor_product_reconstructs(q):
    F = gf(q)
    for n in range(1, 65):
        if math.gcd(n, q) != 1:
            continue
        fs = factor_cyclotomic(F, n)
        prod = Poly.one(F)
        for f in fs:
            assert f.lead == 1 and is_irreducible(f)
            prod = prod * f
        assert prod == x_pow_minus_one(F, n)
        assert len(set(fs)) == len(fs)
        assert sorted(int(f.degree) for f in fs) == sorted(len(c) for c in cyclotomic_cosets(q, n))


@pytest.mark.parametrize("q,n", [(2, 15), (4, 9), (3, 20), (9, 16), (5, 12), (2, 45)])
def test_profile_ordering_invariants(q, n):
    prof = profile_for(gf(q), n)
    f = prof.factors
    assert len(f) == prof.r + 2 * prof.t + 1
    assert f[0] == Poly(gf(q), (gf(q).neg(1), 1))
    if n % 2 == 0:
        assert f[1] == Poly(gf(q), (1, 1))
    for i in range(prof.r + 1):
        assert reciprocal_poly(f[i]) == f[i]
    for i in range(len(prof.i0), prof.r + 1):
        assert prof.degrees[i] % 2 == 0
    for i, k in prof.pairs:
        assert reciprocal_poly(f[i]) == f[k]
        assert f[i].sort_key() < f[k].sort_key()


def test_n_equal_one():
    prof = profile_for(gf(5), 1)
    assert (prof.r, prof.t) == (0, 0)
    assert prof.factors == (Poly(gf(5), (4, 1)),)


def test_not_coprime_rejected():
    with pytest.raises(NotCoprime):
        factor_cyclotomic(gf(3), 12)


def test_build_profile_validates_factor_lists():
    F = gf(2)
    good = factor_cyclotomic(F, 7)
    assert build_profile(F, 7, list(reversed(good))) == profile_for(F, 7)
    with pytest.raises(Inconsistent):
        build_profile(F, 7, good[:-1])
    with pytest.raises(Inconsistent):
        build_profile(F, 7, good + [good[0]])
    with pytest.raises(Inconsistent):
        build_profile(F, 3, polys(2, "1+x", "1+x") + polys(2, "1+x"))


def test_check_index():
    prof = profile_for(gf(2), 7)
    with pytest.raises(InvalidIndex):
        prof.check_index(3)


def test_profile_json():
    data = profile_for(gf(3), 13).to_json()
    assert data["r"] == 0 and data["t"] == 2
    assert data["pairs"] == [[1, 3], [2, 4]]
    assert data["factors"][0] == [2, 1]
