import json
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from ellassoc.errors import InvalidArgumentError
from ellassoc.lie import (LieSeries, ad_series, bch, bernoulli, bracket,
                          lie_quotient_dims, lyndon_basis)

AB = (("A", 1), ("B", 1))


def gen(name, n=6):
    return LieSeries.generator(name, AB, n)


def necklace_count(k, d):
    # number of Lyndon words of length d over k letters (Witt formula by
    # direct Moebius-free recursion over divisors)
    total = k ** d
    for e in range(1, d):
        if d % e == 0:
            total -= e * necklace_count(k, e) * (d // e) // e
    rest = total // d
    return rest


def brute_lyndon_count(k, d):
    letters = [str(i) for i in range(k)]
    count = 0
    def words(prefix, rem):
        nonlocal count
        if rem == 0:
            w = tuple(prefix)
            if all(w < w[i:] + w[:i] for i in range(1, len(w))):
                count += 1
            return
        for a in letters:
            words(prefix + [a], rem - 1)
    words([], d)
    return count


# -- bernoulli ---------------------------------------------------------------

def test_bernoulli_first_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)


def test_bernoulli_matches_recurrence_oracle():
    # independent oracle: direct recurrence sum_{k<=n} C(n+1,k) B_k = 0
    from math import comb
    values = {0: Fraction(1)}
    for n in range(1, 13):
        values[n] = -Fraction(sum(comb(n + 1, k) * values[k] for k in range(n)), n + 1)
    for n in range(13):
        assert bernoulli(n) == values[n]


def test_odd_bernoulli_vanish_above_one():
    assert all(bernoulli(n) == 0 for n in (3, 5, 7, 9, 11))


# -- lyndon basis -------------------------------------------------------------

def test_lyndon_degree_one_is_generators():
    assert [b.word for b in lyndon_basis(AB, 1)] == [("A",), ("B",)]


def test_lyndon_degree_two_and_three():
    assert [b.word for b in lyndon_basis(AB, 2)] == [("A", "B")]
    assert [b.word for b in lyndon_basis(AB, 3)] == [("A", "A", "B"), ("A", "B", "B")]


@pytest.mark.parametrize("d", range(1, 7))
def test_lyndon_counts_match_witt(d):
    assert len(lyndon_basis(AB, d)) == brute_lyndon_count(2, d)


def test_lyndon_rejects_bad_degree():
    with pytest.raises(InvalidArgumentError):
        lyndon_basis(AB, 0)


def test_bracketing_standard_factorization():
    (aab,) = [b for b in lyndon_basis(AB, 3) if b.word == ("A", "A", "B")]
    assert aab.bracketing == ("A", ("A", "B"))
    (abb,) = [b for b in lyndon_basis(AB, 3) if b.word == ("A", "B", "B")]
    assert abb.bracketing == (("A", "B"), "B")


# -- bracket -------------------------------------------------------------------

def test_bracket_with_self_is_zero():
    a = gen("A")
    assert bracket(a, a).is_zero()


def test_bracket_antisymmetry_on_basis():
    assert bracket(gen("B"), gen("A"), 2).coeffs == {("A", "B"): Fraction(-1)}


def test_bracket_rewrites_into_lyndon():
    # [B,[B,A]] = [[A,B],B]
    inner = bracket(gen("B"), gen("A"))
    assert bracket(gen("B"), inner, 3).coeffs == {("A", "B", "B"): Fraction(1)}


small_series = st.builds(
    lambda c1, c2, c3, c4: LieSeries(AB, 6, {
        ("A",): Fraction(c1), ("B",): Fraction(c2),
        ("A", "B"): Fraction(c3), ("A", "A", "B"): Fraction(c4)}),
    *(st.integers(min_value=-3, max_value=3) for _ in range(4)))


@settings(max_examples=25, deadline=None)
@given(small_series, small_series)
def test_bracket_antisymmetric(a, b):
    assert (bracket(a, b) + bracket(b, a)).is_zero()


@settings(max_examples=15, deadline=None)
@given(small_series, small_series, small_series)
def test_jacobi_identity(a, b, c):
    total = (bracket(a, bracket(b, c)) + bracket(b, bracket(c, a))
             + bracket(c, bracket(a, b)))
    assert total.is_zero()


def test_bracket_alphabet_mismatch():
    other = LieSeries.generator("C", (("C", 1),), 4)
    with pytest.raises(InvalidArgumentError):
        bracket(gen("A"), other)


# -- ad series -----------------------------------------------------------------

def test_ad_series_identity_term():
    a, b = gen("A"), gen("B")
    assert ad_series(b, a, [Fraction(1), 0, 0]) == a


def test_ad_series_bernoulli_is_a_tilde():
    # (ad B)/(e^{ad B}-1)(A) = A - 1/2 [B,A] + 1/12 [B,[B,A]] + ...
    coeffs = [bernoulli(i) / factorial(i) for i in range(4)]
    at = ad_series(gen("B"), gen("A"), coeffs, 3)
    assert at.coeffs == {("A",): Fraction(1), ("A", "B"): Fraction(1, 2),
                         ("A", "B", "B"): Fraction(1, 12)}


def test_ad_series_degree_four_vanishes():
    # B_3 = 0 kills the (ad B)^3 term
    coeffs = [bernoulli(i) / factorial(i) for i in range(5)]
    at = ad_series(gen("B"), gen("A"), coeffs, 4)
    assert at.degree_part(4).is_zero()


# -- bch ------------------------------------------------------------------------

def test_bch_with_zero():
    a = gen("A")
    zero = LieSeries.zero(AB, 6)
    assert bch(a, zero) == a
    assert bch(zero, a) == a


def test_bch_degree_two():
    c = bch(gen("A"), gen("B"), 2)
    assert c.coeffs == {("A",): Fraction(1), ("B",): Fraction(1),
                        ("A", "B"): Fraction(1, 2)}


def test_bch_linear_part_is_bernoulli_ad_series():
    # terms of bch(A,B) linear in A through degree 5 equal
    # sum_n B_n/n! (ad B)^n (A)
    full = bch(gen("A", 5), gen("B", 5), 5)
    expected = ad_series(gen("B", 5), gen("A", 5),
                         [bernoulli(i) / factorial(i) for i in range(6)], 5)
    # linear-in-A part: keep Lyndon words with exactly one A, plus B itself
    linear = {w: c for w, c in full.coeffs.items() if w.count("A") == 1}
    expect = dict(expected.coeffs)
    expect.pop(("A",))
    linear.pop(("A",))
    expect[("B",)] = Fraction(1)
    linear[("B",)] = linear.get(("B",), Fraction(1))
    assert linear == expect


def test_bch_rejects_bad_truncation():
    # a LieSeries cannot carry a degree-0 part, so the invalid-argument
    # surface here is a nonsensical truncation
    with pytest.raises(InvalidArgumentError):
        bch(gen("A"), gen("B"), -1)


# -- serialization ---------------------------------------------------------------

def test_json_round_trip():
    series = bch(gen("A"), gen("B"), 4)
    data = json.loads(json.dumps(series.to_json()))
    back = LieSeries.from_json(data)
    assert back == series


def test_json_accepts_non_lyndon_bracket_trees():
    data = {"alphabet": [{"name": "A", "degree": 1}, {"name": "B", "degree": 1}],
            "truncation": 3,
            "terms": [{"degree": 2, "bracket": ["B", "A"], "coeff": "2"}]}
    series = LieSeries.from_json(data)
    assert series.coeffs == {("A", "B"): Fraction(-2)}


# -- brute-force Lie quotients ------------------------------------------------------

def test_free_lie_dims_match_lyndon_counts():
    dims = lie_quotient_dims(AB, [], 6)
    assert dims == [len(lyndon_basis(AB, d)) for d in range(1, 7)]


def test_abelianization_dims():
    rel = bracket(gen("A", 4), gen("B", 4))
    assert lie_quotient_dims(AB, [rel], 4) == [2, 0, 0, 0]
