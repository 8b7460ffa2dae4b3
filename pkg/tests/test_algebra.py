import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ellassoc.errors import InvalidArgumentError
from ellassoc.algebra import (AlgebraElement, GeneratedSubalgebra, build_dk,
                              build_free_assoc, build_t1n, exp, intersection,
                              inverse, log, multiply, substitute)
from ellassoc.lie import LieSeries, bch, lie_quotient_dims

AB = (("A", 1), ("B", 1))


def comm(alg, u, v):
    return alg.element({tuple(u) + tuple(v): Fraction(1),
                        tuple(v) + tuple(u): Fraction(-1)})


# -- builders: free associative algebra -----------------------------------------

def test_free_assoc_dims():
    fa = build_free_assoc(AB, 4)
    assert [fa.dim(d) for d in range(5)] == [1, 2, 4, 8, 16]


def test_free_assoc_mixed_degrees():
    fa = build_free_assoc((("x1", 1), ("y1", 1)), 2)
    assert fa.dim(2) == 4


# -- builders: Drinfeld-Kohno ----------------------------------------------------

def test_dk3_degree_one_basis():
    dk = build_dk(3, 2)
    assert dk.basis(1) == (("t12",), ("t13",), ("t23",))


def test_dk3_sum_relation():
    dk = build_dk(3, 2)
    total = dk.generator("t12") + dk.generator("t13") + dk.generator("t23")
    assert multiply(dk.generator("t12"), total) == multiply(total, dk.generator("t12"))


def test_dk2_is_polynomial_algebra():
    dk = build_dk(2, 5)
    assert [dk.dim(d) for d in range(6)] == [1] * 6


def test_dk_rejects_small_n():
    with pytest.raises(InvalidArgumentError):
        build_dk(1, 2)


# -- builders: t_{1,n} -------------------------------------------------------------

def test_t1n2_degree_one():
    alg = build_t1n(2, 1)
    assert alg.basis(1) == (("x1",), ("y1",), ("x2",), ("y2",))


def test_t1n2_degree_two_dimension():
    # 16 two-letter words + t12, minus six independent relation rewrites
    assert build_t1n(2, 2).dim(2) == 11


def test_t1n3_same_index_relation_reduces():
    alg = build_t1n(3, 2)
    elem = comm(alg, ("x1",), ("y1",)) + alg.generator("t12") + alg.generator("t13")
    assert elem.is_zero()


def test_t1n_cross_relations():
    alg = build_t1n(2, 2)
    assert comm(alg, ("x1",), ("x2",)).is_zero()
    assert (comm(alg, ("x1",), ("y2",)) - alg.generator("t12")).is_zero()
    assert (comm(alg, ("y1",), ("x2",)) + alg.generator("t12")).is_zero()


def test_t1n3_disjoint_relation():
    alg = build_t1n(3, 3)
    assert comm(alg, ("x1",), ("t23",)).is_zero()
    assert comm(alg, ("y2",), ("t13",)).is_zero()


def test_t1n_rejects_small_n():
    with pytest.raises(InvalidArgumentError):
        build_t1n(0, 2)


def test_ideal_times_words_reduce_to_zero():
    # reduce(u * r * v) = 0 for every relation and all flanking words, d <= 3
    alg = build_t1n(2, 3)
    for rel in alg.presentation.relations:
        rdeg = alg.presentation.degree_of(next(iter(rel)))
        for a in range(3 - rdeg + 1):
            for u in alg.words(a):
                for v in alg.words(3 - rdeg - a):
                    raw = {u + w + v: c for w, c in rel.items()}
                    assert not alg.reduce(raw)


def test_pbw_against_brute_force_lie_quotient():
    # independent oracle: Lie slice dims of t_{1,2} by Lie-ideal echelon,
    # then PBW via the graded generating function
    pres = build_t1n(2, 4).presentation
    gens = pres.generators
    relations = []
    from ellassoc.lie import from_assoc
    for rel in pres.relations:
        relations.append(from_assoc(dict(rel), gens, 4))
    lie_dims = lie_quotient_dims(gens, relations, 4)
    assert lie_dims == [4, 1, 2, 3]

    # graded PBW: prod_d (1-t^d)^(-lie_dims[d-1])
    series = [Fraction(1)] + [Fraction(0)] * 4
    for d, ell in enumerate(lie_dims, start=1):
        for _ in range(ell):
            new = series[:]
            for k in range(d, 5):
                new[k] += new[k - d]
            series = new
    alg = build_t1n(2, 4)
    assert [alg.dim(d) for d in range(5)] == [int(c) for c in series]


# -- element arithmetic ---------------------------------------------------------

def test_multiply_associative_random():
    alg = build_t1n(2, 6)
    rng = random.Random(7)
    gens = [alg.generator(g) for g, _ in alg.generators]

    def rand_elem():
        e = alg.zero()
        for g in gens:
            e = e + g.scale(rng.randint(-2, 2))
        e = e + multiply(gens[rng.randrange(4)], gens[rng.randrange(4)])
        return e

    for _ in range(8):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_multiply_degree_additive():
    alg = build_t1n(2, 4)
    a = alg.generator("x1")
    b = alg.generator("t12")
    prod = multiply(a, b)
    assert prod == prod.degree_part(3)


def test_exp_log_round_trip_degree_six():
    alg = build_free_assoc(AB, 6)
    a = alg.generator("A") + alg.generator("B").scale(Fraction(1, 3))
    g = exp(a)
    assert log(g) == a
    assert exp(log(g)) == g


def test_exp_of_zero():
    alg = build_free_assoc(AB, 4)
    assert exp(alg.zero()) == alg.one()


def test_inverse_of_central_exponential():
    dk = build_dk(2, 5)
    g = exp(dk.generator("t12"))
    assert inverse(g) == exp(dk.generator("t12").scale(-1))
    assert multiply(inverse(g), g) == dk.one()


def test_log_of_product_matches_bch():
    alg = build_free_assoc(AB, 4)
    a, b = alg.generator("A"), alg.generator("B")
    lhs = log(multiply(exp(a), exp(b)))
    series = bch(LieSeries.generator("A", AB, 4), LieSeries.generator("B", AB, 4), 4)
    assert lhs == alg.from_lie(series)


def test_exp_requires_positive_valuation():
    alg = build_free_assoc(AB, 3)
    with pytest.raises(InvalidArgumentError):
        exp(alg.one())
    with pytest.raises(InvalidArgumentError):
        log(alg.generator("A"))
    with pytest.raises(InvalidArgumentError):
        inverse(alg.zero())


# -- substitution -----------------------------------------------------------------

def test_substitute_single_word():
    fa = build_free_assoc(AB, 2)
    alg = build_t1n(2, 2)
    ab = fa.element({("A", "B"): Fraction(1)})
    img = substitute(ab, {"A": alg.generator("x1"), "B": alg.generator("y1")}, alg)
    assert img == multiply(alg.generator("x1"), alg.generator("y1"))


def test_substitute_commutes_with_exp():
    fa = build_free_assoc(AB, 3)
    alg = build_t1n(3, 3)
    target = alg.generator("x1") + alg.generator("x2")
    img = substitute(exp(fa.generator("A")), {"A": target, "B": alg.zero()}, alg)
    assert img == exp(target)


def test_substitute_bracket_gives_t12():
    fa = build_free_assoc(AB, 2)
    alg = build_t1n(2, 2)
    ba = fa.element({("B", "A"): Fraction(1), ("A", "B"): Fraction(-1)})
    img = substitute(ba, {"A": alg.generator("x1"), "B": alg.generator("y1")}, alg)
    assert img == alg.generator("t12")


def test_substitute_is_multiplicative_random():
    fa = build_free_assoc(AB, 4)
    alg = build_t1n(2, 4)
    rng = random.Random(11)
    words = [w for d in range(1, 3) for w in fa.basis(d)]

    def rand_series():
        return fa.element({rng.choice(words): Fraction(rng.randint(-2, 2))
                           for _ in range(3)})

    assign = {"A": alg.generator("x1") + alg.generator("t12"),
              "B": alg.generator("y2")}
    for _ in range(6):
        a, b = rand_series(), rand_series()
        lhs = substitute(multiply(a, b), assign, alg)
        rhs = multiply(substitute(a, assign, alg), substitute(b, assign, alg))
        assert lhs == rhs


def test_substitute_rejects_constant_term():
    fa = build_free_assoc(AB, 2)
    alg = build_t1n(2, 2)
    with pytest.raises(InvalidArgumentError):
        substitute(fa.generator("A"), {"A": alg.one(), "B": alg.zero()}, alg)


# -- intersection form -------------------------------------------------------------

def test_intersection_form():
    # the normalization that makes the elliptic identities hold; see the
    # docstring of `intersection`
    assert intersection("x", "y") == 1
    assert intersection("y", "x") == -1
    assert intersection("x", "x") == 0
    assert intersection("y", "y") == 0
    assert intersection("x", "y") == -intersection("y", "x")


# -- restricted subalgebra ----------------------------------------------------------

def test_ru_t12_is_free_of_rank_two():
    alg = build_t1n(2, 4)
    ru = GeneratedSubalgebra(alg, ("x1", "y1"))
    assert [ru.dim(d) for d in range(1, 5)] == [2, 4, 8, 16]


def test_ru_membership():
    alg = build_t1n(2, 3)
    ru = GeneratedSubalgebra(alg, ("x1", "y1"))
    assert ru.contains(comm(alg, ("x1",), ("y1",)))   # = -t12
    assert ru.contains(alg.generator("t12"))
    assert not ru.contains(alg.generator("x2"))


# -- serialization ------------------------------------------------------------------

def test_element_json_round_trip():
    alg = build_t1n(2, 3)
    elem = multiply(alg.generator("y1"), alg.generator("x1")) + alg.generator("t12")
    data = json.loads(json.dumps(elem.to_json()))
    assert AlgebraElement.from_json(data, alg) == elem


def test_element_json_reduces_on_load():
    alg = build_t1n(2, 2)
    data = {"algebra": "t1n(2)", "truncation": 2,
            "terms": [{"word": ["y1", "x1"], "coeff": "1"},
                      {"word": ["x1", "y1"], "coeff": "-1"}]}
    assert AlgebraElement.from_json(data, alg) == alg.generator("t12")
