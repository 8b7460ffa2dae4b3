"""The elliptic pair e(phi) = (X, Y) and the four identities it satisfies.

With T = [B,A] and A~ = (ad B)/(e^{ad B} - 1)(A):

    X(A,B) = phi(A~, T) exp(A~) phi(A~, T)^{-1}
    Y(A,B) = exp(T/2) phi(-A~ - T, T) exp(B) phi(A~, T)^{-1}

Identity 1 lives in U t^_{1,2}; identities 2-4 live in U t^_{1,3}, with
X(a, b) meaning the substitution A -> a, B -> b of the free-algebra series.
All residuals are returned as (LHS - RHS) in reduced coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ellassoc.algebra import (AlgebraElement, TruncatedAlgebra,
                              build_free_assoc, build_t1n, exp, inverse,
                              multiply, substitute)
from ellassoc.associator import ALPHABET, AssociatorSeries
from ellassoc.errors import InvalidArgumentError
from ellassoc.lie import LieSeries, ad_series, bernoulli, bracket


def t_of(truncation: int = 2) -> LieSeries:
    """T = [B, A], i.e. -[A,B] in Lyndon coordinates."""
    a = LieSeries.generator("A", ALPHABET, truncation)
    b = LieSeries.generator("B", ALPHABET, truncation)
    return bracket(b, a, truncation)


def a_tilde(n: int) -> LieSeries:
    """A~ = (ad B)/(e^{ad B} - 1)(A) = sum_i (B_i / i!) (ad B)^i (A)."""
    if n < 1:
        raise InvalidArgumentError("truncation must be >= 1")
    a = LieSeries.generator("A", ALPHABET, n)
    b = LieSeries.generator("B", ALPHABET, n)
    coeffs = [bernoulli(i) / factorial(i) for i in range(n)]
    return ad_series(b, a, coeffs, n)


@dataclass
class EllipticPair:
    """Group-like pair (X, Y) in the truncated free algebra on {A, B}."""

    x: AlgebraElement
    y: AlgebraElement
    phi: AssociatorSeries
    truncation: int

    def substituted(self, algebra: TruncatedAlgebra, a_name: str, b_name: str,
                    n: int) -> tuple[AlgebraElement, AlgebraElement]:
        assign = {"A": algebra.generator(a_name), "B": algebra.generator(b_name)}
        return (substitute(self.x, assign, algebra, n),
                substitute(self.y, assign, algebra, n))


def build_e_phi(phi: AssociatorSeries, n: int | None = None) -> EllipticPair:
    """The elliptic associator e(phi) = (X_phi, Y_phi), truncated at n."""
    if n is None:
        n = phi.truncation
    if phi.truncation < n:
        raise InvalidArgumentError("phi truncation is below the requested degree")
    alg = build_free_assoc(ALPHABET, n)
    at = alg.from_lie(a_tilde(n))
    t = alg.from_lie(t_of(n))
    b = alg.generator("B")
    p = phi(at, t, n)
    p_inv = phi.inv(at, t, n)
    x = multiply(multiply(p, exp(at), n), p_inv, n)
    q = phi(-at - t, t, n)
    y = multiply(multiply(multiply(exp(t.scale(Fraction(1, 2))), q, n),
                          exp(b), n), p_inv, n)
    return EllipticPair(x=x, y=y, phi=phi, truncation=n)


def _phi_conj(phi: AssociatorSeries, elem: AlgebraElement, arg1: AlgebraElement,
              arg2: AlgebraElement, n: int) -> AlgebraElement:
    """phi(arg1, arg2)^{-1} * elem * phi(arg1, arg2)."""
    left = phi.inv(arg1, arg2, n)
    right = phi(arg1, arg2, n)
    return multiply(multiply(left, elem, n), right, n)


def residual_identity1(pair: EllipticPair, n: int | None = None) -> AlgebraElement:
    """Y X Y^{-1} X^{-1} - exp(t12) at (x1, y1), in U t^_{1,2}."""
    if n is None:
        n = pair.truncation
    alg = build_t1n(2, n)
    x, y = pair.substituted(alg, "x1", "y1", n)
    lhs = multiply(multiply(multiply(y, x, n), inverse(y), n), inverse(x), n)
    rhs = exp(alg.generator("t12"))
    return lhs - rhs


def _identity23_residual(pair: EllipticPair, which: str, n: int) -> AlgebraElement:
    alg = build_t1n(3, n)
    t12, t13, t23 = (alg.generator(g) for g in ("t12", "t13", "t23"))
    series = pair.x if which == "x" else pair.y
    half = Fraction(1, 2) if which == "x" else Fraction(-1, 2)
    lhs = substitute(series, {"A": alg.generator("x1") + alg.generator("x2"),
                              "B": alg.generator("y1") + alg.generator("y2")}, alg, n)
    z1 = substitute(series, {"A": alg.generator("x1"), "B": alg.generator("y1")}, alg, n)
    z2 = substitute(series, {"A": alg.generator("x2"), "B": alg.generator("y2")}, alg, n)
    rhs = _phi_conj(pair.phi, z1, t12, t23, n)
    rhs = multiply(rhs, exp(t12.scale(half)), n)
    rhs = multiply(rhs, _phi_conj(pair.phi, z2, t12, t13, n), n)
    rhs = multiply(rhs, exp(t12.scale(half)), n)
    return lhs - rhs


def residual_identity2(pair: EllipticPair, n: int | None = None) -> AlgebraElement:
    """X(x1+x2, y1+y2) against its two-factor expansion, in U t^_{1,3}."""
    return _identity23_residual(pair, "x", pair.truncation if n is None else n)


def residual_identity3(pair: EllipticPair, n: int | None = None) -> AlgebraElement:
    """Y(x1+x2, y1+y2) against its two-factor expansion, in U t^_{1,3}."""
    return _identity23_residual(pair, "y", pair.truncation if n is None else n)


def residual_identity4(pair: EllipticPair, n: int | None = None) -> AlgebraElement:
    """The braiding compatibility of Y(x1,y1) and X(x2,y2) in U t^_{1,3}."""
    if n is None:
        n = pair.truncation
    alg = build_t1n(3, n)
    t12, t13, t23 = (alg.generator(g) for g in ("t12", "t13", "t23"))
    x2, _ = pair.substituted(alg, "x2", "y2", n)
    _, y1 = pair.substituted(alg, "x1", "y1", n)
    conj_y = _phi_conj(pair.phi, y1, t12, t23, n)
    conj_x = _phi_conj(pair.phi, x2, t12, t13, n)
    e_plus = exp(t12.scale(Fraction(1, 2)))
    e_minus = exp(t12.scale(Fraction(-1, 2)))
    lhs = multiply(multiply(multiply(conj_y, e_plus, n), conj_x, n), e_plus, n)
    rhs = multiply(multiply(multiply(e_plus, conj_x, n), e_minus, n), conj_y, n)
    return lhs - rhs


RESIDUALS = {1: residual_identity1, 2: residual_identity2,
             3: residual_identity3, 4: residual_identity4}


def residual(pair: EllipticPair, identity: int, n: int | None = None) -> AlgebraElement:
    if identity not in RESIDUALS:
        raise InvalidArgumentError("identity must be one of 1, 2, 3, 4")
    return RESIDUALS[identity](pair, n)
