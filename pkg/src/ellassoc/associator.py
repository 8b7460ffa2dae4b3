"""Rational Drinfeld associators, solved degree by degree.

The axiom convention is fixed here once and for all (the hexagons use the
exp(+-t/2) crossing normalization):

  pentagon, in U t^_4:
      phi(t12, t23+t24) phi(t13+t23, t34)
        = phi(t23, t34) phi(t12+t13, t24+t34) phi(t12, t23)

  hexagons, in U t^_3 (both signs):
      exp(+-(t13+t23)/2)
        = phi(t13, t12) exp(+-t13/2) phi(t13, t23)^{-1} exp(+-t23/2) phi(t12, t23)

Residuals are (LHS - RHS) and the degree-d part of every residual is an
affine function of the degree-d coefficients of log phi, so each degree is
one exact linear solve; free coordinates are pinned by the gauge rule.
"""

from __future__ import annotations

import functools
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ellassoc.algebra import (AlgebraElement, TruncatedAlgebra, build_dk,
                              build_free_assoc, exp, multiply, substitute)
from ellassoc.errors import InvalidArgumentError, LoadError, SolverError
from ellassoc.lie import LieSeries, Word, lyndon_basis, word_degree
from ellassoc.linalg import RowSpan

ALPHABET = (("A", 1), ("B", 1))

GAUGE_RULES = ("lyndon", "lyndon_reversed")


class AssociatorSeries:
    """Group-like series phi = exp(log_phi) on the alphabet {A, B}."""

    def __init__(self, log_phi: LieSeries):
        if log_phi.alphabet != ALPHABET:
            raise InvalidArgumentError("associator must live on the alphabet {A, B}")
        if not log_phi.degree_part(1).is_zero():
            raise InvalidArgumentError("log phi must have no degree-1 part")
        self.log = log_phi
        self.truncation = log_phi.truncation

    @staticmethod
    def one(truncation: int) -> "AssociatorSeries":
        return AssociatorSeries(LieSeries.zero(ALPHABET, truncation))

    @functools.cached_property
    def exp_series(self) -> AlgebraElement:
        alg = build_free_assoc(ALPHABET, self.truncation)
        return exp(alg.from_lie(self.log))

    @functools.cached_property
    def exp_inverse_series(self) -> AlgebraElement:
        alg = build_free_assoc(ALPHABET, self.truncation)
        return exp(alg.from_lie(self.log.scale(-1)))

    def __call__(self, a: AlgebraElement, b: AlgebraElement,
                 n: int | None = None) -> AlgebraElement:
        """phi(a, b) in the algebra the arguments live in."""
        return substitute(self.exp_series, {"A": a, "B": b}, a.algebra, n)

    def inv(self, a: AlgebraElement, b: AlgebraElement,
            n: int | None = None) -> AlgebraElement:
        """phi(a, b)^{-1}, evaluated as exp(-log phi)(a, b)."""
        return substitute(self.exp_inverse_series, {"A": a, "B": b}, a.algebra, n)

    def __eq__(self, other):
        return isinstance(other, AssociatorSeries) and other.log == self.log

    def degree_coefficients(self, d: int) -> dict[Word, Fraction]:
        return {w: c for w, c in self.log.coeffs.items()
                if word_degree(w, ALPHABET) == d}


@dataclass
class SolverConfig:
    max_degree: int
    evenness: bool = True
    gauge_rule: str = "lyndon"

    def __post_init__(self):
        if self.max_degree < 2:
            raise InvalidArgumentError("max_degree must be >= 2")
        if self.gauge_rule not in GAUGE_RULES:
            raise InvalidArgumentError(f"unknown gauge rule {self.gauge_rule!r}")


# -- residuals ----------------------------------------------------------------

def pentagon_residual(phi: AssociatorSeries, n: int | None = None) -> AlgebraElement:
    """LHS - RHS of the pentagon in U t^_4, truncated at n."""
    if n is None:
        n = phi.truncation
    if n > phi.truncation:
        raise InvalidArgumentError("n exceeds the truncation of phi")
    dk = build_dk(4, n)
    t = {name: dk.generator(name) for name, _ in dk.generators}
    lhs = multiply(phi(t["t12"], t["t23"] + t["t24"], n),
                   phi(t["t13"] + t["t23"], t["t34"], n), n)
    rhs = multiply(multiply(phi(t["t23"], t["t34"], n),
                            phi(t["t12"] + t["t13"], t["t24"] + t["t34"], n), n),
                   phi(t["t12"], t["t23"], n), n)
    return lhs - rhs


def hexagon_residual(phi: AssociatorSeries, sign: int,
                     n: int | None = None) -> AlgebraElement:
    """LHS - RHS of the hexagon with crossing exp(sign * t / 2), in U t^_3."""
    if sign not in (1, -1):
        raise InvalidArgumentError("sign must be +1 or -1")
    if n is None:
        n = phi.truncation
    if n > phi.truncation:
        raise InvalidArgumentError("n exceeds the truncation of phi")
    dk = build_dk(3, n)
    t12, t13, t23 = (dk.generator(g) for g in ("t12", "t13", "t23"))
    half = Fraction(sign, 2)
    lhs = exp((t13 + t23).scale(half))
    rhs = phi(t13, t12, n)
    rhs = multiply(rhs, exp(t13.scale(half)), n)
    rhs = multiply(rhs, phi.inv(t13, t23, n), n)
    rhs = multiply(rhs, exp(t23.scale(half)), n)
    rhs = multiply(rhs, phi(t12, t23, n), n)
    return lhs - rhs


def residual_norms(phi: AssociatorSeries, n: int) -> dict[str, list[int]]:
    """Per-degree count of nonzero residual coordinates for each identity."""
    out: dict[str, list[int]] = {}
    for name, resid in (("pentagon", pentagon_residual(phi, n)),
                        ("hexagon+", hexagon_residual(phi, 1, n)),
                        ("hexagon-", hexagon_residual(phi, -1, n))):
        out[name] = [resid.degree_part(d).support_size() for d in range(n + 1)]
    return out


# -- solver ---------------------------------------------------------------------

def _variable_order(d: int, gauge_rule: str) -> list[Word]:
    words = [b.word for b in lyndon_basis(ALPHABET, d)]
    if gauge_rule == "lyndon_reversed":
        words.reverse()
    return words


def _residual_slice(log_coeffs: dict[Word, Fraction], d: int) -> dict[tuple, Fraction]:
    """Degree-d coordinates of all three residuals, as one sparse vector."""
    phi = AssociatorSeries(LieSeries(ALPHABET, d, log_coeffs))
    vec: dict[tuple, Fraction] = {}
    parts = (("p", pentagon_residual(phi, d)),
             ("h+", hexagon_residual(phi, 1, d)),
             ("h-", hexagon_residual(phi, -1, d)))
    for tag, resid in parts:
        for w, c in resid.degree_part(d).coeffs.items():
            vec[(tag, w)] = c
    return vec


def solve(config: SolverConfig) -> AssociatorSeries:
    """Solve pentagon + both hexagons degree by degree up to max_degree."""
    coeffs: dict[Word, Fraction] = {}
    for d in range(2, config.max_degree + 1):
        if config.evenness and d % 2 == 1:
            if _residual_slice(coeffs, d):
                raise SolverError(
                    f"odd degree {d} residual nonzero under evenness constraint")
            continue
        variables = _variable_order(d, config.gauge_rule)
        base = _residual_slice(coeffs, d)
        columns = []
        for w in variables:
            probe = dict(coeffs)
            probe[w] = Fraction(1)
            col = dict(_residual_slice(probe, d))
            for key, c in base.items():
                v = col.get(key, Fraction(0)) - c
                if v:
                    col[key] = v
                else:
                    col.pop(key, None)
            columns.append(col)
        # rows of the augmented system: sum_j M[i][j] c_j + base_i = 0
        row_keys = sorted(set(base) | {k for col in columns for k in col})
        nvars = len(variables)
        span = RowSpan()
        for key in row_keys:
            row = {j: columns[j][key] for j in range(nvars) if key in columns[j]}
            if key in base:
                row[nvars] = base[key]
            span.insert(row)
        if nvars in span.pivots:
            raise SolverError(f"inconsistent linear system at degree {d}")
        solution = [Fraction(0)] * nvars
        for p in sorted(span.pivots, reverse=True):
            row = span.pivots[p]
            acc = Fraction(row.get(nvars, 0))
            for j, c in row.items():
                if j != p and j != nvars:
                    acc += c * solution[j]
            solution[p] = -acc / row[p]
        for w, value in zip(variables, solution):
            if value:
                coeffs[w] = value
    phi = AssociatorSeries(LieSeries(ALPHABET, config.max_degree, coeffs))
    # re-check from scratch: the residuals must vanish identically
    norms = residual_norms(phi, config.max_degree)
    if any(any(v) for v in norms.values()):
        raise SolverError("solver produced nonzero residuals; this is a bug")
    return phi


# -- persistence ------------------------------------------------------------------

def save(phi: AssociatorSeries, path: str | Path) -> None:
    Path(path).write_text(json.dumps(phi.log.to_json(), indent=2) + "\n")


def load(path: str | Path) -> AssociatorSeries:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise LoadError(str(exc), str(path)) from exc
    series = LieSeries.from_json(data)
    if series.alphabet != ALPHABET:
        raise LoadError("associator files must use the alphabet {A, B}", str(path))
    if not series.degree_part(1).is_zero():
        raise LoadError("log phi has a degree-1 term", str(path))
    if series.is_zero():
        warnings.warn("loaded the trivial associator phi = 1; residual checks "
                      "will fail beyond degree 1", stacklevel=2)
    return AssociatorSeries(series)
