"""Presented graded Lie algebras and their truncated enveloping algebras.

A TruncatedAlgebra is the quotient of the free associative algebra on the
generators by the two-sided ideal generated by the (commutator-rewritten)
Lie relations, computed degree by degree: the span {u * r * v} is
echelonized exactly and the surviving (non-pivot) words form the basis.
Row reduction is the semantic oracle here; no rewriting system is used.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from math import factorial

from ellassoc.errors import InvalidArgumentError, LoadError
from ellassoc.lie import Alphabet, LieSeries, Word, _words_of_degree, word_degree
from ellassoc.linalg import RowSpan

Poly = dict[Word, Fraction]


def intersection(v: str, w: str) -> Fraction:
    """Intersection form on H_1 of the torus, normalized so <x,y> = 1.

    This orientation makes [x_i, y_j] = t_ij for i != j, which is the sign
    the elliptic-associator identities (and the u-map compatibility checks)
    force; the opposite normalization fails identity 2 already in degree 2.
    """
    if (v, w) == ("x", "y"):
        return Fraction(1)
    if (v, w) == ("y", "x"):
        return Fraction(-1)
    return Fraction(0)


def _add_term(poly: Poly, word: Word, coeff: Fraction) -> None:
    v = poly.get(word, Fraction(0)) + coeff
    if v:
        poly[word] = v
    else:
        poly.pop(word, None)


class Presentation:
    """Generators with degrees plus homogeneous relations in associative form."""

    def __init__(self, name: str, generators: Alphabet, relations: list[Poly]):
        self.name = name
        self.generators = tuple(generators)
        names = {g for g, _ in self.generators}
        for rel in relations:
            degs = {word_degree(w, self.generators) for w in rel}
            if len(degs) != 1:
                raise InvalidArgumentError("relations must be homogeneous")
            for w in rel:
                if any(letter not in names for letter in w):
                    raise InvalidArgumentError(f"relation uses unknown generator in {w}")
        self.relations = tuple({w: Fraction(c) for w, c in rel.items() if c}
                               for rel in relations)

    def degree_of(self, word: Word) -> int:
        return word_degree(word, self.generators)


class TruncatedAlgebra:
    """Degree-truncated enveloping algebra of a presented graded Lie algebra."""

    def __init__(self, presentation: Presentation, truncation: int):
        if truncation < 1:
            raise InvalidArgumentError("truncation must be >= 1")
        self.presentation = presentation
        self.truncation = truncation
        self.generators = presentation.generators
        self._degrees = dict(self.generators)
        self._spans: dict[int, RowSpan] = {}
        self._bases: dict[int, tuple[Word, ...]] = {0: ((),)}
        self._word_nf: dict[Word, Poly] = {(): {(): Fraction(1)}}
        for d in range(1, truncation + 1):
            self._build_degree(d)

    # -- construction -------------------------------------------------------

    def words(self, d: int) -> tuple[Word, ...]:
        if d == 0:
            return ((),)
        return _words_of_degree(self.generators, d)

    def _build_degree(self, d: int) -> None:
        words = self.words(d)
        col = {w: i for i, w in enumerate(words)}
        span = RowSpan()
        for rel in self.presentation.relations:
            rdeg = self.presentation.degree_of(next(iter(rel)))
            if rdeg > d:
                continue
            for a in range(d - rdeg + 1):
                for u in self.words(a):
                    for v in self.words(d - rdeg - a):
                        row = {}
                        for w, c in rel.items():
                            _add_term(row, u + w + v, c)
                        if row:
                            span.insert({col[w]: c for w, c in row.items()})
        self._spans[d] = span
        pivots = set(span.pivots)
        self._bases[d] = tuple(w for i, w in enumerate(words) if i not in pivots)

    # -- basis and reduction --------------------------------------------------

    def basis(self, d: int) -> tuple[Word, ...]:
        if d < 0 or d > self.truncation:
            raise InvalidArgumentError(f"degree {d} outside truncation")
        return self._bases[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def degree_of(self, word: Word) -> int:
        return self.presentation.degree_of(word)

    def reduce_word(self, word: Word) -> Poly:
        """Normal form of a raw word as a combination of basis words."""
        cached = self._word_nf.get(word)
        if cached is not None:
            return cached
        d = self.degree_of(word)
        if d > self.truncation:
            out: Poly = {}
        else:
            words = self.words(d)
            col = {w: i for i, w in enumerate(words)}
            red = self._spans[d].reduce({col[word]: Fraction(1)})
            out = {words[i]: c for i, c in red.items()}
        self._word_nf[word] = out
        return out

    def reduce(self, poly: Poly) -> Poly:
        out: Poly = {}
        for w, c in poly.items():
            if not c or self.degree_of(w) > self.truncation:
                continue
            for bw, bc in self.reduce_word(w).items():
                _add_term(out, bw, c * bc)
        return out

    # -- element constructors -------------------------------------------------

    def element(self, raw: Poly, truncation: int | None = None) -> "AlgebraElement":
        n = self.truncation if truncation is None else truncation
        return AlgebraElement(self, n, self.reduce(raw))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, self.truncation, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.truncation, {(): Fraction(1)})

    def generator(self, name: str) -> "AlgebraElement":
        if name not in self._degrees:
            raise InvalidArgumentError(f"unknown generator {name!r}")
        return self.element({(name,): Fraction(1)})

    def from_lie(self, series: LieSeries) -> "AlgebraElement":
        """Image of a Lie series under generator-name identification."""
        return self.element(series.to_assoc(), min(self.truncation, series.truncation))


class AlgebraElement:
    """Element of a TruncatedAlgebra in reduced (echelon) coordinates."""

    __slots__ = ("algebra", "truncation", "coeffs")

    def __init__(self, algebra: TruncatedAlgebra, truncation: int, coeffs: Poly):
        self.algebra = algebra
        self.truncation = min(truncation, algebra.truncation)
        self.coeffs = {w: Fraction(c) for w, c in coeffs.items()
                       if c and algebra.degree_of(w) <= self.truncation}

    # -- inspection -----------------------------------------------------------

    def degree_part(self, d: int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.truncation,
                              {w: c for w, c in self.coeffs.items()
                               if self.algebra.degree_of(w) == d})

    def constant_term(self) -> Fraction:
        return self.coeffs.get((), Fraction(0))

    def valuation(self) -> int | None:
        if not self.coeffs:
            return None
        return min(self.algebra.degree_of(w) for w in self.coeffs)

    def coefficient(self, word: Word) -> Fraction:
        return self.coeffs.get(tuple(word), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support_size(self) -> int:
        return len(self.coeffs)

    def truncated(self, n: int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, n, self.coeffs)

    # -- arithmetic -------------------------------------------------------------

    def _require_same(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra:
            raise InvalidArgumentError("elements of different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            _add_term(out, w, c)
        return AlgebraElement(self.algebra, min(self.truncation, other.truncation), out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def scale(self, scalar) -> "AlgebraElement":
        s = Fraction(scalar)
        return AlgebraElement(self.algebra, self.truncation,
                              {w: s * c for w, c in self.coeffs.items()})

    def __rmul__(self, scalar) -> "AlgebraElement":
        return self.scale(scalar)

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraElement) and other.algebra is self.algebra
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for w in sorted(self.coeffs, key=lambda w: (self.algebra.degree_of(w), w)):
            c = self.coeffs[w]
            name = "*".join(w) if w else "1"
            bits.append(f"{c}*{name}" if w else f"{c}")
        return " + ".join(bits)

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        terms = [{"word": list(w), "coeff": str(c)}
                 for w, c in sorted(self.coeffs.items(),
                                    key=lambda item: (self.algebra.degree_of(item[0]), item[0]))]
        return {"algebra": self.algebra.presentation.name,
                "truncation": self.truncation, "terms": terms}

    @staticmethod
    def from_json(data: dict, algebra: TruncatedAlgebra) -> "AlgebraElement":
        try:
            if data["algebra"] != algebra.presentation.name:
                raise LoadError(f"element belongs to {data['algebra']!r}, "
                                f"not {algebra.presentation.name!r}")
            n = int(data["truncation"])
            raw: Poly = {}
            for k, term in enumerate(data["terms"]):
                word = tuple(term["word"])
                for letter in word:
                    if letter not in algebra._degrees:
                        raise LoadError(f"unknown generator {letter!r}", f"terms[{k}]")
                _add_term(raw, word, Fraction(term["coeff"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise LoadError(f"malformed element: {exc}") from exc
        return algebra.element(raw, n)


# -- algebra operations ----------------------------------------------------------

def multiply(a: AlgebraElement, b: AlgebraElement, n: int | None = None) -> AlgebraElement:
    a._require_same(b)
    if n is None:
        n = min(a.truncation, b.truncation)
    alg = a.algebra
    out: Poly = {}
    for wa, ca in a.coeffs.items():
        da = alg.degree_of(wa)
        for wb, cb in b.coeffs.items():
            if da + alg.degree_of(wb) > n:
                continue
            for w, c in alg.reduce_word(wa + wb).items():
                _add_term(out, w, ca * cb * c)
    return AlgebraElement(alg, n, out)


def exp(a: AlgebraElement) -> AlgebraElement:
    if a.constant_term():
        raise InvalidArgumentError("exp requires positive valuation")
    n = a.truncation
    out = a.algebra.one().truncated(n)
    power = a.algebra.one().truncated(n)
    for k in range(1, n + 1):
        power = multiply(power, a, n)
        if power.is_zero():
            break
        out = out + power.scale(Fraction(1, factorial(k)))
    return out


def log(g: AlgebraElement) -> AlgebraElement:
    if g.constant_term() != 1:
        raise InvalidArgumentError("log requires degree-0 part equal to 1")
    n = g.truncation
    rest = g - g.algebra.one().truncated(n)
    out = g.algebra.zero().truncated(n)
    power = g.algebra.one().truncated(n)
    for k in range(1, n + 1):
        power = multiply(power, rest, n)
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def inverse(g: AlgebraElement) -> AlgebraElement:
    if g.constant_term() != 1:
        raise InvalidArgumentError("inverse requires degree-0 part equal to 1")
    n = g.truncation
    rest = g - g.algebra.one().truncated(n)
    out = g.algebra.one().truncated(n)
    power = g.algebra.one().truncated(n)
    for _ in range(n):
        power = multiply(power, rest.scale(-1), n)
        if power.is_zero():
            break
        out = out + power
    return out


def substitute(series: AlgebraElement, assignment: dict[str, AlgebraElement],
               target: TruncatedAlgebra, n: int | None = None) -> AlgebraElement:
    """Image of `series` under the algebra morphism letter -> assignment[letter].

    The series lives in a free algebra; every assigned image must have
    positive valuation so the morphism is degree-filtered and the truncated
    result is well defined.
    """
    if n is None:
        n = target.truncation
    images = {}
    for letter, img in assignment.items():
        if img.algebra is not target:
            raise InvalidArgumentError("assignment images must live in the target algebra")
        if img.constant_term():
            raise InvalidArgumentError(f"assignment for {letter!r} must have positive valuation")
        images[letter] = img.truncated(n)
    out = target.zero().truncated(n)
    one = target.one().truncated(n)
    for word, c in series.coeffs.items():
        if len(word) > n:
            continue
        prod = one
        for letter in word:
            if letter not in images:
                raise InvalidArgumentError(f"no assignment for generator {letter!r}")
            prod = multiply(prod, images[letter], n)
            if prod.is_zero():
                break
        out = out + prod.scale(c)
    return out


# -- standard algebras ----------------------------------------------------------

@functools.lru_cache(maxsize=None)
def build_free_assoc(alphabet: Alphabet, truncation: int) -> TruncatedAlgebra:
    """Free associative algebra: no relations, basis = all words per degree."""
    names = ",".join(name for name, _ in alphabet)
    return TruncatedAlgebra(Presentation(f"free({names})", alphabet, []), truncation)


def _commutator(u: Word, v: Word) -> Poly:
    return {u + v: Fraction(1), v + u: Fraction(-1)}


@functools.lru_cache(maxsize=None)
def build_dk(n: int, truncation: int) -> TruncatedAlgebra:
    """Drinfeld-Kohno algebra U t^_n hosting the pentagon/hexagon equations."""
    if n < 2:
        raise InvalidArgumentError("build_dk requires n >= 2")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    gens = tuple((f"t{i}{j}", 1) for i, j in pairs)
    t = {(i, j): (f"t{i}{j}",) for i, j in pairs}
    relations: list[Poly] = []
    for (i, j), (k, l) in itertools.combinations(pairs, 2):
        if {i, j} & {k, l}:
            continue
        relations.append(_commutator(t[i, j], t[k, l]))
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        for a, b, c in ((i, j, k), (i, k, j), (j, k, i)):
            lo, hi = min(a, b), max(a, b)
            rel: Poly = {}
            for other in (tuple(sorted((a, c))), tuple(sorted((b, c)))):
                for w, coeff in _commutator(t[lo, hi], t[other]).items():
                    _add_term(rel, w, coeff)
            relations.append(rel)
    return TruncatedAlgebra(Presentation(f"dk({n})", gens, relations), truncation)


def t1n_presentation(n: int) -> Presentation:
    if n < 1:
        raise InvalidArgumentError("build_t1n requires n >= 1")
    gens = []
    for i in range(1, n + 1):
        gens.append((f"x{i}", 1))
        gens.append((f"y{i}", 1))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    gens.extend((f"t{i}{j}", 2) for i, j in pairs)
    t = {(i, j): (f"t{i}{j}",) for i, j in pairs}

    def tpair(i: int, j: int) -> Word:
        return t[min(i, j), max(i, j)]

    relations: list[Poly] = []
    # [v_i, w_j] = <v,w> t_ij for i != j
    for i, j in pairs:
        for v in "xy":
            for w in "xy":
                rel = _commutator((f"{v}{i}",), (f"{w}{j}",))
                _add_term(rel, tpair(i, j), -intersection(v, w))
                relations.append(rel)
    # [v_i, t_jk] = 0 for i, j, k distinct
    for j, k in pairs:
        for i in range(1, n + 1):
            if i in (j, k):
                continue
            for v in "xy":
                relations.append(_commutator((f"{v}{i}",), tpair(j, k)))
    # [x_i, y_i] = -sum_{j != i} t_ij
    for i in range(1, n + 1):
        rel = _commutator((f"x{i}",), (f"y{i}",))
        for j in range(1, n + 1):
            if j != i:
                _add_term(rel, tpair(i, j), Fraction(1))
        relations.append(rel)
    return Presentation(f"t1n({n})", tuple(gens), relations)


@functools.lru_cache(maxsize=None)
def build_t1n(n: int, truncation: int) -> TruncatedAlgebra:
    """U t^_{1,n}: the enveloping algebra of the genus-1 braid Lie algebra."""
    return TruncatedAlgebra(t1n_presentation(n), truncation)


# -- generated subalgebras (membership predicate) --------------------------------

class GeneratedSubalgebra:
    """Span of all products of a generator subset, degree by degree."""

    def __init__(self, algebra: TruncatedAlgebra, gen_names: tuple[str, ...]):
        self.algebra = algebra
        for g in gen_names:
            if g not in algebra._degrees:
                raise InvalidArgumentError(f"unknown generator {g!r}")
        self.gen_names = tuple(gen_names)
        self._sub_alphabet = tuple((g, algebra._degrees[g]) for g in self.gen_names)
        self._spans: dict[int, RowSpan] = {}

    def words(self, d: int) -> tuple[Word, ...]:
        return _words_of_degree(self._sub_alphabet, d)

    def _span(self, d: int) -> RowSpan:
        span = self._spans.get(d)
        if span is None:
            span = RowSpan()
            basis = self.algebra.basis(d)
            col = {w: i for i, w in enumerate(basis)}
            for word in self.words(d):
                nf = self.algebra.reduce_word(word)
                if nf:
                    span.insert({col[w]: c for w, c in nf.items()})
            self._spans[d] = span
        return span

    def dim(self, d: int) -> int:
        return self._span(d).rank

    def contains(self, elem: AlgebraElement) -> bool:
        if elem.algebra is not self.algebra:
            raise InvalidArgumentError("element of a different algebra")
        for d in range(1, elem.truncation + 1):
            part = elem.degree_part(d)
            if part.is_zero():
                continue
            basis = self.algebra.basis(d)
            col = {w: i for i, w in enumerate(basis)}
            if not self._span(d).contains({col[w]: c for w, c in part.coeffs.items()}):
                return False
        return True
