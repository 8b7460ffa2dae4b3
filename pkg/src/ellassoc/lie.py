"""Completed free Lie algebras, truncated by degree.

Elements live in the Lyndon basis: a degree-d slice is spanned by the
standard-factorization brackets of the Lyndon words of weighted degree d.
Brackets, ad-power series and BCH are computed by expanding into the free
associative algebra and rewriting back, which doubles as a structural check
(a polynomial that is not a Lie element fails the rewrite loudly).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from ellassoc.errors import InvalidArgumentError, LoadError
from ellassoc.linalg import RowSpan

Word = tuple[str, ...]
Alphabet = tuple[tuple[str, int], ...]


@functools.lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """n-th Bernoulli number in the convention with B_1 = -1/2."""
    if n < 0:
        raise InvalidArgumentError("bernoulli: n must be >= 0")
    if n == 0:
        return Fraction(1)
    # sum_{k=0}^{n} C(n+1, k) B_k = 0
    acc = Fraction(0)
    for k in range(n):
        acc += comb(n + 1, k) * bernoulli(k)
    return -acc / (n + 1)


def _check_alphabet(alphabet: Alphabet) -> None:
    if not alphabet:
        raise InvalidArgumentError("alphabet must be nonempty")
    names = [name for name, _ in alphabet]
    if len(set(names)) != len(names):
        raise InvalidArgumentError("duplicate generator names")
    if any(deg < 1 for _, deg in alphabet):
        raise InvalidArgumentError("generator degrees must be positive")


def word_degree(word: Word, alphabet: Alphabet) -> int:
    degs = dict(alphabet)
    return sum(degs[letter] for letter in word)


def _index_tuple(word: Word, alphabet: Alphabet) -> tuple[int, ...]:
    idx = {name: i for i, (name, _) in enumerate(alphabet)}
    return tuple(idx[letter] for letter in word)


def _is_lyndon(iw: tuple[int, ...]) -> bool:
    if not iw:
        return False
    return all(iw < iw[k:] + iw[:k] for k in range(1, len(iw)))


@functools.lru_cache(maxsize=None)
def _words_of_degree(alphabet: Alphabet, degree: int) -> tuple[Word, ...]:
    """All words of exactly the given weighted degree, in index-lex order."""
    out: list[Word] = []

    def grow(prefix: Word, remaining: int) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for name, deg in alphabet:
            if deg <= remaining:
                grow(prefix + (name,), remaining - deg)

    grow((), degree)
    return tuple(out)


@dataclass(frozen=True)
class LyndonBracket:
    """A Lyndon word with its standard-factorization bracket tree."""

    word: Word
    alphabet: Alphabet

    def __post_init__(self):
        if not _is_lyndon(_index_tuple(self.word, self.alphabet)):
            raise InvalidArgumentError(f"{self.word} is not a Lyndon word")

    @property
    def degree(self) -> int:
        return word_degree(self.word, self.alphabet)

    @functools.cached_property
    def bracketing(self):
        """Nested-pair tree of names; a single name for length-1 words."""
        if len(self.word) == 1:
            return self.word[0]
        u, v = _standard_factorization(self.word, self.alphabet)
        left = LyndonBracket(u, self.alphabet).bracketing
        right = LyndonBracket(v, self.alphabet).bracketing
        return (left, right)


def _standard_factorization(word: Word, alphabet: Alphabet) -> tuple[Word, Word]:
    """Split a Lyndon word as u*v with v the longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if _is_lyndon(_index_tuple(word[i:], alphabet)):
            return word[:i], word[i:]
    raise AssertionError("unreachable for a Lyndon word of length >= 2")


def lyndon_basis(alphabet: Alphabet, degree: int) -> list[LyndonBracket]:
    """All Lyndon brackets of exactly the given degree, sorted lex."""
    _check_alphabet(alphabet)
    if degree < 1:
        raise InvalidArgumentError("degree must be >= 1")
    words = [w for w in _words_of_degree(alphabet, degree)
             if _is_lyndon(_index_tuple(w, alphabet))]
    return [LyndonBracket(w, alphabet) for w in words]


# -- free associative scratch arithmetic (words -> Fraction maps) --------

def _poly_mul(p: dict[Word, Fraction], q: dict[Word, Fraction],
              alphabet: Alphabet, max_degree: int) -> dict[Word, Fraction]:
    degs = dict(alphabet)
    pd = {w: sum(degs[x] for x in w) for w in p}
    qd = {w: sum(degs[x] for x in w) for w in q}
    out: dict[Word, Fraction] = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            if pd[w1] + qd[w2] > max_degree:
                continue
            w = w1 + w2
            v = out.get(w, Fraction(0)) + c1 * c2
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


@functools.lru_cache(maxsize=None)
def _bracket_expansion(tree, alphabet: Alphabet) -> tuple[tuple[Word, Fraction], ...]:
    """Associative expansion of a bracket tree (cached per tree)."""
    if isinstance(tree, str):
        return (((tree,), Fraction(1)),)
    left = dict(_bracket_expansion(tree[0], alphabet))
    right = dict(_bracket_expansion(tree[1], alphabet))
    big = 10 ** 9
    lr = _poly_mul(left, right, alphabet, big)
    rl = _poly_mul(right, left, alphabet, big)
    out = dict(lr)
    for w, c in rl.items():
        v = out.get(w, Fraction(0)) - c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return tuple(sorted(out.items()))


def _assoc_to_lyndon(poly: dict[Word, Fraction], alphabet: Alphabet) -> dict[Word, Fraction]:
    """Rewrite a Lie polynomial given associatively into Lyndon coordinates.

    Uses the triangularity of the Lyndon basis: the expansion of the bracket
    of a Lyndon word w is w plus lexicographically larger words of the same
    letter multiset.  Raises if the input is not a Lie element.
    """
    key = lambda w: _index_tuple(w, alphabet)
    work = {w: c for w, c in poly.items() if c}
    out: dict[Word, Fraction] = {}
    while work:
        w = min(work, key=key)
        c = work.pop(w)
        if not _is_lyndon(_index_tuple(w, alphabet)):
            raise InvalidArgumentError(
                f"polynomial is not a Lie element (offending word {w})")
        out[w] = c
        tree = LyndonBracket(w, alphabet).bracketing
        for u, cu in _bracket_expansion(tree, alphabet):
            if u == w:
                continue
            v = work.get(u, Fraction(0)) - c * cu
            if v:
                work[u] = v
            else:
                work.pop(u, None)
    return out


@dataclass(frozen=True)
class LieSeries:
    """Graded element of a completed free Lie algebra, truncated at `truncation`.

    coeffs maps Lyndon words (not trees) to nonzero rational coefficients.
    """

    alphabet: Alphabet
    truncation: int
    coeffs: dict[Word, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        clean = {}
        for w, c in self.coeffs.items():
            c = Fraction(c)
            if not c:
                continue
            if not _is_lyndon(_index_tuple(w, self.alphabet)):
                raise InvalidArgumentError(f"{w} is not a Lyndon word")
            if word_degree(w, self.alphabet) > self.truncation:
                continue
            clean[w] = c
        object.__setattr__(self, "coeffs", clean)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(alphabet: Alphabet, truncation: int) -> "LieSeries":
        return LieSeries(alphabet, truncation, {})

    @staticmethod
    def generator(name: str, alphabet: Alphabet, truncation: int) -> "LieSeries":
        return LieSeries(alphabet, truncation, {(name,): Fraction(1)})

    # -- ring-module structure --------------------------------------------

    def _binop(self, other: "LieSeries", sign: int) -> "LieSeries":
        if other.alphabet != self.alphabet:
            raise InvalidArgumentError("alphabet mismatch")
        n = min(self.truncation, other.truncation)
        coeffs = {w: c for w, c in self.coeffs.items()
                  if word_degree(w, self.alphabet) <= n}
        for w, c in other.coeffs.items():
            if word_degree(w, self.alphabet) > n:
                continue
            v = coeffs.get(w, Fraction(0)) + sign * c
            if v:
                coeffs[w] = v
            else:
                coeffs.pop(w, None)
        return LieSeries(self.alphabet, n, coeffs)

    def __add__(self, other: "LieSeries") -> "LieSeries":
        return self._binop(other, 1)

    def __sub__(self, other: "LieSeries") -> "LieSeries":
        return self._binop(other, -1)

    def __neg__(self) -> "LieSeries":
        return self.scale(-1)

    def scale(self, scalar) -> "LieSeries":
        s = Fraction(scalar)
        return LieSeries(self.alphabet, self.truncation,
                         {w: s * c for w, c in self.coeffs.items() if s * c})

    def truncated(self, n: int) -> "LieSeries":
        return LieSeries(self.alphabet, n, dict(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_part(self, d: int) -> "LieSeries":
        return LieSeries(self.alphabet, self.truncation,
                         {w: c for w, c in self.coeffs.items()
                          if word_degree(w, self.alphabet) == d})

    def valuation(self) -> int | None:
        if not self.coeffs:
            return None
        return min(word_degree(w, self.alphabet) for w in self.coeffs)

    def coefficient(self, word: Word) -> Fraction:
        return self.coeffs.get(tuple(word), Fraction(0))

    def to_assoc(self) -> dict[Word, Fraction]:
        """Expansion in the free associative algebra on the same alphabet."""
        out: dict[Word, Fraction] = {}
        for w, c in self.coeffs.items():
            tree = LyndonBracket(w, self.alphabet).bracketing
            for u, cu in _bracket_expansion(tree, self.alphabet):
                v = out.get(u, Fraction(0)) + c * cu
                if v:
                    out[u] = v
                else:
                    out.pop(u, None)
        return out

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        def tree_json(tree):
            return tree if isinstance(tree, str) else [tree_json(tree[0]), tree_json(tree[1])]

        terms = []
        for w in sorted(self.coeffs, key=lambda w: (word_degree(w, self.alphabet),
                                                    _index_tuple(w, self.alphabet))):
            terms.append({
                "degree": word_degree(w, self.alphabet),
                "bracket": tree_json(LyndonBracket(w, self.alphabet).bracketing),
                "coeff": str(self.coeffs[w]),
            })
        return {
            "alphabet": [{"name": n, "degree": d} for n, d in self.alphabet],
            "truncation": self.truncation,
            "terms": terms,
        }

    @staticmethod
    def from_json(data: dict) -> "LieSeries":
        try:
            alphabet = tuple((g["name"], int(g["degree"])) for g in data["alphabet"])
            truncation = int(data["truncation"])
            terms = data["terms"]
        except (KeyError, TypeError) as exc:
            raise LoadError(f"malformed LieSeries object: {exc}") from exc

        def tree_from(node, where: str):
            if isinstance(node, str):
                if node not in dict(alphabet):
                    raise LoadError(f"unknown generator {node!r}", where)
                return node
            if isinstance(node, list) and len(node) == 2:
                return (tree_from(node[0], where), tree_from(node[1], where))
            raise LoadError("bracket must be a name or a pair", where)

        series = LieSeries.zero(alphabet, truncation)
        for k, term in enumerate(terms):
            where = f"terms[{k}]"
            try:
                coeff = Fraction(term["coeff"])
                tree = tree_from(term["bracket"], where)
            except (KeyError, ValueError, ZeroDivisionError) as exc:
                raise LoadError(str(exc), where) from exc
            poly = {w: coeff * c for w, c in _bracket_expansion(tree, alphabet)}
            part = LieSeries(alphabet, truncation,
                             _assoc_to_lyndon(poly, alphabet))
            if "degree" in term and part.coeffs:
                degrees = {word_degree(w, alphabet) for w in part.coeffs}
                if degrees != {int(term["degree"])}:
                    raise LoadError("declared degree does not match bracket", where)
            series = series + part
        return series


# -- operations ------------------------------------------------------------

def from_assoc(poly: dict[Word, Fraction], alphabet: Alphabet, truncation: int) -> LieSeries:
    degs = dict(alphabet)
    poly = {w: c for w, c in poly.items()
            if c and sum(degs[x] for x in w) <= truncation}
    return LieSeries(alphabet, truncation, _assoc_to_lyndon(poly, alphabet))


def bracket(a: LieSeries, b: LieSeries, n: int | None = None) -> LieSeries:
    """Lie bracket [a, b] rewritten into the Lyndon basis, truncated at n."""
    if a.alphabet != b.alphabet:
        raise InvalidArgumentError("alphabet mismatch")
    if n is None:
        n = min(a.truncation, b.truncation)
    if n > min(a.truncation, b.truncation):
        raise InvalidArgumentError("truncation exceeds inputs")
    pa, pb = a.to_assoc(), b.to_assoc()
    ab = _poly_mul(pa, pb, a.alphabet, n)
    ba = _poly_mul(pb, pa, a.alphabet, n)
    for w, c in ba.items():
        v = ab.get(w, Fraction(0)) - c
        if v:
            ab[w] = v
        else:
            ab.pop(w, None)
    return from_assoc(ab, a.alphabet, n)


def ad_series(b: LieSeries, a: LieSeries, coeffs, n: int | None = None) -> LieSeries:
    """sum_i coeffs[i] (ad b)^i (a), truncated at n."""
    if a.alphabet != b.alphabet:
        raise InvalidArgumentError("alphabet mismatch")
    if n is None:
        n = min(a.truncation, b.truncation)
    acc = LieSeries.zero(a.alphabet, n)
    term = a.truncated(n)
    for i, c in enumerate(coeffs):
        if i > 0:
            term = bracket(b, term, n)
            if term.is_zero():
                break
        if c:
            acc = acc + term.scale(c)
    return acc


def _assoc_exp(poly: dict[Word, Fraction], alphabet: Alphabet, n: int) -> dict[Word, Fraction]:
    out = {(): Fraction(1)}
    power = {(): Fraction(1)}
    for k in range(1, n + 1):
        power = _poly_mul(power, poly, alphabet, n)
        if not power:
            break
        inv = Fraction(1, factorial(k))
        for w, c in power.items():
            v = out.get(w, Fraction(0)) + inv * c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def _assoc_log(poly: dict[Word, Fraction], alphabet: Alphabet, n: int) -> dict[Word, Fraction]:
    rest = dict(poly)
    rest.pop((), None)
    out: dict[Word, Fraction] = {}
    power = {(): Fraction(1)}
    for k in range(1, n + 1):
        power = _poly_mul(power, rest, alphabet, n)
        if not power:
            break
        sign = Fraction((-1) ** (k + 1), k)
        for w, c in power.items():
            v = out.get(w, Fraction(0)) + sign * c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def bch(a: LieSeries, b: LieSeries, n: int | None = None) -> LieSeries:
    """log(exp(a) exp(b)) as a Lie series, truncated at n."""
    if a.alphabet != b.alphabet:
        raise InvalidArgumentError("alphabet mismatch")
    if n is None:
        n = min(a.truncation, b.truncation)
    if n < 0:
        raise InvalidArgumentError("truncation must be >= 0")
    prod = _poly_mul(_assoc_exp(a.to_assoc(), a.alphabet, n),
                     _assoc_exp(b.to_assoc(), a.alphabet, n), a.alphabet, n)
    return from_assoc(_assoc_log(prod, a.alphabet, n), a.alphabet, n)


# -- brute-force quotients of presented Lie algebras ------------------------

def lie_quotient_dims(alphabet: Alphabet, relations: list[LieSeries], n: int) -> list[int]:
    """Degree-d dimensions (d = 1..n) of FreeLie(alphabet)/<relations>.

    The ideal is generated by closing the relation set under bracketing with
    the generators; each degree slice is echelonized in Lyndon coordinates.
    This is the independent oracle used by PBW cross-checks.
    """
    by_degree: dict[int, list[LieSeries]] = {d: [] for d in range(1, n + 1)}
    for r in relations:
        degrees = {word_degree(w, alphabet) for w in r.coeffs}
        if len(degrees) != 1:
            raise InvalidArgumentError("relations must be homogeneous")
        d = degrees.pop()
        if d <= n:
            by_degree[d].append(r.truncated(n))
    for d in range(1, n + 1):
        for name, gdeg in alphabet:
            src = d - gdeg
            if src >= 1:
                g = LieSeries.generator(name, alphabet, n)
                by_degree[d].extend(bracket(g, r, n) for r in by_degree[src])
    dims = []
    for d in range(1, n + 1):
        basis = [lb.word for lb in lyndon_basis(alphabet, d)]
        col = {w: i for i, w in enumerate(basis)}
        span = RowSpan()
        for r in by_degree[d]:
            span.insert({col[w]: c for w, c in r.coeffs.items()})
        dims.append(len(basis) - span.rank)
    return dims
