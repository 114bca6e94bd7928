"""Rational expressions: syntax, semantics, derivatives, and splitting.

The term algebra is the usual one (0, 1, letters, concatenation, union,
star).  Terms are immutable and hashable, which lets normalized terms
serve directly as automaton states.  `member_naive` is a deliberately
derivative-free membership oracle used to cross-check everything built
on top of `deriv`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, NamedTuple


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of single-character symbols; the order is fixed
    for a run and drives every tie-break (BFS, witness words, sorting)."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be nonempty")
        seen = set()
        for c in self.letters:
            if len(c) != 1 or not ("a" <= c <= "z"):
                raise ValueError(f"alphabet symbols must be single letters a-z, got {c!r}")
            if c in seen:
                raise ValueError(f"duplicate alphabet symbol {c!r}")
            seen.add(c)

    @classmethod
    def parse(cls, text: str) -> "Alphabet":
        return cls(tuple(text))

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, c: str) -> bool:
        return c in self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def index(self, c: str) -> int:
        return self.letters.index(c)


class RatExpr:
    """Base class for rational expression terms."""

    __slots__ = ()

    def __str__(self) -> str:
        return rexp_to_str(self)


@dataclass(frozen=True)
class Zero(RatExpr):
    pass


@dataclass(frozen=True)
class One(RatExpr):
    pass


@dataclass(frozen=True)
class Letter(RatExpr):
    symbol: str


@dataclass(frozen=True)
class Concat(RatExpr):
    left: RatExpr
    right: RatExpr


@dataclass(frozen=True)
class Sum(RatExpr):
    left: RatExpr
    right: RatExpr


@dataclass(frozen=True)
class Star(RatExpr):
    body: RatExpr


ZERO = Zero()
ONE = One()


def structural_key(t: RatExpr):
    """Total order on terms: constructor rank, then children lexicographically."""
    match t:
        case Zero():
            return (0,)
        case One():
            return (1,)
        case Letter(c):
            return (2, c)
        case Star(x):
            return (3, structural_key(x))
        case Concat(l, r):
            return (4, structural_key(l), structural_key(r))
        case Sum(l, r):
            return (5, structural_key(l), structural_key(r))
    raise TypeError(f"not a rational expression: {t!r}")


def rcat(l: RatExpr, r: RatExpr) -> RatExpr:
    """Concatenation with unit/zero folding (language-preserving)."""
    if l == ZERO or r == ZERO:
        return ZERO
    if l == ONE:
        return r
    if r == ONE:
        return l
    return Concat(l, r)


def rsum(l: RatExpr, r: RatExpr) -> RatExpr:
    if l == ZERO:
        return r
    if r == ZERO:
        return l
    if l == r:
        return l
    return Sum(l, r)


def rstar(x: RatExpr) -> RatExpr:
    if x == ZERO or x == ONE:
        return ONE
    if isinstance(x, Star):
        return x
    return Star(x)


def sum_of(terms: Iterable[RatExpr]) -> RatExpr:
    """Right-nested sum of the given terms; ZERO for an empty collection."""
    items = list(terms)
    if not items:
        return ZERO
    acc = items[-1]
    for t in reversed(items[:-1]):
        acc = Sum(t, acc)
    return acc


def ewp(t: RatExpr) -> bool:
    """Empty word property: does the language of t contain the empty word?"""
    match t:
        case Zero() | Letter(_):
            return False
        case One() | Star(_):
            return True
        case Sum(l, r):
            return ewp(l) or ewp(r)
        case Concat(l, r):
            return ewp(l) and ewp(r)
    raise TypeError(f"not a rational expression: {t!r}")


def _flatten_sum(t: RatExpr, acc: list[RatExpr]) -> None:
    if isinstance(t, Sum):
        _flatten_sum(t.left, acc)
        _flatten_sum(t.right, acc)
    else:
        acc.append(t)


def normalize_b(t: RatExpr) -> RatExpr:
    """Canonical representative of t modulo sum-ACI and unit/zero laws.

    Sums are flattened, deduplicated, purged of 0 and sorted by the
    structural order; concatenations drop 1-units and collapse on 0.
    Idempotent, language-preserving and compatible with `deriv`/`ewp`
    (the property suite checks all three).
    """
    match t:
        case Zero() | One() | Letter(_):
            return t
        case Star(x):
            return Star(normalize_b(x))
        case Concat(l, r):
            ln = normalize_b(l)
            rn = normalize_b(r)
            if ln == ZERO or rn == ZERO:
                return ZERO
            if ln == ONE:
                return rn
            if rn == ONE:
                return ln
            return Concat(ln, rn)
        case Sum(_, _):
            raw: list[RatExpr] = []
            _flatten_sum(t, raw)
            flat: list[RatExpr] = []
            for s in raw:
                # normalizing a summand may surface a nested sum, e.g. 1·(a+b)
                _flatten_sum(normalize_b(s), flat)
            parts = sorted(set(flat) - {ZERO}, key=structural_key)
            return sum_of(parts)
    raise TypeError(f"not a rational expression: {t!r}")


def _deriv_raw(t: RatExpr, a: str) -> RatExpr:
    match t:
        case Zero() | One():
            return ZERO
        case Letter(c):
            return ONE if c == a else ZERO
        case Sum(l, r):
            return Sum(_deriv_raw(l, a), _deriv_raw(r, a))
        case Concat(l, r):
            guard = ONE if ewp(l) else ZERO
            return Sum(Concat(_deriv_raw(l, a), r), Concat(guard, _deriv_raw(r, a)))
        case Star(x):
            return Concat(_deriv_raw(x, a), t)
    raise TypeError(f"not a rational expression: {t!r}")


@lru_cache(maxsize=None)
def deriv(t: RatExpr, a: str) -> RatExpr:
    """Left derivative of t by the symbol a, in normalize_b normal form."""
    return normalize_b(_deriv_raw(t, a))


def word_deriv(t: RatExpr, u: str) -> RatExpr:
    """Left derivative by a whole word (left fold of `deriv`)."""
    res = normalize_b(t)
    for a in u:
        res = deriv(res, a)
    return res


@lru_cache(maxsize=None)
def _member(t: RatExpr, u: str) -> bool:
    match t:
        case Zero():
            return False
        case One():
            return u == ""
        case Letter(c):
            return u == c
        case Sum(l, r):
            return _member(l, u) or _member(r, u)
        case Concat(l, r):
            return any(_member(l, u[:i]) and _member(r, u[i:]) for i in range(len(u) + 1))
        case Star(x):
            if u == "":
                return True
            return any(_member(x, u[:i]) and _member(t, u[i:]) for i in range(1, len(u) + 1))
    raise TypeError(f"not a rational expression: {t!r}")


def member_naive(t: RatExpr, u: str) -> bool:
    """Membership by structural recursion over all factorizations.

    No derivatives involved; this is the independent oracle.  Memoized on
    (subterm, substring), so repeated queries over a word corpus are cheap.
    """
    return _member(t, u)


class SplitPair(NamedTuple):
    left: RatExpr
    right: RatExpr


def _split_raw(t: RatExpr) -> list[tuple[RatExpr, RatExpr]]:
    match t:
        case Zero():
            return []
        case One():
            return [(ONE, ONE)]
        case Letter(_):
            return [(ONE, t), (t, ONE)]
        case Sum(l, r):
            return _split_raw(l) + _split_raw(r)
        case Concat(l, r):
            return [(l0, Concat(l1, r)) for (l0, l1) in _split_raw(l)] + [
                (Concat(l, r0), r1) for (r0, r1) in _split_raw(r)
            ]
        case Star(x):
            inner = [(Concat(t, x0), Concat(x1, t)) for (x0, x1) in _split_raw(x)]
            return inner + [(ONE, ONE), (Concat(t, x), ONE)]
    raise TypeError(f"not a rational expression: {t!r}")


def split(t: RatExpr) -> list[SplitPair]:
    """All two-way factorizations of the language of t, as expression pairs.

    Every returned pair (l, r) satisfies language(l·r) ⊆ language(t), and
    every factorization u·v of a word of t is witnessed by some pair.
    Pairs are normalize_b-normalized and deduplicated.
    """
    seen = {(normalize_b(l), normalize_b(r)) for l, r in _split_raw(t)}
    ordered = sorted(seen, key=lambda p: (structural_key(p[0]), structural_key(p[1])))
    return [SplitPair(l, r) for l, r in ordered]


def letters_of(t: RatExpr) -> set[str]:
    match t:
        case Letter(c):
            return {c}
        case Concat(l, r) | Sum(l, r):
            return letters_of(l) | letters_of(r)
        case Star(x):
            return letters_of(x)
        case _:
            return set()


def infer_alphabet(*terms: RatExpr, fallback: str = "a") -> Alphabet:
    """Alphabet of all letters occurring in the terms, in a-z order.

    Letter-free inputs (plain 0 or 1) fall back to a one-letter alphabet so
    that complement-style constructions stay well-defined.
    """
    letters: set[str] = set()
    for t in terms:
        letters |= letters_of(t)
    if not letters:
        letters = {fallback}
    return Alphabet(tuple(sorted(letters)))


def words_up_to(alphabet: Alphabet, maxlen: int) -> Iterator[str]:
    """All words of length <= maxlen, shortest first, alphabet order within a length."""
    for n in range(maxlen + 1):
        for tup in product(alphabet.letters, repeat=n):
            yield "".join(tup)


def enumerate_language(t: RatExpr, maxlen: int, alphabet: Alphabet | None = None) -> list[str]:
    """All words of the language of t up to the given length, via member_naive."""
    if alphabet is None:
        alphabet = infer_alphabet(t)
    return [u for u in words_up_to(alphabet, maxlen) if member_naive(t, u)]


def render_rexp(t: RatExpr, level: int) -> str:
    """Render t assuming the surrounding context binds at `level`
    (0 = sum, 1 = concatenation, 2 = concatenation operand, 3 = postfix operand)."""
    match t:
        case Zero():
            return "0"
        case One():
            return "1"
        case Letter(c):
            return c
        case Star(x):
            return render_rexp(x, 3) + "*"
        case Concat(l, r):
            s = render_rexp(l, 2) + render_rexp(r, 1)
            return f"({s})" if level > 1 else s
        case Sum(l, r):
            s = render_rexp(l, 1) + "+" + render_rexp(r, 0)
            return f"({s})" if level > 0 else s
    raise TypeError(f"not a rational expression: {t!r}")


def rexp_to_str(t: RatExpr) -> str:
    """Printer inverse to the parser: parse(rexp_to_str(t)) reproduces t."""
    return render_rexp(t, 0)
