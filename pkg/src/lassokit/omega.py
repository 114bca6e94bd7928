"""Omega expressions, the Buchi membership oracle, and the pipeline that
turns an omega expression into a finite saturated lasso automaton.

The pipeline has two stages.  `h_map` translates an omega expression
into a disjunctive form whose lassos denote exactly the ultimately
periodic words of the expression, and whose lasso set is closed under
rewrite expansion.  `gamma_map` then closes the set under rewrite
reduction using splitting, intersection and the root operation, after
which compilation yields a saturated automaton.

The oracle (`to_nba`/`up_member`) goes through a nondeterministic Buchi
automaton and shares nothing with the lasso machinery, so pipeline bugs
cannot cancel out in the tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import CertificationError, NullableLoopError, ParseError
from .langops import boolean_combine, compile_dfa, dfa_to_expr, is_empty_dfa, root
from .lassoexp import DisjunctiveForm, compile_lasso, df_letters
from .lassos import Lasso
from .ratexp import (
    Alphabet,
    ONE,
    RatExpr,
    ZERO,
    ewp,
    letters_of,
    normalize_b,
    rcat,
    render_rexp,
    rexp_to_str,
    rstar,
    split,
)
from .syntax import RawExpr, parse_raw, raw_to_rexp


class OmegaExpr:
    __slots__ = ()

    def __str__(self) -> str:
        return oexp_to_str(self)


@dataclass(frozen=True)
class OZero(OmegaExpr):
    pass


@dataclass(frozen=True)
class OmegaPower(OmegaExpr):
    body: RatExpr

    def __post_init__(self):
        if ewp(self.body):
            raise NullableLoopError(
                f"'$' requires a body without the empty word, got {rexp_to_str(self.body)!r}"
            )


@dataclass(frozen=True)
class OPrefix(OmegaExpr):
    head: RatExpr
    tail: OmegaExpr


@dataclass(frozen=True)
class OSum(OmegaExpr):
    left: OmegaExpr
    right: OmegaExpr


OZERO = OZero()


def oprefix(t: RatExpr, T: OmegaExpr) -> OmegaExpr:
    if t == ZERO or T == OZERO:
        return OZERO
    if t == ONE:
        return T
    return OPrefix(t, T)


def osum(l: OmegaExpr, r: OmegaExpr) -> OmegaExpr:
    if l == OZERO:
        return r
    if r == OZERO:
        return l
    return OSum(l, r)


def _raw_to_oexp(raw: RawExpr) -> OmegaExpr:
    match raw:
        case ("zero",):
            return OZERO
        case ("sum", l, r):
            return OSum(_raw_to_oexp(l), _raw_to_oexp(r))
        case ("cat", l, r):
            return OPrefix(raw_to_rexp(l), _raw_to_oexp(r))
        case ("omega", x):
            return OmegaPower(raw_to_rexp(x))
    raise ParseError("expected an omega expression; every branch must end in '$' or 0")


def parse_oexpr(text: str, alphabet: Alphabet | None = None) -> OmegaExpr:
    """Parse an omega expression (grammar with postfix '$')."""
    return _raw_to_oexp(parse_raw(text, frozenset({"omega"}), alphabet))


def oexp_to_str(T: OmegaExpr) -> str:
    def go(T: OmegaExpr, level: int) -> str:
        match T:
            case OZero():
                return "0"
            case OmegaPower(r):
                return render_rexp(r, 3) + "$"
            case OPrefix(t, tail):
                s = render_rexp(t, 2) + go(tail, 1)
                return f"({s})" if level > 1 else s
            case OSum(l, r):
                s = go(l, 1) + "+" + go(r, 0)
                return f"({s})" if level > 0 else s
        raise TypeError(f"not an omega expression: {T!r}")

    return go(T, 0)


def oexp_letters(T: OmegaExpr) -> set[str]:
    match T:
        case OZero():
            return set()
        case OmegaPower(r):
            return letters_of(r)
        case OPrefix(t, tail):
            return letters_of(t) | oexp_letters(tail)
        case OSum(l, r):
            return oexp_letters(l) | oexp_letters(r)
    raise TypeError(f"not an omega expression: {T!r}")


def _oexp_alphabet(T: OmegaExpr, alphabet: Alphabet | None) -> Alphabet:
    if alphabet is not None:
        return alphabet
    letters = oexp_letters(T)
    return Alphabet(tuple(sorted(letters))) if letters else Alphabet(("a",))


# ---------------------------------------------------------------------------
# Buchi oracle


@dataclass(frozen=True)
class Nba:
    """Nondeterministic Buchi automaton; oracle machinery only."""

    alphabet: Alphabet
    n_states: int
    transitions: frozenset[tuple[int, str, int]]
    initials: frozenset[int]
    accepting: frozenset[int]


@lru_cache(maxsize=None)
def to_nba(T: OmegaExpr, alphabet: Alphabet | None = None) -> Nba:
    """Buchi automaton for the omega language of T.

    Finite parts are compiled to DFAs.  An omega power keeps the DFA's
    transitions and adds a fresh accepting initial state; every edge into
    a final DFA state is duplicated to point back at it, so hitting it
    infinitely often decomposes the word into infinitely many body words.
    Prefixing glues a DFA in front of the tail automaton by redirecting
    edges into final states onto the tail's initial states.
    """
    alphabet = _oexp_alphabet(T, alphabet)
    match T:
        case OZero():
            return Nba(alphabet, 0, frozenset(), frozenset(), frozenset())
        case OmegaPower(r):
            d = compile_dfa(r, alphabet)
            trans: set[tuple[int, str, int]] = set()
            for q in range(d.n_states):
                for ai, a in enumerate(alphabet.letters):
                    nxt = d.trans[q][ai]
                    trans.add((q + 1, a, nxt + 1))
                    if nxt in d.finals:
                        trans.add((q + 1, a, 0))
            for ai, a in enumerate(alphabet.letters):
                nxt = d.trans[d.initial][ai]
                trans.add((0, a, nxt + 1))
                if nxt in d.finals:
                    trans.add((0, a, 0))
            return Nba(alphabet, d.n_states + 1, frozenset(trans), frozenset({0}), frozenset({0}))
        case OPrefix(t, tail):
            d = compile_dfa(t, alphabet)
            inner = to_nba(tail, alphabet)
            off = d.n_states
            trans = {(p + off, a, q + off) for (p, a, q) in inner.transitions}
            for q in range(d.n_states):
                for ai, a in enumerate(alphabet.letters):
                    nxt = d.trans[q][ai]
                    trans.add((q, a, nxt))
                    if nxt in d.finals:
                        trans.update((q, a, s + off) for s in inner.initials)
            initials = {d.initial}
            if ewp(t):
                initials.update(s + off for s in inner.initials)
            accepting = frozenset(s + off for s in inner.accepting)
            return Nba(alphabet, off + inner.n_states, frozenset(trans), frozenset(initials), accepting)
        case OSum(l, r):
            n1 = to_nba(l, alphabet)
            n2 = to_nba(r, alphabet)
            off = n1.n_states
            trans = set(n1.transitions)
            trans.update((p + off, a, q + off) for (p, a, q) in n2.transitions)
            return Nba(
                alphabet,
                off + n2.n_states,
                frozenset(trans),
                n1.initials | frozenset(s + off for s in n2.initials),
                n1.accepting | frozenset(s + off for s in n2.accepting),
            )
    raise TypeError(f"not an omega expression: {T!r}")


@lru_cache(maxsize=None)
def _succ_map(nba: Nba) -> dict[tuple[int, str], frozenset[int]]:
    out: dict[tuple[int, str], set[int]] = {}
    for p, a, q in nba.transitions:
        out.setdefault((p, a), set()).add(q)
    return {k: frozenset(v) for k, v in out.items()}


def up_member(T: OmegaExpr, l: Lasso, alphabet: Alphabet | None = None) -> bool:
    """Does the ultimately periodic word of the lasso lie in the omega
    language of T?  Decided on the product of the Buchi automaton with the
    lasso's positions: accept iff some accepting product node reachable
    after the spoke lies on a cycle."""
    nba = to_nba(T, _oexp_alphabet(T, alphabet))
    succ = _succ_map(nba)
    cur = set(nba.initials)
    for a in l.spoke:
        cur = {q for p in cur for q in succ.get((p, a), ())}
        if not cur:
            return False
    m = len(l.loop)

    def node_succ(node: tuple[int, int]):
        q, j = node
        return [(q2, (j + 1) % m) for q2 in succ.get((q, l.loop[j]), ())]

    start = {(q, 0) for q in cur}
    seen = set(start)
    queue = deque(start)
    while queue:
        node = queue.popleft()
        for nxt in node_succ(node):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    for node in seen:
        if node[0] not in nba.accepting:
            continue
        # is this accepting node on a (nonempty) cycle?
        visited: set[tuple[int, int]] = set()
        stack = node_succ(node)
        on_cycle = False
        while stack:
            cand = stack.pop()
            if cand == node:
                on_cycle = True
                break
            if cand in visited:
                continue
            visited.add(cand)
            stack.extend(node_succ(cand))
        if on_cycle:
            return True
    return False


# ---------------------------------------------------------------------------
# the pipeline: omega expression -> disjunctive form -> saturated automaton


def h_map(T: OmegaExpr) -> DisjunctiveForm:
    """Disjunctive form whose lassos denote exactly the ultimately periodic
    words of T, closed under rewrite expansion.

    An omega power contributes, for every split (t0, t1) of its body t,
    the pair (t*·t0, t1·t*·t0): rotating any prefix of the loop into the
    spoke and raising the loop to powers stays inside the set.
    """
    match T:
        case OZero():
            return DisjunctiveForm(())
        case OmegaPower(r):
            star = rstar(r)
            pairs = []
            for t0, t1 in split(r):
                spoke = rcat(star, t0)
                loop = normalize_b(rcat(t1, rcat(star, t0)))
                pairs.append((spoke, loop))
            return DisjunctiveForm(tuple(pairs))
        case OSum(l, r):
            return DisjunctiveForm(h_map(l).pairs + h_map(r).pairs)
        case OPrefix(t, tail):
            inner = h_map(tail)
            return DisjunctiveForm(tuple((rcat(t, ti), si) for ti, si in inner.pairs))
    raise TypeError(f"not an omega expression: {T!r}")


def _df_alphabet(df: DisjunctiveForm, alphabet: Alphabet | None) -> Alphabet:
    if alphabet is not None:
        return alphabet
    letters = df_letters(df)
    return Alphabet(tuple(sorted(letters))) if letters else Alphabet(("a",))


def gamma_map(df: DisjunctiveForm, alphabet: Alphabet | None = None) -> DisjunctiveForm:
    """Close a disjunctive form under rewrite reduction.

    For each pair (t, s) and each way of splitting t into t0·t1 and s
    into s0·s1, the loop words whose some power lies in (t1 ∩ s1)·s0 are
    reattached after spoke t0.  Intersection and root are computed on
    DFAs and converted back to expressions, so the expression grammar
    stays plain.  Pairs with an empty loop language are dropped.

    Applied to an expansion-closed input (such as h_map output) the
    result is saturated; on arbitrary inputs a single application need
    not be (see gamma_fixpoint).
    """
    alphabet = _df_alphabet(df, alphabet)
    loop_cache: dict[tuple[RatExpr, RatExpr, RatExpr], RatExpr | None] = {}
    pairs = []
    for t, s in df.pairs:
        for t0, t1 in split(t):
            for s0, s1 in split(s):
                key = (t1, s1, s0)
                if key not in loop_cache:
                    inter = boolean_combine(
                        compile_dfa(t1, alphabet), compile_dfa(s1, alphabet), "and"
                    )
                    empty, _ = is_empty_dfa(inter)
                    if empty:
                        loop_cache[key] = None
                    else:
                        loop_expr_lang = rcat(dfa_to_expr(inter), s0)
                        rt = root(compile_dfa(loop_expr_lang, alphabet))
                        rt_empty, _ = is_empty_dfa(rt)
                        loop_cache[key] = None if rt_empty else dfa_to_expr(rt)
                loop = loop_cache[key]
                if loop is not None:
                    pairs.append((t0, loop))
    return DisjunctiveForm(tuple(pairs))


def gamma_fixpoint(
    df: DisjunctiveForm, alphabet: Alphabet | None = None, max_rounds: int | None = None
) -> DisjunctiveForm:
    """Iterate gamma_map until the disjunctive form stabilizes.

    No termination guarantee on arbitrary inputs; max_rounds caps the
    iteration (raising if the cap is hit).  Single-application callers
    should use gamma_map directly.
    """
    rounds = 0
    while True:
        nxt = gamma_map(df, alphabet)
        if nxt == df:
            return df
        df = nxt
        rounds += 1
        if max_rounds is not None and rounds >= max_rounds:
            raise CertificationError(f"gamma_fixpoint did not stabilize within {max_rounds} rounds")


def represent(T: OmegaExpr, alphabet: Alphabet | None = None) -> DisjunctiveForm:
    """Disjunctive form whose lasso set is exactly the set of lassos
    denoting ultimately periodic words of T."""
    return gamma_map(h_map(T), _oexp_alphabet(T, alphabet))


def omega_to_omega_automaton(T: OmegaExpr, alphabet: Alphabet | None = None):
    """Finite saturated lasso automaton accepting exactly the lassos whose
    words lie in the omega language of T.  Saturation is asserted exactly."""
    from .lassoaut import is_saturated

    alphabet = _oexp_alphabet(T, alphabet)
    aut = compile_lasso(represent(T, alphabet), alphabet)
    sat, pair = is_saturated(aut)
    if not sat:
        raise CertificationError(f"pipeline output not saturated (pair {pair[0]} / {pair[1]})")
    return aut
