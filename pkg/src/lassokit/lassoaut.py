"""Lasso automata: acceptance, equivalence, expression extraction, exact
saturation checking, and the text/DOT formats.

A lasso automaton reads the spoke of a lasso through the spoke
transitions, switches into the loop part on the first loop symbol, and
follows loop transitions for the rest of the loop; the lasso is accepted
if this lands in a final loop state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import AlphabetMismatchError, AutomatonFormatError
from .langops import (
    Dfa,
    boolean_combine,
    complement,
    dfa_to_expr,
    equivalent_dfa,
    is_empty_dfa,
    left_derivative,
    right_quotient,
    root,
)
from .lassoexp import Circle, LassoExpr, LZERO, lprefix, lsum
from .lassos import Lasso
from .ratexp import Alphabet, ewp


@dataclass(frozen=True)
class LassoAutomaton:
    alphabet: Alphabet
    d1: tuple[tuple[int, ...], ...]  # spoke -> spoke
    d2: tuple[tuple[int, ...], ...]  # spoke -> loop
    d3: tuple[tuple[int, ...], ...]  # loop -> loop
    initial: int
    finals: frozenset[int]
    # presentation metadata, not part of equality
    spoke_labels: tuple[str, ...] | None = field(default=None, compare=False)
    loop_labels: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def n_spoke(self) -> int:
        return len(self.d1)

    @property
    def n_loop(self) -> int:
        return len(self.d3)

    def _ai(self, a: str) -> int:
        if a not in self.alphabet:
            raise AlphabetMismatchError(f"symbol {a!r} not in alphabet {''.join(self.alphabet.letters)!r}")
        return self.alphabet.index(a)


def accepts(aut: LassoAutomaton, l: Lasso) -> bool:
    x = aut.initial
    for a in l.spoke:
        x = aut.d1[x][aut._ai(a)]
    y = aut.d2[x][aut._ai(l.loop[0])]
    for a in l.loop[1:]:
        y = aut.d3[y][aut._ai(a)]
    return y in aut.finals


def loop_dfa(aut: LassoAutomaton, x: int, finals: frozenset[int] | None = None) -> Dfa:
    """DFA for the nonempty words that, switched from spoke state x, end in
    a final loop state (or in the given loop-state set).

    State 0 is a fresh non-final start that performs the switch step, so
    the empty word is always rejected; loop state y becomes state y+1.
    """
    target = aut.finals if finals is None else finals
    na = len(aut.alphabet.letters)
    rows = [tuple(aut.d2[x][ai] + 1 for ai in range(na))]
    for y in range(aut.n_loop):
        rows.append(tuple(aut.d3[y][ai] + 1 for ai in range(na)))
    return Dfa(aut.alphabet, tuple(rows), 0, frozenset(y + 1 for y in target))


def spoke_lang_dfa(aut: LassoAutomaton, x: int) -> Dfa:
    """DFA for the words that lead from the initial spoke state to x."""
    return Dfa(aut.alphabet, aut.d1, aut.initial, frozenset({x}))


def _spoke_return_dfa(aut: LassoAutomaton, x: int) -> Dfa:
    return Dfa(aut.alphabet, aut.d1, x, frozenset({x}))


def _loop_return_dfa(aut: LassoAutomaton, y: int) -> Dfa:
    return Dfa(aut.alphabet, aut.d3, y, frozenset({y}))


def _spoke_access_words(aut: LassoAutomaton) -> dict[int, str]:
    """Shortest access word per reachable spoke state (alphabet-order BFS)."""
    words = {aut.initial: ""}
    queue = deque([aut.initial])
    while queue:
        x = queue.popleft()
        for ai, a in enumerate(aut.alphabet.letters):
            nxt = aut.d1[x][ai]
            if nxt not in words:
                words[nxt] = words[x] + a
                queue.append(nxt)
    return words


def extract_expr(aut: LassoAutomaton) -> LassoExpr:
    """Lasso expression for the accepted language.

    Sums, over reachable spoke states x and final loop states y, the
    access language of x prefixed onto the loop languages that switch
    from x into y.  Empty summands are dropped.
    """
    terms: list[LassoExpr] = []
    access = _spoke_access_words(aut)
    for x in sorted(access, key=lambda x: (len(access[x]), access[x])):
        s_expr = None
        for y in sorted(aut.finals):
            r_dfa = loop_dfa(aut, x, frozenset({y}))
            empty, _ = is_empty_dfa(r_dfa)
            if empty:
                continue
            if s_expr is None:
                s_expr = dfa_to_expr(spoke_lang_dfa(aut, x))
            r_expr = dfa_to_expr(r_dfa)
            assert not ewp(r_expr), "loop language contained the empty word"
            terms.append(lprefix(s_expr, Circle(r_expr)))
    out: LassoExpr = LZERO
    for t in reversed(terms):
        out = lsum(t, out)
    return out


def extract_omega_expr(aut: LassoAutomaton):
    """Omega expression for the omega language of a saturated automaton.

    For each reachable spoke state x and final loop state y the loop
    component is the intersection of three DFAs: words returning x to x
    along the spoke, words switching from x into y, and words returning
    y to y along the loop.  Raises if the automaton is not saturated.
    """
    from .omega import OmegaExpr, OmegaPower, OZERO, oprefix, osum

    sat, pair = is_saturated(aut)
    if not sat:
        raise ValueError(
            f"automaton is not saturated (e.g. {pair[0]} accepted but {pair[1]} rejected); "
            "omega extraction requires saturation"
        )
    terms: list[OmegaExpr] = []
    access = _spoke_access_words(aut)
    for x in sorted(access, key=lambda x: (len(access[x]), access[x])):
        s_expr = None
        for y in sorted(aut.finals):
            r_dfa = boolean_combine(
                boolean_combine(_spoke_return_dfa(aut, x), loop_dfa(aut, x, frozenset({y})), "and"),
                _loop_return_dfa(aut, y),
                "and",
            )
            empty, _ = is_empty_dfa(r_dfa)
            if empty:
                continue
            if s_expr is None:
                s_expr = dfa_to_expr(spoke_lang_dfa(aut, x))
            r_expr = dfa_to_expr(r_dfa)
            assert not ewp(r_expr), "loop language contained the empty word"
            terms.append(oprefix(s_expr, OmegaPower(r_expr)))
    out = OZERO
    for t in reversed(terms):
        out = osum(t, out)
    return out


def equivalent_lasso(a1: LassoAutomaton, a2: LassoAutomaton) -> tuple[bool, Lasso | None]:
    """Language equality; on failure a counterexample lasso of minimal
    |spoke| + |loop| (ties broken by spoke then loop text)."""
    if a1.alphabet != a2.alphabet:
        raise AlphabetMismatchError("equivalent_lasso requires identical alphabets")
    words: dict[tuple[int, int], str] = {(a1.initial, a2.initial): ""}
    queue = deque([(a1.initial, a2.initial)])
    order = [(a1.initial, a2.initial)]
    while queue:
        x1, x2 = queue.popleft()
        for ai, a in enumerate(a1.alphabet.letters):
            nxt = (a1.d1[x1][ai], a2.d1[x2][ai])
            if nxt not in words:
                words[nxt] = words[(x1, x2)] + a
                order.append(nxt)
                queue.append(nxt)
    best: Lasso | None = None
    for x1, x2 in order:
        eq, w = equivalent_dfa(loop_dfa(a1, x1), loop_dfa(a2, x2))
        if eq:
            continue
        cand = Lasso(words[(x1, x2)], w)
        key = (len(cand.spoke) + len(cand.loop), cand.spoke, cand.loop)
        if best is None or key < (len(best.spoke) + len(best.loop), best.spoke, best.loop):
            best = cand
    return (best is None, best)


def _power_witness(d: Dfa, w: str, want_final: bool) -> int:
    """Least k >= 2 such that membership of w^k in L(d) matches want_final."""
    q = d.initial
    for k in range(1, d.n_states + 2):
        for a in w:
            q = d.step(q, a)
        if k >= 2 and (q in d.finals) == want_final:
            return k
    raise AssertionError("power witness not found within the orbit bound")


def is_saturated(aut: LassoAutomaton) -> tuple[bool, tuple[Lasso, Lasso] | None]:
    """Exact saturation check.

    The accepted language is a union of rewrite-equivalence classes iff it
    is closed under single rewrite steps in both directions.  Acceptance of
    (u, v) only depends on x = spoke state after u and on v's membership in
    P_x, the loop language at x.  The single-step closures therefore reduce
    to language conditions on the P_x of reachable spoke states:

    * letter rotation (both directions): for every x and letter a with
      x' the a-successor of x, {v : a·v in P_x} = {v : v·a in P_x'} -- a
      rotation redex (ua, va) / (u, av) is accepted on the left iff
      va in P_x' and on the right iff av in P_x;
    * loop collapse: every v with some power v^k in P_x is itself in P_x,
      i.e. root(P_x) minus P_x is empty;
    * loop power: no v in P_x has a power outside P_x, i.e. P_x
      intersected with root(complement(P_x)) is empty.

    On failure, returns the pair (accepted lasso, rejected lasso) built
    from the shortest failing witness, minimizing total length over all
    failures (ties: first in scan order -- spoke states in BFS order, the
    rotation check per letter, then collapse, then power).
    """
    access = _spoke_access_words(aut)
    scan = sorted(access, key=lambda x: (len(access[x]), access[x]))
    loop_dfas = {x: loop_dfa(aut, x) for x in scan}
    candidates: list[tuple[Lasso, Lasso]] = []
    for x in scan:
        u = access[x]
        px = loop_dfas[x]
        for ai, a in enumerate(aut.alphabet.letters):
            x2 = aut.d1[x][ai]
            eq, w = equivalent_dfa(left_derivative(px, a), right_quotient(loop_dfas[x2], a))
            if not eq:
                reduct = Lasso(u, a + w)
                expanded = Lasso(u + a, w + a)
                if accepts(aut, reduct):
                    candidates.append((reduct, expanded))
                else:
                    candidates.append((expanded, reduct))
        root_px = root(px)
        empty, w = is_empty_dfa(boolean_combine(root_px, px, "diff"))
        if not empty:
            k = _power_witness(px, w, want_final=True)
            candidates.append((Lasso(u, w * k), Lasso(u, w)))
        empty, w = is_empty_dfa(boolean_combine(px, root(complement(px)), "and"))
        if not empty:
            k = _power_witness(px, w, want_final=False)
            candidates.append((Lasso(u, w), Lasso(u, w * k)))
    if not candidates:
        return (True, None)

    def size(pair: tuple[Lasso, Lasso]) -> int:
        a, b = pair
        return len(a.spoke) + len(a.loop) + len(b.spoke) + len(b.loop)

    return (False, min(candidates, key=size))


# ---------------------------------------------------------------------------
# text format and DOT export


def _default_names(aut: LassoAutomaton) -> tuple[tuple[str, ...], tuple[str, ...]]:
    def usable(labels, count):
        if labels is None or len(labels) != count:
            return None
        if len(set(labels)) != count:
            return None
        for lab in labels:
            if not lab or any(c.isspace() for c in lab) or "#" in lab or ":" in lab:
                return None
        return tuple(labels)

    spoke = usable(aut.spoke_labels, aut.n_spoke)
    loop = usable(aut.loop_labels, aut.n_loop)
    if spoke is None or loop is None or set(spoke) & set(loop):
        spoke = tuple(f"x{i}" for i in range(aut.n_spoke))
        loop = tuple(f"y{aut.n_spoke + i}" for i in range(aut.n_loop))
    return spoke, loop


def write_automaton(aut: LassoAutomaton) -> str:
    spoke, loop = _default_names(aut)
    lines = [
        f"alphabet: {' '.join(aut.alphabet.letters)}",
        f"spoke: {' '.join(spoke)}",
        f"loop: {' '.join(loop)}",
        f"initial: {spoke[aut.initial]}",
        f"final: {' '.join(loop[y] for y in sorted(aut.finals))}",
    ]
    if aut.spoke_labels and aut.spoke_labels != spoke:
        for i, lab in enumerate(aut.spoke_labels):
            lines.append(f"# {spoke[i]} = {lab}")
    if aut.loop_labels and aut.loop_labels != loop:
        for i, lab in enumerate(aut.loop_labels):
            lines.append(f"# {loop[i]} = {lab}")
    for x in range(aut.n_spoke):
        for ai, a in enumerate(aut.alphabet.letters):
            lines.append(f"d1: {spoke[x]} {a} {spoke[aut.d1[x][ai]]}")
    for x in range(aut.n_spoke):
        for ai, a in enumerate(aut.alphabet.letters):
            lines.append(f"d2: {spoke[x]} {a} {loop[aut.d2[x][ai]]}")
    for y in range(aut.n_loop):
        for ai, a in enumerate(aut.alphabet.letters):
            lines.append(f"d3: {loop[y]} {a} {loop[aut.d3[y][ai]]}")
    return "\n".join(lines) + "\n"


def read_automaton(text: str) -> LassoAutomaton:
    """Parse the line-oriented automaton format (see `write_automaton`).

    Transition tables must be total: exactly one d1 and d2 row per
    (spoke state, symbol) and one d3 row per (loop state, symbol).
    """
    alphabet: Alphabet | None = None
    spoke_names: list[str] = []
    loop_names: list[str] = []
    initial_name: str | None = None
    final_names: list[str] = []
    rows: list[tuple[int, str, str, str, str]] = []  # (line, kind, src, sym, dst)

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise AutomatonFormatError(f"expected 'key: ...', got {line!r}", lineno)
        key, _, rest = line.partition(":")
        key = key.strip()
        parts = rest.split()
        if key == "alphabet":
            if alphabet is not None:
                raise AutomatonFormatError("duplicate alphabet line", lineno)
            try:
                alphabet = Alphabet(tuple(parts))
            except ValueError as e:
                raise AutomatonFormatError(str(e), lineno) from None
        elif key == "spoke":
            spoke_names.extend(parts)
        elif key == "loop":
            loop_names.extend(parts)
        elif key == "initial":
            if len(parts) != 1 or initial_name is not None:
                raise AutomatonFormatError("initial must name exactly one spoke state", lineno)
            initial_name = parts[0]
        elif key == "final":
            final_names.extend(parts)
        elif key in ("d1", "d2", "d3"):
            if len(parts) != 3:
                raise AutomatonFormatError(f"{key} row needs 'src symbol dst', got {rest.strip()!r}", lineno)
            rows.append((lineno, key, parts[0], parts[1], parts[2]))
        else:
            raise AutomatonFormatError(f"unknown directive {key!r}", lineno)

    if alphabet is None:
        raise AutomatonFormatError("missing alphabet line")
    if not spoke_names:
        raise AutomatonFormatError("no spoke states declared")
    if not loop_names:
        raise AutomatonFormatError("no loop states declared")
    if len(set(spoke_names)) != len(spoke_names) or len(set(loop_names)) != len(loop_names):
        raise AutomatonFormatError("duplicate state names")
    overlap = set(spoke_names) & set(loop_names)
    if overlap:
        raise AutomatonFormatError(f"state names used as both spoke and loop: {sorted(overlap)}")
    if initial_name is None:
        raise AutomatonFormatError("missing initial line")
    if initial_name not in spoke_names:
        raise AutomatonFormatError(f"initial state {initial_name!r} is not a spoke state")
    spoke_idx = {n: i for i, n in enumerate(spoke_names)}
    loop_idx = {n: i for i, n in enumerate(loop_names)}
    for name in final_names:
        if name not in loop_idx:
            raise AutomatonFormatError(f"final state {name!r} is not a loop state")

    tables: dict[str, dict[tuple[int, str], int]] = {"d1": {}, "d2": {}, "d3": {}}
    srcs = {"d1": spoke_idx, "d2": spoke_idx, "d3": loop_idx}
    dsts = {"d1": spoke_idx, "d2": loop_idx, "d3": loop_idx}
    for lineno, kind, src, sym, dst in rows:
        if sym not in alphabet:
            raise AutomatonFormatError(f"unknown symbol {sym!r}", lineno)
        if src not in srcs[kind]:
            raise AutomatonFormatError(f"unknown {kind} source state {src!r}", lineno)
        if dst not in dsts[kind]:
            raise AutomatonFormatError(f"unknown {kind} target state {dst!r}", lineno)
        key = (srcs[kind][src], sym)
        if key in tables[kind]:
            raise AutomatonFormatError(f"duplicate {kind} row for ({src}, {sym})", lineno)
        tables[kind][key] = dsts[kind][dst]

    for kind, names in (("d1", spoke_names), ("d2", spoke_names), ("d3", loop_names)):
        for i, name in enumerate(names):
            for a in alphabet:
                if (i, a) not in tables[kind]:
                    raise AutomatonFormatError(f"missing {kind} row for ({name}, {a})")

    d1 = tuple(tuple(tables["d1"][(x, a)] for a in alphabet) for x in range(len(spoke_names)))
    d2 = tuple(tuple(tables["d2"][(x, a)] for a in alphabet) for x in range(len(spoke_names)))
    d3 = tuple(tuple(tables["d3"][(y, a)] for a in alphabet) for y in range(len(loop_names)))
    return LassoAutomaton(
        alphabet=alphabet,
        d1=d1,
        d2=d2,
        d3=d3,
        initial=spoke_idx[initial_name],
        finals=frozenset(loop_idx[n] for n in final_names),
        spoke_labels=tuple(spoke_names),
        loop_labels=tuple(loop_names),
    )


def lasso_to_dot(aut: LassoAutomaton, name: str = "lasso") -> str:
    """DOT rendering: spoke transitions solid, switch dotted, loop dashed."""
    spoke, loop = _default_names(aut)
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=none, label=""];']
    for x in range(aut.n_spoke):
        lines.append(f'  s{x} [shape=circle, label="{spoke[x]}"];')
    for y in range(aut.n_loop):
        shape = "doublecircle" if y in aut.finals else "circle"
        lines.append(f'  l{y} [shape={shape}, label="{loop[y]}"];')
    lines.append(f"  __start -> s{aut.initial};")

    def emit(prefix_src, prefix_dst, table, style):
        grouped: dict[tuple[int, int], list[str]] = {}
        for src in range(len(table)):
            for ai, a in enumerate(aut.alphabet.letters):
                grouped.setdefault((src, table[src][ai]), []).append(a)
        for (src, dst), symbols in sorted(grouped.items()):
            lines.append(
                f'  {prefix_src}{src} -> {prefix_dst}{dst} [label="{",".join(symbols)}", style={style}];'
            )

    emit("s", "s", aut.d1, "solid")
    emit("s", "l", aut.d2, "dotted")
    emit("l", "l", aut.d3, "dashed")
    lines.append("}")
    return "\n".join(lines) + "\n"
