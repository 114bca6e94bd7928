"""Command-line front end.

Decision subcommands print a human-readable verdict followed by a
machine-readable last line (`yes` or `no`, plus witnesses in word/lasso
literal syntax).  Exit codes: 0 affirmative or success, 1 negative
decision, 2 usage/parse/validation error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    AlphabetMismatchError,
    AutomatonFormatError,
    NullableLoopError,
    ParseError,
    StateLimitError,
)
from .langops import compile_dfa, dfa_to_dot, dfa_to_expr, root, write_dfa
from .lassoaut import (
    extract_expr,
    extract_omega_expr,
    is_saturated,
    lasso_to_dot,
    read_automaton,
    write_automaton,
)
from .lassoexp import (
    compile_lasso,
    df_to_str,
    lexp_letters,
    lexp_to_str,
    member_lasso_naive,
    parse_lexp,
)
from .lassos import enumerate_lassos, gamma_equiv, normal_form, parse_lasso
from .omega import (
    oexp_letters,
    oexp_to_str,
    omega_to_omega_automaton,
    parse_oexpr,
    represent,
    up_member,
)
from .ratexp import (
    Alphabet,
    enumerate_language,
    letters_of,
    member_naive,
    rexp_to_str,
    split,
)
from .syntax import parse_rexp


def _word_literal(w: str) -> str:
    return w if w else "''"


def _resolve_alphabet(explicit: str | None, letters: set[str], warn: bool = False) -> Alphabet:
    if explicit is not None:
        return Alphabet.parse(explicit)
    alphabet = Alphabet(tuple(sorted(letters))) if letters else Alphabet(("a",))
    if warn:
        print(
            f"note: alphabet inferred as {''.join(alphabet.letters)!r} "
            "(override with --alphabet)",
            file=sys.stderr,
        )
    return alphabet


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_automaton_file(path: str):
    with open(path) as fh:
        return read_automaton(fh.read())


def cmd_member(args) -> int:
    given = [k for k in ("rexp", "lexp", "oexp") if getattr(args, k) is not None]
    if len(given) != 1:
        raise ParseError("member needs exactly one of --rexp/--lexp/--oexp")
    kind = given[0]
    if kind == "rexp":
        if args.word is None:
            raise ParseError("--rexp requires --word")
        expr = parse_rexp(args.rexp, Alphabet.parse(args.alphabet) if args.alphabet else None)
        ok = member_naive(expr, args.word)
        subject = f"word {_word_literal(args.word)}"
        target = rexp_to_str(expr)
    else:
        if args.lasso is None:
            raise ParseError(f"--{kind} requires --lasso")
        lasso = parse_lasso(args.lasso)
        alphabet = Alphabet.parse(args.alphabet) if args.alphabet else None
        if kind == "lexp":
            lexpr = parse_lexp(args.lexp, alphabet)
            ok = member_lasso_naive(lexpr, lasso)
            target = lexp_to_str(lexpr)
        else:
            oexpr = parse_oexpr(args.oexp, alphabet)
            ab = _resolve_alphabet(args.alphabet, oexp_letters(oexpr) | set(lasso.spoke + lasso.loop))
            ok = up_member(oexpr, lasso, ab)
            target = oexp_to_str(oexpr)
        subject = f"lasso {lasso}"
    print(f"{subject} is {'a member' if ok else 'not a member'} of {target}")
    print("yes" if ok else "no")
    return 0 if ok else 1


def cmd_nf(args) -> int:
    nf = normal_form(parse_lasso(args.lasso))
    print(str(nf))
    return 0


def cmd_equiv_lasso(args) -> int:
    l1, l2 = parse_lasso(args.lasso1), parse_lasso(args.lasso2)
    ok = gamma_equiv(l1, l2)
    nf = normal_form(l1)
    if ok:
        print(f"{l1} and {l2} denote the same ultimately periodic word (normal form {nf})")
        print("yes")
        return 0
    print(f"{l1} and {l2} denote different ultimately periodic words")
    print(f"no {nf} {normal_form(l2)}")
    return 1


def cmd_compile(args) -> int:
    if (args.rexp is None) == (args.lexp is None):
        raise ParseError("compile needs exactly one of --rexp/--lexp")
    alphabet = Alphabet.parse(args.alphabet) if args.alphabet else None
    if args.rexp is not None:
        expr = parse_rexp(args.rexp, alphabet)
        ab = _resolve_alphabet(args.alphabet, letters_of(expr))
        _emit(write_dfa(compile_dfa(expr, ab)), args.output)
    else:
        lexpr = parse_lexp(args.lexp, alphabet)
        ab = _resolve_alphabet(args.alphabet, lexp_letters(lexpr))
        _emit(write_automaton(compile_lasso(lexpr, ab)), args.output)
    return 0


def cmd_extract(args) -> int:
    aut = _read_automaton_file(args.file)
    print(lexp_to_str(extract_expr(aut)))
    return 0


def cmd_extract_omega(args) -> int:
    aut = _read_automaton_file(args.file)
    print(oexp_to_str(extract_omega_expr(aut)))
    return 0


def cmd_saturated(args) -> int:
    aut = _read_automaton_file(args.file)
    sat, pair = is_saturated(aut)
    if sat:
        print("the automaton is saturated: equivalent lassos are accepted alike")
        print("yes")
        return 0
    acc, rej = pair
    print(
        f"the automaton is not saturated: it accepts {acc} but rejects {rej}, "
        f"although both denote the same ultimately periodic word (normal form {normal_form(acc)})"
    )
    print(f"no {acc} {rej}")
    return 1


def cmd_convert(args) -> int:
    alphabet = Alphabet.parse(args.alphabet) if args.alphabet else None
    oexpr = parse_oexpr(args.oexp, alphabet)
    ab = _resolve_alphabet(args.alphabet, oexp_letters(oexpr), warn=True)
    if args.to == "automaton":
        _emit(write_automaton(omega_to_omega_automaton(oexpr, ab)), args.output)
        return 0
    if args.fixpoint:
        # iterate the reduction closure until stable; no termination
        # guarantee in general, hence the round cap
        from lassokit.omega import gamma_fixpoint, h_map

        df = gamma_fixpoint(h_map(oexpr), ab, max_rounds=args.max_rounds)
    else:
        df = represent(oexpr, ab)
    _emit(df_to_str(df) + "\n", args.output)
    return 0


def cmd_split(args) -> int:
    expr = parse_rexp(args.rexp, Alphabet.parse(args.alphabet) if args.alphabet else None)
    pairs = split(expr)
    print(f"{len(pairs)} split pairs of {rexp_to_str(expr)}")
    for left, right in pairs:
        print(f"{rexp_to_str(left)} {rexp_to_str(right)}")
    return 0


def cmd_root(args) -> int:
    expr = parse_rexp(args.rexp, Alphabet.parse(args.alphabet) if args.alphabet else None)
    ab = _resolve_alphabet(args.alphabet, letters_of(expr), warn=True)
    print(rexp_to_str(dfa_to_expr(root(compile_dfa(expr, ab)))))
    return 0


def cmd_enumerate(args) -> int:
    given = [k for k in ("rexp", "lexp", "oexp") if getattr(args, k) is not None]
    if len(given) != 1:
        raise ParseError("enumerate needs exactly one of --rexp/--lexp/--oexp")
    if args.maxlen < 0 or args.max_spoke < 0 or args.max_loop < 1:
        raise ParseError("enumeration bounds must be nonnegative (loop bound at least 1)")
    alphabet = Alphabet.parse(args.alphabet) if args.alphabet else None
    if args.rexp is not None:
        expr = parse_rexp(args.rexp, alphabet)
        ab = _resolve_alphabet(args.alphabet, letters_of(expr))
        for w in enumerate_language(expr, args.maxlen, ab):
            print(_word_literal(w))
        return 0
    if args.lexp is not None:
        lexpr = parse_lexp(args.lexp, alphabet)
        ab = _resolve_alphabet(args.alphabet, lexp_letters(lexpr))
        check = lambda l: member_lasso_naive(lexpr, l)
    else:
        oexpr = parse_oexpr(args.oexp, alphabet)
        ab = _resolve_alphabet(args.alphabet, oexp_letters(oexpr))
        check = lambda l: up_member(oexpr, l, ab)
    for l in enumerate_lassos(ab, args.max_spoke, args.max_loop):
        if check(l):
            print(str(l))
    return 0


def cmd_dot(args) -> int:
    sources = [args.file is not None, args.rexp is not None, args.lexp is not None]
    if sum(sources) != 1:
        raise ParseError("dot needs exactly one of FILE/--rexp/--lexp")
    alphabet = Alphabet.parse(args.alphabet) if args.alphabet else None
    if args.file is not None:
        _emit(lasso_to_dot(_read_automaton_file(args.file)), args.output)
    elif args.rexp is not None:
        expr = parse_rexp(args.rexp, alphabet)
        ab = _resolve_alphabet(args.alphabet, letters_of(expr))
        _emit(dfa_to_dot(compile_dfa(expr, ab)), args.output)
    else:
        lexpr = parse_lexp(args.lexp, alphabet)
        ab = _resolve_alphabet(args.alphabet, lexp_letters(lexpr))
        _emit(lasso_to_dot(compile_lasso(lexpr, ab)), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lassokit",
        description=(
            "Lasso automata, rational lasso expressions and omega expressions. "
            "Expression grammar: constants 0 and 1, letters a-z, postfix * (star), "
            "@ (lasso loop), $ (omega power), juxtaposition or . for concatenation, "
            "+ for union, parentheses; postfix binds tightest, then concatenation, then +. "
            "Lassos are written spoke:loop, e.g. aaa:baa or :b."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--alphabet", help="alphabet override, e.g. 'ab' (default: letters in the inputs)")
        return p

    p = add("member", cmd_member, "decide membership of a word or lasso")
    p.add_argument("--rexp", help="rational expression")
    p.add_argument("--lexp", help="lasso expression")
    p.add_argument("--oexp", help="omega expression")
    p.add_argument("--word", help="finite word (for --rexp); may be empty")
    p.add_argument("--lasso", help="lasso literal spoke:loop (for --lexp/--oexp)")

    p = add("nf", cmd_nf, "normal form of a lasso")
    p.add_argument("lasso", help="lasso literal spoke:loop")

    p = add("equiv-lasso", cmd_equiv_lasso, "do two lassos denote the same word?")
    p.add_argument("lasso1")
    p.add_argument("lasso2")

    p = add("compile", cmd_compile, "compile an expression to an automaton file")
    p.add_argument("--rexp", help="rational expression (to DFA)")
    p.add_argument("--lexp", help="lasso expression (to lasso automaton)")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    p = add("extract", cmd_extract, "lasso expression of an automaton file")
    p.add_argument("file")

    p = add("extract-omega", cmd_extract_omega, "omega expression of a saturated automaton file")
    p.add_argument("file")

    p = add("saturated", cmd_saturated, "is the automaton saturated?")
    p.add_argument("file")

    p = add("convert", cmd_convert, "convert an omega expression to a lasso form")
    p.add_argument("--oexp", required=True, help="omega expression")
    p.add_argument("--to", choices=["df", "automaton"], default="df")
    p.add_argument(
        "--fixpoint",
        action="store_true",
        help="iterate the reduction closure until stable instead of applying it once "
        "(experimental; may not terminate, see --max-rounds)",
    )
    p.add_argument("--max-rounds", type=int, default=50, help="round cap for --fixpoint")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    p = add("split", cmd_split, "sequential splits of a rational expression")
    p.add_argument("--rexp", required=True)

    p = add("root", cmd_root, "expression for the root of a rational language")
    p.add_argument("--rexp", required=True)

    p = add("enumerate", cmd_enumerate, "list accepted words or lassos up to a bound")
    p.add_argument("--rexp")
    p.add_argument("--lexp")
    p.add_argument("--oexp")
    p.add_argument("--maxlen", type=int, default=4, help="word length bound (with --rexp)")
    p.add_argument("--max-spoke", type=int, default=3)
    p.add_argument("--max-loop", type=int, default=3)

    p = add("dot", cmd_dot, "DOT rendering of an automaton")
    p.add_argument("file", nargs="?", help="lasso automaton file")
    p.add_argument("--rexp")
    p.add_argument("--lexp")
    p.add_argument("-o", "--output")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        ParseError,
        NullableLoopError,
        AutomatonFormatError,
        AlphabetMismatchError,
        StateLimitError,
        OSError,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
