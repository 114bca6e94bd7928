"""Tooling for lasso automata, rational lasso expressions and omega expressions."""

from .errors import (
    AlphabetMismatchError,
    AutomatonFormatError,
    CertificationError,
    NullableLoopError,
    ParseError,
    StateLimitError,
)
from .langops import (
    Dfa,
    boolean_combine,
    compile_dfa,
    complement,
    dfa_to_dot,
    dfa_to_expr,
    equivalent_dfa,
    is_empty_dfa,
    left_derivative,
    minimize_dfa,
    right_quotient,
    root,
    run_dfa,
    write_dfa,
)
from .lassoaut import (
    LassoAutomaton,
    accepts,
    equivalent_lasso,
    extract_expr,
    extract_omega_expr,
    is_saturated,
    lasso_to_dot,
    loop_dfa,
    read_automaton,
    spoke_lang_dfa,
    write_automaton,
)
from .lassoexp import (
    Circle,
    DisjunctiveForm,
    LSum,
    LZERO,
    LZero,
    LassoExpr,
    Prefix,
    compile_lasso,
    d1_df,
    d1_general,
    d2_df,
    d2_general,
    df_member,
    df_to_lexp,
    df_to_str,
    disjunctive_form,
    lexp_to_str,
    member_lasso_naive,
    parse_lexp,
)
from .lassos import (
    Lasso,
    enumerate_lassos,
    expansions,
    gamma_equiv,
    normal_form,
    parse_lasso,
    primitive_root,
    reduce_step,
    up_equal,
)
from .omega import (
    Nba,
    OPrefix,
    OSum,
    OZERO,
    OZero,
    OmegaExpr,
    OmegaPower,
    gamma_fixpoint,
    gamma_map,
    h_map,
    oexp_to_str,
    omega_to_omega_automaton,
    parse_oexpr,
    represent,
    to_nba,
    up_member,
)
from .ratexp import (
    Alphabet,
    Concat,
    Letter,
    ONE,
    One,
    RatExpr,
    Star,
    Sum,
    ZERO,
    Zero,
    deriv,
    enumerate_language,
    ewp,
    infer_alphabet,
    member_naive,
    normalize_b,
    rexp_to_str,
    split,
    word_deriv,
)
from .syntax import parse_rexp

__all__ = [name for name in dir() if not name.startswith("_")]
