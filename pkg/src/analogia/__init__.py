"""Analogical reasoning over finite, partially known domains.

The pipeline: model two finite domains with three-valued fact tables,
translate source sentences along injective symbol maps, partition them
by the support they give each candidate analogy, rank the candidates
by a strict preference, and answer target queries skeptically over the
undominated ones. A separate harness exhaustively checks, at small
carrier sizes, how strict relations correspond to the choice functions
they induce.
"""

from .analogy import (
    AnalogyMap,
    AnalogyPiece,
    AugmentedReport,
    Guard,
    StraightRuleScore,
    SupportReport,
    analogy_map,
    augmented_report,
    check_injective_on,
    classify,
    close_under_combination,
    combine,
    straight_rule,
    translatable,
    translate,
)
from .entailment import (
    AnalogySpace,
    Verdict,
    VerdictStatus,
    best,
    conjecture_for,
    entail,
)
from .errors import (
    AnalogiaError,
    AnalogyError,
    DomainError,
    EntailmentError,
    FormulaError,
    NoGuardMatch,
    ParseError,
    PreferenceError,
    RepcheckError,
    SessionError,
    SignatureError,
    TranslationError,
    UntranslatableSymbol,
)
from .formula import (
    And,
    Atom,
    Const,
    Exists,
    Forall,
    Formula,
    FuncApp,
    Implies,
    Not,
    Or,
    Term,
    Token,
    TokenStream,
    Valuation,
    Var,
    check_formula,
    evaluate,
    formula_depth,
    formula_symbols,
    free_variables,
    ground_atom_formulas,
    mentioned_constants,
    parse_formula,
    parse_formula_stream,
    print_formula,
    reduce_term,
    sentences_up_to_depth,
    tokenize,
)
from .kb import (
    GroundAtom,
    KnowledgeDomain,
    Signature,
    TruthValue,
    ground_atoms,
    make_domain,
)
from .preference import (
    ChoiceFunction,
    PreferenceRelation,
    choice_of,
    count_preference,
    dominance_preference,
    is_ranked,
    is_smooth,
    is_transitive,
    subsets_of,
    undominated,
)
from .repcheck import (
    CLASS_PROPERTIES,
    NotRepresentable,
    PropertyId,
    RelationClass,
    SweepResult,
    Violation,
    check_property,
    completeness_sweep,
    irreflexive_relations,
    relation_in_class,
    represent,
    soundness_sweep,
)
from .session import (
    Session,
    parse_session,
    print_session,
    resolve_maps,
    resolve_space,
    run,
    session_preference,
)

__version__ = "0.1.0"

__all__ = [
    "AnalogiaError",
    "AnalogyError",
    "AnalogyMap",
    "AnalogyPiece",
    "AnalogySpace",
    "And",
    "Atom",
    "AugmentedReport",
    "CLASS_PROPERTIES",
    "ChoiceFunction",
    "Const",
    "DomainError",
    "EntailmentError",
    "Exists",
    "Forall",
    "Formula",
    "FormulaError",
    "FuncApp",
    "GroundAtom",
    "Guard",
    "Implies",
    "KnowledgeDomain",
    "NoGuardMatch",
    "Not",
    "NotRepresentable",
    "Or",
    "ParseError",
    "PreferenceError",
    "PreferenceRelation",
    "PropertyId",
    "RelationClass",
    "RepcheckError",
    "Session",
    "SessionError",
    "Signature",
    "SignatureError",
    "StraightRuleScore",
    "SupportReport",
    "SweepResult",
    "Term",
    "Token",
    "TokenStream",
    "TranslationError",
    "TruthValue",
    "UntranslatableSymbol",
    "Valuation",
    "Var",
    "Verdict",
    "VerdictStatus",
    "Violation",
    "analogy_map",
    "augmented_report",
    "best",
    "check_formula",
    "check_injective_on",
    "check_property",
    "choice_of",
    "classify",
    "close_under_combination",
    "combine",
    "completeness_sweep",
    "conjecture_for",
    "count_preference",
    "dominance_preference",
    "entail",
    "evaluate",
    "formula_depth",
    "formula_symbols",
    "free_variables",
    "ground_atom_formulas",
    "ground_atoms",
    "irreflexive_relations",
    "is_ranked",
    "is_smooth",
    "is_transitive",
    "make_domain",
    "mentioned_constants",
    "parse_formula",
    "parse_formula_stream",
    "parse_session",
    "print_formula",
    "print_session",
    "reduce_term",
    "relation_in_class",
    "represent",
    "resolve_maps",
    "resolve_space",
    "run",
    "sentences_up_to_depth",
    "session_preference",
    "soundness_sweep",
    "straight_rule",
    "subsets_of",
    "tokenize",
    "translatable",
    "translate",
    "undominated",
]
