"""Analogy maps between domains and the support they earn.

An analogy map carries formulas from a source domain into a target
domain by renaming symbols: constants to constants, predicates to
predicates of the same arity, functions likewise. A map may be given
in pieces, each guarded by the set of source constants a formula is
allowed to mention; guards are pairwise disjoint and the first match
wins, so at most one piece ever applies. Piecewise maps exist so that
two partial analogies that each work well on part of the source can be
merged into one map that uses the right piece in the right place.

classify sorts a working set of source sentences into four bins by
comparing the truth value in the source with the truth value of the
translated sentence in the target:

  * positive       both known and equal
  * negative       both known and different
  * open           known at the source, unknown at the target; the
                   source value is recorded as the conjecture
  * not_applicable unknown at the source

Sentences the map cannot carry over at all are listed separately and
take no part in the partition. The augmented report splits negatives
by direction (true here but false there, false here but true there)
and pairs every sentence with its image, which is what the numeric
score consumes: p = n / (n + r + s + 1) with n matching positives, r
and s the two negative counts, computed in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    AnalogyError,
    NoGuardMatch,
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
    Var,
    check_formula,
    evaluate,
    mentioned_constants,
    print_formula,
)
from .kb import KnowledgeDomain, TruthValue

# ====================================================================
# Guards and map pieces
# ====================================================================


@dataclass(frozen=True)
class Guard:
    """Predicate over formulas keyed to the source constants they mention.

    constants None means "always matches". Otherwise a formula matches
    when it mentions at least one constant and every constant it
    mentions lies in the guard set. A formula mixing constants from
    two different guards therefore matches neither, and a formula with
    no constants matches no constant guard at all.
    """

    constants: frozenset[str] | None

    @staticmethod
    def always() -> Guard:
        return Guard(None)

    @staticmethod
    def mentions(constants: Iterable[str]) -> Guard:
        return Guard(frozenset(constants))

    def __post_init__(self):
        if self.constants is not None:
            object.__setattr__(self, "constants", frozenset(self.constants))

    @property
    def is_always(self) -> bool:
        return self.constants is None

    def matches(self, f: Formula) -> bool:
        if self.constants is None:
            return True
        cs = mentioned_constants(f)
        return bool(cs) and cs <= self.constants

    def intersect(self, other: Guard) -> Guard:
        if self.constants is None:
            return other
        if other.constants is None:
            return self
        return Guard(self.constants & other.constants)

    def overlaps(self, other: Guard) -> bool:
        if self.constants is None or other.constants is None:
            return True
        return bool(self.constants & other.constants)


@dataclass(frozen=True)
class AnalogyPiece:
    """One guarded symbol map; mapping is source symbol to target symbol."""

    guard: Guard
    mapping: dict[str, str]

    def __post_init__(self):
        object.__setattr__(self, "mapping", dict(self.mapping))


@dataclass(frozen=True)
class AnalogyMap:
    """A named, possibly piecewise symbol map between two domains.

    Construction validates each piece: mapped symbols must exist on
    both sides with the same kind and arity, and each piece must be
    injective. A one-piece map must carry the always guard; a map with
    several pieces must use constant guards with pairwise disjoint
    constant sets drawn from the source's constants.
    """

    name: str
    source: KnowledgeDomain
    target: KnowledgeDomain
    pieces: tuple[AnalogyPiece, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.name:
            raise AnalogyError("analogy needs a name")
        if not self.pieces:
            raise AnalogyError(f"analogy {self.name!r} has no pieces")
        src, tgt = self.source.signature, self.target.signature
        if len(self.pieces) == 1:
            if not self.pieces[0].guard.is_always:
                raise AnalogyError(
                    f"analogy {self.name!r}: a single piece must be unguarded"
                )
        else:
            guards = [p.guard for p in self.pieces]
            for g in guards:
                if g.is_always:
                    raise AnalogyError(
                        f"analogy {self.name!r}: every piece of a piecewise map "
                        "needs a constant guard"
                    )
                extra = sorted(set(g.constants or ()) - set(src.constants))
                if extra:
                    raise AnalogyError(
                        f"analogy {self.name!r}: guard constant {extra[0]!r} "
                        "is not a source constant"
                    )
            for i, g in enumerate(guards):
                for h in guards[i + 1 :]:
                    if g.overlaps(h):
                        raise AnalogyError(
                            f"analogy {self.name!r}: overlapping guards"
                        )
        for piece in self.pieces:
            seen_targets: set[str] = set()
            for s, t in piece.mapping.items():
                skind = src.kind_of(s)
                if skind is None:
                    raise AnalogyError(
                        f"analogy {self.name!r}: {s!r} is not a source symbol"
                    )
                tkind = tgt.kind_of(t)
                if tkind is None:
                    raise AnalogyError(
                        f"analogy {self.name!r}: {t!r} is not a target symbol"
                    )
                if skind != tkind:
                    raise AnalogyError(
                        f"analogy {self.name!r}: {s!r} is a {skind} but {t!r} "
                        f"is a {tkind}"
                    )
                if src.arity_of(s) != tgt.arity_of(t):
                    raise AnalogyError(
                        f"analogy {self.name!r}: arity mismatch, {s}/"
                        f"{src.arity_of(s)} mapped to {t}/{tgt.arity_of(t)}"
                    )
                if t in seen_targets:
                    raise AnalogyError(
                        f"analogy {self.name!r}: map is not injective, "
                        f"{t!r} is hit twice"
                    )
                seen_targets.add(t)


def analogy_map(
    name: str,
    source: KnowledgeDomain,
    target: KnowledgeDomain,
    mapping: Mapping[str, str],
) -> AnalogyMap:
    """Convenience constructor for a one-piece map."""

    return AnalogyMap(name, source, target, (AnalogyPiece(Guard.always(), dict(mapping)),))


# ====================================================================
# Translation
# ====================================================================


def _matching_piece(amap: AnalogyMap, f: Formula) -> AnalogyPiece:
    for piece in amap.pieces:
        if piece.guard.matches(f):
            return piece
    raise NoGuardMatch(f"no piece of {amap.name!r} covers the formula's constants")


def _all_var_names(f: Formula) -> set[str]:
    out: set[str] = set()

    def term(t: Term) -> None:
        if isinstance(t, Var):
            out.add(t.name)
        elif isinstance(t, FuncApp):
            for a in t.args:
                term(a)

    def walk(g: Formula) -> None:
        if isinstance(g, Atom):
            for t in g.args:
                term(t)
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, (And, Or, Implies)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Forall, Exists)):
            out.add(g.var)
            walk(g.body)

    walk(f)
    return out


def translate(amap: AnalogyMap, f: Formula) -> Formula:
    """Carry f into the target by renaming symbols through one piece.

    Raises NoGuardMatch when no guard covers f and UntranslatableSymbol
    when the matched piece is missing a symbol f uses. Connectives and
    variables pass through unchanged, with one exception: a bound
    variable whose name collides with a target symbol is primed until
    it no longer does, which keeps the result well formed over the
    target signature without changing its meaning.
    """

    piece = _matching_piece(amap, f)
    mapping = piece.mapping
    taken = set(amap.target.signature.symbols()) | _all_var_names(f)

    def map_symbol(s: str) -> str:
        try:
            return mapping[s]
        except KeyError:
            raise UntranslatableSymbol(s) from None

    def term(t: Term, renames: dict[str, str]) -> Term:
        if isinstance(t, Var):
            return Var(renames.get(t.name, t.name))
        if isinstance(t, Const):
            return Const(map_symbol(t.name))
        if isinstance(t, FuncApp):
            return FuncApp(map_symbol(t.func), tuple(term(a, renames) for a in t.args))
        raise TranslationError(f"not a term node: {t!r}")

    def walk(g: Formula, renames: dict[str, str]) -> Formula:
        if isinstance(g, Atom):
            return Atom(map_symbol(g.predicate), tuple(term(a, renames) for a in g.args))
        if isinstance(g, Not):
            return Not(walk(g.body, renames))
        if isinstance(g, And):
            return And(walk(g.left, renames), walk(g.right, renames))
        if isinstance(g, Or):
            return Or(walk(g.left, renames), walk(g.right, renames))
        if isinstance(g, Implies):
            return Implies(walk(g.left, renames), walk(g.right, renames))
        if isinstance(g, (Forall, Exists)):
            new = g.var
            while amap.target.signature.kind_of(new) is not None or (
                new != g.var and new in taken
            ):
                new = new + "'"
            if new != g.var:
                taken.add(new)
                renames = {**renames, g.var: new}
            elif g.var in renames:
                renames = {k: v for k, v in renames.items() if k != g.var}
            kind = Forall if isinstance(g, Forall) else Exists
            return kind(new, walk(g.body, renames))
        raise TranslationError(f"not a formula node: {g!r}")

    return walk(f, {})


def translatable(amap: AnalogyMap, f: Formula) -> bool:
    try:
        translate(amap, f)
        return True
    except TranslationError:
        return False


# ====================================================================
# Support classification
# ====================================================================


@dataclass(frozen=True)
class SupportReport:
    """The four-way partition of a working set under one analogy.

    All tuples preserve working-set order. conjectures maps each open
    formula to its source value; images maps every translatable
    formula to its translation.
    """

    analogy: AnalogyMap
    formulas: tuple[Formula, ...]
    positive: tuple[Formula, ...]
    negative: tuple[Formula, ...]
    open: tuple[Formula, ...]
    not_applicable: tuple[Formula, ...]
    untranslatable: tuple[Formula, ...]
    conjectures: dict[Formula, TruthValue]
    images: dict[Formula, Formula]

    def to_json_dict(self) -> dict:
        return {
            "analogy": self.analogy.name,
            "formulas": [print_formula(f) for f in self.formulas],
            "positive": [print_formula(f) for f in self.positive],
            "negative": [print_formula(f) for f in self.negative],
            "open": [print_formula(f) for f in self.open],
            "not_applicable": [print_formula(f) for f in self.not_applicable],
            "untranslatable": [print_formula(f) for f in self.untranslatable],
            "conjectures": {
                print_formula(f): str(self.conjectures[f]) for f in self.open
            },
        }


def classify(amap: AnalogyMap, formulas: Sequence[Formula]) -> SupportReport:
    """Partition formulas by the support they give the analogy.

    Every formula must be a sentence over the source signature; that
    is a hard precondition and raises. Untranslatable formulas are not
    an error, they are simply reported outside the partition.
    """

    for f in formulas:
        check_formula(f, amap.source.signature)

    positive: list[Formula] = []
    negative: list[Formula] = []
    open_: list[Formula] = []
    not_applicable: list[Formula] = []
    untranslatable: list[Formula] = []
    conjectures: dict[Formula, TruthValue] = {}
    images: dict[Formula, Formula] = {}

    for f in formulas:
        try:
            image = translate(amap, f)
        except TranslationError:
            untranslatable.append(f)
            continue
        images[f] = image
        vs = evaluate(f, amap.source).value
        vt = evaluate(image, amap.target).value
        if not vs.known:
            not_applicable.append(f)
        elif not vt.known:
            open_.append(f)
            conjectures[f] = vs
        elif vs is vt:
            positive.append(f)
        else:
            negative.append(f)

    return SupportReport(
        analogy=amap,
        formulas=tuple(formulas),
        positive=tuple(positive),
        negative=tuple(negative),
        open=tuple(open_),
        not_applicable=tuple(not_applicable),
        untranslatable=tuple(untranslatable),
        conjectures=conjectures,
        images=images,
    )


def check_injective_on(amap: AnalogyMap, formulas: Sequence[Formula]) -> None:
    """Reject maps whose translation collides on the working set.

    Distinct pieces can send distinct formulas to the same image even
    though each piece is injective on symbols; conjecture lookup needs
    the translation itself to be injective on the working set.
    """

    seen: dict[Formula, Formula] = {}
    for f in dict.fromkeys(formulas):
        try:
            image = translate(amap, f)
        except TranslationError:
            continue
        if image in seen:
            raise AnalogyError(
                f"analogy {amap.name!r}: translation is not injective on the "
                f"working set ({seen[image]} and {f} share an image)"
            )
        seen[image] = f


# ====================================================================
# Combination
# ====================================================================


def combine(
    first: AnalogyMap,
    second: AnalogyMap,
    first_guard: Guard,
    second_guard: Guard,
    name: str | None = None,
    working_set: Sequence[Formula] | None = None,
) -> AnalogyMap:
    """Merge two analogies into a piecewise map along a constant split.

    Formulas matched by first_guard use first's symbol maps, those
    matched by second_guard use second's. The guards must be constant
    guards with disjoint constant sets. When a working set is given,
    every formula in it must be covered by one of the guards and the
    induced translation must be injective on it.
    """

    if first.source != second.source or first.target != second.target:
        raise AnalogyError("can only combine analogies between the same domains")
    if first_guard.is_always or second_guard.is_always:
        raise AnalogyError("combination guards must name constants")
    if first_guard.overlaps(second_guard):
        raise AnalogyError("combination guards overlap")

    pieces: list[AnalogyPiece] = []
    for outer, amap in ((first_guard, first), (second_guard, second)):
        for piece in amap.pieces:
            merged = outer.intersect(piece.guard)
            if merged.constants is not None and not merged.constants:
                continue  # dead guard, can never match
            pieces.append(AnalogyPiece(merged, piece.mapping))

    combined = AnalogyMap(
        name=name or f"{first.name}+{second.name}",
        source=first.source,
        target=first.target,
        pieces=tuple(pieces),
    )

    if working_set is not None:
        for f in working_set:
            if not any(p.guard.matches(f) for p in combined.pieces):
                raise AnalogyError(
                    f"combination does not cover working formula {print_formula(f)}"
                )
        check_injective_on(combined, working_set)

    return combined


def close_under_combination(
    analogies: Sequence[AnalogyMap], working_set: Sequence[Formula]
) -> tuple[AnalogyMap, ...]:
    """One round of pairwise combination along single-constant splits.

    For every ordered pair of distinct analogies and every source
    constant c, the combination that follows the first analogy on
    formulas mentioning only c and the second elsewhere is added,
    provided it stays injective on the working set. Existing analogies
    come first in the result, generated ones after, in deterministic
    order. The round is not iterated.
    """

    out = list(analogies)
    if not analogies:
        return tuple(out)
    constants = analogies[0].source.signature.constants
    taken = {a.name for a in analogies}
    for a in analogies:
        for b in analogies:
            if a.name == b.name:
                continue
            for c in constants:
                rest = frozenset(constants) - {c}
                if not rest:
                    continue
                name = f"{a.name}+{b.name}@{c}"
                if name in taken:
                    continue
                try:
                    combo = combine(
                        a, b, Guard.mentions({c}), Guard.mentions(rest), name=name
                    )
                    check_injective_on(combo, working_set)
                except AnalogyError:
                    continue
                out.append(combo)
                taken.add(name)
    return tuple(out)


# ====================================================================
# Augmented report and scoring
# ====================================================================


@dataclass(frozen=True)
class AugmentedReport:
    """Support pairs with directions split out.

    positive_pairs lists (formula, image) where both sides hold or
    both fail. negative_source_true lists pairs that hold here but
    fail there; negative_source_false the reverse. plausible lists
    (formula, image, conjectured value) for the open formulas.
    """

    analogy: AnalogyMap
    positive_pairs: tuple[tuple[Formula, Formula], ...]
    negative_source_true: tuple[tuple[Formula, Formula], ...]
    negative_source_false: tuple[tuple[Formula, Formula], ...]
    plausible: tuple[tuple[Formula, Formula, TruthValue], ...]

    def to_json_dict(self) -> dict:
        def pairs(entries):
            return [
                {"source": print_formula(a), "target": print_formula(b)}
                for a, b in entries
            ]

        return {
            "analogy": self.analogy.name,
            "positive_pairs": pairs(self.positive_pairs),
            "negative_source_true": pairs(self.negative_source_true),
            "negative_source_false": pairs(self.negative_source_false),
            "plausible": [
                {
                    "source": print_formula(a),
                    "target": print_formula(b),
                    "conjecture": str(v),
                }
                for a, b, v in self.plausible
            ],
        }


def augmented_report(amap: AnalogyMap, formulas: Sequence[Formula]) -> AugmentedReport:
    """Classify and pair every formula with its image, splitting negatives."""

    report = classify(amap, formulas)
    neg_true: list[tuple[Formula, Formula]] = []
    neg_false: list[tuple[Formula, Formula]] = []
    for f in report.negative:
        vs = evaluate(f, amap.source).value
        if vs is TruthValue.TRUE:
            neg_true.append((f, report.images[f]))
        else:
            neg_false.append((f, report.images[f]))
    return AugmentedReport(
        analogy=amap,
        positive_pairs=tuple((f, report.images[f]) for f in report.positive),
        negative_source_true=tuple(neg_true),
        negative_source_false=tuple(neg_false),
        plausible=tuple(
            (f, report.images[f], report.conjectures[f]) for f in report.open
        ),
    )


@dataclass(frozen=True)
class StraightRuleScore:
    """Exact rational degree of support from match and mismatch counts."""

    n: int
    r: int
    s: int
    p: Fraction

    def to_json_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "s": self.s, "p": str(self.p)}


def straight_rule(n: int, r: int, s: int) -> StraightRuleScore:
    """p = n / (n + r + s + 1), requiring at least one positive match.

    The +1 keeps p short of certainty no matter how much agreement is
    piled up, and an analogy with no positive support at all is not
    scored: it would start from nothing.
    """

    for label, v in (("n", n), ("r", r), ("s", s)):
        if not isinstance(v, int) or v < 0:
            raise AnalogyError(f"count {label} must be a nonnegative integer")
    if n == 0:
        raise AnalogyError("no positive analogy: n must be at least 1")
    return StraightRuleScore(n=n, r=r, s=s, p=Fraction(n, n + r + s + 1))
