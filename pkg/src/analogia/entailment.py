"""Skeptical query answering over a space of competing analogies.

An analogy space bundles a source domain, a target domain, a working
set of source sentences, the candidate analogies between the domains,
and a strict preference over those candidates. A query is a sentence
in the target language. Settled queries are answered by the target
domain directly. Open queries are answered skeptically: only the best
candidates (the undominated ones) may speak, each speaks only when the
query is the exact image of a working set sentence whose source value
is known, and a definite verdict needs all speakers to agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .analogy import AnalogyMap, check_injective_on, translate
from .errors import AnalogyError, EntailmentError, TranslationError
from .formula import Formula, check_formula, evaluate
from .kb import KnowledgeDomain, TruthValue
from .preference import PreferenceRelation, undominated


class VerdictStatus(Enum):
    ENTAILED = "entailed"
    CONFLICTED = "conflicted"
    NO_SUPPORT = "no_support"
    SETTLED_IN_TARGET = "settled_in_target"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class AnalogySpace:
    """The fixed context that queries are answered against.

    Every analogy must run between the shared pair of domains, the
    working set must be well-formed over the source signature, and
    each analogy must translate the working set injectively so that a
    target sentence has at most one preimage per analogy. The
    preference carrier must be exactly the set of analogy names.
    """

    source: KnowledgeDomain
    target: KnowledgeDomain
    working_set: tuple[Formula, ...]
    analogies: tuple[AnalogyMap, ...]
    preference: PreferenceRelation

    def __post_init__(self):
        object.__setattr__(self, "working_set", tuple(self.working_set))
        object.__setattr__(self, "analogies", tuple(self.analogies))
        names = [a.name for a in self.analogies]
        if len(set(names)) != len(names):
            raise EntailmentError("duplicate analogy name in space")
        for a in self.analogies:
            if a.source != self.source:
                raise EntailmentError(f"analogy {a.name!r} runs from a different source domain")
            if a.target != self.target:
                raise EntailmentError(f"analogy {a.name!r} runs to a different target domain")
        for f in self.working_set:
            check_formula(f, self.source.signature)
        for a in self.analogies:
            try:
                check_injective_on(a, self.working_set)
            except AnalogyError as err:
                raise EntailmentError(str(err)) from err
        if set(self.preference.carrier) != set(names) or len(
            self.preference.carrier
        ) != len(names):
            raise EntailmentError("preference carrier does not match the analogy names")

    def analogy(self, name: str) -> AnalogyMap:
        for a in self.analogies:
            if a.name == name:
                return a
        raise EntailmentError(f"no analogy named {name!r} in space")


def best(space: AnalogySpace) -> frozenset[str]:
    """Names of the undominated analogies."""

    return undominated(space.preference, (a.name for a in space.analogies))


def conjecture_for(
    space: AnalogySpace, analogy_name: str, query: Formula
) -> TruthValue | None:
    """What one analogy suggests for the query, or None when it is silent.

    The analogy speaks only when the query is syntactically equal to
    the translation of some working set sentence and that sentence has
    a known value in the source. Injectivity on the working set makes
    the preimage unique when it exists.
    """

    a = space.analogy(analogy_name)
    for f in space.working_set:
        try:
            image = translate(a, f)
        except TranslationError:
            continue
        if image == query:
            v = evaluate(f, space.source)
            return v.value if v.known else None
    return None


@dataclass(frozen=True)
class Verdict:
    query: Formula
    status: VerdictStatus
    value: TruthValue | None
    support: tuple[str, ...]
    suggestions: dict[str, TruthValue]
    warnings: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "query": str(self.query),
            "status": self.status.value,
            "value": str(self.value) if self.value is not None else None,
            "support": list(self.support),
            "suggestions": {n: str(v) for n, v in sorted(self.suggestions.items())},
            "warnings": list(self.warnings),
        }


def entail(space: AnalogySpace, query: Formula) -> Verdict:
    """Answer a target-language query skeptically over the best analogies."""

    check_formula(query, space.target.signature)
    settled = evaluate(query, space.target)
    if settled.known:
        return Verdict(
            query=query,
            status=VerdictStatus.SETTLED_IN_TARGET,
            value=settled.value,
            support=(),
            suggestions={},
            warnings=(),
        )

    chosen = best(space)
    warnings: list[str] = []
    if not chosen:
        warnings.append("no analogy survives the preference; the best set is empty")
    suggestions = {}
    for name in sorted(chosen):
        suggested = conjecture_for(space, name, query)
        if suggested is not None:
            suggestions[name] = suggested

    if not suggestions:
        return Verdict(
            query=query,
            status=VerdictStatus.NO_SUPPORT,
            value=None,
            support=(),
            suggestions={},
            warnings=tuple(warnings),
        )
    values = set(suggestions.values())
    support = tuple(sorted(suggestions))
    if len(values) == 1:
        return Verdict(
            query=query,
            status=VerdictStatus.ENTAILED,
            value=values.pop(),
            support=support,
            suggestions=suggestions,
            warnings=tuple(warnings),
        )
    return Verdict(
        query=query,
        status=VerdictStatus.CONFLICTED,
        value=None,
        support=support,
        suggestions=suggestions,
        warnings=tuple(warnings),
    )
