"""Strict preference relations and the choice functions they induce.

An edge (x, y) reads "x is better than y"; smaller is better
throughout. Relations are irreflexive by construction (a reflexive
edge is rejected, not dropped) but need not be transitive or acyclic.
The induced choice picks the undominated members of a subset: those
that nothing else in the subset beats. Two structural properties
matter downstream and are decided by exhaustive scan over the finite
carrier:

  * smooth: in every subset, every element is either chosen or beaten
    by a chosen element, so domination never rests on an endless or
    circular chain alone;
  * ranked: incomparable elements are interchangeable, beating and
    being beaten by exactly the same outsiders.

The module also derives preferences over analogies from their support
reports. Dominance prefers a strictly better support profile
(positives a superset, negatives a subset, not both equal). Counting
scores each analogy by weighted negatives minus weighted positives
and prefers the lower score; the result is always ranked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .analogy import SupportReport
from .errors import PreferenceError

DEFAULT_CHOICE_CAP = 4


@dataclass(frozen=True)
class PreferenceRelation:
    """A strict relation over a finite carrier of item ids."""

    carrier: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        if len(set(self.carrier)) != len(self.carrier):
            raise PreferenceError("duplicate carrier item")
        members = set(self.carrier)
        for x, y in self.edges:
            if x not in members or y not in members:
                raise PreferenceError(f"edge ({x!r}, {y!r}) leaves the carrier")
            if x == y:
                raise PreferenceError(f"reflexive edge on {x!r} rejected")

    def better(self, x: str, y: str) -> bool:
        return (x, y) in self.edges


def undominated(rel: PreferenceRelation, items: Iterable[str]) -> frozenset[str]:
    """The choice set: members of items beaten by no other member."""

    pool = frozenset(items)
    extra = pool - set(rel.carrier)
    if extra:
        raise PreferenceError(f"item {sorted(extra)[0]!r} is not in the carrier")
    return frozenset(
        x for x in pool if not any((y, x) in rel.edges for y in pool if y != x)
    )


def subsets_of(carrier: Sequence[str]) -> Iterator[frozenset[str]]:
    """All subsets in bitmask counter order; the order is stable."""

    items = tuple(carrier)
    for mask in range(1 << len(items)):
        yield frozenset(items[i] for i in range(len(items)) if mask >> i & 1)


@dataclass(frozen=True)
class ChoiceFunction:
    """A tabulated choice: one picked subset for every subset of the carrier.

    Totality over the powerset is enforced; whether the picks are
    actually subsets of their arguments is not, because the laws to be
    checked downstream include exactly that question.
"""

    carrier: tuple[str, ...]
    table: dict[frozenset[str], frozenset[str]]

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(
            self, "table", {frozenset(k): frozenset(v) for k, v in self.table.items()}
        )
        members = set(self.carrier)
        expected = 1 << len(self.carrier)
        if len(self.table) != expected:
            raise PreferenceError(
                f"choice table has {len(self.table)} entries, expected {expected}"
            )
        for k, v in self.table.items():
            if not k <= members or not v <= members:
                raise PreferenceError("choice table mentions items outside the carrier")

    def choose(self, items: Iterable[str]) -> frozenset[str]:
        return self.table[frozenset(items)]


def choice_of(rel: PreferenceRelation, max_size: int = DEFAULT_CHOICE_CAP) -> ChoiceFunction:
    """Tabulate the induced choice over the whole powerset."""

    if len(rel.carrier) > max_size:
        raise PreferenceError(
            f"carrier of size {len(rel.carrier)} exceeds the tabulation cap {max_size}"
        )
    return ChoiceFunction(
        carrier=rel.carrier,
        table={xs: undominated(rel, xs) for xs in subsets_of(rel.carrier)},
    )


def is_transitive(rel: PreferenceRelation) -> bool:
    for x, y in rel.edges:
        for y2, z in rel.edges:
            if y2 == y and (x, z) not in rel.edges:
                return False
    return True


def is_smooth(rel: PreferenceRelation) -> tuple[bool, tuple[frozenset[str], str] | None]:
    """Exhaustive smoothness check; returns the first failing (subset, item)."""

    for xs in subsets_of(rel.carrier):
        chosen = undominated(rel, xs)
        for x in rel.carrier:
            if x not in xs or x in chosen:
                continue
            if not any((y, x) in rel.edges for y in chosen):
                return False, (xs, x)
    return True, None


def is_ranked(rel: PreferenceRelation) -> tuple[bool, tuple[str, str, str] | None]:
    """Exhaustive rankedness check; returns the first failing triple.

    The failing triple (x, y, z) has x and y incomparable while z
    relates to one of them and not the other.
    """

    for x in rel.carrier:
        for y in rel.carrier:
            if (x, y) in rel.edges or (y, x) in rel.edges:
                continue
            for z in rel.carrier:
                if (z, x) in rel.edges and (z, y) not in rel.edges:
                    return False, (x, y, z)
                if (x, z) in rel.edges and (y, z) not in rel.edges:
                    return False, (x, y, z)
    return True, None


# ====================================================================
# Preferences over analogies
# ====================================================================


def _shared_basis(reports: Sequence[SupportReport]) -> None:
    if not reports:
        return
    names = [r.analogy.name for r in reports]
    if len(set(names)) != len(names):
        raise PreferenceError("duplicate analogy name in reports")
    first = reports[0]
    for r in reports[1:]:
        if r.formulas != first.formulas:
            raise PreferenceError("reports do not share the working set")
        if (
            r.analogy.source != first.analogy.source
            or r.analogy.target != first.analogy.target
        ):
            raise PreferenceError("reports do not share the domain pair")


def dominance_preference(reports: Sequence[SupportReport]) -> PreferenceRelation:
    """Prefer strictly better support: more positives, fewer negatives.

    An analogy is better than another when its positive set contains
    the other's, its negative set is contained in the other's, and the
    two profiles are not identical. The result is irreflexive and
    transitive by construction but usually partial.
    """

    _shared_basis(reports)
    names = tuple(r.analogy.name for r in reports)
    pos = {r.analogy.name: frozenset(r.positive) for r in reports}
    neg = {r.analogy.name: frozenset(r.negative) for r in reports}
    edges = set()
    for a in names:
        for b in names:
            if a == b:
                continue
            if pos[a] >= pos[b] and neg[a] <= neg[b] and (
                pos[a] != pos[b] or neg[a] != neg[b]
            ):
                edges.add((a, b))
    return PreferenceRelation(carrier=names, edges=frozenset(edges))


def count_preference(
    reports: Sequence[SupportReport],
    positive_weight: int | Fraction = 1,
    negative_weight: int | Fraction = 1,
) -> PreferenceRelation:
    """Prefer the lower weighted count: negatives count against, positives for.

    rank = negative_weight * |negatives| - positive_weight * |positives|,
    and x is better than y when rank(x) < rank(y). Ties stay
    incomparable, which makes the relation ranked by construction.
    """

    wp, wn = Fraction(positive_weight), Fraction(negative_weight)
    if wp <= 0 or wn <= 0:
        raise PreferenceError("count weights must be positive")
    _shared_basis(reports)
    names = tuple(r.analogy.name for r in reports)
    rank = {
        r.analogy.name: wn * len(r.negative) - wp * len(r.positive) for r in reports
    }
    edges = frozenset(
        (a, b) for a in names for b in names if a != b and rank[a] < rank[b]
    )
    return PreferenceRelation(carrier=names, edges=edges)
