"""Exhaustive checks of the correspondence between relations and choices.

A strict preference relation induces a choice function: pick the
undominated members of each subset. Four coherence laws of choice
functions are in play, quantified over subsets X and Y of the carrier:

  MuSubset  cf(X) is a subset of X.
  MuPR      X subset of Y implies cf(Y) meet X is a subset of cf(X).
  MuCUM     cf(X) subset of Y subset of X implies cf(X) = cf(Y).
  MuEq      X subset of Y and cf(Y) meet X nonempty implies
            cf(X) = cf(Y) meet X.

The soundness sweep enumerates every irreflexive relation on a small
carrier and confirms that the laws promised for its class hold: all
relations give MuSubset and MuPR, transitive smooth relations add
MuCUM, ranked relations add MuEq.

The completeness sweep asks the converse: does every choice function
obeying a class's laws arise from some relation in the class? Over
plain carriers the answer is no. The constant-empty choice obeys all
four laws, yet no irreflexive relation can give cf({a}) = {} because a
singleton is never dominated from inside itself. Such representation
gaps are reported as violations rather than papered over; closing them
needs carriers with duplicated elements, which is out of scope here.

All enumeration is in ascending bitmask order, so witnesses and
violation lists are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence

from .errors import RepcheckError
from .preference import (
    ChoiceFunction,
    PreferenceRelation,
    is_ranked,
    is_smooth,
    is_transitive,
)

ITEMS = ("a", "b", "c", "d")
SOUNDNESS_MAX_N = 4
COMPLETENESS_MAX_N = 3
REPRESENT_MAX_N = 3


class PropertyId(Enum):
    MU_SUBSET = "MuSubset"
    MU_PR = "MuPR"
    MU_CUM = "MuCUM"
    MU_EQ = "MuEq"

    def __str__(self) -> str:
        return self.value


class RelationClass(Enum):
    ALL = "all"
    TRANSITIVE_SMOOTH = "smooth"
    RANKED = "ranked"

    def __str__(self) -> str:
        return self.value


CLASS_PROPERTIES: dict[RelationClass, tuple[PropertyId, ...]] = {
    RelationClass.ALL: (PropertyId.MU_SUBSET, PropertyId.MU_PR),
    RelationClass.TRANSITIVE_SMOOTH: (
        PropertyId.MU_SUBSET,
        PropertyId.MU_PR,
        PropertyId.MU_CUM,
    ),
    RelationClass.RANKED: (
        PropertyId.MU_SUBSET,
        PropertyId.MU_PR,
        PropertyId.MU_EQ,
    ),
}


def relation_in_class(rel: PreferenceRelation, cls: RelationClass) -> bool:
    if cls is RelationClass.ALL:
        return True
    if cls is RelationClass.TRANSITIVE_SMOOTH:
        return is_transitive(rel) and is_smooth(rel)[0]
    return is_ranked(rel)[0]


# ====================================================================
# Bitmask internals
#
# A carrier of size n is the index range 0..n-1. A subset is a mask.
# A relation is held as better[i] = mask of elements i beats, with
# dominators[j] = mask of elements beating j as the transpose. The
# induced choice is a table indexed by subset mask.
# ====================================================================


def _ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _better_of(edge_mask: int, pairs: Sequence[tuple[int, int]], n: int) -> list[int]:
    better = [0] * n
    for bit, (i, j) in enumerate(pairs):
        if edge_mask >> bit & 1:
            better[i] |= 1 << j
    return better


def _dominators_of(better: Sequence[int], n: int) -> list[int]:
    dominators = [0] * n
    for i in range(n):
        for j in range(n):
            if better[i] >> j & 1:
                dominators[j] |= 1 << i
    return dominators


def _mu_table(dominators: Sequence[int], n: int) -> tuple[int, ...]:
    table = []
    for xs in range(1 << n):
        chosen = 0
        for x in range(n):
            if xs >> x & 1 and not dominators[x] & xs:
                chosen |= 1 << x
        table.append(chosen)
    return tuple(table)


def _transitive_masks(better: Sequence[int], n: int) -> bool:
    for i in range(n):
        row = better[i]
        for j in range(n):
            if row >> j & 1 and better[j] & ~row:
                return False
    return True


def _smooth_masks(dominators: Sequence[int], mu: Sequence[int], n: int) -> bool:
    for xs in range(1 << n):
        chosen = mu[xs]
        rest = xs & ~chosen
        for x in range(n):
            if rest >> x & 1 and not dominators[x] & chosen:
                return False
    return True


def _ranked_masks(better: Sequence[int], dominators: Sequence[int], n: int) -> bool:
    for x in range(n):
        for y in range(n):
            if x == y or better[x] >> y & 1 or better[y] >> x & 1:
                continue
            if better[x] != better[y] or dominators[x] != dominators[y]:
                return False
    return True


def _in_class_masks(
    better: Sequence[int], dominators: Sequence[int], mu: Sequence[int],
    n: int, cls: RelationClass,
) -> bool:
    if cls is RelationClass.ALL:
        return True
    if cls is RelationClass.TRANSITIVE_SMOOTH:
        return _transitive_masks(better, n) and _smooth_masks(dominators, mu, n)
    return _ranked_masks(better, dominators, n)


def _property_failure(
    mu: Sequence[int], n: int, prop: PropertyId
) -> tuple[int, int | None] | None:
    """First failing (X, Y) pair in ascending mask order, or None.

    The pair follows each law's own variable convention, so for MuCUM
    the first component X is the larger set. MuSubset has no Y.
    """

    size = 1 << n
    if prop is PropertyId.MU_SUBSET:
        for xs in range(size):
            if mu[xs] & ~xs:
                return xs, None
        return None
    if prop is PropertyId.MU_PR:
        for xs in range(size):
            for ys in range(size):
                if xs & ~ys:
                    continue
                if mu[ys] & xs & ~mu[xs]:
                    return xs, ys
        return None
    if prop is PropertyId.MU_CUM:
        for xs in range(size):
            for ys in range(size):
                if mu[xs] & ~ys or ys & ~xs:
                    continue
                if mu[ys] != mu[xs]:
                    return xs, ys
        return None
    for xs in range(size):
        for ys in range(size):
            if xs & ~ys:
                continue
            meet = mu[ys] & xs
            if meet and mu[xs] != meet:
                return xs, ys
    return None


def _mask_to_set(mask: int, items: Sequence[str]) -> frozenset[str]:
    return frozenset(items[i] for i in range(len(items)) if mask >> i & 1)


def _edges_of(edge_mask: int, pairs: Sequence[tuple[int, int]], items: Sequence[str]):
    return tuple(
        (items[i], items[j])
        for bit, (i, j) in enumerate(pairs)
        if edge_mask >> bit & 1
    )


def _table_of(cf: ChoiceFunction) -> tuple[int, ...]:
    items = tuple(cf.carrier)
    index = {name: i for i, name in enumerate(items)}

    def mask_of(names: frozenset[str]) -> int:
        m = 0
        for name in names:
            m |= 1 << index[name]
        return m

    table = [0] * (1 << len(items))
    for k, v in cf.table.items():
        table[mask_of(k)] = mask_of(v)
    return tuple(table)


def _all_choice_tables(n: int) -> Iterator[tuple[int, ...]]:
    """Every table with cf(X) a subset of X, ascending lexicographically."""

    size = 1 << n
    submasks = [[s for s in range(m + 1) if s & m == s] for m in range(size)]
    yield from itertools.product(*submasks)


# ====================================================================
# Public single-object checks
# ====================================================================

Witness = tuple[frozenset[str], frozenset[str] | None]


def check_property(cf: ChoiceFunction, prop: PropertyId) -> tuple[bool, Witness | None]:
    """Decide one law for one tabulated choice function.

    Returns (True, None) when the law holds, else (False, (X, Y)) with
    the first failing subsets in ascending bitmask order over the
    carrier; Y is None for MuSubset.
    """

    items = tuple(cf.carrier)
    failure = _property_failure(_table_of(cf), len(items), prop)
    if failure is None:
        return True, None
    x_mask, y_mask = failure
    y_set = None if y_mask is None else _mask_to_set(y_mask, items)
    return False, (_mask_to_set(x_mask, items), y_set)


def irreflexive_relations(items: Sequence[str]) -> Iterator[PreferenceRelation]:
    """All strict relations on the items, ascending by edge bitmask."""

    items = tuple(items)
    pairs = _ordered_pairs(len(items))
    for edge_mask in range(1 << len(pairs)):
        yield PreferenceRelation(
            carrier=items, edges=frozenset(_edges_of(edge_mask, pairs, items))
        )


@dataclass(frozen=True)
class NotRepresentable:
    """Negative answer from represent, with the reason when one is known.

    failed_property is the first required law the choice function
    breaks, or None when it obeys all of them and the exhaustive
    search over searched candidate relations still found no match.
    """

    failed_property: PropertyId | None
    witness: Witness | None
    searched: int

    def to_json_dict(self) -> dict:
        return {
            "representable": False,
            "failed_property": (
                self.failed_property.value if self.failed_property else None
            ),
            "witness": _witness_json(self.witness),
            "searched": self.searched,
        }


def _witness_json(witness: Witness | None):
    if witness is None:
        return None
    x_set, y_set = witness
    return {
        "X": sorted(x_set),
        "Y": sorted(y_set) if y_set is not None else None,
    }


def represent(
    cf: ChoiceFunction, cls: RelationClass
) -> PreferenceRelation | NotRepresentable:
    """Search for a class relation whose induced choice equals cf.

    The class's laws are checked first; the exhaustive search runs
    either way, and a match for a law-breaking choice function is an
    internal incoherence and raises. A returned relation is verified
    to reproduce cf exactly and to lie in the class.
    """

    items = tuple(cf.carrier)
    n = len(items)
    if n > REPRESENT_MAX_N:
        raise RepcheckError(
            f"carrier of size {n} exceeds the representation search cap {REPRESENT_MAX_N}"
        )
    target = _table_of(cf)
    failed = None
    witness = None
    for prop in CLASS_PROPERTIES[cls]:
        holds, w = check_property(cf, prop)
        if not holds:
            failed, witness = prop, w
            break

    pairs = _ordered_pairs(n)
    searched = 0
    found_mask = None
    for edge_mask in range(1 << len(pairs)):
        better = _better_of(edge_mask, pairs, n)
        dominators = _dominators_of(better, n)
        mu = _mu_table(dominators, n)
        if not _in_class_masks(better, dominators, mu, n, cls):
            continue
        searched += 1
        if mu == target:
            found_mask = edge_mask
            break

    if failed is not None:
        if found_mask is not None:
            raise RepcheckError(
                f"relation represents a choice function violating {failed.value}"
            )
        return NotRepresentable(failed_property=failed, witness=witness, searched=searched)
    if found_mask is None:
        return NotRepresentable(failed_property=None, witness=None, searched=searched)

    rel = PreferenceRelation(
        carrier=items, edges=frozenset(_edges_of(found_mask, pairs, items))
    )
    if not relation_in_class(rel, cls) or _table_of_relation(rel) != target:
        raise RepcheckError("represent produced a relation that fails verification")
    return rel


def _table_of_relation(rel: PreferenceRelation) -> tuple[int, ...]:
    items = tuple(rel.carrier)
    n = len(items)
    index = {name: i for i, name in enumerate(items)}
    better = [0] * n
    for x, y in rel.edges:
        better[index[x]] |= 1 << index[y]
    return _mu_table(_dominators_of(better, n), n)


# ====================================================================
# Sweeps
# ====================================================================


@dataclass(frozen=True)
class Violation:
    """One failed instance found by a sweep.

    Exactly one of relation_edges and choice_table is set, naming the
    offending object. For soundness failures property and the witness
    sets say which law broke where; for representation gaps they are
    None because every required law held and the search simply found
    no relation.
    """

    relation_edges: tuple[tuple[str, str], ...] | None
    choice_table: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...] | None
    property: PropertyId | None
    x_set: tuple[str, ...] | None
    y_set: tuple[str, ...] | None

    def to_json_dict(self) -> dict:
        out: dict = {}
        if self.relation_edges is not None:
            out["relation"] = [list(e) for e in self.relation_edges]
        if self.choice_table is not None:
            out["choice"] = [[list(k), list(v)] for k, v in self.choice_table]
        out["property"] = self.property.value if self.property else None
        out["X"] = list(self.x_set) if self.x_set is not None else None
        out["Y"] = list(self.y_set) if self.y_set is not None else None
        return out


@dataclass(frozen=True)
class SweepResult:
    """Outcome of one exhaustive sweep.

    examined counts every enumerated object (relations for soundness,
    choice tables for completeness); considered counts the ones the
    mode actually judges (in-class relations, law-obeying tables).
    stats carries auxiliary counts that are recorded but not asserted.
    """

    mode: str
    relation_class: RelationClass
    n: int
    examined: int
    considered: int
    violations: tuple[Violation, ...]
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "class": self.relation_class.value,
            "n": self.n,
            "examined": self.examined,
            "considered": self.considered,
            "violation_count": len(self.violations),
            "violations": [v.to_json_dict() for v in self.violations],
            "stats": dict(self.stats),
            "ok": self.ok,
        }


def _check_n(n: int, cap: int, mode: str) -> None:
    if not 1 <= n <= cap:
        raise RepcheckError(f"{mode} sweep supports 1 <= n <= {cap}, got {n}")


def soundness_sweep(n: int, cls: RelationClass) -> SweepResult:
    """Check the class's laws on every irreflexive relation of size n.

    All 2^(n^2 - n) irreflexive relations are enumerated; those in the
    class have their induced choice tabulated and every promised law
    checked. The transitive count is recorded so that the effect of
    transitivity on MuSubset and MuPR stays visible as data.
    """

    _check_n(n, SOUNDNESS_MAX_N, "soundness")
    items = ITEMS[:n]
    pairs = _ordered_pairs(n)
    props = CLASS_PROPERTIES[cls]
    examined = 0
    considered = 0
    transitive = 0
    violations: list[Violation] = []
    for edge_mask in range(1 << len(pairs)):
        examined += 1
        better = _better_of(edge_mask, pairs, n)
        dominators = _dominators_of(better, n)
        mu = _mu_table(dominators, n)
        if not _in_class_masks(better, dominators, mu, n, cls):
            continue
        considered += 1
        if _transitive_masks(better, n):
            transitive += 1
        for prop in props:
            failure = _property_failure(mu, n, prop)
            if failure is None:
                continue
            x_mask, y_mask = failure
            violations.append(
                Violation(
                    relation_edges=_edges_of(edge_mask, pairs, items),
                    choice_table=None,
                    property=prop,
                    x_set=tuple(sorted(_mask_to_set(x_mask, items))),
                    y_set=(
                        tuple(sorted(_mask_to_set(y_mask, items)))
                        if y_mask is not None
                        else None
                    ),
                )
            )
    return SweepResult(
        mode="soundness",
        relation_class=cls,
        n=n,
        examined=examined,
        considered=considered,
        violations=tuple(violations),
        stats={"transitive": transitive},
    )


def _choice_entries(
    table: Sequence[int], items: Sequence[str]
) -> tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]:
    return tuple(
        (
            tuple(sorted(_mask_to_set(xs, items))),
            tuple(sorted(_mask_to_set(table[xs], items))),
        )
        for xs in range(len(table))
    )


def completeness_sweep(n: int, cls: RelationClass) -> SweepResult:
    """Hunt for law-obeying choice functions no class relation induces.

    Every table with cf(X) a subset of X is enumerated. Tables that
    break a required law are skipped after confirming no class
    relation induces them (anything else would contradict soundness
    and raises). Law-obeying tables must match some class relation's
    induced choice; each one that does not becomes a violation. The
    stats record how many law-obeying tables are representable at all,
    and for the broader classes how far smaller subclasses reach:
    transitive relations under class all, smooth but not necessarily
    transitive relations under class smooth.
    """

    _check_n(n, COMPLETENESS_MAX_N, "completeness")
    items = ITEMS[:n]
    pairs = _ordered_pairs(n)
    props = CLASS_PROPERTIES[cls]

    representable: set[tuple[int, ...]] = set()
    transitive_rep: set[tuple[int, ...]] = set()
    smooth_any_rep: set[tuple[int, ...]] = set()
    for edge_mask in range(1 << len(pairs)):
        better = _better_of(edge_mask, pairs, n)
        dominators = _dominators_of(better, n)
        mu = _mu_table(dominators, n)
        if _in_class_masks(better, dominators, mu, n, cls):
            representable.add(mu)
            if cls is RelationClass.ALL and _transitive_masks(better, n):
                transitive_rep.add(mu)
        if cls is RelationClass.TRANSITIVE_SMOOTH and _smooth_masks(dominators, mu, n):
            smooth_any_rep.add(mu)

    examined = 0
    passing = 0
    represented = 0
    violations: list[Violation] = []
    stats_extra: dict[str, int] = {}
    if cls is RelationClass.ALL:
        stats_extra["representable_transitive"] = 0
    if cls is RelationClass.TRANSITIVE_SMOOTH:
        stats_extra["representable_smooth_any"] = 0
    for table in _all_choice_tables(n):
        examined += 1
        if any(_property_failure(table, n, p) is not None for p in props):
            if table in representable:
                raise RepcheckError(
                    "a class relation induces a choice function that breaks the class laws"
                )
            continue
        passing += 1
        if table in representable:
            represented += 1
        else:
            violations.append(
                Violation(
                    relation_edges=None,
                    choice_table=_choice_entries(table, items),
                    property=None,
                    x_set=None,
                    y_set=None,
                )
            )
        if cls is RelationClass.ALL and table in transitive_rep:
            stats_extra["representable_transitive"] += 1
        if cls is RelationClass.TRANSITIVE_SMOOTH and table in smooth_any_rep:
            stats_extra["representable_smooth_any"] += 1

    stats = {"representable": represented}
    stats.update(stats_extra)
    return SweepResult(
        mode="completeness",
        relation_class=cls,
        n=n,
        examined=examined,
        considered=passing,
        violations=tuple(violations),
        stats=stats,
    )
