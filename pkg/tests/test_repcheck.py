"""Relation/choice correspondence: law checks, search, and sweeps."""

import pytest

from analogia import (
    ChoiceFunction,
    NotRepresentable,
    PreferenceRelation,
    RepcheckError,
    check_property,
    choice_of,
    completeness_sweep,
    irreflexive_relations,
    is_ranked,
    is_smooth,
    is_transitive,
    relation_in_class,
    represent,
    soundness_sweep,
    subsets_of,
)
from analogia.repcheck import CLASS_PROPERTIES, PropertyId, RelationClass

AB = ("a", "b")
ABC = ("a", "b", "c")


def fs(*names):
    return frozenset(names)


def table_cf(carrier, **picks):
    """Build a ChoiceFunction from keyword picks like ab=("a",)."""
    key = lambda names: fs(*names)
    table = {}
    for subset in subsets_of(carrier):
        label = "".join(sorted(subset)) or "empty"
        table[subset] = key(picks.get(label, ()))
    return ChoiceFunction(carrier, table)


def constant_empty(carrier):
    return ChoiceFunction(carrier, {xs: frozenset() for xs in subsets_of(carrier)})


# ====================================================================
# Single-law checks with deterministic witnesses
# ====================================================================


class TestCheckProperty:
    def test_mu_subset_violation_and_witness(self):
        cf = table_cf(AB, a=("b",), b=("b",), ab=("a", "b"))
        ok, witness = check_property(cf, PropertyId.MU_SUBSET)
        assert not ok
        assert witness == (fs("a"), None)

    def test_mu_subset_holds_for_induced_choices(self):
        for rel in irreflexive_relations(ABC):
            ok, witness = check_property(choice_of(rel), PropertyId.MU_SUBSET)
            assert ok and witness is None

    def test_mu_pr_violation_and_witness(self):
        cf = table_cf(AB, b=("b",), ab=("a",))
        ok, witness = check_property(cf, PropertyId.MU_PR)
        assert not ok
        assert witness == (fs("a"), fs("a", "b"))

    def test_mu_cum_violation_on_the_two_cycle_choice(self):
        two_cycle = PreferenceRelation(AB, {("a", "b"), ("b", "a")})
        cf = choice_of(two_cycle)
        assert cf.choose(AB) == frozenset()
        ok, witness = check_property(cf, PropertyId.MU_CUM)
        assert not ok
        # X is the larger set of the law's premise
        assert witness == (fs("a", "b"), fs("a"))

    def test_mu_eq_violation_from_a_lone_edge(self):
        lone = PreferenceRelation(ABC, {("a", "b")})
        cf = choice_of(lone)
        ok, witness = check_property(cf, PropertyId.MU_EQ)
        assert not ok
        assert witness == (fs("b", "c"), fs("a", "b", "c"))

    def test_every_induced_choice_satisfies_subset_and_pr(self):
        for rel in irreflexive_relations(ABC):
            cf = choice_of(rel)
            assert check_property(cf, PropertyId.MU_SUBSET)[0]
            assert check_property(cf, PropertyId.MU_PR)[0]

    def test_transitive_smooth_relations_satisfy_cum(self):
        seen = 0
        for rel in irreflexive_relations(ABC):
            if is_transitive(rel) and is_smooth(rel)[0]:
                seen += 1
                assert check_property(choice_of(rel), PropertyId.MU_CUM)[0]
        assert seen == 19

    def test_ranked_relations_satisfy_eq(self):
        seen = 0
        for rel in irreflexive_relations(ABC):
            if is_ranked(rel)[0]:
                seen += 1
                assert check_property(choice_of(rel), PropertyId.MU_EQ)[0]
        assert seen == 37


# ====================================================================
# Enumeration
# ====================================================================


class TestIrreflexiveRelations:
    @pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 64)])
    def test_counts(self, n, count):
        items = ABC[:n]
        rels = list(irreflexive_relations(items))
        assert len(rels) == count
        assert len(set(r.edges for r in rels)) == count

    def test_first_is_empty_last_is_complete(self):
        rels = list(irreflexive_relations(AB))
        assert rels[0].edges == frozenset()
        assert rels[-1].edges == {("a", "b"), ("b", "a")}


class TestRelationInClass:
    def test_all_admits_everything(self):
        for rel in irreflexive_relations(AB):
            assert relation_in_class(rel, RelationClass.ALL)

    def test_smooth_class_agrees_with_predicates(self):
        for rel in irreflexive_relations(ABC):
            want = is_transitive(rel) and is_smooth(rel)[0]
            assert relation_in_class(rel, RelationClass.TRANSITIVE_SMOOTH) == want

    def test_ranked_class_agrees_with_predicate(self):
        for rel in irreflexive_relations(ABC):
            assert relation_in_class(rel, RelationClass.RANKED) == is_ranked(rel)[0]


# ====================================================================
# Representation search
# ====================================================================


class TestRepresent:
    def test_round_trips_every_induced_choice_at_n2(self):
        for rel in irreflexive_relations(AB):
            got = represent(choice_of(rel), RelationClass.ALL)
            assert isinstance(got, PreferenceRelation)
            assert choice_of(got).table == choice_of(rel).table

    def test_search_respects_the_class(self):
        two_cycle = PreferenceRelation(AB, {("a", "b"), ("b", "a")})
        cf = choice_of(two_cycle)
        # the two-cycle is ranked, so its choice comes back in that class
        assert isinstance(represent(cf, RelationClass.RANKED), PreferenceRelation)
        # but no transitive smooth relation empties a pair
        got = represent(cf, RelationClass.TRANSITIVE_SMOOTH)
        assert isinstance(got, NotRepresentable)
        assert got.failed_property is PropertyId.MU_CUM
        assert got.witness == (fs("a", "b"), fs("a"))
        assert got.searched == 3

    def test_constant_empty_choice_obeys_the_laws_but_has_no_relation(self):
        """The smallest representation gap: every law holds, nothing fits.

        cf({a}) = {} cannot arise from an irreflexive relation because
        a alone is never beaten from inside {a}.
        """
        cf = constant_empty(("a",))
        for prop in PropertyId:
            ok, _ = check_property(cf, prop)
            assert ok
        got = represent(cf, RelationClass.ALL)
        assert isinstance(got, NotRepresentable)
        assert got.failed_property is None
        assert got.witness is None
        assert got.searched == 1

    def test_law_breaking_choice_reports_the_first_broken_law(self):
        cf = table_cf(AB, a=("b",), b=("b",), ab=("a", "b"))
        got = represent(cf, RelationClass.ALL)
        assert isinstance(got, NotRepresentable)
        assert got.failed_property is PropertyId.MU_SUBSET
        assert got.witness == (fs("a"), None)
        assert got.searched == 4

    def test_not_representable_json_shape(self):
        got = represent(constant_empty(("a",)), RelationClass.ALL)
        assert got.to_json_dict() == {
            "representable": False,
            "failed_property": None,
            "witness": None,
            "searched": 1,
        }
        broken = represent(table_cf(AB, a=("b",), b=("b",)), RelationClass.ALL)
        assert broken.to_json_dict() == {
            "representable": False,
            "failed_property": "MuSubset",
            "witness": {"X": ["a"], "Y": None},
            "searched": 4,
        }

    def test_carrier_cap(self):
        wide = ChoiceFunction(
            tuple("abcd"), {xs: frozenset() for xs in subsets_of("abcd")}
        )
        with pytest.raises(RepcheckError, match="cap"):
            represent(wide, RelationClass.ALL)


# ====================================================================
# Soundness sweeps: the laws hold for every in-class relation
# ====================================================================


SOUNDNESS_EXPECTED = {
    # (n, class): (examined, considered, transitive)
    (1, RelationClass.ALL): (1, 1, 1),
    (1, RelationClass.TRANSITIVE_SMOOTH): (1, 1, 1),
    (1, RelationClass.RANKED): (1, 1, 1),
    (2, RelationClass.ALL): (4, 4, 3),
    (2, RelationClass.TRANSITIVE_SMOOTH): (4, 3, 3),
    (2, RelationClass.RANKED): (4, 4, 3),
    (3, RelationClass.ALL): (64, 64, 19),
    (3, RelationClass.TRANSITIVE_SMOOTH): (64, 19, 19),
    (3, RelationClass.RANKED): (64, 37, 13),
    (4, RelationClass.ALL): (4096, 4096, 219),
    (4, RelationClass.TRANSITIVE_SMOOTH): (4096, 219, 219),
    (4, RelationClass.RANKED): (4096, 913, 75),
}


class TestSoundnessSweep:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    @pytest.mark.parametrize("cls", list(RelationClass), ids=lambda c: c.value)
    def test_no_violations_and_pinned_counts(self, n, cls):
        result = soundness_sweep(n, cls)
        assert result.ok
        assert result.violations == ()
        examined, considered, transitive = SOUNDNESS_EXPECTED[(n, cls)]
        assert result.examined == examined
        assert result.considered == considered
        assert result.stats == {"transitive": transitive}

    def test_considered_counts_match_the_object_level_predicates(self):
        """The bitmask class filters agree with the public predicates."""
        rels = list(irreflexive_relations(ABC))
        smooth = sum(1 for r in rels if is_transitive(r) and is_smooth(r)[0])
        ranked = sum(1 for r in rels if is_ranked(r)[0])
        assert soundness_sweep(3, RelationClass.TRANSITIVE_SMOOTH).considered == smooth
        assert soundness_sweep(3, RelationClass.RANKED).considered == ranked

    def test_json_shape(self):
        d = soundness_sweep(2, RelationClass.ALL).to_json_dict()
        assert list(d) == [
            "mode",
            "class",
            "n",
            "examined",
            "considered",
            "violation_count",
            "violations",
            "stats",
            "ok",
        ]
        assert d["mode"] == "soundness"
        assert d["ok"] is True
        assert d["violations"] == []

    @pytest.mark.parametrize("bad", [0, -1, 5])
    def test_size_bounds(self, bad):
        with pytest.raises(RepcheckError, match="soundness sweep supports"):
            soundness_sweep(bad, RelationClass.ALL)


# ====================================================================
# Completeness sweeps: these document a real gap and it stays visible
# ====================================================================


COMPLETENESS_EXPECTED = {
    # (n, class): (examined, passing, representable, violations)
    (1, RelationClass.ALL): (2, 2, 1, 1),
    (1, RelationClass.TRANSITIVE_SMOOTH): (2, 2, 1, 1),
    (1, RelationClass.RANKED): (2, 2, 1, 1),
    (2, RelationClass.ALL): (16, 9, 4, 5),
    (2, RelationClass.TRANSITIVE_SMOOTH): (16, 6, 3, 3),
    (2, RelationClass.RANKED): (16, 9, 4, 5),
    (3, RelationClass.ALL): (4096, 216, 64, 152),
    (3, RelationClass.TRANSITIVE_SMOOTH): (4096, 35, 19, 16),
    (3, RelationClass.RANKED): (4096, 159, 37, 122),
}


class TestCompletenessSweep:
    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("cls", list(RelationClass), ids=lambda c: c.value)
    def test_pinned_counts(self, n, cls):
        """Law-obeying choice functions outnumber the representable ones.

        The gap is real: the constant-empty choice obeys every law yet
        no irreflexive relation induces it, and the mismatch grows with
        the carrier. The violation lists stay nonempty on purpose.
        """
        result = completeness_sweep(n, cls)
        examined, passing, representable, violation_count = COMPLETENESS_EXPECTED[
            (n, cls)
        ]
        assert result.examined == examined
        assert result.considered == passing
        assert result.stats["representable"] == representable
        assert len(result.violations) == violation_count
        assert not result.ok

    def test_every_violation_obeys_the_laws_but_is_not_induced(self):
        result = completeness_sweep(2, RelationClass.ALL)
        induced = {
            tuple(sorted((tuple(sorted(k)), tuple(sorted(v)))
                         for k, v in choice_of(rel).table.items()))
            for rel in irreflexive_relations(AB)
        }
        for violation in result.violations:
            table = {fs(*k): fs(*v) for k, v in violation.choice_table}
            cf = ChoiceFunction(AB, table)
            for prop in CLASS_PROPERTIES[RelationClass.ALL]:
                assert check_property(cf, prop)[0]
            key = tuple(sorted((tuple(sorted(k)), tuple(sorted(v)))
                               for k, v in cf.table.items()))
            assert key not in induced

    def test_first_violation_is_the_constant_empty_table(self):
        result = completeness_sweep(1, RelationClass.ALL)
        violation = result.violations[0]
        assert violation.relation_edges is None
        assert violation.choice_table == (((), ()), (("a",), ()))
        assert violation.property is None

    def test_violation_json_shape(self):
        d = completeness_sweep(1, RelationClass.ALL).violations[0].to_json_dict()
        assert d == {
            "choice": [[[], []], [["a"], []]],
            "property": None,
            "X": None,
            "Y": None,
        }

    def test_transitive_reach_is_strictly_smaller_at_n2(self):
        """One choice function needs a cycle: the 2-cycle's empty pick."""
        result = completeness_sweep(2, RelationClass.ALL)
        assert result.stats["representable_transitive"] == 3
        assert result.stats["representable"] == 4

    def test_smooth_reach_equals_transitive_smooth_reach_at_n3(self):
        result = completeness_sweep(3, RelationClass.TRANSITIVE_SMOOTH)
        assert result.stats["representable_smooth_any"] == 19
        assert result.stats["representable"] == 19

    @pytest.mark.parametrize("bad", [0, 4])
    def test_size_bounds(self, bad):
        with pytest.raises(RepcheckError, match="completeness sweep supports"):
            completeness_sweep(bad, RelationClass.ALL)
