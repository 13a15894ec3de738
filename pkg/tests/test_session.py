"""Session file parsing, validation, canonical printing, and commands."""

from fractions import Fraction

import pytest

from analogia import (
    AnalogyError,
    Guard,
    ParseError,
    RepcheckError,
    SessionError,
    TruthValue,
    parse_formula,
    parse_session,
    print_session,
    resolve_maps,
    resolve_space,
    run,
    session_preference,
)

from conftest import SESSIONS_DIR

MINIMAL = """
domain S {
  objects: a;
  pred P/1;
  fact P(a) = true;
}
domain T {
  objects: b;
  pred R/1;
}
analogy plain from S to T {
  map P -> R;
  map a -> b;
}
workingset { P(a); }
query R(b);
"""


def corpus_files():
    return sorted(SESSIONS_DIR.glob("*.ana"))


# ====================================================================
# Parsing
# ====================================================================


class TestParseSession:
    def test_minimal_session(self):
        s = parse_session(MINIMAL)
        assert [d.signature.name for d in s.domains] == ["S", "T"]
        assert (s.source_name, s.target_name) == ("S", "T")
        assert [a.name for a in s.analogies] == ["plain"]
        assert [str(f) for f in s.working_set] == ["P(a)"]
        assert [str(q) for q in s.queries] == ["R(b)"]
        assert s.closure is False
        assert s.preference_kind == "dominance"

    def test_source_and_target_inferred_from_analogies(self):
        s = parse_session(MINIMAL)
        assert s.source.signature.name == "S"
        assert s.target.signature.name == "T"

    def test_explicit_source_target_and_closure(self):
        text = MINIMAL + "\nsource S;\ntarget T;\nclosure on;\n"
        s = parse_session(text)
        assert s.closure is True

    def test_declaration_order_is_free(self):
        reordered = """
        query R(b);
        analogy plain from S to T { map P -> R; map a -> b; }
        workingset { P(a); }
        domain T { objects: b; pred R/1; }
        domain S { objects: a; pred P/1; fact P(a) = true; }
        """
        assert parse_session(reordered) == parse_session(MINIMAL)

    def test_workingset_atoms_expands_ground_atoms(self):
        text = """
        domain S { objects: a, b; pred P/1; pred Q/1; }
        domain T { objects: c; pred R/1; }
        analogy m from S to T { map P -> R; map a -> c; }
        workingset atoms;
        """
        s = parse_session(text)
        assert [str(f) for f in s.working_set] == [
            "P(a)",
            "P(b)",
            "Q(a)",
            "Q(b)",
        ]

    def test_piecewise_analogy(self):
        text = """
        domain S { objects: a, b; pred P/1; }
        domain T { objects: c, d; pred R/1; }
        analogy m from S to T {
          piece when mentions {a} { map P -> R; map a -> c; }
          piece when mentions {b} { map P -> R; map b -> d; }
        }
        """
        s = parse_session(text)
        pieces = s.analogies[0].pieces
        assert pieces[0].guard == Guard.mentions({"a"})
        assert pieces[1].guard == Guard.mentions({"b"})
        assert pieces[0].mapping == {"P": "R", "a": "c"}

    def test_functions_and_interps(self):
        text = """
        domain S {
          objects: a, b;
          pred P/1;
          func f/1;
          interp f(a) = b;
          interp f(b) = b;
          fact P(b) = false;
        }
        domain T { objects: c; pred R/1; func g/1; interp g(c) = c; }
        analogy m from S to T { map P -> R; map f -> g; map a -> c; map b -> c; }
        """
        with pytest.raises(AnalogyError, match="not injective"):
            parse_session(text)
        fixed = text.replace("map b -> c;", "")
        s = parse_session(fixed)
        dom = s.domain("S")
        assert dom.func_interp[("f", ("a",))] == "b"
        assert dom.fact_value.__self__ is dom

    def test_counts_preference_with_fraction_weights(self):
        text = MINIMAL + "\npreference counts(1/2, 2);\n"
        s = parse_session(text)
        assert s.preference_kind == "counts"
        assert s.count_weights == (Fraction(1, 2), Fraction(2))

    def test_explicit_preference(self):
        text = """
        domain S { objects: a; pred P/1; fact P(a) = true; }
        domain T { objects: b; pred R/1; pred R2/1; }
        analogy one from S to T { map P -> R; map a -> b; }
        analogy two from S to T { map P -> R2; map a -> b; }
        workingset { P(a); }
        preference explicit { prefer one over two; }
        """
        s = parse_session(text)
        assert s.preference_kind == "explicit"
        assert s.explicit_edges == (("one", "two"),)

    def test_unknown_fact_value_reports_position(self):
        text = "domain S { objects: a; pred P/1; fact P(a) = maybe; }"
        with pytest.raises(ParseError) as exc:
            parse_session(text)
        assert "expected true, false, or unknown" in str(exc.value)

    @pytest.mark.parametrize(
        "snippet, message",
        [
            ("source S;\nsource S;", "duplicate source"),
            ("target T;\ntarget T;", "duplicate target"),
            ("closure on;\nclosure off;", "duplicate closure"),
            ("workingset { P(a); }", "duplicate workingset"),
            ("preference dominance;\npreference dominance;", "duplicate preference"),
            ("closure maybe;", "closure must be on or off"),
            ("widget;", "expected domain, analogy"),
        ],
    )
    def test_structural_parse_errors(self, snippet, message):
        with pytest.raises(ParseError, match=message):
            parse_session(MINIMAL + "\n" + snippet)

    def test_mixing_bare_maps_and_pieces_is_rejected(self):
        text = """
        domain S { objects: a, b; pred P/1; }
        domain T { objects: c; pred R/1; }
        analogy m from S to T {
          map P -> R;
          piece when mentions {a} { map a -> c; }
        }
        """
        with pytest.raises(ParseError, match="cannot mix bare map lines"):
            parse_session(text)

    def test_duplicate_map_source_in_a_piece(self):
        text = """
        domain S { objects: a; pred P/1; pred Q/1; }
        domain T { objects: b; pred R/1; pred R2/1; }
        analogy m from S to T { map P -> R; map P -> R2; map a -> b; }
        """
        with pytest.raises(SessionError, match="maps 'P' twice"):
            parse_session(text)

    def test_source_inference_fails_when_ambiguous(self):
        text = """
        domain S { objects: a; pred P/1; }
        domain T { objects: b; pred R/1; }
        analogy m from S to T { map P -> R; map a -> b; }
        analogy w from T to S { map R -> P; map b -> a; }
        """
        with pytest.raises(SessionError, match="cannot be inferred"):
            parse_session(text)

    def test_inference_with_no_analogies_fails(self):
        with pytest.raises(SessionError, match="cannot be inferred"):
            parse_session("domain S { objects: a; }")


# ====================================================================
# Semantic validation
# ====================================================================


class TestSessionValidation:
    @pytest.mark.parametrize(
        "mutation, message",
        [
            (
                "analogy m2 from S to S { map P -> P; map a -> a; }\nsource S;\ntarget T;",
                "runs to 'S', not the target",
            ),
            ("query P(a);\nsource S;\ntarget T;", "unknown predicate"),
            ("preference counts(0, 1);", "must be positive"),
            (
                "preference explicit { prefer plain over ghost; }",
                "unknown analogy 'ghost'",
            ),
            (
                "preference explicit { prefer plain over plain; }",
                "cannot be preferred to itself",
            ),
            (
                "preference explicit { prefer plain over plain; }\nclosure on;",
                "closure",
            ),
        ],
    )
    def test_rejections(self, mutation, message):
        with pytest.raises((SessionError, Exception), match=message):
            parse_session(MINIMAL + "\n" + mutation)

    def test_domain_errors_carry_the_domain_name(self):
        text = "domain S { objects: a, a; }\ndomain T { objects: b; }\nsource S;\ntarget T;"
        with pytest.raises(SessionError, match="domain S:"):
            parse_session(text)

    def test_undeclared_analogy_domain(self):
        text = """
        domain S { objects: a; pred P/1; }
        analogy m from S to Ghost { map P -> P; }
        """
        with pytest.raises(SessionError, match="undeclared target domain 'Ghost'"):
            parse_session(text)

    def test_duplicate_domains_rejected(self):
        text = "domain S { objects: a; }\n" * 2 + "source S;\ntarget S;"
        with pytest.raises(SessionError, match="declared twice"):
            parse_session(text)


# ====================================================================
# Canonical printing
# ====================================================================


class TestPrintSession:
    def test_round_trip_on_the_minimal_session(self):
        s = parse_session(MINIMAL)
        printed = print_session(s)
        assert parse_session(printed) == s
        assert print_session(parse_session(printed)) == printed

    @pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.stem)
    def test_round_trip_on_the_corpus(self, path):
        s = parse_session(path.read_text())
        printed = print_session(s)
        assert parse_session(printed) == s
        assert print_session(parse_session(printed)) == printed

    def test_canonical_output_is_normalized(self):
        messy = """
        query R(b);
        analogy plain from S to T { map a -> b; map P -> R; }
        domain T { objects: b; pred R/1; }
        workingset { P(a); }
        domain S { objects: a; pred P/1; fact P(a) = true; }
        """
        assert print_session(parse_session(messy)) == print_session(
            parse_session(MINIMAL)
        )

    def test_interpreted_constants_cannot_be_written_out(self):
        from analogia import Signature, make_domain, Session

        sig = Signature("S", ("a",), (), ())
        dom = make_domain(sig, ("a", "e2"), const_interp={"a": "e2"})
        with pytest.raises(SessionError, match="objects must name themselves"):
            print_session(
                Session(domains=(dom,), source_name="S", target_name="S")
            )


# ====================================================================
# Resolution
# ====================================================================


class TestResolution:
    def test_closure_expands_the_analogies(self):
        text = (SESSIONS_DIR / "closure.ana").read_text()
        s = parse_session(text)
        names = [a.name for a in resolve_maps(s)]
        assert names == [
            "first",
            "second",
            "first+second@x",
            "first+second@x'",
            "second+first@x",
            "second+first@x'",
        ]
        without = parse_session(text.replace("closure on;", ""))
        assert [a.name for a in resolve_maps(without)] == ["first", "second"]

    def test_session_preference_kinds(self):
        dominance = parse_session((SESSIONS_DIR / "combi.ana").read_text())
        maps = resolve_maps(dominance)
        pref = session_preference(dominance, maps)
        assert pref.edges == {("mixed", "first"), ("mixed", "second")}

        counts = parse_session((SESSIONS_DIR / "counts.ana").read_text())
        pref = session_preference(counts, resolve_maps(counts))
        assert pref.edges == {("hopeful", "contrary")}

        explicit = parse_session((SESSIONS_DIR / "explicit_pref.ana").read_text())
        pref = session_preference(explicit, resolve_maps(explicit))
        assert pref.edges == {("underdog", "favourite")}

    def test_resolve_space_builds_a_working_space(self):
        from analogia import best

        space = resolve_space(parse_session((SESSIONS_DIR / "combi.ana").read_text()))
        assert best(space) == {"mixed"}


# ====================================================================
# Commands
# ====================================================================


class TestRun:
    @pytest.fixture
    def combi(self):
        return parse_session((SESSIONS_DIR / "combi.ana").read_text())

    def test_check(self, combi):
        assert run(combi, "check") == {
            "command": "check",
            "ok": True,
            "domains": ["S", "T"],
            "source": "S",
            "target": "T",
            "analogies": ["first", "mixed", "second"],
            "working_set": 4,
            "queries": 2,
            "closure": False,
            "preference": "dominance",
        }

    def test_classify(self, combi):
        out = run(combi, "classify")
        assert out["command"] == "classify"
        by_name = {r["analogy"]: r for r in out["reports"]}
        assert by_name["first"]["positive"] == ["P(x)"]
        assert by_name["first"]["negative"] == ["P(x')"]
        assert by_name["mixed"]["positive"] == ["P(x)", "P(x')"]
        assert by_name["mixed"]["conjectures"] == {"Q(x)": "true", "Q(x')": "true"}

    def test_report(self, combi):
        out = run(combi, "report")
        by_name = {r["analogy"]: r for r in out["reports"]}
        assert by_name["second"]["negative_source_true"] == [
            {"source": "P(x)", "target": "Pb(y)"}
        ]

    def test_score(self, combi):
        out = run(combi, "score")
        assert out == {
            "command": "score",
            "scores": [
                {"analogy": "first", "n": 1, "r": 1, "s": 0, "p": "1/3"},
                {"analogy": "mixed", "n": 2, "r": 0, "s": 0, "p": "2/3"},
                {"analogy": "second", "n": 1, "r": 1, "s": 0, "p": "1/3"},
            ],
        }

    def test_score_without_positives_has_no_p(self):
        text = """
        domain S { objects: a; pred P/1; fact P(a) = true; }
        domain T { objects: b; pred R/1; fact R(b) = false; }
        analogy m from S to T { map P -> R; map a -> b; }
        workingset { P(a); }
        """
        out = run(parse_session(text), "score")
        assert out["scores"] == [{"analogy": "m", "n": 0, "r": 1, "s": 0, "p": None}]

    def test_best(self, combi):
        assert run(combi, "best") == {
            "command": "best",
            "carrier": ["first", "mixed", "second"],
            "edges": [["mixed", "first"], ["mixed", "second"]],
            "best": ["mixed"],
        }

    def test_entail(self, combi):
        out = run(combi, "entail")
        assert [v["status"] for v in out["verdicts"]] == ["entailed", "entailed"]
        assert [v["value"] for v in out["verdicts"]] == ["true", "true"]
        assert out["verdicts"][0]["query"] == "Qa(y)"

    def test_repcheck_needs_no_session(self):
        out = run(None, "repcheck", n=2, relation_class="all", mode="soundness")
        assert out["command"] == "repcheck"
        assert out["ok"] is True
        assert out["examined"] == 4

    def test_repcheck_argument_errors(self):
        with pytest.raises(RepcheckError, match="needs a carrier size"):
            run(None, "repcheck")
        with pytest.raises(RepcheckError, match="unknown relation class"):
            run(None, "repcheck", n=2, relation_class="wild")
        with pytest.raises(RepcheckError, match="unknown mode"):
            run(None, "repcheck", n=2, mode="sideways")

    def test_unknown_command(self, combi):
        with pytest.raises(SessionError, match="unknown command"):
            run(combi, "explode")

    def test_session_commands_need_a_session(self):
        with pytest.raises(SessionError, match="needs a session"):
            run(None, "entail")


# ====================================================================
# Corpus expectations
# ====================================================================


EXPECTED_VERDICTS = {
    "smoke": [("R(b)", "entailed", "true")],
    "combi": [("Qa(y)", "entailed", "true"), ("Qb(y')", "entailed", "true")],
    "counts": [("Wa(d1)", "entailed", "true"), ("Wb(d1)", "no_support", None)],
    "explicit_pref": [
        ("Hb(f)", "entailed", "true"),
        ("Ha(f)", "no_support", None),
    ],
    "quantified": [
        ("forall v. Feathered(v) -> Glides(v)", "entailed", "true"),
        ("Glides(t2)", "entailed", "true"),
    ],
    "functions": [("Lead(chief(n1))", "entailed", "true")],
    "unknowns": [("HiddenT(l)", "no_support", None)],
    "untranslatable": [("CoreT(q)", "settled_in_target", "true")],
    "identity": [("F(w)", "settled_in_target", "true")],
    "conflict": [("C(t)", "conflicted", None)],
    "closure": [("Qa(y)", "entailed", "true"), ("Qb(y')", "entailed", "true")],
    "empty_space": [("ZT(zz)", "no_support", None)],
    "cycle": [("Ma(u)", "no_support", None)],
    "weights": [],
}


class TestCorpus:
    def test_every_expected_file_exists(self):
        stems = {p.stem for p in corpus_files()}
        assert set(EXPECTED_VERDICTS) <= stems
        assert len(stems) >= 10

    @pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.stem)
    def test_parses_and_answers_as_expected(self, path):
        session = parse_session(path.read_text())
        out = run(session, "entail")
        got = [
            (v["query"], v["status"], v["value"]) for v in out["verdicts"]
        ]
        assert got == EXPECTED_VERDICTS[path.stem]

    def test_cycle_and_empty_space_warn(self):
        for stem in ("cycle", "empty_space"):
            session = parse_session((SESSIONS_DIR / f"{stem}.ana").read_text())
            out = run(session, "entail")
            assert out["verdicts"][0]["warnings"] == [
                "no analogy survives the preference; the best set is empty"
            ]

    def test_closure_best_set(self):
        session = parse_session((SESSIONS_DIR / "closure.ana").read_text())
        out = run(session, "best")
        assert out["best"] == ["first+second@x", "second+first@x'"]
