#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <string>
#include <vector>

#include "gm/atoms.hpp"
#include "gm/axioms.hpp"
#include "gm/class_enum.hpp"
#include "gm/errors.hpp"
#include "gm/forcing.hpp"
#include "gm/parser.hpp"
#include "gm/signature.hpp"

using namespace gm;

namespace {

SignaturePtr one_sorted() {
    return std::make_shared<const Signature>(
        std::vector<std::string>{"s"},
        std::vector<std::vector<std::string>>{{"c0", "c1", "c2"}},
        std::vector<RelationDecl>{{"P", {0}}});
}
// atom table layout: equalities 0..8 ((ci = cj), j fastest), P(c0..c2) = 9..11

struct Setup {
    SignaturePtr sig = one_sorted();
    AtomTable tab{sig};
    EnumeratedOracle oracle;

    explicit Setup(std::optional<Formula> constraint = std::nullopt)
        : oracle(EnumeratedOracle::from_spec(ClassSpec{sig, {3}, std::move(constraint)}, tab)) {}

    Condition cond(const std::string& text) const { return parse_condition(text, tab); }
};

}  // namespace

TEST_CASE("oracle membership: subsets of realized families") {
    Setup x;
    CHECK(x.oracle.members()->size() == 22);
    CHECK(x.oracle.member_literals()->size() == 22);

    CHECK(is_condition(x.cond("{}"), x.oracle));
    CHECK(is_condition(x.cond("{P(c0)}"), x.oracle));
    CHECK(is_condition(x.cond("{(c0 = c1), !P(c2)}"), x.oracle));
    // no structure realizes an asymmetric equality pattern
    CHECK_FALSE(is_condition(x.cond("{(c0 = c1), !(c1 = c0)}"), x.oracle));
    CHECK_FALSE(is_condition(x.cond("{!(c0 = c0)}"), x.oracle));

    // the witness is the least realizing member id
    auto ans = x.oracle.contains(x.cond("{}"));
    CHECK(ans.kind == ClassOracle::Answer::Kind::Yes);
    CHECK(ans.witness == 0);
    CHECK(x.oracle.contains(x.cond("{P(c0)}")).witness == 1);

    Setup no_p0(parse_formula("!P(c0)", *x.sig));
    CHECK_FALSE(is_condition(x.cond("{P(c0)}"), no_p0.oracle));
    CHECK(is_condition(x.cond("{P(c1)}"), no_p0.oracle));
}

TEST_CASE("predicate oracle: unknown surfaces as an oracle failure") {
    Setup x;
    PredicateOracle yes([](const Condition&) { return std::optional<bool>(true); });
    PredicateOracle no([](const Condition&) { return std::optional<bool>(false); });
    PredicateOracle shrug([](const Condition&) { return std::optional<bool>(); });

    CHECK(is_condition(x.cond("{}"), yes));
    CHECK_FALSE(is_condition(x.cond("{}"), no));
    CHECK_THROWS_AS(is_condition(x.cond("{}"), shrug), OracleFailureError);
}

TEST_CASE("dense specs: met_by semantics") {
    Setup x;
    auto d1 = DenseSpec::decide(9, "decide P(c0)");
    CHECK_FALSE(d1.met_by(x.cond("{}")));
    CHECK(d1.met_by(x.cond("{P(c0)}")));
    CHECK(d1.met_by(x.cond("{!P(c0)}")));  // either value decides

    auto d2 = DenseSpec::hit({{10, true}, {11, true}}, "p.later");
    CHECK_FALSE(d2.met_by(x.cond("{P(c0)}")));
    CHECK(d2.met_by(x.cond("{P(c2)}")));
    CHECK_FALSE(d2.met_by(x.cond("{!P(c1)}")));  // opposite literal does not hit

    // candidates are sorted and deduplicated; empty lists are rejected
    auto d3 = DenseSpec::hit({{11, true}, {10, true}, {11, true}}, "dup");
    REQUIRE(d3.candidates.size() == 2);
    CHECK(d3.candidates[0] == GroundLiteral{10, true});
    CHECK_THROWS_AS(DenseSpec::hit({}, "empty"), Error);

    auto d4 = DenseSpec::custom_spec(
        [](const Condition& p) { return p.decided_count() >= 2; }, 100, "two");
    CHECK_FALSE(d4.met_by(x.cond("{P(c0)}")));
    CHECK(d4.met_by(x.cond("{P(c0), P(c1)}")));
}

TEST_CASE("refine_to_meet: decide prefers the positive literal") {
    Setup x;
    Condition q = refine_to_meet(x.cond("{}"), DenseSpec::decide(9, "d"), x.oracle);
    CHECK(q == x.cond("{P(c0)}"));

    // already decided: returned unchanged
    Condition p = x.cond("{!P(c0)}");
    CHECK(refine_to_meet(p, DenseSpec::decide(9, "d"), x.oracle) == p);

    // positive blocked by the class: falls back to the negative literal
    Setup no_p0(parse_formula("!P(c0)", *x.sig));
    Condition r = refine_to_meet(x.cond("{}"), DenseSpec::decide(9, "d"), no_p0.oracle);
    CHECK(r == x.cond("{!P(c0)}"));

    // both blocked: the set is not dense below p
    Setup impossible(parse_formula("And[!(c0 = c1); (c0 = c1)]", *x.sig));
    CHECK(impossible.oracle.members()->empty());
    CHECK_THROWS_AS(run_construction(x.cond("{}"), Schedule{}, impossible.oracle, x.tab), Error);
}

TEST_CASE("refine_to_meet: hit walks candidates in canonical order") {
    Setup x;
    DenseSpec d = DenseSpec::hit({{10, true}, {11, true}}, "h");
    CHECK(refine_to_meet(x.cond("{}"), d, x.oracle) == x.cond("{P(c1)}"));
    // met already: unchanged, even when more candidates would apply
    CHECK(refine_to_meet(x.cond("{P(c2)}"), d, x.oracle) == x.cond("{P(c2)}"));
    // a decided candidate atom is skipped, not contradicted
    CHECK(refine_to_meet(x.cond("{!P(c1)}"), d, x.oracle) == x.cond("{!P(c1), P(c2)}"));

    Setup no_p0(parse_formula("!P(c0)", *x.sig));
    CHECK_THROWS_AS(refine_to_meet(x.cond("{}"), DenseSpec::hit({{9, true}}, "h"), no_p0.oracle),
                    NotDenseError);
    try {
        refine_to_meet(x.cond("{}"), DenseSpec::hit({{9, true}}, "h"), no_p0.oracle);
    } catch (const NotDenseError& e) {
        CHECK(e.label == "h");
    }
}

TEST_CASE("refine_to_meet: custom finds the lexicographically least extension") {
    Setup x;
    auto two = DenseSpec::custom_spec(
        [](const Condition& p) { return p.decided_count() >= 2; }, 10'000, "two");
    Condition q = refine_to_meet(x.cond("{}"), two, x.oracle);
    CHECK(q == x.cond("{(c0 = c0), (c0 = c1)}"));
    CHECK(refine_to_meet(q, two, x.oracle) == q);  // met: unchanged

    // an unreachable predicate exhausts the (pruned) search space
    auto never = DenseSpec::custom_spec(
        [](const Condition& p) { return p.decided(0) && !p.value(0); }, 10'000'000, "never");
    CHECK_THROWS_AS(refine_to_meet(x.cond("{}"), never, x.oracle), NotDenseError);

    // a tiny bound dies before the search completes
    auto starved = DenseSpec::custom_spec(
        [](const Condition& p) { return p.decided(0) && !p.value(0); }, 1, "starved");
    CHECK_THROWS_AS(refine_to_meet(x.cond("{}"), starved, x.oracle), OracleFailureError);
}

TEST_CASE("dense sets from a theory: one spec per conjunct, labels preserved") {
    Setup x;
    Theory th;
    th.add(parse_formula("Or[P(c0); P(c1)]", *x.sig), "a");
    th.add(parse_formula("And[Or[P(c0); P(c1)]; Or[!P(c2)]]", *x.sig), "b");
    th.entries.push_back({parse_formula("P(c0)", *x.sig), std::nullopt, false, ""});
    th.entries.push_back({parse_formula("Exists x:s . P(x)", *x.sig), std::nullopt, true, "skip"});
    th.entries.push_back({parse_formula("Exists x:s . P(x)", *x.sig),
                          parse_formula("Or[P(c0); P(c1); P(c2)]", *x.sig), false, "exp"});

    auto specs = dense_sets_from_theory(th, x.tab);
    REQUIRE(specs.size() == 5);
    CHECK(specs[0].label == "a");
    CHECK(specs[0].candidates == std::vector<GroundLiteral>{{9, true}, {10, true}});
    CHECK(specs[1].label == "b#0");
    CHECK(specs[2].label == "b#1");
    CHECK(specs[2].candidates == std::vector<GroundLiteral>{{11, false}});
    CHECK(specs[3].label == "ax2");  // unlabeled entry falls back to its position
    CHECK(specs[4].label == "exp");  // schedulable expansion replaces the axiom
    CHECK(specs[4].candidates.size() == 3);

    Theory bad;
    bad.add(parse_formula("Exists x:s . P(x)", *x.sig), "q");
    try {
        dense_sets_from_theory(bad, x.tab);
        FAIL("expected NotAndOrError");
    } catch (const NotAndOrError& e) {
        CHECK(std::string(e.what()).find("axiom q") != std::string::npos);
    }
}

TEST_CASE("decision dense sets cover the table in canonical order") {
    Setup x;
    auto specs = decision_dense_sets(x.tab);
    REQUIRE(specs.size() == 12);
    CHECK(specs[0].kind == DenseSpec::Kind::Decide);
    CHECK(specs[0].atom == 0);
    CHECK(specs[0].label == "decide (c0 = c0)");
    CHECK(specs[11].label == "decide P(c2)");
}

TEST_CASE("equality and qe standard theories have the advertised shapes") {
    auto g = one_sorted();
    Theory eqth = equality_axioms(*g);
    // 3 refl + 6 symm + 24 trans + 6 congruence instances for unary P
    REQUIRE(eqth.entries.size() == 39);
    CHECK(eqth.entries[0].label == "eq.refl(c0)");
    CHECK(render_formula(eqth.entries[0].axiom) == "(c0 = c0)");
    CHECK(eqth.entries[3].label == "eq.symm(c0,c1)");
    CHECK(render_formula(eqth.entries[3].axiom) == "Or[!(c0 = c1); (c1 = c0)]");
    CHECK(eqth.entries[33].label == "eq.congr(P,(c0),(c1))");
    CHECK(render_formula(eqth.entries[33].axiom) == "Or[!(c0 = c1); !P(c0); P(c1)]");
    for (const auto& e : eqth.entries) CHECK(classify(e.axiom) != FormulaClass::Other);

    AtomTable tab(g);
    CHECK(dense_sets_from_theory(eqth, tab).size() == 39);

    Theory qe = qe_axioms(*g);
    REQUIRE(qe.entries.size() == 1);
    CHECK(qe.entries[0].label == "qe.total(s)");
    CHECK(render_formula(qe.entries[0].axiom) ==
          "Forall x:s . Or[(x = c0); (x = c1); (x = c2)]");
    REQUIRE(qe.entries[0].schedulable.has_value());
    CHECK(classify(*qe.entries[0].schedulable) == FormulaClass::AndOr);
    CHECK(dense_sets_from_theory(qe, tab).size() == 3);  // one spec per constant

    Theory combined = equality_axioms(*g);
    combined.append(qe_axioms(*g));
    CHECK(combined.entries.size() == 40);
}

TEST_CASE("qe witness entries are certificate-only; malformed witnesses rejected") {
    auto g = one_sorted();
    Formula w = atom("P", {Term::variable("x", "s")});
    Theory th = qe_axioms(*g, {w});
    REQUIRE(th.entries.size() == 2);
    const auto& wit = th.entries[1];
    CHECK(wit.certificate_only);
    CHECK(wit.label == "qe.wit(P(x))");
    CHECK(is_closed(wit.axiom));
    CHECK(well_sorted_check(wit.axiom, *g).ok());
    // never scheduled, so the non-and_or shape is fine
    CHECK(dense_sets_from_theory(th, AtomTable(g)).size() == 3);

    CHECK_THROWS_AS(qe_axioms(*g, {parse_formula("P(c0)", *g)}), SortError);
    CHECK_THROWS_AS(qe_axioms(*g, {eq(Term::variable("x", "s"), Term::variable("y", "s"))}),
                    SortError);
    CHECK_THROWS_AS(qe_axioms(*g, {atom("P", {Term::variable("x", "w")})}), SortError);
}

TEST_CASE("run_construction: chain invariants and full decision") {
    Setup x;
    Schedule sched;
    sched.entries = decision_dense_sets(x.tab);
    auto res = run_construction(x.cond("{}"), sched, x.oracle, x.tab);

    REQUIRE(res.trace.steps.size() == 12);
    REQUIRE(res.chain.size() == 13);
    CHECK(res.chain.front().empty());
    for (std::size_t k = 0; k < res.trace.steps.size(); ++k) {
        const auto& st = res.trace.steps[k];
        CHECK(st.step == static_cast<int>(k + 1));
        CHECK(st.dense_index == static_cast<int>(k));
        CHECK(st.before == res.chain[k]);
        CHECK(st.after == res.chain[k + 1]);
        CHECK(st.before.subset_of(st.after));
        Condition rebuilt = st.before;
        for (auto l : st.added) rebuilt.set(l.atom, l.positive);
        CHECK(rebuilt == st.after);
        CHECK(st.witness >= 0);
        CHECK(is_condition(st.after, x.oracle));
        // met dense sets stay met in every later chain element
        for (std::size_t k2 = 0; k2 <= k; ++k2)
            CHECK(sched.entries[k2].met_by(st.after));
    }

    // true-first decisions from {} land on the all-merged, P-everywhere member
    CHECK(res.sigma.decides_all);
    CHECK(res.sigma.undecided.empty());
    CHECK(res.sigma.literals.decided_count() == 12);
    for (int a = 0; a < 12; ++a) CHECK(res.sigma.literals.value(a));
    CHECK(res.sigma.maximality_note ==
          "decides every atomic sentence; no proper A-consistent extension exists");
    CHECK(res.trace.steps.back().witness == 1);

    // determinism: an identical run yields identical artifacts
    auto again = run_construction(x.cond("{}"), sched, x.oracle, x.tab);
    CHECK(again.sigma.literals == res.sigma.literals);
    CHECK(again.chain == res.chain);

    // round_robin only verifies (met specs stay met), never changes anything
    Schedule rr = sched;
    rr.round_robin = true;
    CHECK(run_construction(x.cond("{}"), rr, x.oracle, x.tab).sigma.literals ==
          res.sigma.literals);
}

TEST_CASE("run_construction: starts, no-ops, partial schedules, failures") {
    Setup x;
    // a schedule entry already met records a step that adds nothing
    Schedule one;
    one.entries.push_back(DenseSpec::decide(9, "decide P(c0)"));
    auto res = run_construction(x.cond("{P(c0)}"), one, x.oracle, x.tab);
    REQUIRE(res.trace.steps.size() == 1);
    CHECK(res.trace.steps[0].added.empty());
    CHECK(res.trace.steps[0].after == x.cond("{P(c0)}"));
    CHECK_FALSE(res.sigma.decides_all);
    CHECK(res.sigma.undecided.size() == 11);
    CHECK(res.sigma.maximality_note ==
          "leaves 11 atomic sentence(s) undecided; maximality not reached");

    // the start must lie in P_A
    Setup no_p0(parse_formula("!P(c0)", *x.sig));
    CHECK_THROWS_AS(run_construction(x.cond("{P(c0)}"), one, no_p0.oracle, x.tab), Error);

    // a non-dense entry fails with step context
    Schedule blocked;
    blocked.entries.push_back(DenseSpec::hit({{9, true}}, "p.force"));
    try {
        run_construction(x.cond("{}"), blocked, no_p0.oracle, x.tab);
        FAIL("expected NotDenseError");
    } catch (const NotDenseError& e) {
        CHECK(e.label == "p.force");
        CHECK(std::string(e.what()).find("at step 1") != std::string::npos);
    }
}

TEST_CASE("trace and sigma render in the frozen line formats") {
    Setup x;
    Schedule sched;
    sched.entries.push_back(DenseSpec::decide(1, "decide (c0 = c1)"));
    sched.entries.push_back(DenseSpec::hit({{9, true}}, "p.some"));
    auto res = run_construction(x.cond("{}"), sched, x.oracle, x.tab);

    CHECK(render_trace(res.trace, x.tab) ==
          "step 1 | dense decide (c0 = c1) | add {(c0 = c1)} | witness 0\n"
          "step 2 | dense p.some | add {P(c0)} | witness 1\n");
    CHECK(render_sigma(res.sigma, x.tab) == "(c0 = c1)\nP(c0)\n");

    Trace empty;
    CHECK(render_trace(empty, x.tab).empty());
}
