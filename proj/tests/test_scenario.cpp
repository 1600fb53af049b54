#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "gm/errors.hpp"
#include "gm/parser.hpp"
#include "gm/run.hpp"
#include "gm/scenario.hpp"

using namespace gm;

namespace {

std::string fx(const std::string& rel) { return std::string(GM_FIXTURE_DIR) + "/" + rel; }

}  // namespace

TEST_CASE("exactly_one: load, counts, and the forced model") {
    Scenario sc = load_scenario(fx("scenarios/exactly_one.json"));
    CHECK(sc.sig->sort_count() == 1);
    CHECK(sc.sig->constant_count() == 3);
    CHECK(sc.sig->relation_count() == 1);
    CHECK(sc.tab.size() == 12);
    REQUIRE(sc.class_spec.has_value());
    CHECK_FALSE(sc.class_members.has_value());
    CHECK(sc.class_spec->bounds == std::vector<int>{3});

    EnumeratedOracle oracle = sc.make_oracle();
    CHECK(oracle.members()->size() == 3);

    CHECK(sc.theory.entries.size() == 41);  // 39 equality axioms + 2 explicit
    Schedule sched = sc.make_schedule();
    CHECK(sched.entries.size() == 55);  // 43 theory specs + 12 decision sets
    CHECK_FALSE(sched.round_robin);
    CHECK(render(sc.tab, sc.start) == "{P(c0)}");
    CHECK(sc.sections == std::vector<std::string>{"sigma", "trace", "model", "summary"});

    // P(c0) pins the class to a single member, so the run is fully forced.
    RunArtifacts art = run_scenario(sc);
    CHECK(art.all_green);
    CHECK(art.welldef.ok());
    CHECK(art.model_text ==
          "sort s: {[c0], [c1], [c2]}\n"
          "[c0] = {c0}\n"
          "[c1] = {c1}\n"
          "[c2] = {c2}\n"
          "P: {([c0])}\n");
    CHECK(art.summary_text.find("class members: 3\n") != std::string::npos);
    CHECK(art.summary_text.find("atoms: 12\n") != std::string::npos);
    CHECK(art.summary_text.find("schedule: 55 dense sets\n") != std::string::npos);
    CHECK(art.summary_text.find("start: {P(c0)}\n") != std::string::npos);
    CHECK(art.summary_text.find("construction: 55 steps\n") != std::string::npos);
    CHECK(art.summary_text.find("sigma: 12 literals; decides every atomic sentence; "
                                "no proper A-consistent extension exists\n") != std::string::npos);
    CHECK(art.summary_text.find("well-defined: ok\n") != std::string::npos);
    CHECK(art.summary_text.find(
              "axiom eq.refl(c0): holds (evaluated in the term model)\n") != std::string::npos);
    CHECK(art.summary_text.find("axiom eq.symm(c0,c1): holds (density certificate, "
                                "1 conjunct(s))\n") != std::string::npos);
    CHECK(art.summary_text.find("axiom p.exists: holds (density certificate, "
                                "1 conjunct(s))\n") != std::string::npos);
    CHECK(art.summary_text.find("axiom p.unique: holds (density certificate, "
                                "3 conjunct(s))\n") != std::string::npos);
    CHECK(art.summary_text.find("result: all checks passed\n") != std::string::npos);

    CHECK(run_scenario(sc).full_text == art.full_text);  // deterministic
}

TEST_CASE("equality_merge: a two-block partition with the start literal kept") {
    Scenario sc = load_scenario(fx("scenarios/equality_merge.json"));
    CHECK(sc.make_oracle().members()->size() == 12);
    CHECK(sc.theory.entries.size() == 40);
    CHECK(sc.make_schedule().entries.size() == 52);

    RunArtifacts art = run_scenario(sc);
    CHECK(art.all_green);
    CHECK(art.welldef.ok());
    REQUIRE(art.model.classes.size() == 1);
    CHECK(art.model.classes[0].size() == 2);  // every member merges exactly one pair
    MultiStructure q = art.model.as_structure();
    CHECK_FALSE(eval(q, parse_formula("(a = b)", *sc.sig)));  // the start literal
    CHECK(eval(q, parse_formula("Or[(a = c); (b = c)]", *sc.sig)));
    CHECK(art.summary_text.find("result: all checks passed\n") != std::string::npos);
    CHECK(run_scenario(sc).full_text == art.full_text);
}

TEST_CASE("pair_sorts: two sorts, a two-edge bipartite graph") {
    Scenario sc = load_scenario(fx("scenarios/pair_sorts.json"));
    CHECK(sc.make_oracle().members()->size() == 6);
    CHECK(sc.theory.entries.size() == 33);  // 32 equality axioms + 1 explicit
    CHECK(sc.tab.size() == 12);
    CHECK(sc.make_schedule().entries.size() == 45);

    RunArtifacts art = run_scenario(sc);
    CHECK(art.all_green);
    REQUIRE(art.model.classes.size() == 2);
    CHECK(art.model.classes[0].size() == 2);
    CHECK(art.model.classes[1].size() == 2);
    CHECK(art.model.relations[0].size() == 2);
    CHECK(run_scenario(sc).full_text == art.full_text);
}

TEST_CASE("mini-certificate: fixture and embedded scenario are the same problem") {
    Scenario file = load_scenario(fx("scenarios/mini_certificate.json"));
    Scenario embedded = mini_certificate_scenario();

    CHECK(file.sig->sort_count() == embedded.sig->sort_count());
    CHECK(file.tab.size() == 183);
    CHECK(embedded.tab.size() == 183);
    REQUIRE(file.class_members.has_value());
    CHECK(file.class_members->size() == 4);
    CHECK(embedded.class_members->size() == 4);
    REQUIRE(file.theory.entries.size() == 1);
    CHECK(file.theory.entries[0].label == "branch.reaches.leaf");
    CHECK(file.sections == std::vector<std::string>{"model", "summary"});
    CHECK(embedded.sections == file.sections);
    CHECK(render(file.tab, file.start) == "{In(n1, n2)}");
    CHECK(file.make_schedule().entries.size() == 184);

    RunArtifacts a = run_scenario(file);
    RunArtifacts b = run_scenario(embedded);
    CHECK(a.full_text == b.full_text);
    CHECK(a.all_green);

    // the selected sections only, in the declared order
    CHECK(a.full_text.rfind("== MODEL ==\n", 0) == 0);
    CHECK(a.full_text.find("== SUMMARY ==\n") != std::string::npos);
    CHECK(a.full_text.find("== SIGMA ==") == std::string::npos);
    CHECK(a.full_text.find("== TRACE ==") == std::string::npos);
}

TEST_CASE("mini-certificate: the collapse certifies the branch word") {
    MiniCertificate cert = run_mini_certificate();
    CHECK(cert.ok);
    CHECK(cert.text.find("selected nodes: t, t0, t00, t001, t0011\n") != std::string::npos);
    CHECK(cert.text.find("branch word: 0011 (leaf t0011)\n") != std::string::npos);
    CHECK(cert.text.find("Cod(branch) = {{{}}} (ack:2)\n") != std::string::npos);
    CHECK(cert.text.find("tie Codes(t0011, [n2]): holds\n") != std::string::npos);
    CHECK(cert.text.find("collapse(N-sort) == Cod(branch): OK\n") != std::string::npos);
    CHECK(run_mini_certificate().text == cert.text);
}

TEST_CASE("not_dense: loads fine, fails at the first schedule entry") {
    Scenario sc = load_scenario(fx("scenarios/not_dense.json"));
    CHECK(sc.make_oracle().members()->size() == 3);
    try {
        run_scenario(sc);
        FAIL("expected NotDenseError");
    } catch (const NotDenseError& e) {
        CHECK(e.label == "p.force");
        CHECK(std::string(e.what()).find("at step 1") != std::string::npos);
    }
}

TEST_CASE("scenario defaults: labels, bounds, notes, sections") {
    const char* text = R"json({
      "signature": {"sorts": ["s"], "constants": {"s": ["c0", "c1"]},
                    "relations": [{"name": "P", "args": ["s"]}]},
      "class": {"members": ["s: {c0, c1}\nc0 -> c0\nc1 -> c1"]},
      "theory": {"axioms": [{"formula": "Or[!P(c0); !P(c1)]"}]}
    })json";
    Scenario sc = parse_scenario(text);
    REQUIRE(sc.theory.entries.size() == 1);
    CHECK(sc.theory.entries[0].label == "axiom[0]");  // defaulted
    REQUIRE(sc.notes.size() == 1);
    CHECK(sc.notes[0] ==
          "class.members[0]: relation 'P' not listed; defaulted to the empty extension");
    CHECK(sc.sections == std::vector<std::string>{"sigma", "trace", "model", "summary"});
    CHECK(sc.start.decided_count() == 0);
    CHECK(sc.schedule_from_theory);
    CHECK(sc.schedule_decide_all);

    // the note surfaces in the run summary
    RunArtifacts art = run_scenario(sc);
    CHECK(art.summary_text.find("note: class.members[0]: relation 'P' not listed") !=
          std::string::npos);

    const char* bounded = R"json({
      "signature": {"sorts": ["s"], "constants": {"s": ["c0", "c1", "c2"]}},
      "class": {}
    })json";
    Scenario sb = parse_scenario(bounded);
    CHECK(sb.class_spec->bounds == std::vector<int>{3});  // defaults to the pool size
    CHECK(sb.theory.entries.empty());
}

TEST_CASE("scenario with qe witnesses builds the certificate-only entry") {
    const char* text = R"json({
      "signature": {"sorts": ["s"], "constants": {"s": ["c0", "c1"]},
                    "relations": [{"name": "P", "args": ["s"]}]},
      "class": {"constraint": "Exists x:s . P(x)"},
      "theory": {"qe_axioms": true, "witnesses": ["Exists x:s . P(x)"]}
    })json";
    Scenario sc = parse_scenario(text);
    REQUIRE(sc.theory.entries.size() == 2);
    CHECK(sc.theory.entries[0].label == "qe.total(s)");
    CHECK_FALSE(sc.theory.entries[0].certificate_only);
    CHECK(sc.theory.entries[1].label == "qe.wit(P(x))");
    CHECK(sc.theory.entries[1].certificate_only);

    RunArtifacts art = run_scenario(sc);
    CHECK(art.all_green);
    CHECK(art.summary_text.find("axiom qe.total(s): holds") != std::string::npos);
    // certificate_only entries fall back to direct evaluation of the axiom
    CHECK(art.summary_text.find("axiom qe.wit(P(x)): holds (evaluated in the term model)\n") !=
          std::string::npos);
}

TEST_CASE("explicit dense specs from files join the schedule in order") {
    const char* text = R"json({
      "signature": {"sorts": ["s"], "constants": {"s": ["c0", "c1"]},
                    "relations": [{"name": "P", "args": ["s"]}]},
      "class": {},
      "schedule": {"from_theory": false, "decide_all": false,
                   "dense": [{"kind": "decide", "atom": "(c0 = c1)"},
                             {"kind": "hit", "candidates": ["P(c0)", "!P(c1)"],
                              "label": "h"}]}
    })json";
    Scenario sc = parse_scenario(text);
    Schedule sched = sc.make_schedule();
    REQUIRE(sched.entries.size() == 2);
    CHECK(sched.entries[0].label == "decide (c0 = c1)");  // defaulted label
    CHECK(sched.entries[1].label == "h");

    // two dense sets leave Sigma partial, so drive the construction directly
    EnumeratedOracle oracle = sc.make_oracle();
    ConstructionResult res = run_construction(sc.start, sched, oracle, sc.tab);
    CHECK(res.trace.steps.size() == 2);
    CHECK_FALSE(res.sigma.decides_all);
    CHECK(res.sigma.maximality_note ==
          "leaves 4 atomic sentence(s) undecided; maximality not reached");
}

TEST_CASE("sections select and order the output blocks") {
    const char* text = R"json({
      "signature": {"sorts": ["s"], "constants": {"s": ["c0"]}},
      "class": {},
      "output": {"sections": ["summary", "sigma"]}
    })json";
    Scenario sc = parse_scenario(text);
    RunArtifacts art = run_scenario(sc);
    CHECK(art.full_text.rfind("== SUMMARY ==\n", 0) == 0);
    auto sig_pos = art.full_text.find("== SIGMA ==\n");
    REQUIRE(sig_pos != std::string::npos);
    CHECK(sig_pos > art.full_text.find("== SUMMARY ==\n"));
    CHECK(art.full_text.find("== MODEL ==") == std::string::npos);
    CHECK(art.full_text.find("== TRACE ==") == std::string::npos);
}

TEST_CASE("malformed scenario files fail with located diagnostics") {
    struct Case {
        const char* file;
        const char* where;  // nullptr: located at the document origin (the path)
        const char* what_part;
    };
    const std::vector<Case> cases = {
        {"bad_json.json", nullptr, "parse error"},
        {"class_bad_member.json", "class.members[0]", "missing assignment for constant 'c1'"},
        {"class_both_presentations.json", "class", "'members' excludes 'bounds'/'constraint'"},
        {"class_bound_too_big.json", "class.bounds.s", "between 1 and the constant pool size (2)"},
        {"class_constraint_ill_sorted.json", "class.constraint", "sort"},
        {"missing_class.json", nullptr, "missing key 'class'"},
        {"missing_signature.json", nullptr, "missing key 'signature'"},
        {"output_unknown_section.json", "output.sections", "unknown section 'blueprint'"},
        {"schedule_decide_negated.json", "schedule.dense[0].atom",
         "names an atom, not a negated literal"},
        {"schedule_unknown_kind.json", "schedule.dense[0].kind", "unknown kind 'custom'"},
        {"sig_dup_names.json", "signature", "'c'"},
        {"sig_empty_pool.json", "signature", "'u'"},
        {"sig_keyword_name.json", "signature", "Exists"},
        {"sig_rel_bad_arg.json", "signature.relations[0].args", "'w' is not a declared sort"},
        {"sig_unknown_sort_in_constants.json", "signature.constants",
         "'w' is not a declared sort"},
        {"start_contradiction.json", "start[1]", "contradicts an earlier start literal"},
        {"theory_axiom_bad_formula.json", "theory.axioms[0].formula", "syntax error"},
        {"theory_witness_without_qe.json", "theory.witnesses", "witnesses require"},
        {"top_not_object.json", nullptr, "top level must be a JSON object"},
        {"top_unknown_key.json", nullptr, "unknown key 'flavour'"},
    };

    // every file in the directory is exercised
    std::size_t on_disk = 0;
    for (const auto& e : std::filesystem::directory_iterator(fx("scenarios/bad")))
        if (e.path().extension() == ".json") ++on_disk;
    CHECK(on_disk == cases.size());

    for (const auto& c : cases) {
        CAPTURE(c.file);
        std::string path = fx(std::string("scenarios/bad/") + c.file);
        try {
            load_scenario(path);
            FAIL_CHECK("expected ScenarioError for " << c.file);
        } catch (const ScenarioError& e) {
            CHECK(e.where == (c.where ? std::string(c.where) : path));
            CHECK(std::string(e.what()).rfind("scenario error at ", 0) == 0);
            CHECK(std::string(e.what()).find(c.what_part) != std::string::npos);
        }
    }

    try {
        load_scenario(fx("scenarios/no_such_file.json"));
        FAIL_CHECK("expected ScenarioError for a missing file");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("cannot read file") != std::string::npos);
    }
}
