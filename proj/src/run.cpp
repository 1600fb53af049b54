#include "gm/run.hpp"

#include <map>
#include <set>
#include <sstream>

#include "gm/errors.hpp"
#include "gm/parser.hpp"
#include "gm/wfe.hpp"

namespace gm {

namespace {

std::string banner(const std::string& name) { return "== " + name + " ==\n"; }

}  // namespace

RunArtifacts run_scenario(const Scenario& sc) {
    EnumeratedOracle oracle = sc.make_oracle();
    Schedule sched = sc.make_schedule();

    RunArtifacts out;
    out.construction = run_construction(sc.start, sched, oracle, sc.tab);
    out.model = build_term_model(out.construction.sigma, sc.tab);
    out.welldef = verify_welldefined(out.construction.sigma.literals, sc.tab);

    const auto& sigma = out.construction.sigma;
    out.sigma_text = render_sigma(sigma, sc.tab);
    out.trace_text = render_trace(out.construction.trace, sc.tab);
    out.model_text = out.model.render();

    MultiStructure quotient = out.model.as_structure();
    std::ostringstream sum;
    sum << "class members: " << oracle.members()->size() << "\n";
    sum << "atoms: " << sc.tab.size() << "\n";
    sum << "schedule: " << sched.entries.size() << " dense sets\n";
    sum << "start: " << render(sc.tab, sc.start) << "\n";
    sum << "construction: " << out.construction.trace.steps.size() << " steps\n";
    sum << "sigma: " << sigma.literals.decided_count() << " literals; " << sigma.maximality_note
        << "\n";
    if (out.welldef.ok())
        sum << "well-defined: ok\n";
    else {
        sum << "well-defined: " << out.welldef.violations.size() << " violation(s)\n";
        out.all_green = false;
    }
    for (const auto& e : sc.theory.entries) {
        const Formula& target = e.schedulable ? *e.schedulable : e.axiom;
        sum << "axiom " << e.label << ": ";
        if (!e.certificate_only && classify(target) == FormulaClass::AndOr) {
            Verdict v = verify_andor(out.model, target, sigma, &out.construction.trace, sc.tab);
            if (v.value)
                sum << "holds (density certificate, " << v.conjuncts.size() << " conjunct(s))";
            else {
                sum << "FAILS (density certificate)";
                out.all_green = false;
            }
            if (v.certificate_only) sum << " [countable family: no evaluation cross-check]";
            sum << "\n";
        } else {
            try {
                bool b = eval(quotient, e.axiom);
                sum << (b ? "holds" : "FAILS") << " (evaluated in the term model)\n";
                if (!b) out.all_green = false;
            } catch (const UnsupportedFormulaError&) {
                sum << "not checked (countable family without expansion)\n";
            }
        }
    }
    for (const auto& n : sc.notes) sum << "note: " << n << "\n";
    sum << "result: " << (out.all_green ? "all checks passed" : "CHECKS FAILED") << "\n";
    out.summary_text = sum.str();

    std::string full;
    for (const auto& s : sc.sections) {
        if (!full.empty()) full += "\n";
        if (s == "sigma")
            full += banner("SIGMA") + out.sigma_text;
        else if (s == "trace")
            full += banner("TRACE") + out.trace_text;
        else if (s == "model")
            full += banner("MODEL") + out.model_text;
        else if (s == "summary")
            full += banner("SUMMARY") + out.summary_text;
    }
    out.full_text = full;
    return out;
}

namespace {

// The scenario file bundled with the binary, byte-for-byte the fixture.
// Sort N carries a membership diagram over three constants; sort B a binary
// tree of code words, pruned to the prefixes of valid codes.  A member
// selects a branch (Br), interprets N as the transitive closure of the
// decoded word with extra constants on the top, and ties leaf to top with
// Codes.
constexpr const char* kMiniCertificateJson = R"JSON({
  "signature": {
    "sorts": ["N", "B"],
    "constants": {
      "N": ["n0", "n1", "n2"],
      "B": ["t", "t0", "t00", "t01", "t000", "t001", "t010",
            "t0000", "t0010", "t0100", "t0011"]
    },
    "relations": [
      {"name": "In", "args": ["N", "N"]},
      {"name": "Br", "args": ["B"]},
      {"name": "Codes", "args": ["B", "N"]}
    ]
  },
  "class": {
    "members": [
      "N: {n0}\nB: {t, t0, t00, t01, t000, t001, t010, t0000, t0010, t0100, t0011}\nn0 -> n0\nn1 -> n0\nn2 -> n0\nt -> t\nt0 -> t0\nt00 -> t00\nt01 -> t01\nt000 -> t000\nt001 -> t001\nt010 -> t010\nt0000 -> t0000\nt0010 -> t0010\nt0100 -> t0100\nt0011 -> t0011\nIn: {}\nBr: {(t), (t0), (t00), (t000), (t0000)}\nCodes: {(t0000, n0)}",
      "N: {n0, n1}\nB: {t, t0, t00, t01, t000, t001, t010, t0000, t0010, t0100, t0011}\nn0 -> n0\nn1 -> n1\nn2 -> n1\nt -> t\nt0 -> t0\nt00 -> t00\nt01 -> t01\nt000 -> t000\nt001 -> t001\nt010 -> t010\nt0000 -> t0000\nt0010 -> t0010\nt0100 -> t0100\nt0011 -> t0011\nIn: {(n0, n1)}\nBr: {(t), (t0), (t00), (t001), (t0010)}\nCodes: {(t0010, n1)}",
      "N: {n0, n1}\nB: {t, t0, t00, t01, t000, t001, t010, t0000, t0010, t0100, t0011}\nn0 -> n0\nn1 -> n1\nn2 -> n1\nt -> t\nt0 -> t0\nt00 -> t00\nt01 -> t01\nt000 -> t000\nt001 -> t001\nt010 -> t010\nt0000 -> t0000\nt0010 -> t0010\nt0100 -> t0100\nt0011 -> t0011\nIn: {(n0, n1)}\nBr: {(t), (t0), (t01), (t010), (t0100)}\nCodes: {(t0100, n1)}",
      "N: {n0, n1, n2}\nB: {t, t0, t00, t01, t000, t001, t010, t0000, t0010, t0100, t0011}\nn0 -> n0\nn1 -> n1\nn2 -> n2\nt -> t\nt0 -> t0\nt00 -> t00\nt01 -> t01\nt000 -> t000\nt001 -> t001\nt010 -> t010\nt0000 -> t0000\nt0010 -> t0010\nt0100 -> t0100\nt0011 -> t0011\nIn: {(n0, n1), (n1, n2)}\nBr: {(t), (t0), (t00), (t001), (t0011)}\nCodes: {(t0011, n2)}"
    ]
  },
  "theory": {
    "axioms": [
      {"label": "branch.reaches.leaf",
       "formula": "Or[Br(t0000); Br(t0010); Br(t0100); Br(t0011)]"}
    ]
  },
  "schedule": {"from_theory": true, "decide_all": true},
  "start": ["In(n1, n2)"],
  "output": {"sections": ["model", "summary"]}
})JSON";

// The tree baked into the scenario: node -> (0-child, 1-child); "" = absent.
const std::map<std::string, std::pair<std::string, std::string>>& mini_tree() {
    static const std::map<std::string, std::pair<std::string, std::string>> t{
        {"t", {"t0", ""}},        {"t0", {"t00", "t01"}},   {"t00", {"t000", "t001"}},
        {"t01", {"t010", ""}},    {"t000", {"t0000", ""}},  {"t001", {"t0010", "t0011"}},
        {"t010", {"t0100", ""}},  {"t0000", {"", ""}},      {"t0010", {"", ""}},
        {"t0100", {"", ""}},      {"t0011", {"", ""}},
    };
    return t;
}

std::string set_text(const HFSet& a) {
    std::string s = a.braces();
    if (auto n = a.ack()) s += " (ack:" + std::to_string(*n) + ")";
    return s;
}

}  // namespace

Scenario mini_certificate_scenario() {
    return parse_scenario(kMiniCertificateJson, "<bundled mini-certificate>");
}

MiniCertificate run_mini_certificate() {
    Scenario sc = mini_certificate_scenario();
    RunArtifacts art = run_scenario(sc);

    const Signature& g = *sc.sig;
    std::ostringstream out;
    MiniCertificate cert;
    bool ok = art.all_green;

    out << banner("SCENARIO");
    out << "sorts: N (membership diagram), B (branch tree)\n";
    out << "class: " << sc.class_members->size() << " members, one per valid leaf word\n";
    out << "start: " << render(sc.tab, sc.start) << "\n";

    out << "\n" << banner("CONSTRUCTION");
    out << "steps: " << art.construction.trace.steps.size() << ", sigma decides "
        << art.construction.sigma.literals.decided_count() << " / " << sc.tab.size()
        << " atomic sentences\n";
    out << "well-defined: " << (art.welldef.ok() ? "ok" : "VIOLATED") << "\n";

    // Branch: walk the tree from the root along Br-selected children.
    int br = *g.relation_index("Br");
    std::set<std::string> selected;
    for (const auto& tuple : art.model.relations[br])
        selected.insert(g.constant_name(tuple[0]));
    out << "\n" << banner("BRANCH");
    out << "selected nodes:";
    {
        bool first = true;
        for (const auto& n : selected) {
            out << (first ? " " : ", ") << n;
            first = false;
        }
        out << "\n";
    }
    std::string word, node = "t";
    if (!selected.count(node)) {
        out << "root not selected\n";
        ok = false;
    }
    while (true) {
        auto [c0, c1] = mini_tree().at(node);
        bool s0 = !c0.empty() && selected.count(c0);
        bool s1 = !c1.empty() && selected.count(c1);
        if (s0 && s1) {
            out << "branch forks at " << node << "\n";
            ok = false;
            break;
        }
        if (!s0 && !s1) break;  // node is the leaf
        word += s0 ? '0' : '1';
        node = s0 ? c0 : c1;
    }
    out << "branch word: " << word << " (leaf " << node << ")\n";
    WfeCode branch_code = WfeCode::from_bits(word);
    DecodeResult branch = cod_decode(branch_code);
    out << "code from word: " << branch_code.render() << " ("
        << (branch.valid() ? "valid" : branch.check.render()) << ")\n";
    out << "Cod(branch) = " << set_text(branch.value) << "\n";
    if (!branch.valid()) ok = false;

    // Collapse: the N-sort classes in canonical order form the nodes, the In
    // relation over representatives the edges.
    out << "\n" << banner("COLLAPSE");
    int in_rel = *g.relation_index("In");
    const auto& nclasses = art.model.classes[*g.sort_index("N")];
    std::map<int, int> node_of_rep;
    out << "N-classes:";
    for (std::size_t i = 0; i < nclasses.size(); ++i) {
        node_of_rep[nclasses[i].front()] = static_cast<int>(i);
        out << (i ? ", [" : " [") << g.constant_name(nclasses[i].front()) << "]";
    }
    out << "\n";
    std::vector<std::pair<int, int>> edges;
    for (const auto& tuple : art.model.relations[in_rel])
        edges.emplace_back(node_of_rep.at(tuple[0]), node_of_rep.at(tuple[1]));
    WfeCode diagram = WfeCode::from_edges(edges, static_cast<int>(nclasses.size()));
    DecodeResult collapsed = cod_decode(diagram);
    out << "membership diagram: " << diagram.render() << " ("
        << (collapsed.valid() ? "valid" : collapsed.check.render()) << ")\n";
    out << "collapse(N-sort) = " << set_text(collapsed.value) << "\n";
    if (!collapsed.valid()) ok = false;

    out << "\n" << banner("CERTIFICATE");
    if (collapsed.valid()) {
        int top_rep = nclasses[collapsed.collapse->top].front();
        auto leaf_const = g.constant_index(node);
        bool tie = leaf_const && art.model.relations[*g.relation_index("Codes")].count(
                                     {*leaf_const, top_rep}) > 0;
        out << "tie Codes(" << node << ", [" << g.constant_name(top_rep)
            << "]): " << (tie ? "holds" : "MISSING") << "\n";
        if (!tie) ok = false;
    }
    bool match = branch.valid() && collapsed.valid() && branch.value == collapsed.value;
    if (!match) ok = false;
    out << "collapse(N-sort) == Cod(branch): " << (match ? "OK" : "MISMATCH") << "\n";

    cert.ok = ok;
    cert.text = out.str();
    return cert;
}

}  // namespace gm
