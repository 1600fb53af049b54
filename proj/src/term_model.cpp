#include "gm/term_model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gm/errors.hpp"
#include "gm/parser.hpp"

namespace gm {

MultiStructure TermModel::as_structure() const {
    const Signature& g = *sig;
    std::vector<std::vector<int>> domains(g.sort_count());
    std::map<int, std::string> names;
    for (int s = 0; s < g.sort_count(); ++s)
        for (const auto& cls : classes[s]) {
            domains[s].push_back(cls.front());
            names[cls.front()] = "[" + g.constant_name(cls.front()) + "]";
        }
    for (auto& d : domains) std::sort(d.begin(), d.end());
    std::vector<int> interp(class_rep.begin(), class_rep.end());
    return MultiStructure(sig, std::move(domains), std::move(interp), relations,
                          std::move(names));
}

std::string TermModel::render() const {
    const Signature& g = *sig;
    std::ostringstream out;
    for (int s = 0; s < g.sort_count(); ++s) {
        out << "sort " << g.sort_name(s) << ": {";
        for (std::size_t i = 0; i < classes[s].size(); ++i) {
            if (i) out << ", ";
            out << "[" << g.constant_name(classes[s][i].front()) << "]";
        }
        out << "}\n";
        for (const auto& cls : classes[s]) {
            out << "[" << g.constant_name(cls.front()) << "] = {";
            for (std::size_t i = 0; i < cls.size(); ++i) {
                if (i) out << ", ";
                out << g.constant_name(cls[i]);
            }
            out << "}\n";
        }
    }
    for (int r = 0; r < g.relation_count(); ++r) {
        out << g.relation(r).name << ": {";
        bool first = true;
        for (const auto& t : relations[r]) {
            if (!first) out << ", ";
            first = false;
            out << "(";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) out << ",";
                out << "[" << g.constant_name(t[i]) << "]";
            }
            out << ")";
        }
        out << "}\n";
    }
    return out.str();
}

TermModel build_term_model(const Condition& sigma, const AtomTable& tab) {
    const Signature& g = tab.sig();
    for (int a = 0; a < tab.size(); ++a)
        if (!sigma.decided(a)) throw NotMaximalError(a, tab.render(a));

    // Union the positive equalities, then insist the result IS the (c=d)
    // pattern of Sigma — any failure of the equivalence laws shows up as a
    // mismatch between same-class and positive-equality.
    std::vector<int> parent(g.constant_count());
    for (int c = 0; c < g.constant_count(); ++c) parent[c] = c;
    auto find = [&](int c) {
        while (parent[c] != c) c = parent[c] = parent[parent[c]];
        return c;
    };
    for (int s = 0; s < g.sort_count(); ++s)
        for (int i = 0; i < g.constant_count(s); ++i)
            for (int j = 0; j < g.constant_count(s); ++j) {
                int c = g.constant_global(s, i), d = g.constant_global(s, j);
                if (sigma.value(tab.eq_index(c, d))) {
                    int a = find(c), b = find(d);
                    if (a != b) parent[std::max(a, b)] = std::min(a, b);
                }
            }
    for (int s = 0; s < g.sort_count(); ++s)
        for (int i = 0; i < g.constant_count(s); ++i)
            for (int j = 0; j < g.constant_count(s); ++j) {
                int c = g.constant_global(s, i), d = g.constant_global(s, j);
                if ((find(c) == find(d)) != sigma.value(tab.eq_index(c, d)))
                    throw IllFormedError(
                        "equality literals of Sigma are not an equivalence relation (at " +
                        tab.render(tab.eq_index(c, d)) + ")");
            }

    TermModel tm;
    tm.sig = tab.sig_ptr();
    tm.classes.resize(g.sort_count());
    tm.class_rep.resize(g.constant_count());
    for (int s = 0; s < g.sort_count(); ++s) {
        std::map<int, std::vector<int>> by_rep;
        for (int i = 0; i < g.constant_count(s); ++i) {
            int c = g.constant_global(s, i);
            by_rep[find(c)].push_back(c);
        }
        for (auto& [rep, members] : by_rep) {
            for (int c : members) tm.class_rep[c] = rep;
            tm.classes[s].push_back(std::move(members));
        }
    }
    tm.relations.resize(g.relation_count());
    for (int a = 0; a < tab.size(); ++a) {
        if (tab.is_eq(a) || !sigma.value(a)) continue;
        std::vector<int> t;
        for (int c : tab.rel_args(a)) t.push_back(tm.class_rep[c]);
        tm.relations[tab.rel(a)].insert(std::move(t));
    }
    return tm;
}

TermModel build_term_model(const SigmaSet& sigma, const AtomTable& tab) {
    return build_term_model(sigma.literals, tab);
}

std::string WellDefReport::render() const {
    if (ok()) return "well-defined: no violations\n";
    std::string out;
    for (const auto& v : violations) {
        switch (v.kind) {
            case WellDefViolation::Kind::Reflexivity: out += "reflexivity: "; break;
            case WellDefViolation::Kind::Symmetry: out += "symmetry: "; break;
            case WellDefViolation::Kind::Transitivity: out += "transitivity: "; break;
            case WellDefViolation::Kind::Congruence: out += "congruence: "; break;
        }
        out += v.detail + "\n";
    }
    return out;
}

WellDefReport verify_welldefined(const Condition& sigma, const AtomTable& tab) {
    const Signature& g = tab.sig();
    WellDefReport rep;
    auto pos = [&](int atom) { return sigma.decided(atom) && sigma.value(atom); };

    for (int s = 0; s < g.sort_count(); ++s) {
        int n = g.constant_count(s);
        auto cg = [&](int k) { return g.constant_global(s, k); };
        for (int i = 0; i < n; ++i)
            if (!pos(tab.eq_index(cg(i), cg(i))))
                rep.violations.push_back({WellDefViolation::Kind::Reflexivity,
                                          tab.render(tab.eq_index(cg(i), cg(i))) +
                                              " not positive in Sigma"});
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (pos(tab.eq_index(cg(i), cg(j))) && !pos(tab.eq_index(cg(j), cg(i))))
                    rep.violations.push_back({WellDefViolation::Kind::Symmetry,
                                              tab.render(tab.eq_index(cg(i), cg(j))) +
                                                  " in Sigma but " +
                                                  tab.render(tab.eq_index(cg(j), cg(i))) +
                                                  " not positive"});
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) {
                    if (i == j || j == l) continue;
                    if (pos(tab.eq_index(cg(i), cg(j))) && pos(tab.eq_index(cg(j), cg(l))) &&
                        !pos(tab.eq_index(cg(i), cg(l))))
                        rep.violations.push_back(
                            {WellDefViolation::Kind::Transitivity,
                             tab.render(tab.eq_index(cg(i), cg(j))) + " and " +
                                 tab.render(tab.eq_index(cg(j), cg(l))) + " in Sigma but " +
                                 tab.render(tab.eq_index(cg(i), cg(l))) + " not positive"});
                }
    }

    // Congruence: positive R(cs) transfers along componentwise positive
    // equalities.
    for (int r = 0; r < g.relation_count(); ++r) {
        std::vector<int> atoms;
        for (int a = 0; a < tab.size(); ++a)
            if (!tab.is_eq(a) && tab.rel(a) == r) atoms.push_back(a);
        for (int a : atoms) {
            if (!pos(a)) continue;
            for (int b : atoms) {
                if (a == b) continue;
                const auto& cs = tab.rel_args(a);
                const auto& ds = tab.rel_args(b);
                bool all_eq = true;
                for (std::size_t i = 0; i < cs.size() && all_eq; ++i)
                    if (cs[i] != ds[i] && !pos(tab.eq_index(cs[i], ds[i]))) all_eq = false;
                if (all_eq && !pos(b))
                    rep.violations.push_back({WellDefViolation::Kind::Congruence,
                                              tab.render(a) +
                                                  " transfers along positive equalities but " +
                                                  tab.render(b) + " not positive"});
            }
        }
    }
    return rep;
}

namespace {

bool has_countable_node(const Formula& f) {
    if ((f.kind == Formula::Kind::And || f.kind == Formula::Kind::Or) && f.countable) return true;
    for (const auto& kid : f.kids)
        if (has_countable_node(kid)) return true;
    return false;
}

}  // namespace

Verdict verify_andor(const TermModel& tm, const Formula& f, const SigmaSet& sigma,
                     const Trace* trace, const AtomTable& tab) {
    auto matrix = and_or_matrix(f);
    Verdict v;
    v.certificate_only = has_countable_node(f);
    v.value = true;

    for (std::size_t i = 0; i < matrix.size(); ++i) {
        ConjunctEvidence ev;
        ev.conjunct = static_cast<int>(i);
        ev.satisfied = false;

        std::vector<GroundLiteral> cands;
        for (const auto& l : matrix[i]) cands.push_back({tab.index_of(l.atom), l.positive});
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

        for (GroundLiteral l : cands) {
            if (!sigma.literals.has(l)) continue;
            ev.satisfied = true;
            ev.witness = l;
            if (trace)
                for (const auto& st : trace->steps)
                    if (std::find(st.added.begin(), st.added.end(), l) != st.added.end()) {
                        ev.trace_step = st.step;
                        break;
                    }
            break;
        }
        if (!ev.satisfied) {
            bool all_refuted = true;
            for (GroundLiteral l : cands) {
                GroundLiteral neg{l.atom, !l.positive};
                if (sigma.literals.has(neg))
                    ev.refuting.push_back(neg);
                else
                    all_refuted = false;
            }
            if (!all_refuted)
                throw MissingConjunctError(
                    static_cast<int>(i),
                    "no disjunct in Sigma and not every disjunct refuted");
            v.value = false;
        }
        v.conjuncts.push_back(std::move(ev));
    }

    if (!v.certificate_only) {
        bool direct = eval(tm.as_structure(), f);
        if (direct != v.value)
            throw Error("internal: density certificate and direct evaluation disagree on " +
                        render_formula(f));
    }
    return v;
}

CounterexampleReport refute_oror(int k) {
    if (k < 1) throw Error("refute_oror needs k >= 1");
    const int n = 2 * k + 1;

    std::vector<std::string> consts;
    for (int i = 0; i < n; ++i) consts.push_back("c" + std::to_string(i));
    auto sig = std::make_shared<Signature>(std::vector<std::string>{"s"},
                                           std::vector<std::vector<std::string>>{consts},
                                           std::vector<RelationDecl>{{"P", {0}}});
    AtomTable tab(sig);
    auto ct = [&](int i) { return Term::constant(consts[i], "s"); };

    // class constraint: pairwise-distinct constants, P nonempty
    std::vector<Formula> cons;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) cons.push_back(lnot(eq(ct(i), ct(j))));
    std::vector<Formula> some_p;
    for (int i = 0; i < n; ++i) some_p.push_back(atom("P", {ct(i)}));
    cons.push_back(lor(std::move(some_p)));

    ClassSpec spec{sig, {n}, land(std::move(cons))};
    EnumeratedOracle oracle = EnumeratedOracle::from_spec(spec, tab);
    const auto& members = *oracle.members();

    // sentence: Or_j And_{j<m<=2k} !P(c_m); the tail disjunct (j = 2k) is the
    // vacuous bound "P contained in {c_0..c_2k}", rendered as an inert guard.
    std::vector<Formula> disjuncts;
    for (int j = 0; j < n; ++j) {
        std::vector<Formula> row;
        if (j == n - 1) row.push_back(eq(ct(j), ct(j)));
        for (int m = j + 1; m < n; ++m) row.push_back(lnot(atom("P", {ct(m)})));
        disjuncts.push_back(land(std::move(row)));
    }
    Formula sentence = lor(std::move(disjuncts));

    Schedule sched;
    for (int j = 0; j < k; ++j) {
        std::vector<GroundLiteral> cands;
        for (int m = j + 1; m < n; ++m) {
            Formula pa = atom("P", {ct(m)});
            cands.push_back({tab.index_of(pa), true});
        }
        sched.entries.push_back(DenseSpec::hit(std::move(cands), "D_" + std::to_string(j)));
    }
    for (auto& d : decision_dense_sets(tab)) sched.entries.push_back(std::move(d));

    auto run = run_construction(Condition(tab.size()), sched, oracle, tab);
    TermModel tm = build_term_model(run.sigma, tab);
    MultiStructure model = tm.as_structure();

    CounterexampleReport rep;
    rep.k = k;
    rep.member_count = members.size();
    rep.sentence = sentence;

    rep.all_members_satisfy = true;
    for (const auto& m : members) {
        int least = -1;
        const auto& dis = sentence.kids;
        for (std::size_t j = 0; j < dis.size(); ++j)
            if (eval_unchecked(m, dis[j])) {
                least = static_cast<int>(j);
                break;
            }
        if (least < 0) rep.all_members_satisfy = false;
        rep.member_least_disjunct.push_back(least);
    }

    // Refutation stages: for j < k, the step meeting D_j adds some P(c_m),
    // m > j, whose presence in Sigma falsifies disjunct j.
    for (int j = 0; j < k; ++j) {
        const auto& st = run.trace.steps[j];
        CounterexampleReport::Refutation r;
        r.disjunct = j;
        if (st.added.empty())
            throw Error("internal: D_" + std::to_string(j) + " was met without adding a literal");
        r.literal = st.added.front();
        r.stage = st.step;
        rep.refutations.push_back(r);
    }

    rep.model_true_disjunct = -1;
    for (std::size_t j = 0; j < sentence.kids.size(); ++j)
        if (eval_unchecked(model, sentence.kids[j])) {
            rep.model_true_disjunct = static_cast<int>(j);
            break;
        }

    std::ostringstream out;
    out << "== CLASS ==\n";
    out << "sort s, constants c0..c" << (n - 1) << " (pairwise distinct), unary P nonempty\n";
    out << "members: " << members.size() << "\n";
    out << "== SENTENCE ==\n";
    out << render_formula(sentence) << "\n";
    out << "== PER-MEMBER CHECK ==\n";
    for (std::size_t i = 0; i < members.size(); ++i)
        out << "member " << i << ": satisfies via disjunct " << rep.member_least_disjunct[i]
            << "\n";
    out << (rep.all_members_satisfy ? "all members satisfy the sentence\n"
                                    : "SOME MEMBER FAILS THE SENTENCE\n");
    out << "== TRACE REFUTATIONS ==\n";
    for (const auto& r : rep.refutations)
        out << "disjunct " << r.disjunct << ": refuted by " << render(tab, r.literal)
            << " at stage " << r.stage << " (bound " << (r.disjunct + 1) << ")\n";
    out << "sentence in M_Sigma: "
        << (rep.model_true_disjunct >= 0
                ? "true via vacuous tail disjunct " + std::to_string(rep.model_true_disjunct)
                : "FALSE")
        << "\n";
    rep.text = out.str();
    return rep;
}

}  // namespace gm
