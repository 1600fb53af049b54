#include "gm/forcing.hpp"

#include <algorithm>

#include "gm/errors.hpp"
#include "gm/parser.hpp"

namespace gm {

EnumeratedOracle::EnumeratedOracle(std::vector<MultiStructure> members, const AtomTable& tab)
    : members_(std::move(members)) {
    nus_.reserve(members_.size());
    for (const auto& m : members_) nus_.push_back(realized_literals(m, tab));
}

EnumeratedOracle EnumeratedOracle::from_spec(const ClassSpec& spec, const AtomTable& tab) {
    return EnumeratedOracle(enumerate_class(spec), tab);
}

ClassOracle::Answer EnumeratedOracle::contains(const Condition& p) const {
    for (std::size_t i = 0; i < nus_.size(); ++i)
        if (p.subset_of(nus_[i])) return {Answer::Kind::Yes, static_cast<int>(i)};
    return {Answer::Kind::No, -1};
}

ClassOracle::Answer PredicateOracle::contains(const Condition& p) const {
    auto v = pred_(p);
    if (!v) return {Answer::Kind::Unknown, -1};
    return {v.value() ? Answer::Kind::Yes : Answer::Kind::No, -1};
}

DenseSpec DenseSpec::decide(int atom, std::string label) {
    DenseSpec d;
    d.kind = Kind::Decide;
    d.atom = atom;
    d.label = std::move(label);
    return d;
}

DenseSpec DenseSpec::hit(std::vector<GroundLiteral> candidates, std::string label) {
    if (candidates.empty()) throw Error("hit_disjunct spec needs candidates");
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    DenseSpec d;
    d.kind = Kind::HitDisjunct;
    d.candidates = std::move(candidates);
    d.label = std::move(label);
    return d;
}

DenseSpec DenseSpec::custom_spec(std::function<bool(const Condition&)> pred, std::uint64_t bound,
                                 std::string label) {
    DenseSpec d;
    d.kind = Kind::Custom;
    d.custom = std::move(pred);
    d.search_bound = bound;
    d.label = std::move(label);
    return d;
}

bool DenseSpec::met_by(const Condition& p) const {
    switch (kind) {
        case Kind::Decide:
            return p.decided(atom);
        case Kind::HitDisjunct:
            return std::any_of(candidates.begin(), candidates.end(),
                               [&](GroundLiteral l) { return p.has(l); });
        case Kind::Custom:
            return custom(p);
    }
    return false;
}

bool is_condition(const Condition& p, const ClassOracle& oracle) {
    auto ans = oracle.contains(p);
    if (ans.kind == ClassOracle::Answer::Kind::Unknown)
        throw OracleFailureError("class oracle cannot decide membership");
    return ans.kind == ClassOracle::Answer::Kind::Yes;
}

std::vector<DenseSpec> dense_sets_from_theory(const Theory& th, const AtomTable& tab) {
    std::vector<DenseSpec> out;
    for (std::size_t i = 0; i < th.entries.size(); ++i) {
        const auto& e = th.entries[i];
        if (e.certificate_only) continue;
        const Formula& f = e.schedulable ? *e.schedulable : e.axiom;
        std::vector<std::vector<Literal>> matrix;
        try {
            matrix = and_or_matrix(f);
        } catch (const NotAndOrError&) {
            throw NotAndOrError("axiom " + (e.label.empty() ? std::to_string(i) : e.label) +
                                " is not and_or: " + render_formula(f));
        }
        for (std::size_t c = 0; c < matrix.size(); ++c) {
            std::vector<GroundLiteral> cands;
            for (const auto& l : matrix[c]) cands.push_back({tab.index_of(l.atom), l.positive});
            std::string label = e.label.empty() ? "ax" + std::to_string(i) : e.label;
            if (matrix.size() > 1) label += "#" + std::to_string(c);
            out.push_back(DenseSpec::hit(std::move(cands), std::move(label)));
        }
    }
    return out;
}

std::vector<DenseSpec> decision_dense_sets(const AtomTable& tab) {
    std::vector<DenseSpec> out;
    out.reserve(tab.size());
    for (int a = 0; a < tab.size(); ++a)
        out.push_back(DenseSpec::decide(a, "decide " + tab.render(a)));
    return out;
}

namespace {

ClassOracle::Answer ask(const ClassOracle& oracle, const Condition& q) {
    auto ans = oracle.contains(q);
    if (ans.kind == ClassOracle::Answer::Kind::Unknown)
        throw OracleFailureError("class oracle cannot decide membership");
    return ans;
}

// Lexicographically ordered search for the least extension of p (by added
// literal set) that stays in the class and satisfies `meets`.  The literal
// universe is walked in canonical order; supersets of non-members are pruned
// (P_A is closed under subsets).
std::optional<Condition> custom_search(const Condition& p, const DenseSpec& d,
                                       const ClassOracle& oracle, std::uint64_t& budget,
                                       int from_literal) {
    int atoms = p.atom_count();
    for (int l = from_literal; l < 2 * atoms; ++l) {
        int a = l / 2;
        bool v = (l % 2) == 0;
        if (p.decided(a)) continue;
        Condition q = p.with(a, v);
        if (budget == 0) throw OracleFailureError("custom dense spec '" + d.label +
                                                  "' exhausted its search bound");
        --budget;
        if (ask(oracle, q).kind != ClassOracle::Answer::Kind::Yes) continue;
        if (d.custom(q)) return q;
        if (auto r = custom_search(q, d, oracle, budget, l + 1)) return r;
    }
    return std::nullopt;
}

}  // namespace

Condition refine_to_meet(const Condition& p, const DenseSpec& d, const ClassOracle& oracle) {
    switch (d.kind) {
        case DenseSpec::Kind::Decide: {
            if (p.decided(d.atom)) return p;
            for (bool v : {true, false}) {  // positive literal is canonically least
                Condition q = p.with(d.atom, v);
                if (ask(oracle, q).kind == ClassOracle::Answer::Kind::Yes) return q;
            }
            throw NotDenseError(d.label, "neither value of the atom keeps the condition in P_A");
        }
        case DenseSpec::Kind::HitDisjunct: {
            if (d.met_by(p)) return p;
            for (GroundLiteral l : d.candidates) {  // ascending literal order
                if (p.decided(l.atom)) continue;    // would contradict (not already met)
                Condition q = p.with(l.atom, l.positive);
                if (ask(oracle, q).kind == ClassOracle::Answer::Kind::Yes) return q;
            }
            throw NotDenseError(d.label, "no candidate literal extends the condition inside P_A");
        }
        case DenseSpec::Kind::Custom: {
            if (d.custom(p)) return p;
            std::uint64_t budget = d.search_bound;
            if (auto q = custom_search(p, d, oracle, budget, 0)) return *q;
            throw NotDenseError(d.label, "exhaustive search found no extension in the dense set");
        }
    }
    throw Error("corrupt dense spec");
}

ConstructionResult run_construction(const Condition& p0, const Schedule& sched,
                                    const ClassOracle& oracle, const AtomTable& tab) {
    if (ask(oracle, p0).kind != ClassOracle::Answer::Kind::Yes)
        throw Error("start condition is not in P_A");

    ConstructionResult res;
    Condition p = p0;
    res.chain.push_back(p);
    for (std::size_t k = 0; k < sched.entries.size(); ++k) {
        const DenseSpec& d = sched.entries[k];
        Condition q;
        try {
            q = refine_to_meet(p, d, oracle);
        } catch (const NotDenseError& e) {
            throw NotDenseError(d.label,
                                "at step " + std::to_string(k + 1) + ": " + e.what());
        }
        TraceStep step;
        step.step = static_cast<int>(k + 1);
        step.dense_index = static_cast<int>(k);
        step.label = d.label;
        step.before = p;
        step.after = q;
        step.added = q.minus(p);
        step.witness = ask(oracle, q).witness;
        res.trace.steps.push_back(std::move(step));
        p = q;
        res.chain.push_back(p);
    }

    if (sched.round_robin) {
        // A later pass can never add literals: met specs stay met under
        // extension.  Verify rather than re-run.
        for (const auto& d : sched.entries)
            if (!d.met_by(p))
                throw Error("schedule entry '" + d.label + "' unmet after a full pass");
    }

    res.sigma.literals = p;
    for (int a = 0; a < tab.size(); ++a)
        if (!p.decided(a)) res.sigma.undecided.push_back(a);
    res.sigma.decides_all = res.sigma.undecided.empty();
    res.sigma.maximality_note =
        res.sigma.decides_all
            ? "decides every atomic sentence; no proper A-consistent extension exists"
            : "leaves " + std::to_string(res.sigma.undecided.size()) +
                  " atomic sentence(s) undecided; maximality not reached";
    return res;
}

std::string render_trace(const Trace& t, const AtomTable& tab) {
    std::string out;
    for (const auto& s : t.steps) {
        out += "step " + std::to_string(s.step) + " | dense " + s.label + " | add {";
        for (std::size_t i = 0; i < s.added.size(); ++i) {
            if (i) out += ", ";
            out += render(tab, s.added[i]);
        }
        out += "} | witness " + std::to_string(s.witness) + "\n";
    }
    return out;
}

std::string render_sigma(const SigmaSet& s, const AtomTable& tab) {
    std::string out;
    for (const auto& l : s.literals.literals()) out += render(tab, l) + "\n";
    return out;
}

}  // namespace gm
