#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gm/atoms.hpp"
#include "gm/axioms.hpp"
#include "gm/class_enum.hpp"
#include "gm/structure.hpp"

namespace gm {

// A class of generic assignments as the forcing engine sees it.  The engine
// asks exactly one question — is this literal set realized by some member —
// and optionally walks the member list when the presentation is enumerable.
class ClassOracle {
public:
    struct Answer {
        enum class Kind { Yes, No, Unknown };
        Kind kind;
        int witness = -1;  // least realizing member id when Yes
    };

    virtual ~ClassOracle() = default;
    virtual Answer contains(const Condition& p) const = 0;

    // Enumerable presentations expose members and their realized literals
    // (parallel vectors); others return nullptr.
    virtual const std::vector<MultiStructure>* members() const { return nullptr; }
    virtual const std::vector<SigmaNu>* member_literals() const { return nullptr; }
};

// Materialized member list — both the enumerated ClassSpec presentation and
// explicit member lists from scenario files end up here.
class EnumeratedOracle final : public ClassOracle {
public:
    EnumeratedOracle(std::vector<MultiStructure> members, const AtomTable& tab);
    static EnumeratedOracle from_spec(const ClassSpec& spec, const AtomTable& tab);

    Answer contains(const Condition& p) const override;
    const std::vector<MultiStructure>* members() const override { return &members_; }
    const std::vector<SigmaNu>* member_literals() const override { return &nus_; }

private:
    std::vector<MultiStructure> members_;
    std::vector<SigmaNu> nus_;
};

// Intensional presentation: a membership predicate that may give up
// (nullopt -> Answer::Unknown -> OracleFailureError at the call site).
class PredicateOracle final : public ClassOracle {
public:
    explicit PredicateOracle(std::function<std::optional<bool>(const Condition&)> pred)
        : pred_(std::move(pred)) {}
    Answer contains(const Condition& p) const override;

private:
    std::function<std::optional<bool>(const Condition&)> pred_;
};

// One dense set, by construction recipe:
//   decide(a)             D = {q : q decides atom a}
//   hit_disjunct(cands)   D = {q : some candidate literal in q}
//   custom(pred, bound)   D = {q : pred(q)}, searched within `bound` oracle queries
struct DenseSpec {
    enum class Kind { Decide, HitDisjunct, Custom };

    Kind kind;
    std::string label;  // origin of the set, e.g. "eq.refl(c0)" or "decide P(c0)"
    int atom = -1;
    std::vector<GroundLiteral> candidates;  // sorted, duplicate-free
    std::function<bool(const Condition&)> custom;
    std::uint64_t search_bound = 0;

    static DenseSpec decide(int atom, std::string label);
    static DenseSpec hit(std::vector<GroundLiteral> candidates, std::string label);
    static DenseSpec custom_spec(std::function<bool(const Condition&)> pred,
                                 std::uint64_t bound, std::string label);

    bool met_by(const Condition& p) const;
};

struct Schedule {
    std::vector<DenseSpec> entries;
    bool round_robin = false;   // later passes can add nothing (met specs stay
                                // met); kept for schedule-file compatibility
    std::uint64_t seed = 0;     // reserved; canonical tie-breaking ignores it
};

struct TraceStep {
    int step;         // 1-based
    int dense_index;  // position in the schedule
    std::string label;
    Condition before;
    Condition after;
    std::vector<GroundLiteral> added;
    int witness;
};

struct Trace {
    std::vector<TraceStep> steps;
};

// The constructed Sigma: union of the chain, plus a completeness report.
struct SigmaSet {
    Condition literals;
    bool decides_all = false;
    std::vector<int> undecided;  // canonical atom order
    std::string maximality_note;
};

struct ConstructionResult {
    SigmaSet sigma;
    Trace trace;
    std::vector<Condition> chain;  // p0, then one entry per step
};

// Membership of p in P_A. Unknown from the oracle becomes OracleFailureError.
bool is_condition(const Condition& p, const ClassOracle& oracle);

// One hit_disjunct (or singleton) spec per conjunct of every non-certificate
// axiom, in theory order; axioms that are neither and_or nor expanded raise
// NotAndOrError.
std::vector<DenseSpec> dense_sets_from_theory(const Theory& th, const AtomTable& tab);

// One decide spec per atomic sentence, canonical order.
std::vector<DenseSpec> decision_dense_sets(const AtomTable& tab);

// Least extension q of p (lexicographic on literal sets, p itself allowed)
// with q in P_A meeting d.  NotDenseError when none exists, OracleFailureError
// when the oracle gives up or a custom bound is exhausted.
Condition refine_to_meet(const Condition& p, const DenseSpec& d, const ClassOracle& oracle);

// The deterministic Rasiowa–Sikorski pass: meets every entry once, in order.
ConstructionResult run_construction(const Condition& p0, const Schedule& sched,
                                    const ClassOracle& oracle, const AtomTable& tab);

std::string render_trace(const Trace& t, const AtomTable& tab);
std::string render_sigma(const SigmaSet& s, const AtomTable& tab);

}  // namespace gm
