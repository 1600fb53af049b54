#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gm/atoms.hpp"
#include "gm/forcing.hpp"
#include "gm/structure.hpp"

namespace gm {

// The term model M_Sigma of a maximal A-consistent Sigma: per-sort domains of
// constant classes [c] = {d : (c = d) in Sigma}, relations over classes, and
// the class map nu.  A class is represented by its least constant (global
// index); `as_structure` exposes the quotient as an ordinary MultiStructure
// whose elements are those representatives.
struct TermModel {
    SignaturePtr sig;
    std::vector<std::vector<std::vector<int>>> classes;  // per sort: classes, each ascending
    std::vector<int> class_rep;       // global constant -> representative constant
    std::vector<std::set<std::vector<int>>> relations;   // representative tuples

    MultiStructure as_structure() const;
    std::string render() const;  // the CLASS/model section used in artifacts
};

// Errors: NotMaximalError on the first undecided atom; IllFormedError when
// the equality literals are not an equivalence relation.
TermModel build_term_model(const Condition& sigma, const AtomTable& tab);
TermModel build_term_model(const SigmaSet& sigma, const AtomTable& tab);

struct WellDefViolation {
    enum class Kind { Reflexivity, Symmetry, Transitivity, Congruence };
    Kind kind;
    std::string detail;
};

struct WellDefReport {
    std::vector<WellDefViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string render() const;
};

// Checks the equivalence laws of the (c = d) literal pattern and congruence
// of every relation directly against Sigma.  Works on arbitrary (also
// adversarial, also partial) literal sets; a constructed Sigma yields an
// empty report.
WellDefReport verify_welldefined(const Condition& sigma, const AtomTable& tab);
inline WellDefReport verify_welldefined(const TermModel&, const Condition& sigma,
                                        const AtomTable& tab) {
    return verify_welldefined(sigma, tab);  // the check reads only Sigma
}

struct ConjunctEvidence {
    int conjunct;
    bool satisfied;
    std::optional<GroundLiteral> witness;   // the psi_ij found in Sigma
    std::optional<int> trace_step;          // step that added it; absent if in p0
    std::vector<GroundLiteral> refuting;    // negations present when unsatisfied
};

struct Verdict {
    bool value;
    bool certificate_only;  // countable-marked: no evaluation cross-check ran
    std::vector<ConjunctEvidence> conjuncts;
};

// The density<->truth certificate for an and_or sentence: verdict true iff
// every conjunct has a disjunct in Sigma, with per-conjunct evidence; when
// the sentence is finite-index the verdict is cross-checked against direct
// evaluation in M_Sigma (the two provably agree for maximal Sigma).
// Errors: NotAndOrError; MissingConjunctError(i) when conjunct i has neither
// a positive disjunct nor all disjuncts refuted.
Verdict verify_andor(const TermModel& tm, const Formula& f, const SigmaSet& sigma,
                     const Trace* trace, const AtomTable& tab);

// The Or-of-And counterexample run: one sort, constants c0..c(2k), unary P,
// class A_k = pairwise-distinct constants with P nonempty; sentence
// Or_j And_{j<m<=2k} !P(c_m); schedule D_j = hit {P(c_m) : m > j} for j < k,
// then all decisions.
struct CounterexampleReport {
    int k;
    std::size_t member_count;
    Formula sentence;
    bool all_members_satisfy;
    std::vector<int> member_least_disjunct;  // per member id
    struct Refutation {
        int disjunct;
        GroundLiteral literal;  // the P(c_m) entering Sigma
        int stage;              // 1-based trace step; <= disjunct+1
    };
    std::vector<Refutation> refutations;  // for j = 0..k-1
    int model_true_disjunct;              // least j true in M_Sigma (the vacuous tail)
    std::string text;                     // rendered report (sections CLASS,
                                          // SENTENCE, PER-MEMBER CHECK, TRACE REFUTATIONS)
};

CounterexampleReport refute_oror(int k);

}  // namespace gm
