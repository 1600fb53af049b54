#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gm/formula.hpp"
#include "gm/structure.hpp"

namespace gm {

// Intensional presentation of a class of generic assignments: per-sort domain
// size bounds plus an optional closed constraint every member must satisfy.
struct ClassSpec {
    SignaturePtr sig;
    std::vector<int> bounds;             // per sort, >= 1
    std::optional<Formula> constraint;   // absent = unconstrained
};

// Materializes the class in canonical order.  Candidates are generated as
// constant quotients (restricted-growth partitions of each sort's pool, lex
// order, fully merged first; an element is the least constant of its block)
// crossed with all relation extensions (tuple subsets by ascending bitmask,
// later relations fastest), then filtered by the constraint.  Member ids are
// positions in the surviving list.
//
// Top-level conjuncts of the constraint of the forms (c = d) / !(c = d) are
// mined to prune partitions early; the full constraint is still evaluated on
// every surviving candidate, so mining never changes the result.
//
// Throws Error if the candidate space exceeds `candidate_cap`.
std::vector<MultiStructure> enumerate_class(const ClassSpec& spec,
                                            std::uint64_t candidate_cap = 20'000'000);

// Streaming variant: the visitor sees members in canonical order; return
// false to stop early.
void enumerate_class(const ClassSpec& spec,
                     const std::function<bool(const MultiStructure&)>& visit,
                     std::uint64_t candidate_cap = 20'000'000);

}  // namespace gm
