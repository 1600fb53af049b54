#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gm/structure.hpp"

namespace gm {

// A multi-sorted isomorphism: one independent bijection per sort.
struct MultiMap {
    std::vector<std::map<int, int>> per_sort;  // element of a -> element of b
};

// Since constant assignments are surjective, an isomorphism is forced on
// every element by c^a -> c^b; this checks that the forced map is
// well-defined, bijective per sort, and preserves each relation both ways.
std::optional<MultiMap> find_multisorted_iso(const MultiStructure& a, const MultiStructure& b);

// The single-sorted merge: one sort u carrying every element, a fresh unary
// sort predicate X_<sort> per original sort, and the original relations
// retyped over u.  Overlapping sort domains stay overlapping — that is the
// point of the construction.
MultiStructure merge_sorts(const MultiStructure& m);

// Searches a canonical battery of closed single-sorted sentences over the
// merged signature (atomic sentences first, then one-variable existential
// combinations of the unary predicates) for one that a and b disagree on.
std::optional<Formula> find_distinguishing_sentence(const MultiStructure& a,
                                                    const MultiStructure& b);

}  // namespace gm
