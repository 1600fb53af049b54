#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gm {

struct RelationDecl {
    std::string name;
    std::vector<int> arg_sorts;  // indices into the sort list; arity = size

    bool operator==(const RelationDecl&) const = default;
};

// A finite multi-sorted relational signature: sort names, a nonempty constant
// pool per sort, and typed relation symbols.  All name sets are disjoint and
// identifier-shaped.
//
// Constants carry a *global index* (sort 0's constants first, in declaration
// order, then sort 1's, ...).  Every canonical enumeration in the engine —
// atom tables, class enumeration, trace output — follows this order, so the
// declaration order in a scenario file is semantically relevant to tie-breaks
// (never to truth).
class Signature {
public:
    Signature(std::vector<std::string> sorts,
              std::vector<std::vector<std::string>> constants,
              std::vector<RelationDecl> relations);

    int sort_count() const { return static_cast<int>(sorts_.size()); }
    const std::string& sort_name(int s) const { return sorts_[s]; }
    std::optional<int> sort_index(const std::string& name) const;

    int constant_count() const { return static_cast<int>(const_names_.size()); }
    int constant_count(int s) const { return static_cast<int>(constants_[s].size()); }
    // global index of the k-th constant of sort s
    int constant_global(int s, int k) const { return sort_base_[s] + k; }
    int constant_sort(int c) const { return const_sort_[c]; }
    const std::string& constant_name(int c) const { return const_names_[c]; }
    std::optional<int> constant_index(const std::string& name) const;

    int relation_count() const { return static_cast<int>(relations_.size()); }
    const RelationDecl& relation(int r) const { return relations_[r]; }
    std::optional<int> relation_index(const std::string& name) const;

    bool operator==(const Signature& o) const {
        return sorts_ == o.sorts_ && constants_ == o.constants_ && relations_ == o.relations_;
    }

private:
    std::vector<std::string> sorts_;
    std::vector<std::vector<std::string>> constants_;  // per sort
    std::vector<RelationDecl> relations_;

    std::vector<std::string> const_names_;  // flattened, global order
    std::vector<int> const_sort_;
    std::vector<int> sort_base_;
    std::map<std::string, int> sort_idx_, const_idx_, rel_idx_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

// True for [A-Za-z_][A-Za-z0-9_]* that is not a DSL keyword.
bool valid_name(const std::string& s);

}  // namespace gm
