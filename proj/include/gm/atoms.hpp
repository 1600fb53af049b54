#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gm/formula.hpp"
#include "gm/signature.hpp"

namespace gm {

// Canonical table of all atomic sentences over a signature:
//
//   * equalities first — by sort, then by ordered constant pair of that sort
//     in declaration order, second component fastest (diagonal included);
//   * then relation atoms — by relation, argument tuples lexicographically,
//     last argument fastest.
//
// An atom's position in this table is its identity everywhere below; the
// induced order on literals is (atom index, positive before negative).
class AtomTable {
public:
    explicit AtomTable(SignaturePtr sig);

    int size() const { return static_cast<int>(texts_.size()); }
    const Signature& sig() const { return *sig_; }
    const SignaturePtr& sig_ptr() const { return sig_; }

    bool is_eq(int a) const { return a < rel_base_.front(); }
    // Eq atoms: the sort and the two constants (global indices).
    int eq_sort(int a) const;
    int eq_lhs(int a) const { return eq_args_[a].first; }
    int eq_rhs(int a) const { return eq_args_[a].second; }
    // Relation atoms: relation index and argument constants (global indices).
    int rel(int a) const;
    const std::vector<int>& rel_args(int a) const { return rel_args_[a]; }

    int eq_index(int c, int d) const;                          // same-sort constants
    int rel_index(int r, const std::vector<int>& args) const;  // sort-correct tuple

    // Closed Atom/Eq formula for an atom, and the inverse.  index_of throws
    // UnknownSymbolError / SortError on foreign or non-ground input.
    Formula formula(int a) const;
    int index_of(const Formula& ground_atom) const;

    const std::string& render(int a) const { return texts_[a]; }

private:
    SignaturePtr sig_;
    std::vector<std::pair<int, int>> eq_args_;   // parallel to eq prefix
    std::vector<std::vector<int>> rel_args_;     // parallel to whole table (empty for eqs)
    std::vector<int> rel_of_;                    // relation index per atom (-1 for eqs)
    std::vector<int> eq_base_;                   // per sort: first eq atom index
    std::vector<int> rel_base_;                  // per relation: first atom; sentinel at end
    std::vector<std::string> texts_;
};

struct GroundLiteral {
    int atom;
    bool positive;

    auto operator<=>(const GroundLiteral& o) const {
        if (auto c = atom <=> o.atom; c != 0) return c;
        // positive sorts before negative
        return (positive ? 0 : 1) <=> (o.positive ? 0 : 1);
    }
    bool operator==(const GroundLiteral&) const = default;
};

std::string render(const AtomTable& tab, GroundLiteral l);

// A duplicate-free set of ground literals over an atom table, stored as a
// partial truth assignment (decided-mask + values).  This single value type
// serves as forcing condition, realized-literal family of a structure, and
// constructed Sigma; which invariants apply depends on where it is used.
// A set containing both phi and !phi is representable at this level but is
// never a condition (no witness realizes it); try_add refuses to build one.
class Condition {
public:
    Condition() = default;
    explicit Condition(int atom_count);

    int atom_count() const { return atoms_; }
    bool decided(int a) const { return bit(mask_, a); }
    bool value(int a) const { return bit(vals_, a); }  // pre: decided(a)
    std::optional<bool> get(int a) const;
    int decided_count() const;
    bool decides_all() const { return decided_count() == atoms_; }
    bool empty() const { return decided_count() == 0; }

    void set(int a, bool v);            // add or overwrite
    bool try_add(int a, bool v);        // false iff decided with the other value
    Condition with(int a, bool v) const;
    bool has(GroundLiteral l) const { return decided(l.atom) && value(l.atom) == l.positive; }

    // Literal-set inclusion / compatibility.
    bool subset_of(const Condition& q) const;
    bool compatible(const Condition& q) const;  // no atom decided oppositely

    std::vector<GroundLiteral> literals() const;  // canonical (atom-index) order
    std::vector<GroundLiteral> minus(const Condition& q) const;

    bool operator==(const Condition&) const = default;
    // Lexicographic on the canonical literal sequence (prefix < extension).
    static int compare(const Condition& p, const Condition& q);

    const std::vector<std::uint64_t>& mask_words() const { return mask_; }
    const std::vector<std::uint64_t>& value_words() const { return vals_; }

private:
    static bool bit(const std::vector<std::uint64_t>& w, int i) {
        return (w[i >> 6] >> (i & 63)) & 1u;
    }
    int atoms_ = 0;
    std::vector<std::uint64_t> mask_, vals_;
};

using SigmaNu = Condition;  // full assignment realized by a structure

std::string render(const AtomTable& tab, const Condition& p);  // "{l1, l2, ...}"

// Condition literal: '{' [lit ((','|';') lit)*] '}' in the formula DSL.
Condition parse_condition(const std::string& text, const AtomTable& tab);

Condition from_literals(const std::vector<GroundLiteral>& ls, const AtomTable& tab);

}  // namespace gm
