#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gm/atoms.hpp"
#include "gm/formula.hpp"
#include "gm/signature.hpp"

namespace gm {

// A finite multi-sorted structure together with a generic assignment of the
// signature's constants: every constant denotes an element of its sort and
// every element is denoted by at least one constant (per-sort surjectivity —
// the construction invariant behind term models and quantifier elimination).
//
// Element identities are plain ints; sorts of one structure may share
// elements (the merged single-sorted view depends on that).  Canonical
// enumeration names an element after its least denoting constant.
class MultiStructure {
public:
    MultiStructure(SignaturePtr sig,
                   std::vector<std::vector<int>> domains,   // per sort, ascending
                   std::vector<int> constant_interp,        // global constant -> element
                   std::vector<std::set<std::vector<int>>> relations,
                   std::map<int, std::string> element_names = {});

    const Signature& sig() const { return *sig_; }
    const SignaturePtr& sig_ptr() const { return sig_; }
    const std::vector<int>& domain(int s) const { return domains_[s]; }
    int constant(int c) const { return const_interp_[c]; }
    const std::set<std::vector<int>>& extension(int r) const { return rels_[r]; }
    bool holds(int r, const std::vector<int>& tuple) const { return rels_[r].count(tuple) > 0; }

    std::string element_name(int e) const;
    // Structure literal, one block per line:  "s: {e1, e2}", "c -> e", "R: {(e1,e2)}".
    std::string render() const;

    // Mathematical identity: signature contents, domains, interpretation.
    // Element display names are presentation only and not compared.
    bool operator==(const MultiStructure& o) const {
        return *sig_ == *o.sig_ && domains_ == o.domains_ && const_interp_ == o.const_interp_ &&
               rels_ == o.rels_;
    }

private:
    SignaturePtr sig_;
    std::vector<std::vector<int>> domains_;
    std::vector<int> const_interp_;
    std::vector<std::set<std::vector<int>>> rels_;
    std::map<int, std::string> elem_names_;
};

// Tarskian truth of a closed formula; quantifiers range over the binder's
// sort.  Throws SortError on ill-sorted or open input and
// UnsupportedFormulaError on countable-marked junctions.
bool eval(const MultiStructure& m, const Formula& f);

// eval without the per-call well-sortedness precheck, for inner loops that
// evaluate one already-validated formula against many structures.
bool eval_unchecked(const MultiStructure& m, const Formula& f);

// The full literal family realized by m: for every atomic sentence of the
// table, that sentence or its negation.  |result| == tab.size() always.
SigmaNu realized_literals(const MultiStructure& m, const AtomTable& tab);

// Structure literal parser (inverse of MultiStructure::render for structures
// over sig).  Lines:  "<sort>: {<elem>, ...}", "<const> -> <elem>",
// "<rel>: {(<elem>,...), ...}"; blocks may come in any order; a missing
// relation block means the empty extension (noted in `notes` if given).
MultiStructure parse_structure(const std::string& text, SignaturePtr sig,
                               std::vector<std::string>* notes = nullptr);

}  // namespace gm
