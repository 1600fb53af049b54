#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gm/formula.hpp"
#include "gm/signature.hpp"

namespace gm {

// One axiom of a standard theory.  `axiom` is the sentence as stated; when it
// is not itself a conjunction of disjunctions of literals, `schedulable`
// optionally carries an equivalent (over the class at hand) and_or expansion
// that the forcing scheduler consumes instead.  Entries marked
// `certificate_only` are never scheduled — they hold in every structure under
// consideration and are checked by evaluation, not by dense sets.
struct TheoryEntry {
    Formula axiom;
    std::optional<Formula> schedulable;
    bool certificate_only = false;
    std::string label;
};

struct Theory {
    std::vector<TheoryEntry> entries;

    void add(Formula axiom, std::string label);
    void append(Theory other);
};

// The equality standard theory over the signature's constant pools, rewritten
// to and_or shape, one entry per instance:
//
//   eq.refl(c)        (c = c)
//   eq.symm(c,d)      Or[!(c = d); (d = c)]                      c != d
//   eq.trans(c,d,e)   Or[!(c = d); !(d = e); (c = e)]            c,d,e not all equal
//   eq.congr(R,cs,ds) Or[!(c1 = d1); ...; !R(cs); R(ds)]         cs != ds componentwise-sorted pairs
Theory equality_axioms(const Signature& sig);

// The quantifier-elimination standard theory:
//
//   qe.total(s)    Forall x:s . Or[(x = c) : c in K_s]   — with its and_or
//                  expansion And[Or[(c = c') : c'] : c] as `schedulable`;
//   qe.wit(psi)    (Or[psi(c) : c in K_s]  <->  Exists x:s . psi(x)) for each
//                  witness template psi, an open formula with exactly one free
//                  variable of sort s.  Encoded as the conjunction of the two
//                  implications (the DSL has no biconditional) and marked
//                  certificate_only: it holds in every structure with a
//                  surjective constant assignment and is not an and_or
//                  sentence, so it is checked by evaluation, never scheduled.
//
// Throws SortError when a witness has no / several free variables or its
// variable's sort is undeclared.
Theory qe_axioms(const Signature& sig, const std::vector<Formula>& witnesses = {});

}  // namespace gm
