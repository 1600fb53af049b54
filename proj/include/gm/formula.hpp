#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gm/signature.hpp"

namespace gm {

// A term of the relational language: a declared constant or a bound variable.
// The sort is resolved at construction (constants from the signature,
// variables from their binder); well_sorted_check re-validates it.
struct Term {
    enum class Kind { Constant, Variable };
    Kind kind;
    std::string name;
    std::string sort;

    static Term constant(std::string name, std::string sort) {
        return {Kind::Constant, std::move(name), std::move(sort)};
    }
    static Term variable(std::string name, std::string sort) {
        return {Kind::Variable, std::move(name), std::move(sort)};
    }
    bool operator==(const Term&) const = default;
};

// Finite-index formulas of the multi-sorted language with equality.  And/Or
// nodes may be marked `countable`: the node then stands for the materialized
// prefix of a countable family.  Such formulas still parse, render and sort-
// check, but Tarskian evaluation refuses them (UnsupportedFormulaError) —
// only certificate-level checks apply.
struct Formula {
    enum class Kind { Atom, Eq, Not, And, Or, Exists, Forall };

    Kind kind;
    std::string head;           // Atom: relation name; Exists/Forall: variable name
    std::string binder_sort;    // Exists/Forall only
    std::vector<Term> args;     // Atom arguments, or the two sides of an Eq
    std::vector<Formula> kids;  // Not: 1; And/Or: >= 1; Exists/Forall: 1
    bool countable = false;

    bool operator==(const Formula&) const = default;
};

Formula atom(std::string rel, std::vector<Term> args);
Formula eq(Term lhs, Term rhs);
Formula lnot(Formula f);
Formula land(std::vector<Formula> kids);
Formula lor(std::vector<Formula> kids);
Formula exists(std::string var, std::string sort, Formula body);
Formula forall(std::string var, std::string sort, Formula body);

// An atomic or negated-atomic sentence at the syntax level.
struct Literal {
    bool positive;
    Formula atom;  // Kind::Atom or Kind::Eq
};

// Peels redundant singleton And/Or wrappers off the top of f.
const Formula& peel_singletons(const Formula& f);

// Recognizes f as a literal (possibly under singleton wrappers).
std::optional<Literal> as_literal(const Formula& f);

enum class FormulaClass { Literal, AndOr, Other };

// literal  — an atomic or negated-atomic sentence;
// and_or   — a conjunction of disjunctions of literals (either junction may
//            be degenerate: a bare disjunction, or literal conjuncts);
// other    — anything else.
FormulaClass classify(const Formula& f);

// For an and_or formula: its list of conjuncts, each a nonempty disjunction
// given as a literal list.  Throws NotAndOrError otherwise.
std::vector<std::vector<Literal>> and_or_matrix(const Formula& f);

struct SortViolation {
    std::string node;  // rendering of the offending subformula
    std::string detail;
};

struct WellSortedReport {
    std::vector<SortViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string render() const;
};

// Checks arity, sort agreement of equalities and relation arguments, declared
// constants/sorts, and binder discipline (no reuse, no free variables).
WellSortedReport well_sorted_check(const Formula& f, const Signature& sig);

bool is_closed(const Formula& f);

// Free variables of f with their annotated sorts, in order of first
// occurrence.  A variable free at two different sort annotations appears
// twice (well_sorted_check will reject such a formula anyway).
std::vector<std::pair<std::string, std::string>> free_variables(const Formula& f);

// Replaces free occurrences of `var` by `t`.  Intended for plugging constants
// into witness templates; no capture can occur for constant terms.
Formula substitute(const Formula& f, const std::string& var, const Term& t);

}  // namespace gm
