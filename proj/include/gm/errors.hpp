#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gm {

// Base for everything the engine throws on purpose.  Anything else escaping
// the library is a bug.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lexical or grammatical problem in the formula DSL, a structure literal, a
// condition literal or a code literal.  `position` is a 0-based offset into
// the offending text.
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(std::size_t pos, const std::string& what_arg)
        : Error("syntax error at offset " + std::to_string(pos) + ": " + what_arg),
          position(pos) {}
};

// A name that is not declared in the signature (or not bound by a quantifier).
struct UnknownSymbolError : Error {
    std::string name;
    explicit UnknownSymbolError(const std::string& n)
        : Error("unknown symbol '" + n + "'"), name(n) {}
    UnknownSymbolError(const std::string& n, const std::string& context)
        : Error("unknown symbol '" + n + "' (" + context + ")"), name(n) {}
};

// Sort clash inside an otherwise grammatical formula or literal.
struct SortError : Error {
    using Error::Error;
};

// Tarskian evaluation was asked to cross an And/Or node marked as a countable
// family; only certificate-level checks are defined for those.
struct UnsupportedFormulaError : Error {
    using Error::Error;
};

// An axiom handed to the scheduler that is not a conjunction of disjunctions
// of literals (and carries no schedulable expansion).
struct NotAndOrError : Error {
    using Error::Error;
};

// refine_to_meet exhausted every admissible extension: the dense-set spec is
// not actually dense below the given condition.
struct NotDenseError : Error {
    std::string label;
    NotDenseError(const std::string& l, const std::string& detail)
        : Error("dense set '" + l + "' cannot be met: " + detail), label(l) {}
};

// A class oracle gave up (search bound hit, or membership undecidable for it).
struct OracleFailureError : Error {
    using Error::Error;
};

// Term-model construction from a Sigma that leaves some atomic sentence
// undecided; `atom` is the canonical index of the first such atom.
struct NotMaximalError : Error {
    int atom;
    NotMaximalError(int a, const std::string& rendered)
        : Error("Sigma does not decide atomic sentence " + rendered), atom(a) {}
};

// The equality literals of a Sigma do not form an equivalence relation.
struct IllFormedError : Error {
    using Error::Error;
};

// verify_andor met a conjunct none of whose disjuncts is decided positively
// while not all are refuted either — Sigma is too partial to give a verdict.
struct MissingConjunctError : Error {
    int conjunct;
    MissingConjunctError(int i, const std::string& detail)
        : Error("conjunct " + std::to_string(i) + " undecided: " + detail), conjunct(i) {}
};

// Malformed scenario file; `where` locates the offending entry, e.g.
// "theory.axioms[2]".
struct ScenarioError : Error {
    std::string where;
    ScenarioError(const std::string& w, const std::string& detail)
        : Error("scenario error at " + w + ": " + detail), where(w) {}
};

}  // namespace gm
