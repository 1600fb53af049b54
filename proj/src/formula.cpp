#include "gm/formula.hpp"

#include <algorithm>
#include <set>

#include "gm/errors.hpp"
#include "gm/parser.hpp"

namespace gm {

Formula atom(std::string rel, std::vector<Term> args) {
    Formula f;
    f.kind = Formula::Kind::Atom;
    f.head = std::move(rel);
    f.args = std::move(args);
    return f;
}

Formula eq(Term lhs, Term rhs) {
    Formula f;
    f.kind = Formula::Kind::Eq;
    f.args = {std::move(lhs), std::move(rhs)};
    return f;
}

Formula lnot(Formula g) {
    Formula f;
    f.kind = Formula::Kind::Not;
    f.kids.push_back(std::move(g));
    return f;
}

static Formula junction(Formula::Kind k, std::vector<Formula> kids) {
    if (kids.empty()) throw Error("And/Or needs at least one operand");
    Formula f;
    f.kind = k;
    f.kids = std::move(kids);
    return f;
}

Formula land(std::vector<Formula> kids) { return junction(Formula::Kind::And, std::move(kids)); }
Formula lor(std::vector<Formula> kids) { return junction(Formula::Kind::Or, std::move(kids)); }

static Formula quant(Formula::Kind k, std::string var, std::string sort, Formula body) {
    Formula f;
    f.kind = k;
    f.head = std::move(var);
    f.binder_sort = std::move(sort);
    f.kids.push_back(std::move(body));
    return f;
}

Formula exists(std::string var, std::string sort, Formula body) {
    return quant(Formula::Kind::Exists, std::move(var), std::move(sort), std::move(body));
}
Formula forall(std::string var, std::string sort, Formula body) {
    return quant(Formula::Kind::Forall, std::move(var), std::move(sort), std::move(body));
}

const Formula& peel_singletons(const Formula& f) {
    const Formula* g = &f;
    while ((g->kind == Formula::Kind::And || g->kind == Formula::Kind::Or) &&
           g->kids.size() == 1 && !g->countable)
        g = &g->kids.front();
    return *g;
}

std::optional<Literal> as_literal(const Formula& f) {
    const Formula& g = peel_singletons(f);
    if (g.kind == Formula::Kind::Atom || g.kind == Formula::Kind::Eq)
        return Literal{true, g};
    if (g.kind == Formula::Kind::Not) {
        const Formula& body = peel_singletons(g.kids.front());
        if (body.kind == Formula::Kind::Atom || body.kind == Formula::Kind::Eq)
            return Literal{false, body};
    }
    return std::nullopt;
}

// A disjunction-of-literals, allowing a bare literal as the degenerate case.
static std::optional<std::vector<Literal>> as_clause(const Formula& f) {
    if (auto l = as_literal(f)) return std::vector<Literal>{*l};
    const Formula& g = peel_singletons(f);
    if (g.kind != Formula::Kind::Or) return std::nullopt;
    std::vector<Literal> out;
    for (const auto& kid : g.kids) {
        auto l = as_literal(kid);
        if (!l) return std::nullopt;
        out.push_back(*l);
    }
    return out;
}

FormulaClass classify(const Formula& f) {
    if (as_literal(f)) return FormulaClass::Literal;
    const Formula& g = peel_singletons(f);
    if (g.kind == Formula::Kind::Or)
        return as_clause(g) ? FormulaClass::AndOr : FormulaClass::Other;
    if (g.kind == Formula::Kind::And) {
        for (const auto& kid : g.kids)
            if (!as_clause(kid)) return FormulaClass::Other;
        return FormulaClass::AndOr;
    }
    return FormulaClass::Other;
}

std::vector<std::vector<Literal>> and_or_matrix(const Formula& f) {
    if (classify(f) == FormulaClass::Other)
        throw NotAndOrError("not a conjunction of disjunctions of literals: " + render_formula(f));
    const Formula& g = peel_singletons(f);
    std::vector<std::vector<Literal>> rows;
    if (g.kind == Formula::Kind::And && !as_literal(g)) {
        for (const auto& kid : g.kids) rows.push_back(*as_clause(kid));
    } else {
        rows.push_back(*as_clause(g));
    }
    return rows;
}

std::string WellSortedReport::render() const {
    if (ok()) return "well-sorted\n";
    std::string out;
    for (const auto& v : violations) out += v.node + ": " + v.detail + "\n";
    return out;
}

namespace {

struct SortChecker {
    const Signature& sig;
    WellSortedReport report;
    std::vector<std::pair<std::string, std::string>> binders;  // (var, sort)

    void flag(const Formula& f, std::string detail) {
        report.violations.push_back({render_formula(f), std::move(detail)});
    }

    // Returns the sort of t, or nullopt after flagging a violation on f.
    std::optional<std::string> term_sort(const Formula& f, const Term& t) {
        if (t.kind == Term::Kind::Constant) {
            auto c = sig.constant_index(t.name);
            if (!c) {
                flag(f, "constant '" + t.name + "' is not declared");
                return std::nullopt;
            }
            const std::string& declared = sig.sort_name(sig.constant_sort(*c));
            if (!t.sort.empty() && t.sort != declared) {
                flag(f, "constant '" + t.name + "' annotated with sort '" + t.sort +
                            "' but declared in '" + declared + "'");
                return std::nullopt;
            }
            return declared;
        }
        for (auto it = binders.rbegin(); it != binders.rend(); ++it)
            if (it->first == t.name) {
                if (!t.sort.empty() && t.sort != it->second) {
                    flag(f, "variable '" + t.name + "' annotated with sort '" + t.sort +
                                "' but bound at '" + it->second + "'");
                    return std::nullopt;
                }
                return it->second;
            }
        flag(f, "variable '" + t.name + "' is free");
        return std::nullopt;
    }

    void check(const Formula& f) {
        switch (f.kind) {
            case Formula::Kind::Atom: {
                auto r = sig.relation_index(f.head);
                if (!r) {
                    flag(f, "relation '" + f.head + "' is not declared");
                    return;
                }
                const auto& decl = sig.relation(*r);
                if (f.args.size() != decl.arg_sorts.size()) {
                    flag(f, "relation '" + f.head + "' expects " +
                                std::to_string(decl.arg_sorts.size()) + " arguments, got " +
                                std::to_string(f.args.size()));
                    return;
                }
                for (std::size_t i = 0; i < f.args.size(); ++i) {
                    auto s = term_sort(f, f.args[i]);
                    if (s && *s != sig.sort_name(decl.arg_sorts[i]))
                        flag(f, "argument " + std::to_string(i) + " of '" + f.head +
                                    "' has sort '" + *s + "', expected '" +
                                    sig.sort_name(decl.arg_sorts[i]) + "'");
                }
                return;
            }
            case Formula::Kind::Eq: {
                if (f.args.size() != 2) {
                    flag(f, "equality needs exactly two terms");
                    return;
                }
                auto a = term_sort(f, f.args[0]);
                auto b = term_sort(f, f.args[1]);
                if (a && b && *a != *b)
                    flag(f, "equality between sorts '" + *a + "' and '" + *b + "'");
                return;
            }
            case Formula::Kind::Not:
                if (f.kids.size() != 1) {
                    flag(f, "negation needs exactly one operand");
                    return;
                }
                check(f.kids.front());
                return;
            case Formula::Kind::And:
            case Formula::Kind::Or:
                if (f.kids.empty()) {
                    flag(f, "empty junction");
                    return;
                }
                for (const auto& kid : f.kids) check(kid);
                return;
            case Formula::Kind::Exists:
            case Formula::Kind::Forall: {
                if (!sig.sort_index(f.binder_sort)) {
                    flag(f, "quantifier over undeclared sort '" + f.binder_sort + "'");
                    return;
                }
                for (const auto& b : binders)
                    if (b.first == f.head) {
                        flag(f, "variable '" + f.head + "' rebound");
                        return;
                    }
                if (sig.constant_index(f.head))
                    flag(f, "variable '" + f.head + "' shadows a declared constant");
                binders.emplace_back(f.head, f.binder_sort);
                check(f.kids.front());
                binders.pop_back();
                return;
            }
        }
    }
};

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& free) {
    switch (f.kind) {
        case Formula::Kind::Atom:
        case Formula::Kind::Eq:
            for (const auto& t : f.args)
                if (t.kind == Term::Kind::Variable &&
                    std::find(bound.begin(), bound.end(), t.name) == bound.end())
                    free.insert(t.name);
            return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            bound.push_back(f.head);
            collect_free(f.kids.front(), bound, free);
            bound.pop_back();
            return;
        default:
            for (const auto& kid : f.kids) collect_free(kid, bound, free);
    }
}

}  // namespace

WellSortedReport well_sorted_check(const Formula& f, const Signature& sig) {
    SortChecker c{sig, {}, {}};
    c.check(f);
    return std::move(c.report);
}

bool is_closed(const Formula& f) {
    std::vector<std::string> bound;
    std::set<std::string> free;
    collect_free(f, bound, free);
    return free.empty();
}

namespace {

void collect_free_sorted(const Formula& f, std::vector<std::string>& bound,
                         std::vector<std::pair<std::string, std::string>>& out) {
    switch (f.kind) {
        case Formula::Kind::Atom:
        case Formula::Kind::Eq:
            for (const auto& t : f.args)
                if (t.kind == Term::Kind::Variable &&
                    std::find(bound.begin(), bound.end(), t.name) == bound.end() &&
                    std::find(out.begin(), out.end(), std::make_pair(t.name, t.sort)) == out.end())
                    out.emplace_back(t.name, t.sort);
            return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            bound.push_back(f.head);
            collect_free_sorted(f.kids.front(), bound, out);
            bound.pop_back();
            return;
        default:
            for (const auto& kid : f.kids) collect_free_sorted(kid, bound, out);
    }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> free_variables(const Formula& f) {
    std::vector<std::string> bound;
    std::vector<std::pair<std::string, std::string>> out;
    collect_free_sorted(f, bound, out);
    return out;
}

Formula substitute(const Formula& f, const std::string& var, const Term& t) {
    Formula g = f;
    switch (g.kind) {
        case Formula::Kind::Atom:
        case Formula::Kind::Eq:
            for (auto& a : g.args)
                if (a.kind == Term::Kind::Variable && a.name == var) a = t;
            return g;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            if (g.head == var) return g;  // shadowed below this binder
            g.kids[0] = substitute(g.kids[0], var, t);
            return g;
        default:
            for (auto& kid : g.kids) kid = substitute(kid, var, t);
            return g;
    }
}

}  // namespace gm
