#include "gm/axioms.hpp"

#include "gm/errors.hpp"
#include "gm/parser.hpp"

namespace gm {

void Theory::add(Formula axiom, std::string label) {
    entries.push_back({std::move(axiom), std::nullopt, false, std::move(label)});
}

void Theory::append(Theory other) {
    for (auto& e : other.entries) entries.push_back(std::move(e));
}

namespace {

Term cterm(const Signature& g, int c) {
    return Term::constant(g.constant_name(c), g.sort_name(g.constant_sort(c)));
}

// All constant tuples matching a relation's argument sorts, lexicographic,
// last position fastest (the atom-table order).
std::vector<std::vector<int>> rel_tuples(const Signature& g, const RelationDecl& decl) {
    std::vector<std::vector<int>> out;
    std::vector<int> local(decl.arg_sorts.size(), 0);
    for (;;) {
        std::vector<int> t;
        for (std::size_t i = 0; i < local.size(); ++i)
            t.push_back(g.constant_global(decl.arg_sorts[i], local[i]));
        out.push_back(std::move(t));
        int i = static_cast<int>(local.size()) - 1;
        while (i >= 0 && ++local[i] == g.constant_count(decl.arg_sorts[i])) local[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::string tuple_text(const Signature& g, const std::vector<int>& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += g.constant_name(t[i]);
    }
    return s;
}

}  // namespace

Theory equality_axioms(const Signature& g) {
    Theory th;
    for (int s = 0; s < g.sort_count(); ++s) {
        int n = g.constant_count(s);
        auto cg = [&](int k) { return g.constant_global(s, k); };
        for (int i = 0; i < n; ++i)
            th.add(eq(cterm(g, cg(i)), cterm(g, cg(i))),
                   "eq.refl(" + g.constant_name(cg(i)) + ")");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                th.add(lor({lnot(eq(cterm(g, cg(i)), cterm(g, cg(j)))),
                            eq(cterm(g, cg(j)), cterm(g, cg(i)))}),
                       "eq.symm(" + g.constant_name(cg(i)) + "," + g.constant_name(cg(j)) + ")");
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (i == j && j == k) continue;
                    th.add(lor({lnot(eq(cterm(g, cg(i)), cterm(g, cg(j)))),
                                lnot(eq(cterm(g, cg(j)), cterm(g, cg(k)))),
                                eq(cterm(g, cg(i)), cterm(g, cg(k)))}),
                           "eq.trans(" + g.constant_name(cg(i)) + "," + g.constant_name(cg(j)) +
                               "," + g.constant_name(cg(k)) + ")");
                }
    }
    for (int r = 0; r < g.relation_count(); ++r) {
        const auto& decl = g.relation(r);
        auto tuples = rel_tuples(g, decl);
        for (const auto& cs : tuples)
            for (const auto& ds : tuples) {
                if (cs == ds) continue;
                std::vector<Formula> lits;
                for (std::size_t i = 0; i < cs.size(); ++i)
                    if (cs[i] != ds[i]) lits.push_back(lnot(eq(cterm(g, cs[i]), cterm(g, ds[i]))));
                std::vector<Term> cargs, dargs;
                for (int c : cs) cargs.push_back(cterm(g, c));
                for (int d : ds) dargs.push_back(cterm(g, d));
                lits.push_back(lnot(atom(decl.name, std::move(cargs))));
                lits.push_back(atom(decl.name, std::move(dargs)));
                th.add(lor(std::move(lits)), "eq.congr(" + decl.name + ",(" + tuple_text(g, cs) +
                                                 "),(" + tuple_text(g, ds) + "))");
            }
    }
    return th;
}

Theory qe_axioms(const Signature& g, const std::vector<Formula>& witnesses) {
    Theory th;
    for (int s = 0; s < g.sort_count(); ++s) {
        int n = g.constant_count(s);
        const std::string& sn = g.sort_name(s);
        std::vector<Formula> range;
        for (int j = 0; j < n; ++j)
            range.push_back(eq(Term::variable("x", sn), cterm(g, g.constant_global(s, j))));
        Formula total = forall("x", sn, lor(range));

        // Expansion over the constant pool: every constant equals one of the
        // constants — the form the scheduler can actually meet.
        std::vector<Formula> conjuncts;
        for (int i = 0; i < n; ++i) {
            std::vector<Formula> row;
            for (int j = 0; j < n; ++j)
                row.push_back(eq(cterm(g, g.constant_global(s, i)), cterm(g, g.constant_global(s, j))));
            conjuncts.push_back(lor(std::move(row)));
        }
        th.entries.push_back({std::move(total), land(std::move(conjuncts)), false, "qe.total(" + sn + ")"});
    }

    for (const Formula& w : witnesses) {
        auto fv = free_variables(w);
        if (fv.size() != 1)
            throw SortError("witness formula must have exactly one free variable: " +
                            render_formula(w));
        const auto& [var, sn] = fv.front();
        auto s = g.sort_index(sn);
        if (!s) throw SortError("witness variable '" + var + "' has undeclared sort '" + sn + "'");

        auto psi = [&](const Term& t) { return substitute(w, var, t); };
        Formula ex = exists(var, sn, w);
        std::vector<Formula> fwd = {lnot(ex)};  // Exists -> some constant witness
        std::vector<Formula> all_neg;
        for (int j = 0; j < g.constant_count(*s); ++j) {
            Term c = cterm(g, g.constant_global(*s, j));
            fwd.push_back(psi(c));
            all_neg.push_back(lnot(psi(c)));
        }
        Formula bwd = lor({land(std::move(all_neg)), std::move(ex)});
        Formula both = land({lor(std::move(fwd)), std::move(bwd)});
        th.entries.push_back(
            {std::move(both), std::nullopt, true, "qe.wit(" + render_formula(w) + ")"});
    }
    return th;
}

}  // namespace gm
