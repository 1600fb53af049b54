#include "gm/iso.hpp"

#include <algorithm>
#include <set>

#include "gm/atoms.hpp"
#include "gm/errors.hpp"

namespace gm {

std::optional<MultiMap> find_multisorted_iso(const MultiStructure& a, const MultiStructure& b) {
    if (!(a.sig() == b.sig())) return std::nullopt;
    const Signature& g = a.sig();

    MultiMap h;
    h.per_sort.resize(g.sort_count());
    for (int s = 0; s < g.sort_count(); ++s) {
        auto& hs = h.per_sort[s];
        std::map<int, int> inverse;
        for (int k = 0; k < g.constant_count(s); ++k) {
            int c = g.constant_global(s, k);
            int ea = a.constant(c), eb = b.constant(c);
            auto it = hs.find(ea);
            if (it != hs.end()) {
                if (it->second != eb) return std::nullopt;  // not well-defined
            } else {
                hs[ea] = eb;
            }
            auto jt = inverse.find(eb);
            if (jt != inverse.end()) {
                if (jt->second != ea) return std::nullopt;  // not injective
            } else {
                inverse[eb] = ea;
            }
        }
        // Surjectivity of the assignments makes the forced map total onto.
        if (hs.size() != a.domain(s).size() || inverse.size() != b.domain(s).size())
            return std::nullopt;
    }

    for (int r = 0; r < g.relation_count(); ++r) {
        const auto& decl = g.relation(r);
        std::set<std::vector<int>> image;
        for (const auto& t : a.extension(r)) {
            std::vector<int> u;
            for (std::size_t i = 0; i < t.size(); ++i)
                u.push_back(h.per_sort[decl.arg_sorts[i]].at(t[i]));
            image.insert(std::move(u));
        }
        if (image != b.extension(r)) return std::nullopt;
    }
    return h;
}

MultiStructure merge_sorts(const MultiStructure& m) {
    const Signature& g = m.sig();

    std::vector<std::string> consts;
    for (int c = 0; c < g.constant_count(); ++c) consts.push_back(g.constant_name(c));

    std::vector<RelationDecl> rels;
    for (int s = 0; s < g.sort_count(); ++s) rels.push_back({"X_" + g.sort_name(s), {0}});
    for (int r = 0; r < g.relation_count(); ++r) {
        const auto& decl = g.relation(r);
        rels.push_back({decl.name, std::vector<int>(decl.arg_sorts.size(), 0)});
    }
    auto merged_sig = std::make_shared<Signature>(
        std::vector<std::string>{"u"}, std::vector<std::vector<std::string>>{consts},
        std::move(rels));

    std::vector<int> universe;
    for (int s = 0; s < g.sort_count(); ++s)
        universe.insert(universe.end(), m.domain(s).begin(), m.domain(s).end());
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

    std::vector<int> interp;
    for (int c = 0; c < g.constant_count(); ++c) interp.push_back(m.constant(c));

    std::vector<std::set<std::vector<int>>> ext(merged_sig->relation_count());
    for (int s = 0; s < g.sort_count(); ++s)
        for (int e : m.domain(s)) ext[s].insert({e});
    for (int r = 0; r < g.relation_count(); ++r)
        ext[g.sort_count() + r] = m.extension(r);

    std::map<int, std::string> names;
    for (int e : universe) names[e] = m.element_name(e);

    return MultiStructure(merged_sig, {universe}, std::move(interp), std::move(ext),
                          std::move(names));
}

std::optional<Formula> find_distinguishing_sentence(const MultiStructure& a,
                                                    const MultiStructure& b) {
    MultiStructure ma = merge_sorts(a), mb = merge_sorts(b);
    if (!(ma.sig() == mb.sig())) throw Error("merged structures disagree on the signature");
    auto differs = [&](const Formula& f) { return eval_unchecked(ma, f) != eval_unchecked(mb, f); };

    // Level 1: atomic sentences in canonical table order.
    AtomTable tab(ma.sig_ptr());
    for (int i = 0; i < tab.size(); ++i) {
        Formula f = tab.formula(i);
        if (differs(f)) return f;
    }

    // Level 2: Exists x:u . (+/-)X_i(x) & (+/-)X_j(x)  — sort-overlap patterns.
    const Signature& g = ma.sig();
    std::vector<int> unary;
    for (int r = 0; r < g.relation_count(); ++r)
        if (g.relation(r).arg_sorts.size() == 1) unary.push_back(r);
    Term x = Term::variable("x", "u");
    for (std::size_t i = 0; i < unary.size(); ++i)
        for (std::size_t j = i; j < unary.size(); ++j)
            for (int si = 0; si < 2; ++si)
                for (int sj = 0; sj < 2; ++sj) {
                    Formula fi = atom(g.relation(unary[i]).name, {x});
                    Formula fj = atom(g.relation(unary[j]).name, {x});
                    if (si) fi = lnot(std::move(fi));
                    if (sj) fj = lnot(std::move(fj));
                    Formula f = (i == j && si == sj)
                                    ? exists("x", "u", std::move(fi))
                                    : exists("x", "u", land({std::move(fi), std::move(fj)}));
                    if (differs(f)) return f;
                }
    return std::nullopt;
}

}  // namespace gm
