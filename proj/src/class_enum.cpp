#include "gm/class_enum.hpp"

#include <algorithm>
#include <cmath>

#include "gm/errors.hpp"

namespace gm {

namespace {

// Restricted-growth strings over n items with at most `max_blocks` blocks,
// lexicographically ascending: [0,0,...,0] (everything merged) comes first,
// [0,1,...,n-1] (everything distinct) last when allowed.  Mined same-block /
// distinct-block pairs (local indices, first < second) prune the recursion.
struct RgsEnumerator {
    int n, max_blocks;
    const std::vector<std::pair<int, int>>& merge_pairs;
    const std::vector<std::pair<int, int>>& split_pairs;
    std::vector<std::vector<int>> all;

    void rec(std::vector<int>& rgs, int used) {
        int p = static_cast<int>(rgs.size());
        if (p == n) {
            all.push_back(rgs);
            return;
        }
        int limit = std::min(used, max_blocks - 1);
        for (int b = 0; b <= limit; ++b) {
            bool ok = true;
            for (auto [i, j] : merge_pairs)
                if (j == p && rgs[i] != b) { ok = false; break; }
            if (ok)
                for (auto [i, j] : split_pairs)
                    if (j == p && rgs[i] == b) { ok = false; break; }
            if (!ok) continue;
            rgs.push_back(b);
            rec(rgs, std::max(used, b + 1));
            rgs.pop_back();
        }
    }

    static std::vector<std::vector<int>> enumerate(int n, int max_blocks,
                                                   const std::vector<std::pair<int, int>>& merge,
                                                   const std::vector<std::pair<int, int>>& split) {
        RgsEnumerator e{n, max_blocks, merge, split, {}};
        std::vector<int> rgs;
        e.rec(rgs, 0);
        return e.all;
    }
};

struct MergeConstraints {
    // pairs of global constant ids (same sort)
    std::vector<std::pair<int, int>> must_merge, must_split;
};

void mine(const Formula& f, const Signature& g, MergeConstraints& out) {
    const Formula& p = peel_singletons(f);
    if (p.kind == Formula::Kind::And) {
        for (const auto& kid : p.kids) mine(kid, g, out);
        return;
    }
    auto l = as_literal(p);
    if (!l || l->atom.kind != Formula::Kind::Eq) return;
    auto a = g.constant_index(l->atom.args[0].name);
    auto b = g.constant_index(l->atom.args[1].name);
    if (!a || !b) return;  // involves variables or unknowns; leave to evaluation
    if (l->positive)
        out.must_merge.emplace_back(*a, *b);
    else
        out.must_split.emplace_back(*a, *b);
}

}  // namespace

void enumerate_class(const ClassSpec& spec,
                     const std::function<bool(const MultiStructure&)>& visit,
                     std::uint64_t candidate_cap) {
    const Signature& g = *spec.sig;
    if (static_cast<int>(spec.bounds.size()) != g.sort_count())
        throw Error("class spec needs one bound per sort");
    for (int b : spec.bounds)
        if (b < 1) throw Error("class spec bounds must be positive");
    if (spec.constraint) {
        if (!is_closed(*spec.constraint))
            throw SortError("class constraint must be a closed formula");
        auto rep = well_sorted_check(*spec.constraint, g);
        if (!rep.ok())
            throw SortError("ill-sorted class constraint: " + rep.violations.front().node + " (" +
                            rep.violations.front().detail + ")");
    }

    MergeConstraints mc;
    if (spec.constraint) mine(*spec.constraint, g, mc);

    // Partitions per sort, pruned by mined equality conjuncts.
    std::vector<std::vector<std::vector<int>>> parts(g.sort_count());
    for (int s = 0; s < g.sort_count(); ++s) {
        int n = g.constant_count(s);
        int cap = std::min(spec.bounds[s], n);
        std::vector<std::pair<int, int>> merge, split;
        auto local_pair = [&](int a, int b) {
            int i = a - g.constant_global(s, 0), j = b - g.constant_global(s, 0);
            return std::make_pair(std::min(i, j), std::max(i, j));
        };
        for (auto [a, b] : mc.must_merge)
            if (g.constant_sort(a) == s && a != b) merge.push_back(local_pair(a, b));
        for (auto [a, b] : mc.must_split)
            if (g.constant_sort(a) == s) {
                if (a == b) return;  // !(c = c): class provably empty
                split.push_back(local_pair(a, b));
            }
        parts[s] = RgsEnumerator::enumerate(n, cap, merge, split);
        if (parts[s].empty()) return;  // class provably empty
    }

    // Candidate-space guard (relation masks counted against the loosest domains).
    long double estimate = 1;
    for (int s = 0; s < g.sort_count(); ++s) estimate *= parts[s].size();
    for (int r = 0; r < g.relation_count(); ++r) {
        long double tuples = 1;
        for (int s : g.relation(r).arg_sorts) tuples *= std::min(spec.bounds[s], g.constant_count(s));
        if (tuples > 62) throw Error("class enumeration too large: relation '" +
                                     g.relation(r).name + "' has a tuple space over 62");
        estimate *= std::pow(2.0L, tuples);
        if (estimate > static_cast<long double>(candidate_cap))
            throw Error("class enumeration too large (estimated candidates exceed cap)");
    }

    // Odometer over per-sort partitions (sort 0 slowest).
    std::vector<std::size_t> pick(g.sort_count(), 0);
    for (;;) {
        std::vector<std::vector<int>> domains(g.sort_count());
        std::vector<int> interp(g.constant_count());
        for (int s = 0; s < g.sort_count(); ++s) {
            const auto& rgs = parts[s][pick[s]];
            int blocks = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
            std::vector<int> least(blocks, -1);
            for (int k = 0; k < g.constant_count(s); ++k) {
                int c = g.constant_global(s, k);
                if (least[rgs[k]] == -1) least[rgs[k]] = c;
                interp[c] = least[rgs[k]];
            }
            domains[s] = least;  // first-occurrence order == ascending least constant
            std::sort(domains[s].begin(), domains[s].end());
        }

        // Tuple spaces over the chosen domains, atom-table order.
        std::vector<std::vector<std::vector<int>>> tuple_space(g.relation_count());
        for (int r = 0; r < g.relation_count(); ++r) {
            const auto& decl = g.relation(r);
            std::vector<std::size_t> idx(decl.arg_sorts.size(), 0);
            for (;;) {
                std::vector<int> t;
                for (std::size_t i = 0; i < idx.size(); ++i)
                    t.push_back(domains[decl.arg_sorts[i]][idx[i]]);
                tuple_space[r].push_back(std::move(t));
                int i = static_cast<int>(idx.size()) - 1;
                while (i >= 0 && ++idx[i] == domains[decl.arg_sorts[i]].size()) idx[i--] = 0;
                if (i < 0) break;
            }
        }

        // Odometer over relation masks (last relation fastest, mask ascending).
        std::vector<std::uint64_t> masks(g.relation_count(), 0);
        for (;;) {
            std::vector<std::set<std::vector<int>>> rels(g.relation_count());
            for (int r = 0; r < g.relation_count(); ++r)
                for (std::size_t i = 0; i < tuple_space[r].size(); ++i)
                    if ((masks[r] >> i) & 1) rels[r].insert(tuple_space[r][i]);
            MultiStructure m(spec.sig, domains, interp, std::move(rels));
            if (!spec.constraint || eval_unchecked(m, *spec.constraint))
                if (!visit(m)) return;

            int r = g.relation_count() - 1;
            while (r >= 0) {
                if (++masks[r] < (std::uint64_t{1} << tuple_space[r].size())) break;
                masks[r--] = 0;
            }
            if (r < 0) break;
        }

        int s = g.sort_count() - 1;
        while (s >= 0) {
            if (++pick[s] < parts[s].size()) break;
            pick[s--] = 0;
        }
        if (s < 0) break;
    }
}

std::vector<MultiStructure> enumerate_class(const ClassSpec& spec, std::uint64_t candidate_cap) {
    std::vector<MultiStructure> out;
    enumerate_class(
        spec,
        [&](const MultiStructure& m) {
            out.push_back(m);
            return true;
        },
        candidate_cap);
    return out;
}

}  // namespace gm
