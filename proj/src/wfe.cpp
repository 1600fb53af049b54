#include "gm/wfe.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gm/errors.hpp"

namespace gm {

unsigned long long pair_code(unsigned long long k, unsigned long long j) {
    unsigned long long w = k + j;
    return w * (w + 1) / 2 + j;
}

std::pair<unsigned long long, unsigned long long> unpair_code(unsigned long long n) {
    // w = floor((sqrt(8n+1)-1)/2), corrected for floating-point drift.
    unsigned long long w =
        static_cast<unsigned long long>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
    while (w * (w + 1) / 2 > n) --w;
    while ((w + 1) * (w + 2) / 2 <= n) ++w;
    unsigned long long j = n - w * (w + 1) / 2;
    unsigned long long k = w - j;
    return {k, j};
}

WfeCode WfeCode::from_edges(std::vector<std::pair<int, int>> edges, std::optional<int> nodes) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    int max_node = -1;
    for (auto [k, j] : edges) {
        if (k < 0 || j < 0) throw IllFormedError("negative node in edge list");
        max_node = std::max(max_node, std::max(k, j));
    }
    WfeCode c;
    c.nodes = nodes ? *nodes : max_node + 1;
    c.nodes = std::max(c.nodes, 1);
    if (max_node >= c.nodes)
        throw IllFormedError("edge mentions node " + std::to_string(max_node) +
                             " outside 0.." + std::to_string(c.nodes - 1));
    c.edges = std::move(edges);
    return c;
}

WfeCode WfeCode::from_bits(const std::string& bits01) {
    std::vector<std::pair<int, int>> edges;
    for (size_t n = 0; n < bits01.size(); ++n) {
        char ch = bits01[n];
        if (ch == '0') continue;
        if (ch != '1') throw SyntaxError(n, "bitstring must be over {0,1}");
        auto [k, j] = unpair_code(n);
        edges.emplace_back(static_cast<int>(k), static_cast<int>(j));
    }
    return from_edges(std::move(edges));
}

WfeCode WfeCode::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.rfind("bits:", 0) == 0) return from_bits(s.substr(5));
    if (s.rfind("wfe:", 0) != 0) throw SyntaxError(0, "expected 'wfe:{...}' or 'bits:...'");
    std::string body = s.substr(4);
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
        throw SyntaxError(4, "expected '{' ... '}' after 'wfe:'");
    body = body.substr(1, body.size() - 2);
    std::vector<std::pair<int, int>> edges;
    size_t i = 0;
    while (i < body.size()) {
        if (body[i] != '(') throw SyntaxError(4 + i, "expected '(' in edge list");
        size_t close = body.find(')', i);
        if (close == std::string::npos) throw SyntaxError(4 + i, "unterminated edge");
        std::string inner = body.substr(i + 1, close - i - 1);
        size_t comma = inner.find(',');
        if (comma == std::string::npos) throw SyntaxError(4 + i, "edge needs two components");
        try {
            size_t used = 0;
            int k = std::stoi(inner.substr(0, comma), &used);
            if (used != comma) throw SyntaxError(4 + i, "bad edge component");
            std::string rest = inner.substr(comma + 1);
            int j = std::stoi(rest, &used);
            if (used != rest.size()) throw SyntaxError(4 + i, "bad edge component");
            if (k < 0 || j < 0) throw SyntaxError(4 + i, "negative node");
            edges.emplace_back(k, j);
        } catch (const std::logic_error&) {
            throw SyntaxError(4 + i, "bad edge component");
        }
        i = close + 1;
        if (i < body.size()) {
            if (body[i] != ',') throw SyntaxError(4 + i, "expected ',' between edges");
            ++i;
            if (i == body.size()) throw SyntaxError(4 + i, "trailing ',' in edge list");
        }
    }
    return from_edges(std::move(edges));
}

std::string WfeCode::render() const {
    std::ostringstream out;
    out << "wfe:{";
    for (size_t i = 0; i < edges.size(); ++i) {
        if (i) out << ",";
        out << "(" << edges[i].first << "," << edges[i].second << ")";
    }
    out << "}";
    return out.str();
}

std::string WfeCode::bits() const {
    unsigned long long top_index = 0;
    std::set<unsigned long long> set_bits;
    for (auto [k, j] : edges) {
        unsigned long long n = pair_code(static_cast<unsigned long long>(k),
                                         static_cast<unsigned long long>(j));
        set_bits.insert(n);
        top_index = std::max(top_index, n + 1);
    }
    std::string out(top_index, '0');
    for (auto n : set_bits) out[n] = '1';
    return out;
}

std::string WfeCheck::render() const {
    auto list = [&] {
        std::ostringstream out;
        for (size_t i = 0; i < detail.size(); ++i) {
            if (i) out << ",";
            out << detail[i];
        }
        return out.str();
    };
    switch (status) {
        case Status::Ok: return "ok";
        case Status::IllFounded: return "ill-founded: cycle [" + list() + "]";
        case Status::NotExtensional:
            return "not extensional: nodes " + list() + " have equal predecessor sets";
        case Status::NoUniqueTop: return "no unique top: maximal nodes [" + list() + "]";
        case Status::Disconnected: return "disconnected: unreachable from top [" + list() + "]";
    }
    return "?";
}

WfeCheck check_wfe(const WfeCode& c) {
    int n = c.nodes;
    std::vector<std::vector<int>> succ(n), pred(n);
    for (auto [k, j] : c.edges) {
        succ[k].push_back(j);  // k in j: following edges moves "up" to j
        pred[j].push_back(k);
    }

    // Well-foundedness: the edge relation must be acyclic.  Iterative DFS
    // with colors; on hitting a gray node, read the cycle off the path stack.
    {
        std::vector<int> color(n, 0);  // 0 white, 1 gray, 2 black
        std::vector<int> path;
        // frames of (node, next-successor index)
        std::vector<std::pair<int, size_t>> stack;
        for (int s = 0; s < n; ++s) {
            if (color[s]) continue;
            stack.push_back({s, 0});
            color[s] = 1;
            path.push_back(s);
            while (!stack.empty()) {
                auto& [v, idx] = stack.back();
                if (idx < succ[v].size()) {
                    int w = succ[v][idx++];
                    if (color[w] == 1) {
                        auto it = std::find(path.begin(), path.end(), w);
                        WfeCheck r;
                        r.status = WfeCheck::Status::IllFounded;
                        r.detail.assign(it, path.end());
                        return r;
                    }
                    if (color[w] == 0) {
                        color[w] = 1;
                        path.push_back(w);
                        stack.push_back({w, 0});
                    }
                } else {
                    color[v] = 2;
                    path.pop_back();
                    stack.pop_back();
                }
            }
        }
    }

    // Extensionality: distinct nodes must have distinct predecessor sets.
    {
        std::map<std::vector<int>, int> seen;
        for (int v = 0; v < n; ++v) {
            auto p = pred[v];
            std::sort(p.begin(), p.end());
            auto [it, fresh] = seen.emplace(std::move(p), v);
            if (!fresh) {
                WfeCheck r;
                r.status = WfeCheck::Status::NotExtensional;
                r.detail = {it->second, v};
                return r;
            }
        }
    }

    // Unique top: exactly one node with no outgoing edge.
    std::vector<int> maximal;
    for (int v = 0; v < n; ++v)
        if (succ[v].empty()) maximal.push_back(v);
    if (maximal.size() != 1) {
        WfeCheck r;
        r.status = WfeCheck::Status::NoUniqueTop;
        r.detail = maximal;
        return r;
    }
    int top = maximal[0];

    // Connectivity: every node reachable from the top by reversed edges.
    {
        std::vector<char> seen(n, 0);
        std::vector<int> todo{top};
        seen[top] = 1;
        while (!todo.empty()) {
            int v = todo.back();
            todo.pop_back();
            for (int w : pred[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    todo.push_back(w);
                }
        }
        std::vector<int> missing;
        for (int v = 0; v < n; ++v)
            if (!seen[v]) missing.push_back(v);
        if (!missing.empty()) {
            WfeCheck r;
            r.status = WfeCheck::Status::Disconnected;
            r.detail = std::move(missing);
            return r;
        }
    }

    return {};
}

CollapseResult mostowski_collapse(const WfeCode& c) {
    auto check = check_wfe(c);
    if (!check.ok()) throw Error("collapse of invalid code: " + check.render());
    int n = c.nodes;
    std::vector<std::vector<int>> pred(n);
    std::vector<int> out_degree(n, 0);
    for (auto [k, j] : c.edges) {
        pred[j].push_back(k);
        ++out_degree[k];
    }
    // Topological order along the membership relation: members before sets.
    std::vector<int> order;
    {
        std::vector<int> in_count(n, 0);
        for (auto [k, j] : c.edges) ++in_count[j];
        std::vector<int> ready;
        for (int v = 0; v < n; ++v)
            if (in_count[v] == 0) ready.push_back(v);
        while (!ready.empty()) {
            int v = ready.back();
            ready.pop_back();
            order.push_back(v);
            for (auto [k, j] : c.edges)
                if (k == v && --in_count[j] == 0) ready.push_back(j);
        }
    }
    CollapseResult r;
    r.node_sets.resize(n);
    for (int v : order) {
        std::vector<HFSet> members;
        members.reserve(pred[v].size());
        for (int w : pred[v]) members.push_back(r.node_sets[w]);
        r.node_sets[v] = HFSet(std::move(members));
    }
    for (int v = 0; v < n; ++v)
        if (out_degree[v] == 0) r.top = v;
    return r;
}

DecodeResult cod_decode(const WfeCode& c) {
    DecodeResult r;
    r.check = check_wfe(c);
    if (!r.check.ok()) return r;  // value stays {}
    r.collapse = mostowski_collapse(c);
    r.value = r.collapse->top_set();
    return r;
}

WfeCode cod_encode(const HFSet& a) {
    // Transitive closure of {a}, collected then sorted into Ackermann order;
    // the top (a itself) compares greatest, so it lands last.
    std::vector<HFSet> closure;
    std::function<void(const HFSet&)> visit = [&](const HFSet& x) {
        for (const auto& y : closure)
            if (y == x) return;
        for (const auto& m : x.elems()) visit(m);
        closure.push_back(x);
    };
    visit(a);
    std::sort(closure.begin(), closure.end());
    std::vector<std::pair<int, int>> edges;
    for (size_t j = 0; j < closure.size(); ++j)
        for (size_t k = 0; k < closure.size(); ++k)
            if (closure[j].contains(closure[k]))
                edges.emplace_back(static_cast<int>(k), static_cast<int>(j));
    return WfeCode::from_edges(std::move(edges), static_cast<int>(closure.size()));
}

std::string LayoutReport::render() const {
    if (ok) return "layout ok";
    std::ostringstream out;
    out << "layout violations:";
    for (const auto& v : violations) out << "\n  " << v;
    return out.str();
}

LayoutReport pmax_layout_check(const WfeCode& c) {
    LayoutReport r;
    auto check = check_wfe(c);
    if (!check.ok()) {
        r.ok = false;
        r.violations.push_back("invalid code: " + check.render());
        return r;
    }
    std::vector<std::set<int>> pred(c.nodes);
    for (auto [k, j] : c.edges) pred[j].insert(k);
    auto expect = [&](int node, std::set<int> want, const std::string& what) {
        if (node >= c.nodes) {
            r.ok = false;
            r.violations.push_back("node " + std::to_string(node) + " missing (" + what + ")");
            return;
        }
        if (pred[node] != want) {
            std::ostringstream out;
            out << "node " << node << " should be " << what << " with predecessors {";
            bool first = true;
            for (int w : want) {
                if (!first) out << ",";
                out << w;
                first = false;
            }
            out << "}, got {";
            first = true;
            for (int w : pred[node]) {
                if (!first) out << ",";
                out << w;
                first = false;
            }
            out << "}";
            r.ok = false;
            r.violations.push_back(out.str());
        }
    };
    expect(1, {0}, "{node0}");
    expect(2, {0, 5}, "{node0,node5}");
    expect(3, {1, 2}, "pair of nodes 1,2");
    expect(4, {3}, "{node3}");
    if (c.nodes > 4) {
        // Node 4 must be the top of the whole code; nodes beyond 5 are free
        // as long as they hang below it (validity already ensures that).
        int top = -1;
        std::vector<char> has_succ(c.nodes, 0);
        for (auto [k, j] : c.edges) has_succ[k] = 1;
        for (int v = 0; v < c.nodes; ++v)
            if (!has_succ[v]) top = v;
        if (top != 4) {
            r.ok = false;
            r.violations.push_back("top is node " + std::to_string(top) + ", expected node 4");
        }
    }
    return r;
}

}  // namespace gm
