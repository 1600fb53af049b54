#include "gm/structure.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gm/errors.hpp"
#include "gm/parser.hpp"

namespace gm {

MultiStructure::MultiStructure(SignaturePtr sig, std::vector<std::vector<int>> domains,
                               std::vector<int> constant_interp,
                               std::vector<std::set<std::vector<int>>> relations,
                               std::map<int, std::string> element_names)
    : sig_(std::move(sig)),
      domains_(std::move(domains)),
      const_interp_(std::move(constant_interp)),
      rels_(std::move(relations)),
      elem_names_(std::move(element_names)) {
    const Signature& g = *sig_;
    if (static_cast<int>(domains_.size()) != g.sort_count())
        throw Error("structure needs one domain per sort");
    if (static_cast<int>(const_interp_.size()) != g.constant_count())
        throw Error("structure needs a total constant assignment");
    if (static_cast<int>(rels_.size()) != g.relation_count())
        throw Error("structure needs one extension per relation");

    for (int s = 0; s < g.sort_count(); ++s) {
        const auto& dom = domains_[s];
        if (dom.empty()) throw Error("empty domain for sort '" + g.sort_name(s) + "'");
        if (!std::is_sorted(dom.begin(), dom.end()) ||
            std::adjacent_find(dom.begin(), dom.end()) != dom.end())
            throw Error("domain of sort '" + g.sort_name(s) + "' must be strictly ascending");
        std::set<int> hit(dom.begin(), dom.end());
        for (int k = 0; k < g.constant_count(s); ++k) {
            int c = g.constant_global(s, k);
            if (!hit.count(const_interp_[c]))
                throw Error("constant '" + g.constant_name(c) + "' denotes no element of its sort");
        }
        std::set<int> named;
        for (int k = 0; k < g.constant_count(s); ++k) named.insert(const_interp_[g.constant_global(s, k)]);
        for (int e : dom)
            if (!named.count(e))
                throw Error("element of sort '" + g.sort_name(s) +
                            "' not named by any constant (assignment must be surjective)");
    }
    for (int r = 0; r < g.relation_count(); ++r) {
        const auto& decl = g.relation(r);
        for (const auto& t : rels_[r]) {
            if (t.size() != decl.arg_sorts.size())
                throw Error("tuple arity mismatch in relation '" + decl.name + "'");
            for (std::size_t i = 0; i < t.size(); ++i) {
                const auto& dom = domains_[decl.arg_sorts[i]];
                if (!std::binary_search(dom.begin(), dom.end(), t[i]))
                    throw Error("tuple of relation '" + decl.name +
                                "' leaves the domain of its sort");
            }
        }
    }
}

std::string MultiStructure::element_name(int e) const {
    auto it = elem_names_.find(e);
    if (it != elem_names_.end()) return it->second;
    if (e >= 0 && e < sig_->constant_count()) return sig_->constant_name(e);
    return "e" + std::to_string(e);
}

std::string MultiStructure::render() const {
    const Signature& g = *sig_;
    std::ostringstream out;
    for (int s = 0; s < g.sort_count(); ++s) {
        out << g.sort_name(s) << ": {";
        for (std::size_t i = 0; i < domains_[s].size(); ++i) {
            if (i) out << ", ";
            out << element_name(domains_[s][i]);
        }
        out << "}\n";
    }
    for (int c = 0; c < g.constant_count(); ++c)
        out << g.constant_name(c) << " -> " << element_name(const_interp_[c]) << "\n";
    for (int r = 0; r < g.relation_count(); ++r) {
        out << g.relation(r).name << ": {";
        bool first = true;
        for (const auto& t : rels_[r]) {
            if (!first) out << ", ";
            first = false;
            out << "(";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) out << ",";
                out << element_name(t[i]);
            }
            out << ")";
        }
        out << "}\n";
    }
    return out.str();
}

namespace {

struct Evaluator {
    const MultiStructure& m;
    std::vector<std::pair<std::string, int>> env;  // variable -> element

    int term_value(const Term& t) {
        if (t.kind == Term::Kind::Constant) {
            auto c = m.sig().constant_index(t.name);
            if (!c) throw UnknownSymbolError(t.name);
            return m.constant(*c);
        }
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == t.name) return it->second;
        throw SortError("free variable '" + t.name + "' in evaluation");
    }

    bool run(const Formula& f) {
        switch (f.kind) {
            case Formula::Kind::Atom: {
                auto r = m.sig().relation_index(f.head);
                if (!r) throw UnknownSymbolError(f.head);
                std::vector<int> t;
                for (const auto& a : f.args) t.push_back(term_value(a));
                return m.holds(*r, t);
            }
            case Formula::Kind::Eq:
                return term_value(f.args[0]) == term_value(f.args[1]);
            case Formula::Kind::Not:
                return !run(f.kids.front());
            case Formula::Kind::And:
            case Formula::Kind::Or: {
                if (f.countable)
                    throw UnsupportedFormulaError(
                        "cannot evaluate a countable-family junction: " + render_formula(f));
                bool conj = f.kind == Formula::Kind::And;
                for (const auto& kid : f.kids) {
                    bool v = run(kid);
                    if (conj && !v) return false;
                    if (!conj && v) return true;
                }
                return conj;
            }
            case Formula::Kind::Exists:
            case Formula::Kind::Forall: {
                auto s = m.sig().sort_index(f.binder_sort);
                if (!s) throw UnknownSymbolError(f.binder_sort);
                bool exist = f.kind == Formula::Kind::Exists;
                for (int e : m.domain(*s)) {
                    env.emplace_back(f.head, e);
                    bool v = run(f.kids.front());
                    env.pop_back();
                    if (exist && v) return true;
                    if (!exist && !v) return false;
                }
                return !exist;
            }
        }
        throw Error("corrupt formula node");
    }
};

}  // namespace

bool eval(const MultiStructure& m, const Formula& f) {
    auto report = well_sorted_check(f, m.sig());
    if (!report.ok()) throw SortError("ill-sorted formula: " + report.violations.front().node +
                                      " (" + report.violations.front().detail + ")");
    if (!is_closed(f)) throw SortError("formula is not closed: " + render_formula(f));
    Evaluator ev{m, {}};
    return ev.run(f);
}

bool eval_unchecked(const MultiStructure& m, const Formula& f) {
    Evaluator ev{m, {}};
    return ev.run(f);
}

SigmaNu realized_literals(const MultiStructure& m, const AtomTable& tab) {
    SigmaNu nu(tab.size());
    for (int a = 0; a < tab.size(); ++a) {
        bool v;
        if (tab.is_eq(a))
            v = m.constant(tab.eq_lhs(a)) == m.constant(tab.eq_rhs(a));
        else {
            std::vector<int> t;
            for (int c : tab.rel_args(a)) t.push_back(m.constant(c));
            v = m.holds(tab.rel(a), t);
        }
        nu.set(a, v);
    }
    return nu;
}

MultiStructure parse_structure(const std::string& text, SignaturePtr sig,
                               std::vector<std::string>* notes) {
    const Signature& g = *sig;
    // element name -> id, assigned in order of first appearance
    std::map<std::string, int> elem_ids;
    std::map<int, std::string> elem_names;
    auto elem = [&](const std::string& n) {
        if (!valid_name(n)) throw SyntaxError(0, "bad element name '" + n + "'");
        auto it = elem_ids.find(n);
        if (it != elem_ids.end()) return it->second;
        int id = static_cast<int>(elem_ids.size());
        elem_ids[n] = id;
        elem_names[id] = n;
        return id;
    };

    std::vector<std::vector<int>> domains(g.sort_count());
    std::vector<bool> dom_seen(g.sort_count(), false);
    std::vector<int> interp(g.constant_count(), -1);
    std::vector<std::set<std::vector<int>>> rels(g.relation_count());
    std::vector<bool> rel_seen(g.relation_count(), false);

    auto trim = [](std::string s) {
        auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
        while (!s.empty() && issp(s.front())) s.erase(s.begin());
        while (!s.empty() && issp(s.back())) s.pop_back();
        return s;
    };

    // split "{a, b, c}" / "{(a,b), (c,d)}" into item strings
    auto split_set = [&](const std::string& body) {
        std::string inner = trim(body);
        if (inner.empty() || inner.front() != '{' || inner.back() != '}')
            throw SyntaxError(0, "expected '{...}' in structure literal, got '" + body + "'");
        inner = inner.substr(1, inner.size() - 2);
        std::vector<std::string> items;
        int depth = 0;
        std::string cur;
        for (char c : inner) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                items.push_back(trim(cur));
                cur.clear();
            } else
                cur += c;
        }
        if (!trim(cur).empty()) items.push_back(trim(cur));
        for (const auto& i : items)
            if (i.empty()) throw SyntaxError(0, "empty item in '" + body + "'");
        return items;
    };

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (auto arrow = line.find("->"); arrow != std::string::npos) {
            std::string cname = trim(line.substr(0, arrow));
            std::string ename = trim(line.substr(arrow + 2));
            auto c = g.constant_index(cname);
            if (!c) throw UnknownSymbolError(cname, "not a declared constant");
            if (interp[*c] != -1) throw SyntaxError(0, "constant '" + cname + "' assigned twice");
            interp[*c] = elem(ename);
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw SyntaxError(0, "unrecognized structure line '" + line + "'");
        std::string name = trim(line.substr(0, colon));
        std::string body = trim(line.substr(colon + 1));
        if (auto s = g.sort_index(name)) {
            if (dom_seen[*s]) throw SyntaxError(0, "sort '" + name + "' listed twice");
            dom_seen[*s] = true;
            for (const auto& item : split_set(body)) domains[*s].push_back(elem(item));
            std::sort(domains[*s].begin(), domains[*s].end());
            domains[*s].erase(std::unique(domains[*s].begin(), domains[*s].end()),
                              domains[*s].end());
            continue;
        }
        if (auto r = g.relation_index(name)) {
            if (rel_seen[*r]) throw SyntaxError(0, "relation '" + name + "' listed twice");
            rel_seen[*r] = true;
            for (const auto& item : split_set(body)) {
                std::string t = item;
                if (!t.empty() && t.front() == '(') {
                    if (t.back() != ')') throw SyntaxError(0, "bad tuple '" + item + "'");
                    t = t.substr(1, t.size() - 2);
                }
                std::vector<int> tuple;
                std::string cur;
                for (char ch : t + ",") {
                    if (ch == ',') {
                        std::string e = trim(cur);
                        if (e.empty()) throw SyntaxError(0, "bad tuple '" + item + "'");
                        tuple.push_back(elem(e));
                        cur.clear();
                    } else
                        cur += ch;
                }
                rels[*r].insert(std::move(tuple));
            }
            continue;
        }
        throw UnknownSymbolError(name, "not a sort or relation of the signature");
    }

    for (int s = 0; s < g.sort_count(); ++s)
        if (!dom_seen[s]) throw Error("structure literal missing domain for sort '" + g.sort_name(s) + "'");
    for (int c = 0; c < g.constant_count(); ++c)
        if (interp[c] == -1)
            throw Error("structure literal missing assignment for constant '" + g.constant_name(c) + "'");
    if (notes)
        for (int r = 0; r < g.relation_count(); ++r)
            if (!rel_seen[r])
                notes->push_back("relation '" + g.relation(r).name +
                                 "' not listed; defaulted to the empty extension");

    return MultiStructure(std::move(sig), std::move(domains), std::move(interp), std::move(rels),
                          std::move(elem_names));
}

}  // namespace gm
