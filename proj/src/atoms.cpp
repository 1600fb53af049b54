#include "gm/atoms.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "gm/errors.hpp"
#include "gm/parser.hpp"

namespace gm {

AtomTable::AtomTable(SignaturePtr sig) : sig_(std::move(sig)) {
    const Signature& g = *sig_;
    for (int s = 0; s < g.sort_count(); ++s) {
        eq_base_.push_back(static_cast<int>(texts_.size()));
        for (int i = 0; i < g.constant_count(s); ++i)
            for (int j = 0; j < g.constant_count(s); ++j) {
                int c = g.constant_global(s, i), d = g.constant_global(s, j);
                eq_args_.emplace_back(c, d);
                rel_args_.emplace_back();
                rel_of_.push_back(-1);
                texts_.push_back("(" + g.constant_name(c) + " = " + g.constant_name(d) + ")");
            }
    }
    for (int r = 0; r < g.relation_count(); ++r) {
        rel_base_.push_back(static_cast<int>(texts_.size()));
        const auto& decl = g.relation(r);
        std::vector<int> local(decl.arg_sorts.size(), 0);
        for (;;) {
            std::vector<int> args;
            std::string t = decl.name + "(";
            for (std::size_t i = 0; i < local.size(); ++i) {
                int c = g.constant_global(decl.arg_sorts[i], local[i]);
                args.push_back(c);
                if (i) t += ", ";
                t += g.constant_name(c);
            }
            t += ")";
            eq_args_.emplace_back(-1, -1);
            rel_args_.push_back(std::move(args));
            rel_of_.push_back(r);
            texts_.push_back(std::move(t));
            // odometer, last argument fastest
            int i = static_cast<int>(local.size()) - 1;
            while (i >= 0 && ++local[i] == g.constant_count(decl.arg_sorts[i])) local[i--] = 0;
            if (i < 0) break;
        }
    }
    rel_base_.push_back(static_cast<int>(texts_.size()));
}

int AtomTable::eq_sort(int a) const { return sig_->constant_sort(eq_args_[a].first); }

int AtomTable::rel(int a) const { return rel_of_[a]; }

int AtomTable::eq_index(int c, int d) const {
    int s = sig_->constant_sort(c);
    if (s != sig_->constant_sort(d))
        throw SortError("equality between sorts '" + sig_->sort_name(s) + "' and '" +
                        sig_->sort_name(sig_->constant_sort(d)) + "'");
    int base = eq_base_[s], n = sig_->constant_count(s);
    int i = c - sig_->constant_global(s, 0), j = d - sig_->constant_global(s, 0);
    return base + i * n + j;
}

int AtomTable::rel_index(int r, const std::vector<int>& args) const {
    const auto& decl = sig_->relation(r);
    if (args.size() != decl.arg_sorts.size())
        throw SortError("relation '" + decl.name + "' arity mismatch");
    int idx = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
        int s = decl.arg_sorts[i];
        if (sig_->constant_sort(args[i]) != s)
            throw SortError("argument " + std::to_string(i) + " of '" + decl.name +
                            "' has the wrong sort");
        idx = idx * sig_->constant_count(s) + (args[i] - sig_->constant_global(s, 0));
    }
    return rel_base_[r] + idx;
}

Formula AtomTable::formula(int a) const {
    const Signature& g = *sig_;
    auto cterm = [&](int c) {
        return Term::constant(g.constant_name(c), g.sort_name(g.constant_sort(c)));
    };
    if (is_eq(a)) return eq(cterm(eq_lhs(a)), cterm(eq_rhs(a)));
    std::vector<Term> args;
    for (int c : rel_args_[a]) args.push_back(cterm(c));
    return atom(g.relation(rel_of_[a]).name, std::move(args));
}

int AtomTable::index_of(const Formula& f) const {
    const Signature& g = *sig_;
    auto cid = [&](const Term& t) {
        if (t.kind != Term::Kind::Constant)
            throw SortError("atomic sentence contains variable '" + t.name + "'");
        auto c = g.constant_index(t.name);
        if (!c) throw UnknownSymbolError(t.name);
        return *c;
    };
    if (f.kind == Formula::Kind::Eq) return eq_index(cid(f.args[0]), cid(f.args[1]));
    if (f.kind == Formula::Kind::Atom) {
        auto r = g.relation_index(f.head);
        if (!r) throw UnknownSymbolError(f.head);
        std::vector<int> args;
        for (const auto& t : f.args) args.push_back(cid(t));
        return rel_index(*r, args);
    }
    throw SortError("not an atomic sentence: " + render_formula(f));
}

std::string render(const AtomTable& tab, GroundLiteral l) {
    return l.positive ? tab.render(l.atom) : "!" + tab.render(l.atom);
}

Condition::Condition(int atom_count)
    : atoms_(atom_count),
      mask_((atom_count + 63) / 64, 0),
      vals_((atom_count + 63) / 64, 0) {}

std::optional<bool> Condition::get(int a) const {
    if (!decided(a)) return std::nullopt;
    return value(a);
}

int Condition::decided_count() const {
    int n = 0;
    for (auto w : mask_) n += std::popcount(w);
    return n;
}

void Condition::set(int a, bool v) {
    mask_[a >> 6] |= std::uint64_t{1} << (a & 63);
    if (v)
        vals_[a >> 6] |= std::uint64_t{1} << (a & 63);
    else
        vals_[a >> 6] &= ~(std::uint64_t{1} << (a & 63));
}

bool Condition::try_add(int a, bool v) {
    if (decided(a)) return value(a) == v;
    set(a, v);
    return true;
}

Condition Condition::with(int a, bool v) const {
    Condition q = *this;
    q.set(a, v);
    return q;
}

bool Condition::subset_of(const Condition& q) const {
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (mask_[i] & ~q.mask_[i]) return false;
        if ((vals_[i] ^ q.vals_[i]) & mask_[i]) return false;
    }
    return true;
}

bool Condition::compatible(const Condition& q) const {
    for (std::size_t i = 0; i < mask_.size(); ++i)
        if ((vals_[i] ^ q.vals_[i]) & mask_[i] & q.mask_[i]) return false;
    return true;
}

std::vector<GroundLiteral> Condition::literals() const {
    std::vector<GroundLiteral> out;
    for (int a = 0; a < atoms_; ++a)
        if (decided(a)) out.push_back({a, value(a)});
    return out;
}

std::vector<GroundLiteral> Condition::minus(const Condition& q) const {
    std::vector<GroundLiteral> out;
    for (int a = 0; a < atoms_; ++a)
        if (decided(a) && !(q.decided(a) && q.value(a) == value(a)))
            out.push_back({a, value(a)});
    return out;
}

int Condition::compare(const Condition& p, const Condition& q) {
    auto lp = p.literals(), lq = q.literals();
    if (lp < lq) return -1;
    if (lq < lp) return 1;
    return 0;
}

std::string render(const AtomTable& tab, const Condition& p) {
    std::string out = "{";
    bool first = true;
    for (const auto& l : p.literals()) {
        if (!first) out += ", ";
        first = false;
        out += render(tab, l);
    }
    return out + "}";
}

Condition parse_condition(const std::string& text, const AtomTable& tab) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos == text.size() || text[pos] != '{') throw SyntaxError(pos, "expected '{'");
    ++pos;
    Condition p(tab.size());
    skip();
    if (pos < text.size() && text[pos] == '}') {
        ++pos;
        skip();
        if (pos != text.size()) throw SyntaxError(pos, "trailing input after '}'");
        return p;
    }
    for (;;) {
        // scan one literal: up to a top-level ',' / ';' / '}'
        skip();
        std::size_t start = pos;
        int depth = 0;
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') --depth;
            if (depth == 0 && (c == ',' || c == ';' || c == '}')) break;
            ++pos;
        }
        if (pos == text.size()) throw SyntaxError(pos, "unterminated condition literal");
        Literal l = parse_literal(text.substr(start, pos - start), tab.sig());
        int a = tab.index_of(l.atom);
        if (!p.try_add(a, l.positive))
            throw SyntaxError(start, "contradictory literals on " + tab.render(a));
        if (text[pos] == '}') {
            ++pos;
            break;
        }
        ++pos;  // separator
    }
    skip();
    if (pos != text.size()) throw SyntaxError(pos, "trailing input after '}'");
    return p;
}

Condition from_literals(const std::vector<GroundLiteral>& ls, const AtomTable& tab) {
    Condition p(tab.size());
    for (auto l : ls)
        if (!p.try_add(l.atom, l.positive))
            throw Error("contradictory literals on " + tab.render(l.atom));
    return p;
}

}  // namespace gm
