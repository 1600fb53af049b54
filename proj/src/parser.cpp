#include "gm/parser.hpp"

#include <cctype>

#include "gm/errors.hpp"

namespace gm {

namespace {

struct Parser {
    const std::string& text;
    const Signature& sig;
    std::size_t pos = 0;
    std::vector<std::pair<std::string, std::string>> binders;  // (var, sort)

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(pos, msg); }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() &&
            (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
        }
        if (start == pos) fail("expected identifier");
        return text.substr(start, pos - start);
    }

    bool peek_ident(const std::string& kw) {
        skip_ws();
        std::size_t p = pos;
        if (p + kw.size() > text.size() || text.compare(p, kw.size(), kw) != 0) return false;
        std::size_t after = p + kw.size();
        if (after < text.size() &&
            (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_'))
            return false;
        return true;
    }

    Term resolve_term(const std::string& name) {
        for (auto it = binders.rbegin(); it != binders.rend(); ++it)
            if (it->first == name) return Term::variable(name, it->second);
        if (auto c = sig.constant_index(name))
            return Term::constant(name, sig.sort_name(sig.constant_sort(*c)));
        throw UnknownSymbolError(name, "not a constant or bound variable");
    }

    Formula formula() {
        skip_ws();
        if (eat('!')) return lnot(formula());
        if (peek_ident("And") || peek_ident("Or")) return junction();
        if (peek_ident("Exists") || peek_ident("Forall")) return quantifier();
        if (eat('(')) {
            Formula inner = formula();
            expect(')');
            return finish_eq_chain(std::move(inner));
        }
        return atom_or_eq();
    }

    // After a parenthesized formula, no '=' may follow; equality operands are
    // bare terms.  "(c0) = c0" is rejected for simplicity.
    Formula finish_eq_chain(Formula f) {
        skip_ws();
        if (pos < text.size() && text[pos] == '=')
            fail("'=' after a formula (equality takes plain terms)");
        return f;
    }

    Formula junction() {
        bool is_and = peek_ident("And");
        ident();  // consume keyword
        expect('[');
        std::vector<Formula> kids;
        kids.push_back(formula());
        while (eat(';')) kids.push_back(formula());
        expect(']');
        return is_and ? land(std::move(kids)) : lor(std::move(kids));
    }

    Formula quantifier() {
        bool is_exists = peek_ident("Exists");
        ident();  // consume keyword
        std::string var = ident();
        if (sig.constant_index(var))
            throw SortError("variable '" + var + "' shadows a declared constant");
        for (const auto& b : binders)
            if (b.first == var) throw SortError("variable '" + var + "' rebound");
        expect(':');
        std::string sort = ident();
        if (!sig.sort_index(sort)) throw UnknownSymbolError(sort, "not a declared sort");
        expect('.');
        binders.emplace_back(var, sort);
        Formula body = formula();
        binders.pop_back();
        return is_exists ? exists(var, sort, std::move(body)) : forall(var, sort, std::move(body));
    }

    Formula atom_or_eq() {
        std::string name = ident();
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            auto r = sig.relation_index(name);
            if (!r) throw UnknownSymbolError(name, "not a declared relation");
            const auto& decl = sig.relation(*r);
            expect('(');
            std::vector<Term> args;
            args.push_back(resolve_term(ident()));
            while (eat(',')) args.push_back(resolve_term(ident()));
            expect(')');
            if (args.size() != decl.arg_sorts.size())
                throw SortError("relation '" + name + "' expects " +
                                std::to_string(decl.arg_sorts.size()) + " arguments, got " +
                                std::to_string(args.size()));
            for (std::size_t i = 0; i < args.size(); ++i)
                if (args[i].sort != sig.sort_name(decl.arg_sorts[i]))
                    throw SortError("argument " + std::to_string(i) + " of '" + name +
                                    "' has sort '" + args[i].sort + "', expected '" +
                                    sig.sort_name(decl.arg_sorts[i]) + "'");
            return atom(name, std::move(args));
        }
        Term lhs = resolve_term(name);
        expect('=');
        Term rhs = resolve_term(ident());
        if (lhs.sort != rhs.sort)
            throw SortError("equality between sorts '" + lhs.sort + "' and '" + rhs.sort + "'");
        return eq(std::move(lhs), std::move(rhs));
    }
};

void render(const Formula& f, std::string& out) {
    switch (f.kind) {
        case Formula::Kind::Atom:
            out += f.head;
            out += '(';
            for (std::size_t i = 0; i < f.args.size(); ++i) {
                if (i) out += ", ";
                out += f.args[i].name;
            }
            out += ')';
            return;
        case Formula::Kind::Eq:
            out += '(';
            out += f.args[0].name;
            out += " = ";
            out += f.args[1].name;
            out += ')';
            return;
        case Formula::Kind::Not:
            out += '!';
            render(f.kids.front(), out);
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
            out += (f.kind == Formula::Kind::And) ? "And[" : "Or[";
            for (std::size_t i = 0; i < f.kids.size(); ++i) {
                if (i) out += "; ";
                render(f.kids[i], out);
            }
            out += ']';
            return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            out += (f.kind == Formula::Kind::Exists) ? "Exists " : "Forall ";
            out += f.head;
            out += ':';
            out += f.binder_sort;
            out += " . ";
            render(f.kids.front(), out);
            return;
    }
}

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
    Parser p{text, sig, 0, {}};
    Formula f = p.formula();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

std::string render_formula(const Formula& f) {
    std::string out;
    render(f, out);
    return out;
}

std::string render_literal(const Literal& l) {
    std::string out;
    if (!l.positive) out += '!';
    render(l.atom, out);
    return out;
}

Literal parse_literal(const std::string& text, const Signature& sig) {
    Formula f = parse_formula(text, sig);
    auto l = as_literal(f);
    if (!l) throw SyntaxError(0, "not a literal: " + text);
    return *l;
}

}  // namespace gm
