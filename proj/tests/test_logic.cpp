#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <string>
#include <vector>

#include "gm/errors.hpp"
#include "gm/formula.hpp"
#include "gm/parser.hpp"
#include "gm/signature.hpp"

using namespace gm;

namespace {

SignaturePtr two_sorted() {
    return std::make_shared<const Signature>(
        std::vector<std::string>{"s", "u"},
        std::vector<std::vector<std::string>>{{"c0", "c1", "c2"}, {"d0", "d1"}},
        std::vector<RelationDecl>{{"P", {0}}, {"E", {0, 1}}});
}

}  // namespace

TEST_CASE("signature: global constant indexing runs sort by sort") {
    auto g = two_sorted();
    CHECK(g->sort_count() == 2);
    CHECK(g->constant_count() == 5);
    CHECK(g->constant_count(0) == 3);
    CHECK(g->constant_count(1) == 2);
    CHECK(g->constant_global(0, 0) == 0);
    CHECK(g->constant_global(0, 2) == 2);
    CHECK(g->constant_global(1, 0) == 3);
    CHECK(g->constant_name(3) == "d0");
    CHECK(g->constant_sort(4) == 1);
    CHECK(g->sort_index("u").value() == 1);
    CHECK_FALSE(g->sort_index("w").has_value());
    CHECK(g->constant_index("c2").value() == 2);
    CHECK(g->constant_index("d1").value() == 4);
    CHECK_FALSE(g->constant_index("P").has_value());
    CHECK(g->relation_index("E").value() == 1);
    CHECK(g->relation(1).arg_sorts == std::vector<int>{0, 1});
}

TEST_CASE("signature: validation rejects malformed declarations") {
    using V = std::vector<std::string>;
    using VV = std::vector<std::vector<std::string>>;
    using R = std::vector<RelationDecl>;

    // one name, two roles
    CHECK_THROWS_AS(Signature(V{"s"}, VV{{"s"}}, R{}), Error);
    CHECK_THROWS_AS(Signature(V{"s"}, VV{{"c", "c"}}, R{}), Error);
    CHECK_THROWS_AS(Signature(V{"s", "t"}, VV{{"c"}, {"c"}}, R{}), Error);
    CHECK_THROWS_AS(Signature(V{"s"}, VV{{"c"}}, R{{"c", {0}}}), Error);
    // reserved words are not identifiers
    CHECK_THROWS_AS(Signature(V{"s"}, VV{{"Exists"}}, R{}), Error);
    CHECK_THROWS_AS(Signature(V{"Or"}, VV{{"c"}}, R{}), Error);
    // constants are the term language; a sort without any is unusable
    CHECK_THROWS_AS(Signature(V{"s", "t"}, VV{{"c"}, {}}, R{}), Error);
    // relations take at least one argument
    CHECK_THROWS_AS(Signature(V{"s"}, VV{{"c"}}, R{{"P", {}}}), Error);
    // argument sorts must exist
    CHECK_THROWS_AS(Signature(V{"s"}, VV{{"c"}}, R{{"P", {1}}}), Error);
    // identifier shape
    CHECK_THROWS_AS(Signature(V{"s"}, VV{{"3x"}}, R{}), Error);
    CHECK_THROWS_AS(Signature(V{"s"}, VV{{"a-b"}}, R{}), Error);
}

TEST_CASE("valid_name accepts identifiers and rejects keywords") {
    CHECK(valid_name("x"));
    CHECK(valid_name("_x9"));
    CHECK(valid_name("Andy"));  // prefix of a keyword is fine
    CHECK_FALSE(valid_name(""));
    CHECK_FALSE(valid_name("9x"));
    CHECK_FALSE(valid_name("a b"));
    for (const char* kw : {"And", "Or", "Exists", "Forall"}) CHECK_FALSE(valid_name(kw));
}

TEST_CASE("parser: canonical strings round-trip exactly") {
    auto g = two_sorted();
    for (const std::string text : {
             "P(c0)",
             "!P(c1)",
             "(c0 = c1)",
             "!(c0 = c0)",
             "E(c2, d1)",
             "And[P(c0); P(c1)]",
             "Or[!P(c0); (c1 = c2)]",
             "And[Or[P(c0); P(c1)]; Or[!P(c2)]]",
             "Exists x:s . P(x)",
             "Forall x:s . Exists y:u . E(x, y)",
             "Or[And[P(c0); !P(c1)]; And[!P(c0); P(c1)]]",
             "!And[P(c0); Exists x:u . E(c0, x)]",
         }) {
        Formula f = parse_formula(text, *g);
        CHECK(render_formula(f) == text);
        CHECK(parse_formula(render_formula(f), *g) == f);
    }
}

TEST_CASE("parser: whitespace and grouping normalize away") {
    auto g = two_sorted();
    CHECK(render_formula(parse_formula("  P( c0 )", *g)) == "P(c0)");
    CHECK(render_formula(parse_formula("c0=c1", *g)) == "(c0 = c1)");
    CHECK(render_formula(parse_formula("(P(c0))", *g)) == "P(c0)");
    CHECK(render_formula(parse_formula("And[ P(c0) ;P(c1) ]", *g)) == "And[P(c0); P(c1)]");
    CHECK(render_formula(parse_formula("Exists  x : s .  P(x)", *g)) == "Exists x:s . P(x)");
    CHECK(render_formula(parse_formula("((c0 = c1))", *g)) == "(c0 = c1)");
}

TEST_CASE("parser: syntax errors carry the offending offset") {
    auto g = two_sorted();
    auto pos_of = [&](const std::string& text) {
        try {
            parse_formula(text, *g);
        } catch (const SyntaxError& e) {
            return e.position;
        }
        return std::string::npos;
    };
    CHECK(pos_of("And[P(c0)") != std::string::npos);
    CHECK(pos_of("P(c0) P(c1)") == 6);  // trailing input
    CHECK(pos_of("") == 0);
    CHECK(pos_of("Or[]") != std::string::npos);
    CHECK(pos_of("Exists x s . P(x)") != std::string::npos);  // missing ':'
    CHECK(pos_of("(P(c0)) = c0") != std::string::npos);
    CHECK_THROWS_AS(parse_formula("And[; P(c0)]", *g), SyntaxError);
}

TEST_CASE("parser: unknown symbols are reported by name") {
    auto g = two_sorted();
    try {
        parse_formula("Q(c0)", *g);
        FAIL("expected UnknownSymbolError");
    } catch (const UnknownSymbolError& e) {
        CHECK(e.name == "Q");
    }
    try {
        parse_formula("P(zz)", *g);
        FAIL("expected UnknownSymbolError");
    } catch (const UnknownSymbolError& e) {
        CHECK(e.name == "zz");
    }
    // a variable is only usable under its binder
    CHECK_THROWS_AS(parse_formula("P(x)", *g), UnknownSymbolError);
    CHECK_THROWS_AS(parse_formula("And[Exists x:s . P(x); P(x)]", *g), UnknownSymbolError);
    CHECK_THROWS_AS(parse_formula("Exists x:w . P(x)", *g), UnknownSymbolError);
}

TEST_CASE("parser: sort discipline is enforced during parsing") {
    auto g = two_sorted();
    CHECK_THROWS_AS(parse_formula("(c0 = d0)", *g), SortError);
    CHECK_THROWS_AS(parse_formula("E(d0, c0)", *g), SortError);
    CHECK_THROWS_AS(parse_formula("P(d1)", *g), SortError);
    CHECK_THROWS_AS(parse_formula("P(c0, c1)", *g), SortError);
    CHECK_THROWS_AS(parse_formula("E(c0)", *g), SortError);
    // binder hygiene
    CHECK_THROWS_AS(parse_formula("Exists c0:s . P(c0)", *g), SortError);
    CHECK_THROWS_AS(parse_formula("Exists x:s . Exists x:s . P(x)", *g), SortError);
    // same variable in sibling scopes is fine
    CHECK_NOTHROW(parse_formula("And[Exists x:s . P(x); Exists x:u . E(c0, x)]", *g));
}

TEST_CASE("classify: literal / and_or / other") {
    auto g = two_sorted();
    auto cls = [&](const std::string& text) { return classify(parse_formula(text, *g)); };
    CHECK(cls("P(c0)") == FormulaClass::Literal);
    CHECK(cls("!(c0 = c1)") == FormulaClass::Literal);
    CHECK(cls("And[P(c0)]") == FormulaClass::Literal);       // singleton wrappers peel
    CHECK(cls("Or[And[Or[P(c0)]]]") == FormulaClass::Literal);

    CHECK(cls("Or[P(c0); P(c1)]") == FormulaClass::AndOr);   // bare clause
    CHECK(cls("And[P(c0); !P(c1)]") == FormulaClass::AndOr); // literal conjuncts
    CHECK(cls("And[Or[P(c0); P(c1)]; Or[!P(c2)]]") == FormulaClass::AndOr);
    CHECK(cls("And[Or[P(c0)]; P(c1)]") == FormulaClass::AndOr);

    CHECK(cls("Exists x:s . P(x)") == FormulaClass::Other);
    CHECK(cls("Or[And[P(c0); P(c1)]; P(c2)]") == FormulaClass::Other);
    CHECK(cls("!Or[P(c0); P(c1)]") == FormulaClass::Other);
    CHECK(cls("And[Or[P(c0)]; Exists x:s . P(x)]") == FormulaClass::Other);
}

TEST_CASE("and_or_matrix: conjunct/disjunct structure") {
    auto g = two_sorted();
    auto m = and_or_matrix(parse_formula("And[Or[P(c0); P(c1)]; Or[!P(c2)]]", *g));
    REQUIRE(m.size() == 2);
    REQUIRE(m[0].size() == 2);
    REQUIRE(m[1].size() == 1);
    CHECK(m[0][0].positive);
    CHECK(render_formula(m[0][0].atom) == "P(c0)");
    CHECK(render_formula(m[0][1].atom) == "P(c1)");
    CHECK_FALSE(m[1][0].positive);
    CHECK(render_formula(m[1][0].atom) == "P(c2)");

    // a bare literal is a 1x1 matrix, a bare clause a 1xN one
    CHECK(and_or_matrix(parse_formula("P(c0)", *g)).size() == 1);
    CHECK(and_or_matrix(parse_formula("Or[P(c0); P(c1); P(c2)]", *g))[0].size() == 3);
    // literal conjuncts each become their own singleton clause
    auto lits = and_or_matrix(parse_formula("And[P(c0); !P(c1)]", *g));
    REQUIRE(lits.size() == 2);
    CHECK(lits[1].size() == 1);

    CHECK_THROWS_AS(and_or_matrix(parse_formula("Exists x:s . P(x)", *g)), NotAndOrError);
    CHECK_THROWS_AS(and_or_matrix(parse_formula("Or[And[P(c0); P(c1)]; P(c2)]", *g)),
                    NotAndOrError);
    CHECK_THROWS_AS(and_or_matrix(parse_formula("!Or[P(c0); P(c1)]", *g)), NotAndOrError);
}

TEST_CASE("countable-marked junctions refuse singleton peeling and evaluation paths") {
    auto g = two_sorted();
    Formula inner = parse_formula("P(c0)", *g);
    Formula wrapped = land({inner});
    wrapped.countable = true;
    // the marker means "this stands for a longer family", so it must not peel
    CHECK(&peel_singletons(wrapped) == &wrapped);
    CHECK_FALSE(as_literal(wrapped).has_value());
}

TEST_CASE("free variables and substitution on open templates") {
    auto g = two_sorted();
    // built by hand: the parser only produces closed formulas
    Formula tpl = exists("y", "u",
                         atom("E", {Term::variable("x", "s"), Term::variable("y", "u")}));
    auto fv = free_variables(tpl);
    REQUIRE(fv.size() == 1);
    CHECK(fv[0] == std::pair<std::string, std::string>{"x", "s"});
    CHECK_FALSE(is_closed(tpl));

    Formula plugged = substitute(tpl, "x", Term::constant("c1", "s"));
    CHECK(is_closed(plugged));
    CHECK(render_formula(plugged) == "Exists y:u . E(c1, y)");
    CHECK(well_sorted_check(plugged, *g).ok());

    // bound occurrences are untouched
    Formula noop = substitute(tpl, "y", Term::constant("d0", "u"));
    CHECK(noop == tpl);
}

TEST_CASE("well_sorted_check pinpoints violations") {
    auto g = two_sorted();
    CHECK(well_sorted_check(parse_formula("Forall x:s . Or[P(x); (x = c0)]", *g), *g).ok());

    // hand-built trees that the parser would never produce
    Formula bad_arity = atom("P", {Term::constant("c0", "s"), Term::constant("c1", "s")});
    CHECK_FALSE(well_sorted_check(bad_arity, *g).ok());

    Formula bad_sort = eq(Term::constant("c0", "s"), Term::constant("d0", "u"));
    auto rep = well_sorted_check(bad_sort, *g);
    REQUIRE_FALSE(rep.ok());
    CHECK_FALSE(rep.violations.front().detail.empty());
    CHECK_FALSE(rep.render().empty());

    Formula unknown_rel = atom("R", {Term::constant("c0", "s")});
    CHECK_FALSE(well_sorted_check(unknown_rel, *g).ok());

    Formula free_var = atom("P", {Term::variable("x", "s")});
    CHECK_FALSE(well_sorted_check(free_var, *g).ok());

    Formula rebound = exists("x", "s", exists("x", "s", atom("P", {Term::variable("x", "s")})));
    CHECK_FALSE(well_sorted_check(rebound, *g).ok());

    Formula shadowing = exists("c0", "s", atom("P", {Term::variable("c0", "s")}));
    CHECK_FALSE(well_sorted_check(shadowing, *g).ok());

    // annotation lies about the constant's declared sort
    Formula lied = eq(Term::constant("c0", "u"), Term::constant("c1", "u"));
    CHECK_FALSE(well_sorted_check(lied, *g).ok());
}

TEST_CASE("builders reject empty junctions") {
    CHECK_THROWS_AS(land({}), Error);
    CHECK_THROWS_AS(lor({}), Error);
}

TEST_CASE("parse_literal accepts literals only") {
    auto g = two_sorted();
    CHECK(parse_literal("!P(c0)", *g).positive == false);
    CHECK(parse_literal("(c0 = c1)", *g).positive == true);
    CHECK(render_literal(parse_literal("And[!E(c0, d0)]", *g)) == "!E(c0, d0)");
    CHECK_THROWS_AS(parse_literal("Or[P(c0); P(c1)]", *g), SyntaxError);
    CHECK_THROWS_AS(parse_literal("!!P(c0)", *g), SyntaxError);
}
