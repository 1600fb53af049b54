#include "gm/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gm/errors.hpp"
#include "gm/parser.hpp"

namespace gm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& detail) {
    throw ScenarioError(where, detail);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known) fail(where, "unknown key '" + it.key() + "'");
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing key '") + key + "'");
    return *it;
}

std::string get_string(const json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

bool get_bool(const json& v, const std::string& where) {
    if (!v.is_boolean()) fail(where, "expected a boolean");
    return v.get<bool>();
}

int get_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<int>();
}

const json& get_object(const json& v, const std::string& where) {
    if (!v.is_object()) fail(where, "expected an object");
    return v;
}

const json& get_array(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array");
    return v;
}

std::vector<std::string> get_string_array(const json& v, const std::string& where) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < get_array(v, where).size(); ++i)
        out.push_back(get_string(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

// A parse helper that re-locates library diagnostics into the document.
template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

SignaturePtr parse_signature(const json& v) {
    const std::string where = "signature";
    const json& obj = get_object(v, where);
    reject_unknown_keys(obj, where, {"sorts", "constants", "relations"});

    auto sorts = get_string_array(require(obj, "sorts", where), where + ".sorts");

    const json& cons = get_object(require(obj, "constants", where), where + ".constants");
    std::vector<std::vector<std::string>> pools(sorts.size());
    for (auto it = cons.begin(); it != cons.end(); ++it) {
        auto s = std::find(sorts.begin(), sorts.end(), it.key());
        if (s == sorts.end())
            fail(where + ".constants", "'" + it.key() + "' is not a declared sort");
        pools[s - sorts.begin()] =
            get_string_array(*it, where + ".constants." + it.key());
    }

    std::vector<RelationDecl> rels;
    if (auto it = obj.find("relations"); it != obj.end()) {
        const json& arr = get_array(*it, where + ".relations");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string rwhere = where + ".relations[" + std::to_string(i) + "]";
            const json& r = get_object(arr[i], rwhere);
            reject_unknown_keys(r, rwhere, {"name", "args"});
            RelationDecl d;
            d.name = get_string(require(r, "name", rwhere), rwhere + ".name");
            for (const auto& a : get_string_array(require(r, "args", rwhere), rwhere + ".args")) {
                auto s = std::find(sorts.begin(), sorts.end(), a);
                if (s == sorts.end())
                    fail(rwhere + ".args", "'" + a + "' is not a declared sort");
                d.arg_sorts.push_back(static_cast<int>(s - sorts.begin()));
            }
            rels.push_back(std::move(d));
        }
    }

    return located(where, [&] {
        return std::make_shared<const Signature>(std::move(sorts), std::move(pools),
                                                 std::move(rels));
    });
}

void parse_class(const json& v, Scenario& sc) {
    const std::string where = "class";
    const json& obj = get_object(v, where);
    reject_unknown_keys(obj, where, {"bounds", "constraint", "members"});

    bool explicit_members = obj.contains("members");
    if (explicit_members && (obj.contains("bounds") || obj.contains("constraint")))
        fail(where, "'members' excludes 'bounds'/'constraint'");

    if (explicit_members) {
        const json& arr = get_array(obj["members"], where + ".members");
        if (arr.empty()) fail(where + ".members", "a class needs at least one member");
        std::vector<MultiStructure> ms;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string mwhere = where + ".members[" + std::to_string(i) + "]";
            std::string text = get_string(arr[i], mwhere);
            std::vector<std::string> notes;
            ms.push_back(located(mwhere, [&] { return parse_structure(text, sc.sig, &notes); }));
            for (const auto& n : notes) sc.notes.push_back(mwhere + ": " + n);
        }
        sc.class_members = std::move(ms);
        return;
    }

    ClassSpec spec;
    spec.sig = sc.sig;
    spec.bounds.assign(sc.sig->sort_count(), 0);
    for (int s = 0; s < sc.sig->sort_count(); ++s)
        spec.bounds[s] = sc.sig->constant_count(s);
    if (auto it = obj.find("bounds"); it != obj.end()) {
        const json& b = get_object(*it, where + ".bounds");
        for (auto e = b.begin(); e != b.end(); ++e) {
            auto s = sc.sig->sort_index(e.key());
            if (!s) fail(where + ".bounds", "'" + e.key() + "' is not a declared sort");
            int n = get_int(e.value(), where + ".bounds." + e.key());
            if (n < 1 || n > sc.sig->constant_count(*s))
                fail(where + ".bounds." + e.key(),
                     "bound must be between 1 and the constant pool size (" +
                         std::to_string(sc.sig->constant_count(*s)) + ")");
            spec.bounds[*s] = n;
        }
    }
    if (auto it = obj.find("constraint"); it != obj.end()) {
        std::string text = get_string(*it, where + ".constraint");
        spec.constraint =
            located(where + ".constraint", [&] { return parse_formula(text, *sc.sig); });
    }
    sc.class_spec = std::move(spec);
}

void parse_theory(const json& v, Scenario& sc) {
    const std::string where = "theory";
    const json& obj = get_object(v, where);
    reject_unknown_keys(obj, where, {"equality_axioms", "qe_axioms", "witnesses", "axioms"});

    bool want_eq = false, want_qe = false;
    if (auto it = obj.find("equality_axioms"); it != obj.end())
        want_eq = get_bool(*it, where + ".equality_axioms");
    if (auto it = obj.find("qe_axioms"); it != obj.end())
        want_qe = get_bool(*it, where + ".qe_axioms");

    std::vector<Formula> witnesses;
    if (auto it = obj.find("witnesses"); it != obj.end()) {
        if (!want_qe) fail(where + ".witnesses", "witnesses require \"qe_axioms\": true");
        const json& arr = get_array(*it, where + ".witnesses");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string wwhere = where + ".witnesses[" + std::to_string(i) + "]";
            std::string text = get_string(arr[i], wwhere);
            // written closed as 'Exists x:s . psi(x)'; the template is the body
            Formula w = located(wwhere, [&] { return parse_formula(text, *sc.sig); });
            if (w.kind != Formula::Kind::Exists)
                fail(wwhere, "witness must be written 'Exists x:s . psi(x)'");
            witnesses.push_back(w.kids.front());
        }
    }

    if (want_eq) sc.theory.append(located(where, [&] { return equality_axioms(*sc.sig); }));
    if (want_qe)
        sc.theory.append(located(where, [&] { return qe_axioms(*sc.sig, witnesses); }));

    if (auto it = obj.find("axioms"); it != obj.end()) {
        const json& arr = get_array(*it, where + ".axioms");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string awhere = where + ".axioms[" + std::to_string(i) + "]";
            const json& a = get_object(arr[i], awhere);
            reject_unknown_keys(a, awhere, {"label", "formula", "schedulable", "certificate_only"});
            TheoryEntry e;
            std::string text = get_string(require(a, "formula", awhere), awhere + ".formula");
            e.axiom = located(awhere + ".formula", [&] { return parse_formula(text, *sc.sig); });
            if (!is_closed(e.axiom)) fail(awhere + ".formula", "axioms must be closed");
            if (auto s = a.find("schedulable"); s != a.end()) {
                std::string stext = get_string(*s, awhere + ".schedulable");
                e.schedulable =
                    located(awhere + ".schedulable", [&] { return parse_formula(stext, *sc.sig); });
                if (!is_closed(*e.schedulable))
                    fail(awhere + ".schedulable", "expansions must be closed");
            }
            if (auto c = a.find("certificate_only"); c != a.end())
                e.certificate_only = get_bool(*c, awhere + ".certificate_only");
            if (auto l = a.find("label"); l != a.end())
                e.label = get_string(*l, awhere + ".label");
            else
                e.label = "axiom[" + std::to_string(i) + "]";
            sc.theory.entries.push_back(std::move(e));
        }
    }
}

void parse_schedule(const json& v, Scenario& sc) {
    const std::string where = "schedule";
    const json& obj = get_object(v, where);
    reject_unknown_keys(obj, where, {"from_theory", "decide_all", "round_robin", "dense"});

    if (auto it = obj.find("from_theory"); it != obj.end())
        sc.schedule_from_theory = get_bool(*it, where + ".from_theory");
    if (auto it = obj.find("decide_all"); it != obj.end())
        sc.schedule_decide_all = get_bool(*it, where + ".decide_all");
    if (auto it = obj.find("round_robin"); it != obj.end())
        sc.round_robin = get_bool(*it, where + ".round_robin");

    if (auto it = obj.find("dense"); it != obj.end()) {
        const json& arr = get_array(*it, where + ".dense");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string dwhere = where + ".dense[" + std::to_string(i) + "]";
            const json& d = get_object(arr[i], dwhere);
            std::string kind = get_string(require(d, "kind", dwhere), dwhere + ".kind");
            if (kind == "decide") {
                reject_unknown_keys(d, dwhere, {"kind", "atom", "label"});
                std::string text = get_string(require(d, "atom", dwhere), dwhere + ".atom");
                int a = located(dwhere + ".atom", [&] {
                    Literal l = parse_literal(text, *sc.sig);
                    if (!l.positive)
                        throw Error("a decide spec names an atom, not a negated literal");
                    return sc.tab.index_of(l.atom);
                });
                std::string label = d.contains("label")
                                        ? get_string(d["label"], dwhere + ".label")
                                        : "decide " + sc.tab.render(a);
                sc.extra_dense.push_back(DenseSpec::decide(a, std::move(label)));
            } else if (kind == "hit") {
                reject_unknown_keys(d, dwhere, {"kind", "candidates", "label"});
                auto texts = get_string_array(require(d, "candidates", dwhere),
                                              dwhere + ".candidates");
                if (texts.empty()) fail(dwhere + ".candidates", "needs at least one literal");
                std::vector<GroundLiteral> cands;
                for (std::size_t c = 0; c < texts.size(); ++c) {
                    std::string cwhere = dwhere + ".candidates[" + std::to_string(c) + "]";
                    cands.push_back(located(cwhere, [&] {
                        Literal l = parse_literal(texts[c], *sc.sig);
                        return GroundLiteral{sc.tab.index_of(l.atom), l.positive};
                    }));
                }
                std::string label = d.contains("label")
                                        ? get_string(d["label"], dwhere + ".label")
                                        : "dense[" + std::to_string(i) + "]";
                sc.extra_dense.push_back(DenseSpec::hit(std::move(cands), std::move(label)));
            } else {
                fail(dwhere + ".kind",
                     "unknown kind '" + kind + "' (files support 'decide' and 'hit')");
            }
        }
    }
}

void parse_start(const json& v, Scenario& sc) {
    const std::string where = "start";
    auto texts = get_string_array(v, where);
    for (std::size_t i = 0; i < texts.size(); ++i) {
        std::string lwhere = where + "[" + std::to_string(i) + "]";
        auto gl = located(lwhere, [&] {
            Literal l = parse_literal(texts[i], *sc.sig);
            return GroundLiteral{sc.tab.index_of(l.atom), l.positive};
        });
        if (!sc.start.try_add(gl.atom, gl.positive))
            fail(lwhere, "contradicts an earlier start literal");
    }
}

void parse_output(const json& v, Scenario& sc) {
    const std::string where = "output";
    const json& obj = get_object(v, where);
    reject_unknown_keys(obj, where, {"sections"});
    if (auto it = obj.find("sections"); it != obj.end()) {
        auto names = get_string_array(*it, where + ".sections");
        static const std::set<std::string> known{"sigma", "trace", "model", "summary"};
        for (const auto& n : names)
            if (!known.count(n))
                fail(where + ".sections",
                     "unknown section '" + n + "' (sigma/trace/model/summary)");
        sc.sections = std::move(names);
    }
}

}  // namespace

EnumeratedOracle Scenario::make_oracle() const {
    if (class_members) return EnumeratedOracle(*class_members, tab);
    return EnumeratedOracle::from_spec(*class_spec, tab);
}

Schedule Scenario::make_schedule() const {
    Schedule sch;
    if (schedule_from_theory) {
        auto ds = dense_sets_from_theory(theory, tab);
        sch.entries.insert(sch.entries.end(), std::make_move_iterator(ds.begin()),
                           std::make_move_iterator(ds.end()));
    }
    sch.entries.insert(sch.entries.end(), extra_dense.begin(), extra_dense.end());
    if (schedule_decide_all) {
        auto ds = decision_dense_sets(tab);
        sch.entries.insert(sch.entries.end(), std::make_move_iterator(ds.begin()),
                           std::make_move_iterator(ds.end()));
    }
    sch.round_robin = round_robin;
    return sch;
}

Scenario parse_scenario(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(origin, e.what());
    }
    if (!doc.is_object()) fail(origin, "top level must be a JSON object");
    reject_unknown_keys(doc, origin,
                        {"signature", "class", "theory", "schedule", "start", "output"});

    Scenario sc(parse_signature(require(doc, "signature", origin)));
    parse_class(require(doc, "class", origin), sc);
    if (auto it = doc.find("theory"); it != doc.end()) parse_theory(*it, sc);
    if (auto it = doc.find("schedule"); it != doc.end()) parse_schedule(*it, sc);
    if (auto it = doc.find("start"); it != doc.end()) parse_start(*it, sc);
    if (auto it = doc.find("output"); it != doc.end()) parse_output(*it, sc);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot read file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

}  // namespace gm
