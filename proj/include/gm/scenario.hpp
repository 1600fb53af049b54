#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gm/atoms.hpp"
#include "gm/axioms.hpp"
#include "gm/class_enum.hpp"
#include "gm/forcing.hpp"
#include "gm/signature.hpp"
#include "gm/structure.hpp"

namespace gm {

// A complete problem instance as read from a scenario file: the signature,
// a class of generic assignments (either an intensional bounds+constraint
// spec or an explicit member list), the theory to schedule, schedule
// directives, the start condition, and output options.
//
// File format: one UTF-8 JSON document.
//
//   {
//     "signature": { "sorts": ["s", ...],
//                    "constants": {"s": ["c0", ...], ...},
//                    "relations": [{"name": "P", "args": ["s", ...]}, ...] },
//     "class":     { "bounds": {"s": 2, ...},        // optional, default pool size
//                    "constraint": "<formula>" }      // optional
//                  | { "members": ["<structure literal>", ...] },
//     "theory":    { "equality_axioms": false,        // all keys optional
//                    "qe_axioms": false,
//                    "witnesses": ["<open formula>", ...],
//                    "axioms": [ {"label": "...", "formula": "...",
//                                 "schedulable": "...",          // optional
//                                 "certificate_only": false}, ... ] },
//     "schedule":  { "from_theory": true, "decide_all": true,
//                    "round_robin": false,
//                    "dense": [ {"kind": "decide", "atom": "P(c0)"},
//                               {"kind": "hit", "candidates": ["P(c0)", ...],
//                                "label": "..."}, ... ] },       // all optional
//     "start":     ["<literal>", ...],                           // optional
//     "output":    { "sections": ["sigma","trace","model","summary"] }  // optional
//   }
//
// Unknown keys anywhere are rejected.  All diagnostics carry a JSON-path-like
// location ("theory.axioms[2].formula").  Custom dense specs are not
// expressible in files; they exist at the library level only.
struct Scenario {
    SignaturePtr sig;
    AtomTable tab;

    // exactly one of the two presentations is set
    std::optional<ClassSpec> class_spec;
    std::optional<std::vector<MultiStructure>> class_members;

    Theory theory;

    bool schedule_from_theory = true;
    bool schedule_decide_all = true;
    bool round_robin = false;
    std::vector<DenseSpec> extra_dense;

    Condition start;

    std::vector<std::string> sections{"sigma", "trace", "model", "summary"};
    std::vector<std::string> notes;  // loader remarks (defaulted relations etc.)

    explicit Scenario(SignaturePtr s) : sig(std::move(s)), tab(sig), start(tab.size()) {}

    // Materializes the class (enumerating the spec if needed).
    EnumeratedOracle make_oracle() const;

    // Theory-derived dense sets first, then explicit ones, then (with
    // decide_all) one decision set per atomic sentence.
    Schedule make_schedule() const;
};

// Throws ScenarioError with a located diagnostic on any malformed input;
// `origin` names the document in messages.
Scenario parse_scenario(const std::string& json_text, const std::string& origin = "<string>");

// Reads the file (ScenarioError "<file>" when unreadable) and parses it.
Scenario load_scenario(const std::string& path);

}  // namespace gm
