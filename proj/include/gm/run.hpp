#pragma once

#include <string>

#include "gm/scenario.hpp"
#include "gm/term_model.hpp"

namespace gm {

// Everything a build run produces, pre-rendered.  `full_text` is the
// concatenation of the scenario's selected sections, each under a banner
// line "== NAME ==".
struct RunArtifacts {
    ConstructionResult construction;
    TermModel model;
    WellDefReport welldef;

    std::string sigma_text;
    std::string trace_text;
    std::string model_text;
    std::string summary_text;
    std::string full_text;

    bool all_green = true;  // well-definedness and every axiom verdict
};

// The full pipeline: dense sets from the theory, explicit specs, decision
// sets; construction from the start condition; term model; well-definedness;
// one verdict per theory entry (density certificate for and_or entries,
// direct evaluation otherwise).  Errors from any stage propagate.
RunArtifacts run_scenario(const Scenario& sc);

// The bundled two-sort demo scenario: sort N carries a membership diagram,
// sort B a fixed binary tree of code words; each class member selects one
// root-to-leaf branch and interprets N as the decoded set of its word, tied
// together by Codes(leaf, top).  Identical to the bundled scenario file.
Scenario mini_certificate_scenario();

struct MiniCertificate {
    std::string text;
    bool ok = false;
};

// Builds the term model of the bundled scenario, reads the branch word off
// the B-sort, collapses the N-sort through the codec, and certifies that the
// collapse equals the decoded branch word.
MiniCertificate run_mini_certificate();

}  // namespace gm
