#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gm/hf.hpp"

namespace gm {

// Cantor pairing n = (k+j)(k+j+1)/2 + j and its inverse; pair(0,0)=0,
// pair(1,0)=1, pair(0,1)=2.
unsigned long long pair_code(unsigned long long k, unsigned long long j);
std::pair<unsigned long long, unsigned long long> unpair_code(unsigned long long n);

// A candidate code for a hereditarily finite set: a finite binary relation E
// on {0..nodes-1}, edge (k,j) meaning "the set at node k is an element of the
// set at node j".  Codes come either as explicit edge sets or as bitstrings
// read through the pairing (bit n set <=> unpair(n) in E).
struct WfeCode {
    int nodes = 1;
    std::vector<std::pair<int, int>> edges;  // sorted, duplicate-free

    static WfeCode from_edges(std::vector<std::pair<int, int>> edges,
                              std::optional<int> nodes = std::nullopt);
    static WfeCode from_bits(const std::string& bits01);
    // "wfe:{(0,1),(1,2)}" or "bits:0110..."
    static WfeCode parse(const std::string& text);

    std::string render() const;  // canonical wfe:{...} form
    std::string bits() const;    // minimal bitstring through the pairing

    bool operator==(const WfeCode&) const = default;
};

// Validity of a code as a well-founded extensional membership diagram with a
// unique top whose downward closure is everything.  Checks run in this order;
// the first failure is reported:
//   IllFounded      (detail: one cycle, in order)
//   NotExtensional  (detail: two nodes with equal predecessor sets)
//   NoUniqueTop     (detail: all maximal nodes)
//   Disconnected    (detail: nodes unreachable from the top)
struct WfeCheck {
    enum class Status { Ok, IllFounded, NotExtensional, NoUniqueTop, Disconnected };
    Status status = Status::Ok;
    std::vector<int> detail;

    bool ok() const { return status == Status::Ok; }
    std::string render() const;
};

WfeCheck check_wfe(const WfeCode& c);

// Mostowski collapse of a valid code: the set at each node, plus the top.
struct CollapseResult {
    std::vector<HFSet> node_sets;
    int top = -1;
    const HFSet& top_set() const { return node_sets[top]; }
};

// pre: check_wfe(c).ok(); throws Error otherwise.
CollapseResult mostowski_collapse(const WfeCode& c);

// Cod, totalized: invalid codes decode to {} with the reason attached.
struct DecodeResult {
    HFSet value;
    WfeCheck check;
    std::optional<CollapseResult> collapse;  // present iff valid

    bool valid() const { return check.ok(); }
};

DecodeResult cod_decode(const WfeCode& c);

// Canonical code of a set: nodes are the transitive closure of {a} in
// ascending Ackermann order (so the top is the last node), edges the
// membership relation.
WfeCode cod_encode(const HFSet& a);

// The fixed small-node layout: node 1 = {node 0}, node 2 = {node 0, node 5},
// node 3 = Kuratowski pair <node 0, node 5> = {node 1, node 2}, node 4 =
// {node 3} = the top.  Nodes >= 6 are unconstrained; the check is positional
// (relabelings fail).  Invalid codes fail with the validity reason.
struct LayoutReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::string render() const;
};

LayoutReport pmax_layout_check(const WfeCode& c);

}  // namespace gm
