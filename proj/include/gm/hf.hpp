#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gm {

// A hereditarily finite set in canonical form: elements deduplicated and
// sorted ascending by the Ackermann order (x < y iff ack(x) < ack(y), where
// ack(x) = sum of 2^ack(e) over e in x).  The order is computed structurally,
// so it works far beyond the range where the Ackermann integer fits a word.
class HFSet {
public:
    HFSet() = default;                          // {}
    explicit HFSet(std::vector<HFSet> elems);   // canonicalizes

    const std::vector<HFSet>& elems() const { return elems_; }
    bool empty() const { return elems_.empty(); }
    bool contains(const HFSet& x) const;
    int rank() const;

    // negative / zero / positive like a three-way comparison of ack codes
    static int compare(const HFSet& a, const HFSet& b);
    bool operator==(const HFSet& o) const { return compare(*this, o) == 0; }
    bool operator<(const HFSet& o) const { return compare(*this, o) < 0; }

    // The Ackermann integer when it fits into 64 bits.
    std::optional<unsigned long long> ack() const;
    static HFSet from_ack(unsigned long long n);

    // Nested-brace literal: {} , {{}} , {{},{{}}} ...
    std::string braces() const;
    // Accepts a brace literal or "ack:<n>".
    static HFSet parse(const std::string& text);

private:
    std::vector<HFSet> elems_;
};

}  // namespace gm
