#include "gm/hf.hpp"

#include <algorithm>
#include <cctype>

#include "gm/errors.hpp"

namespace gm {

HFSet::HFSet(std::vector<HFSet> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end(),
                             [](const HFSet& a, const HFSet& b) { return compare(a, b) == 0; }),
                 elems_.end());
}

bool HFSet::contains(const HFSet& x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

int HFSet::rank() const {
    int r = 0;
    for (const auto& e : elems_) r = std::max(r, e.rank() + 1);
    return r;
}

// ack(a) < ack(b) iff, comparing element lists from the largest element down,
// the first difference is a smaller element (or a ends first).  Any extra
// trailing smaller elements only add to the sum, so the longer list wins when
// one descending list is a prefix of the other.
int HFSet::compare(const HFSet& a, const HFSet& b) {
    const auto& x = a.elems_;
    const auto& y = b.elems_;
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 1; i <= n; ++i) {
        int c = compare(x[x.size() - i], y[y.size() - i]);
        if (c != 0) return c;
    }
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    return 0;
}

std::optional<unsigned long long> HFSet::ack() const {
    unsigned long long n = 0;
    for (const auto& e : elems_) {
        auto a = e.ack();
        if (!a || *a >= 64) return std::nullopt;
        n |= 1ull << *a;
    }
    return n;
}

HFSet HFSet::from_ack(unsigned long long n) {
    std::vector<HFSet> elems;
    for (unsigned long long bit = 0; bit < 64; ++bit)
        if ((n >> bit) & 1) elems.push_back(from_ack(bit));
    return HFSet(std::move(elems));
}

std::string HFSet::braces() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (i) out += ",";
        out += elems_[i].braces();
    }
    return out + "}";
}

namespace {

HFSet parse_braces(const std::string& text, std::size_t& pos) {
    if (pos >= text.size() || text[pos] != '{') throw SyntaxError(pos, "expected '{'");
    ++pos;
    std::vector<HFSet> elems;
    while (pos < text.size() && text[pos] != '}') {
        elems.push_back(parse_braces(text, pos));
        if (pos < text.size() && text[pos] == ',') ++pos;
    }
    if (pos >= text.size()) throw SyntaxError(pos, "unterminated '{'");
    ++pos;  // '}'
    return HFSet(std::move(elems));
}

}  // namespace

HFSet HFSet::parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.rfind("ack:", 0) == 0) {
        std::size_t used = 0;
        unsigned long long n = 0;
        try {
            n = std::stoull(t.substr(4), &used);
        } catch (const std::exception&) {
            throw SyntaxError(4, "bad ack literal");
        }
        if (used != t.size() - 4) throw SyntaxError(4 + used, "bad ack literal");
        return from_ack(n);
    }
    std::size_t pos = 0;
    HFSet s = parse_braces(t, pos);
    if (pos != t.size()) throw SyntaxError(pos, "trailing input after set literal");
    return s;
}

}  // namespace gm
