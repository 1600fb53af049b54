#include "gm/signature.hpp"

#include <cctype>
#include <set>

#include "gm/errors.hpp"

namespace gm {

bool valid_name(const std::string& s) {
    static const std::set<std::string> keywords = {"And", "Or", "Exists", "Forall"};
    if (s.empty() || keywords.count(s)) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
    return true;
}

Signature::Signature(std::vector<std::string> sorts,
                     std::vector<std::vector<std::string>> constants,
                     std::vector<RelationDecl> relations)
    : sorts_(std::move(sorts)), constants_(std::move(constants)), relations_(std::move(relations)) {
    if (sorts_.empty()) throw Error("signature needs at least one sort");
    if (constants_.size() != sorts_.size())
        throw Error("signature needs one constant pool per sort");

    std::set<std::string> seen;
    auto claim = [&](const std::string& n, const char* what) {
        if (!valid_name(n)) throw Error(std::string(what) + " name '" + n + "' is not a valid identifier");
        if (!seen.insert(n).second) throw Error("duplicate name '" + n + "' in signature");
    };

    for (int s = 0; s < sort_count(); ++s) {
        claim(sorts_[s], "sort");
        sort_idx_[sorts_[s]] = s;
    }
    for (int s = 0; s < sort_count(); ++s) {
        if (constants_[s].empty())
            throw Error("sort '" + sorts_[s] + "' has no constants (generic assignments need a nonempty pool)");
        sort_base_.push_back(static_cast<int>(const_names_.size()));
        for (const auto& c : constants_[s]) {
            claim(c, "constant");
            const_idx_[c] = static_cast<int>(const_names_.size());
            const_names_.push_back(c);
            const_sort_.push_back(s);
        }
    }
    for (int r = 0; r < relation_count(); ++r) {
        const auto& decl = relations_[r];
        claim(decl.name, "relation");
        rel_idx_[decl.name] = r;
        if (decl.arg_sorts.empty())
            throw Error("relation '" + decl.name + "' must have positive arity");
        for (int s : decl.arg_sorts)
            if (s < 0 || s >= sort_count())
                throw Error("relation '" + decl.name + "' refers to an undeclared sort");
    }
}

std::optional<int> Signature::sort_index(const std::string& name) const {
    auto it = sort_idx_.find(name);
    if (it == sort_idx_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Signature::constant_index(const std::string& name) const {
    auto it = const_idx_.find(name);
    if (it == const_idx_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Signature::relation_index(const std::string& name) const {
    auto it = rel_idx_.find(name);
    if (it == rel_idx_.end()) return std::nullopt;
    return it->second;
}

}  // namespace gm
