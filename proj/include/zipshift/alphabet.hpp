#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace zipshift {

using SymbolId = int;
using Word = std::vector<SymbolId>;

/// Ordered set of distinct symbol names; the position of a name is its
/// canonical id. Downstream structures store ids only, so relabeling is an
/// explicit operation, never an implicit one.
class SymbolSet {
public:
    SymbolSet() = default;

    explicit SymbolSet(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw Error("symbol set must be nonempty");
        for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
            if (names_[i].empty()) throw Error("empty symbol name");
            if (!index_.emplace(names_[i], i).second)
                throw DuplicateSymbol("duplicate symbol \"" + names_[i] + "\"");
        }
    }

    int size() const { return static_cast<int>(names_.size()); }

    const std::string& name(SymbolId id) const {
        if (id < 0 || id >= size()) throw UnknownSymbol("symbol id out of range");
        return names_[id];
    }

    SymbolId id(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw UnknownSymbol("unknown symbol \"" + name + "\"");
        return it->second;
    }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }
    bool contains_id(SymbolId id) const { return id >= 0 && id < size(); }
    const std::vector<std::string>& names() const { return names_; }

    friend bool operator==(const SymbolSet& a, const SymbolSet& b) {
        return a.names_ == b.names_;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, SymbolId> index_;
};

/// The transition map tau: S -> Z. Total, surjective, #S >= #Z. This is the
/// genotype of a zip shift space: it decides which future symbols become
/// indistinguishable once they cross into the past.
class TransitionMap {
public:
    TransitionMap(SymbolSet s, SymbolSet z, std::vector<SymbolId> assignment)
        : s_(std::move(s)), z_(std::move(z)), tau_(std::move(assignment)) {
        if (static_cast<int>(tau_.size()) != s_.size())
            throw NotTotal("assignment must cover every S-symbol");
        fibers_.assign(z_.size(), {});
        for (SymbolId si = 0; si < s_.size(); ++si) {
            if (!z_.contains_id(tau_[si]))
                throw UnknownSymbol("assignment target out of range");
            fibers_[tau_[si]].push_back(si);
        }
        for (SymbolId zi = 0; zi < z_.size(); ++zi)
            if (fibers_[zi].empty())
                throw NotSurjective("Z-symbol \"" + z_.name(zi) + "\" has empty fiber");
        // #S >= #Z follows: every fiber is nonempty and fibers partition S.
    }

    const SymbolSet& s_alphabet() const { return s_; }
    const SymbolSet& z_alphabet() const { return z_; }

    SymbolId tau(SymbolId s) const {
        if (!s_.contains_id(s)) throw UnknownSymbol("S-symbol id out of range");
        return tau_[s];
    }

    /// tau^{-1}(z), ascending ids. Fibers are disjoint and partition S.
    const std::vector<SymbolId>& fiber(SymbolId z) const {
        if (!z_.contains_id(z)) throw UnknownSymbol("Z-symbol id out of range");
        return fibers_[z];
    }

    const std::vector<SymbolId>& assignment() const { return tau_; }

    friend bool operator==(const TransitionMap& a, const TransitionMap& b) {
        return a.s_ == b.s_ && a.z_ == b.z_ && a.tau_ == b.tau_;
    }

private:
    SymbolSet s_;
    SymbolSet z_;
    std::vector<SymbolId> tau_;
    std::vector<std::vector<SymbolId>> fibers_;
};

using TmPtr = std::shared_ptr<const TransitionMap>;

inline bool same_transition_map(const TmPtr& a, const TmPtr& b) {
    return a == b || (a && b && *a == *b);
}

/// Validated construction from symbol names and (S-symbol, Z-symbol) pairs.
inline TmPtr new_transition_map(std::vector<std::string> s_symbols,
                                std::vector<std::string> z_symbols,
                                const std::vector<std::pair<std::string, std::string>>& pairs) {
    SymbolSet s(std::move(s_symbols));
    SymbolSet z(std::move(z_symbols));
    std::vector<SymbolId> tau(s.size(), -1);
    for (const auto& [sn, zn] : pairs) {
        SymbolId si = s.id(sn);
        SymbolId zi = z.id(zn);
        if (tau[si] != -1)
            throw DuplicateSymbol("S-symbol \"" + sn + "\" assigned twice");
        tau[si] = zi;
    }
    for (SymbolId si = 0; si < s.size(); ++si)
        if (tau[si] == -1)
            throw NotTotal("S-symbol \"" + s.name(si) + "\" unassigned");
    return std::make_shared<TransitionMap>(std::move(s), std::move(z), std::move(tau));
}

inline const std::vector<SymbolId>& fiber(const TmPtr& tm, SymbolId z) {
    return tm->fiber(z);
}

/// Product map: S = S1 x S2, Z = Z1 x Z2, tau(s1,s2) = (tau1 s1, tau2 s2).
/// Pair symbols are serialized "s1|s2" so product systems stay printable and
/// re-parsable.
inline TmPtr product_transition(const TmPtr& a, const TmPtr& b) {
    std::vector<std::string> s_names;
    std::vector<std::string> z_names;
    for (const auto& n1 : a->s_alphabet().names())
        for (const auto& n2 : b->s_alphabet().names()) s_names.push_back(n1 + "|" + n2);
    for (const auto& n1 : a->z_alphabet().names())
        for (const auto& n2 : b->z_alphabet().names()) z_names.push_back(n1 + "|" + n2);
    const int ns2 = b->s_alphabet().size();
    const int nz2 = b->z_alphabet().size();
    std::vector<SymbolId> tau(s_names.size());
    for (SymbolId i1 = 0; i1 < a->s_alphabet().size(); ++i1)
        for (SymbolId i2 = 0; i2 < ns2; ++i2)
            tau[i1 * ns2 + i2] = a->tau(i1) * nz2 + b->tau(i2);
    return std::make_shared<TransitionMap>(SymbolSet(std::move(s_names)),
                                           SymbolSet(std::move(z_names)), std::move(tau));
}

// Word <-> text. Single-character alphabets print concatenated ("103112");
// alphabets with any multi-character name print comma-separated.
inline std::string format_word(const SymbolSet& set, const Word& w) {
    bool single = true;
    for (const auto& n : set.names())
        if (n.size() != 1) single = false;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i > 0) out += ",";
        out += set.name(w[i]);
    }
    return out;
}

inline Word parse_word(const SymbolSet& set, const std::string& text) {
    Word w;
    if (text.empty()) return w;
    if (text.find(',') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            w.push_back(set.id(text.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return w;
    }
    bool chars_ok = true;
    for (char c : text)
        if (!set.contains(std::string(1, c))) chars_ok = false;
    if (chars_ok) {
        for (char c : text) w.push_back(set.id(std::string(1, c)));
        return w;
    }
    w.push_back(set.id(text));  // whole text as one symbol
    return w;
}

}  // namespace zipshift
