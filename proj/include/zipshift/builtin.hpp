#pragma once

#include <string>
#include <vector>

#include "coding.hpp"
#include "rng.hpp"
#include "space.hpp"

namespace zipshift {

/// S = {0,1,2,3}, Z = {a,b}, tau(0)=tau(2)=a, tau(1)=tau(3)=b.
inline TmPtr example1_tm() {
    return new_transition_map({"0", "1", "2", "3"}, {"a", "b"},
                              {{"0", "a"}, {"1", "b"}, {"2", "a"}, {"3", "b"}});
}

/// S = {0,1,2}, Z = {a}, tau constant.
inline TmPtr example2_tm() {
    return new_transition_map({"0", "1", "2"}, {"a"}, {{"0", "a"}, {"1", "a"}, {"2", "a"}});
}

/// Full zip shift on lambda S-symbols with the even/odd two-letter past:
/// tau(i) = a for even i, b for odd. full(4) is the example1 map.
inline TmPtr full_tm(int lambda) {
    if (lambda < 2) throw Error("full_tm needs lambda >= 2");
    std::vector<std::string> s;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 0; i < lambda; ++i) {
        s.push_back(std::to_string(i));
        pairs.emplace_back(std::to_string(i), i % 2 == 0 ? "a" : "b");
    }
    return new_transition_map(std::move(s), {"a", "b"}, pairs);
}

inline System builtin_system(const std::string& name) {
    if (name == "example1") return make_system(example1_tm());
    if (name == "example2") return make_system(example2_tm());
    if (name.rfind("full", 0) == 0) {
        int lambda = std::stoi(name.substr(4));
        return make_system(full_tm(lambda));
    }
    throw Error("unknown builtin system \"" + name + "\"");
}

inline PwlMap builtin_map(const std::string& name) {
    if (name == "doubling") return doubling_map();
    if (name == "tripling") return tripling_map();
    throw Error("unknown builtin map \"" + name + "\"");
}

inline Partition builtin_partition(const std::string& name) {
    if (name == "halves") return halves();
    if (name == "thirds") return thirds();
    if (name == "quarters") return quarters();
    if (name == "none" || name == "whole") return whole();
    throw Error("unknown builtin refinement \"" + name + "\"");
}

/// Seeded random normal-form point with transient lengths <= 3 and period
/// lengths <= 3 (keeps disagreement search radii small).
inline Point random_point(const TmPtr& tm, Rng& rng) {
    const int nz = tm->z_alphabet().size();
    const int ns = tm->s_alphabet().size();
    auto word = [&](int len, int n) {
        Word w(static_cast<std::size_t>(len));
        for (auto& s : w) s = static_cast<SymbolId>(rng.below(static_cast<std::uint64_t>(n)));
        return w;
    };
    return Point(tm, word(1 + static_cast<int>(rng.below(3)), nz),
                 word(static_cast<int>(rng.below(4)), nz),
                 word(static_cast<int>(rng.below(4)), ns),
                 word(1 + static_cast<int>(rng.below(3)), ns));
}

inline std::pair<Point, Point> random_distinct_pair(const TmPtr& tm, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Point p = random_point(tm, rng);
        Point q = random_point(tm, rng);
        if (!p.same_word(q)) return {p, q};
    }
    throw Error("could not draw a distinct pair (alphabet too small?)");
}

}  // namespace zipshift
