#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "errors.hpp"

namespace zipshift {

namespace detail {

/// Length of the primitive root of w (smallest d | n with w = root^(n/d)).
inline int primitive_root_len(const Word& w) {
    const int n = static_cast<int>(w.size());
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (int i = d; i < n && ok; ++i) ok = (w[i] == w[i - d]);
        if (ok) return d;
    }
    return n;
}

/*
 * Normal form of the right-infinite word  transient . period period ...
 * 1. shrink period to its primitive root;
 * 2. absorb: while the transient's last symbol equals the period's last
 *    symbol, drop it and rotate the period right by one. Each step rewrites
 *    R'a (Qa)^inf as R' (aQ)^inf, the same infinite word, so the loop reaches
 *    the unique minimal transient and the rotation pinned by its break point.
 * Rotations of a primitive word are primitive, so step 1 stays valid.
 */
inline void normalize_tail(Word& transient, Word& period) {
    period.resize(primitive_root_len(period));
    while (!transient.empty() && transient.back() == period.back()) {
        transient.pop_back();
        std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
}

/// Same, for the left-infinite word ... period period transient (transient
/// adjacent to index 0). Reduced to normalize_tail by reversing.
inline void normalize_left(Word& period, Word& transient) {
    std::reverse(transient.begin(), transient.end());
    std::reverse(period.begin(), period.end());
    normalize_tail(transient, period);
    std::reverse(transient.begin(), transient.end());
    std::reverse(period.begin(), period.end());
}

/// The word R.P^inf read from index k onward, as (transient, period).
inline std::pair<Word, Word> tail_from(const Word& transient, const Word& period, long long k) {
    const long long tl = static_cast<long long>(transient.size());
    if (k <= tl) return {Word(transient.begin() + k, transient.end()), period};
    long long r = (k - tl) % static_cast<long long>(period.size());
    Word rot = period;
    std::rotate(rot.begin(), rot.begin() + r, rot.end());
    return {Word{}, rot};
}

}  // namespace detail

/*
 * A point of the zip shift space: a bi-infinite word, eventually periodic on
 * both sides, with Z-symbols at indices < 0 and S-symbols at indices >= 0.
 *
 *    ... L L L T . R P P P ...
 *
 * left_period L repeats toward -inf, left_transient T sits at indices
 * -|T|..-1, right_transient R at 0..|R|-1, right_period P repeats toward
 * +inf. Points are kept in normal form (primitive periods, maximal
 * absorption), so structural equality coincides with pointwise equality.
 * Immutable; freely shareable.
 */
class Point {
public:
    Point(TmPtr tm, Word left_period, Word left_transient, Word right_transient,
          Word right_period)
        : tm_(std::move(tm)),
          lper_(std::move(left_period)),
          ltr_(std::move(left_transient)),
          rtr_(std::move(right_transient)),
          rper_(std::move(right_period)) {
        if (!tm_) throw Error("point needs a transition map");
        if (lper_.empty() || rper_.empty()) throw EmptyPeriod("periods must be nonempty");
        const int nz = tm_->z_alphabet().size();
        const int ns = tm_->s_alphabet().size();
        for (SymbolId s : lper_)
            if (s < 0 || s >= nz) throw AlphabetViolation("left period symbol not in Z");
        for (SymbolId s : ltr_)
            if (s < 0 || s >= nz) throw AlphabetViolation("left transient symbol not in Z");
        for (SymbolId s : rtr_)
            if (s < 0 || s >= ns) throw AlphabetViolation("right transient symbol not in S");
        for (SymbolId s : rper_)
            if (s < 0 || s >= ns) throw AlphabetViolation("right period symbol not in S");
        detail::normalize_left(lper_, ltr_);
        detail::normalize_tail(rtr_, rper_);
    }

    const TmPtr& tm() const { return tm_; }
    const Word& left_period() const { return lper_; }
    const Word& left_transient() const { return ltr_; }
    const Word& right_transient() const { return rtr_; }
    const Word& right_period() const { return rper_; }

    /// Symbol at any integer index; Z-symbol for i < 0, S-symbol for i >= 0.
    SymbolId at(long long i) const {
        if (i >= 0) {
            if (i < static_cast<long long>(rtr_.size())) return rtr_[i];
            long long j = (i - static_cast<long long>(rtr_.size())) %
                          static_cast<long long>(rper_.size());
            return rper_[j];
        }
        long long j = -i - 1;  // 0-based distance leftward from index -1
        if (j < static_cast<long long>(ltr_.size()))
            return ltr_[ltr_.size() - 1 - j];
        long long jj = (j - static_cast<long long>(ltr_.size())) %
                       static_cast<long long>(lper_.size());
        return lper_[lper_.size() - 1 - jj];
    }

    /// Same bi-infinite word, structurally (normal form makes this sound).
    bool same_word(const Point& o) const {
        return lper_ == o.lper_ && ltr_ == o.ltr_ && rtr_ == o.rtr_ && rper_ == o.rper_;
    }

private:
    TmPtr tm_;
    Word lper_, ltr_, rtr_, rper_;
};

inline Point make_point(const TmPtr& tm, Word left_period, Word left_transient,
                        Word right_transient, Word right_period) {
    return Point(tm, std::move(left_period), std::move(left_transient),
                 std::move(right_transient), std::move(right_period));
}

/// Convenience: words given as text over the respective alphabets.
inline Point make_point(const TmPtr& tm, const std::string& left_period,
                        const std::string& left_transient, const std::string& right_transient,
                        const std::string& right_period) {
    const SymbolSet& z = tm->z_alphabet();
    const SymbolSet& s = tm->s_alphabet();
    return Point(tm, parse_word(z, left_period), parse_word(z, left_transient),
                 parse_word(s, right_transient), parse_word(s, right_period));
}

inline SymbolId symbol_at(const Point& p, long long i) { return p.at(i); }

/// Point from a full S-sequence t: x_i = t_i for i >= 0 and x_i = tau(t_i)
/// for i < 0. Changing a negative-index t-symbol within its tau-fiber leaves
/// the result unchanged.
inline Point project_full_sequence(const TmPtr& tm, const Word& s_left_period,
                                   const Word& s_left_transient, Word right_transient,
                                   Word right_period) {
    const int ns = tm->s_alphabet().size();
    auto mapped = [&](const Word& w) {
        Word out;
        out.reserve(w.size());
        for (SymbolId s : w) {
            if (s < 0 || s >= ns) throw AlphabetViolation("sequence symbol not in S");
            out.push_back(tm->tau(s));
        }
        return out;
    };
    return Point(tm, mapped(s_left_period), mapped(s_left_transient),
                 std::move(right_transient), std::move(right_period));
}

inline bool equals(const Point& p, const Point& q) {
    if (!same_transition_map(p.tm(), q.tm()))
        throw AlphabetMismatch("points over different transition maps");
    return p.same_word(q);
}

/// Finite observation of a point (or, in the coding module, a symbolic
/// output): contiguous symbols at indices lo..lo+len-1.
struct Window {
    TmPtr tm;
    long long lo = 0;
    Word symbols;

    long long hi() const { return lo + static_cast<long long>(symbols.size()) - 1; }
    SymbolId at(long long i) const {
        if (i < lo || i > hi()) throw Error("window index out of range");
        return symbols[static_cast<std::size_t>(i - lo)];
    }
};

inline Window window_of(const Point& p, long long lo, long long hi) {
    if (lo > hi) throw Error("window_of: lo > hi");
    Window w;
    w.tm = p.tm();
    w.lo = lo;
    w.symbols.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long long i = lo; i <= hi; ++i) w.symbols.push_back(p.at(i));
    return w;
}

/// Copy of p with the symbol at index i replaced (alphabet checked by sign).
inline Point with_symbol(const Point& p, long long i, SymbolId s) {
    Word lper = p.left_period(), ltr = p.left_transient();
    Word rtr = p.right_transient(), rper = p.right_period();
    if (i >= 0) {
        while (static_cast<long long>(rtr.size()) <= i)
            rtr.push_back(rper[(rtr.size() - p.right_transient().size()) % rper.size()]);
        rtr[static_cast<std::size_t>(i)] = s;
    } else {
        // prepend whole periods until the transient covers index i
        while (static_cast<long long>(ltr.size()) < -i)
            ltr.insert(ltr.begin(), lper.begin(), lper.end());
        ltr[static_cast<std::size_t>(static_cast<long long>(ltr.size()) + i)] = s;
    }
    return Point(p.tm(), std::move(lper), std::move(ltr), std::move(rtr), std::move(rper));
}

}  // namespace zipshift
