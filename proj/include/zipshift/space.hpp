#pragma once

#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "point.hpp"
#include "rational.hpp"

namespace zipshift {

/// The metric space (Sigma, d) with d(x,y) = lambda^-M(x,y), lambda = #S,
/// together with the dynamics sigma_tau.
struct System {
    TmPtr tm;
    int lambda() const { return tm->s_alphabet().size(); }
};

inline System make_system(TmPtr tm) {
    if (!tm) throw Error("system needs a transition map");
    return System{std::move(tm)};
}

/// Enumeration guards for the brute-force operations. Exceeding a cap is an
/// explicit CapExceeded, never silent truncation.
struct Caps {
    unsigned long long enumeration = 1000000;
    int cylinder_span = 12;
};

// ---------------------------------------------------------------------------
// Cylinders

/// Clopen set of all points matching prescribed symbols at prescribed
/// indices (Z-symbols at negative indices, S-symbols at nonnegative ones).
struct Cylinder {
    TmPtr tm;
    std::map<long long, SymbolId> constraints;
};

inline Cylinder make_cylinder(TmPtr tm,
                              const std::vector<std::pair<long long, SymbolId>>& cs) {
    Cylinder c{std::move(tm), {}};
    for (auto [i, s] : cs) {
        const SymbolSet& set = i < 0 ? c.tm->z_alphabet() : c.tm->s_alphabet();
        if (!set.contains_id(s)) throw AlphabetViolation("cylinder symbol out of range");
        if (!c.constraints.emplace(i, s).second && c.constraints[i] != s)
            throw Error("contradictory cylinder constraints");
    }
    return c;
}

inline bool in_cylinder(const Point& p, const Cylinder& c) {
    if (!same_transition_map(p.tm(), c.tm))
        throw AlphabetMismatch("point and cylinder over different transition maps");
    for (auto [i, s] : c.constraints)
        if (p.at(i) != s) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Metric

namespace detail {

inline long long right_search_bound(const Point& p, const Point& q) {
    long long t = std::max(p.right_transient().size(), q.right_transient().size());
    long long l = std::lcm<long long>(p.right_period().size(), q.right_period().size());
    return t + l;
}

inline long long left_search_bound(const Point& p, const Point& q) {
    long long t = std::max(p.left_transient().size(), q.left_transient().size());
    long long l = std::lcm<long long>(p.left_period().size(), q.left_period().size());
    return t + l;
}

}  // namespace detail

/// Least i >= 0 with p_i != q_i, if any. Exact: past the transients both
/// sides are periodic, so agreement through transient+lcm decides agreement
/// everywhere on the right.
inline std::optional<long long> first_right_disagreement(const Point& p, const Point& q) {
    const long long bound = detail::right_search_bound(p, q);
    for (long long i = 0; i <= bound; ++i)
        if (p.at(i) != q.at(i)) return i;
    return std::nullopt;
}

/// Least m >= 1 with p_{-m} != q_{-m}, if any.
inline std::optional<long long> first_left_disagreement(const Point& p, const Point& q) {
    const long long bound = detail::left_search_bound(p, q);
    for (long long m = 1; m <= bound; ++m)
        if (p.at(-m) != q.at(-m)) return m;
    return std::nullopt;
}

/// M(p,q) = min{ |i| : p_i != q_i }, nullopt (= infinity) iff p = q.
inline std::optional<long long> first_disagreement(const System& sys, const Point& p,
                                                   const Point& q) {
    if (!same_transition_map(p.tm(), q.tm()) || !same_transition_map(p.tm(), sys.tm))
        throw AlphabetMismatch("first_disagreement: mismatched transition maps");
    if (p.same_word(q)) return std::nullopt;
    auto r = first_right_disagreement(p, q);
    auto l = first_left_disagreement(p, q);
    if (!r && !l) throw Error("internal: distinct points with no disagreement");
    if (!r) return *l;
    if (!l) return *r;
    return std::min(*r, *l);
}

/// d(p,q) = lambda^-M as an exact rational; 0 iff p = q.
inline Rational distance(const System& sys, const Point& p, const Point& q) {
    auto m = first_disagreement(sys, p, q);
    if (!m) return Rational(0);
    return inv_power(static_cast<unsigned>(sys.lambda()), static_cast<unsigned>(*m));
}

// ---------------------------------------------------------------------------
// Dynamics

/// sigma_tau: indices slide left by one; the S-symbol crossing index 0 is
/// compressed through tau into the past.
inline Point shift(const System& sys, const Point& p) {
    auto [r, per] = detail::tail_from(p.right_transient(), p.right_period(), 1);
    Word t = p.left_transient();
    t.push_back(sys.tm->tau(p.at(0)));
    return Point(p.tm(), p.left_period(), std::move(t), std::move(r), std::move(per));
}

namespace detail {

/// The unique preimage of p whose index-0 symbol is s (s must lie in
/// fiber(p_{-1})).
inline Point preimage_with(const Point& p, SymbolId s) {
    Word lper = p.left_period();
    Word ltr = p.left_transient();
    if (!ltr.empty()) {
        ltr.pop_back();
    } else {
        ltr = lper;
        ltr.pop_back();  // ...LLL minus its last symbol
    }
    Word rtr = p.right_transient();
    rtr.insert(rtr.begin(), s);
    return Point(p.tm(), std::move(lper), std::move(ltr), std::move(rtr), p.right_period());
}

}  // namespace detail

/// All sigma_tau-preimages of p: one per symbol of fiber(p_{-1}), ascending.
/// Distinct preimages differ exactly at index 0, so they are at distance 1.
inline std::vector<Point> preimages(const System& sys, const Point& p) {
    std::vector<Point> out;
    for (SymbolId s : sys.tm->fiber(p.at(-1))) out.push_back(detail::preimage_with(p, s));
    return out;
}

inline Point iterate(const System& sys, const Point& p, long long n) {
    if (n < 0) throw Error("iterate: n must be nonnegative");
    Point cur = p;
    for (long long i = 0; i < n; ++i) cur = shift(sys, cur);
    return cur;
}

/// Inverse-branch selector for backward iteration: given the step number,
/// the current point and the fiber of its index -1 symbol, return the
/// S-symbol to prepend. Returning a symbol outside the fiber is InvalidChoice.
using BranchChooser =
    std::function<SymbolId(int step, const Point& current, const std::vector<SymbolId>& fib)>;

/// Always pick the j-th fiber element (j taken mod fiber size).
inline BranchChooser choose_fiber_index(int j) {
    return [j](int, const Point&, const std::vector<SymbolId>& fib) {
        return fib[static_cast<std::size_t>(j) % fib.size()];
    };
}

/// Cycle through fiber elements by step.
inline BranchChooser choose_cycling() {
    return [](int step, const Point&, const std::vector<SymbolId>& fib) {
        return fib[static_cast<std::size_t>(step) % fib.size()];
    };
}

/// Always answer the same S-symbol.
inline BranchChooser choose_symbol(SymbolId s) {
    return [s](int, const Point&, const std::vector<SymbolId>&) { return s; };
}

/// Consume an explicit list, one symbol per step.
inline BranchChooser choose_list(std::vector<SymbolId> symbols) {
    return [symbols = std::move(symbols)](int step, const Point&,
                                          const std::vector<SymbolId>&) {
        if (step >= static_cast<int>(symbols.size()))
            throw InvalidChoice("branch list exhausted at step " + std::to_string(step));
        return symbols[static_cast<std::size_t>(step)];
    };
}

/// n-fold inverse with recorded choices; shift^n(iterate_back(p,n,c)) = p.
inline Point iterate_back(const System& sys, const Point& p, long long n,
                          const BranchChooser& chooser) {
    if (n <= 0) throw Error("iterate_back: n must be positive");
    Point cur = p;
    for (long long step = 0; step < n; ++step) {
        const auto& fib = sys.tm->fiber(cur.at(-1));
        SymbolId s = chooser(static_cast<int>(step), cur, fib);
        if (std::find(fib.begin(), fib.end(), s) == fib.end())
            throw InvalidChoice("chooser returned symbol outside the fiber");
        cur = detail::preimage_with(cur, s);
    }
    return cur;
}

// ---------------------------------------------------------------------------
// S-expansivity witnesses

/// Separation evidence for a distinct pair: after |time| iterates (forward
/// when time >= 0, inverse branches when time < 0) the pair is more than 1/2
/// apart. branch_universal marks backward witnesses that hold for every
/// composition of inverse branches of both points.
struct SeparationWitness {
    long long time = 0;
    Rational distance;
    bool branch_universal = false;
};

/*
 * Minimal |n| with d(sigma^n p, sigma^n q) > 1/2. Distances are powers of
 * 1/lambda, so d > 1/2 means d = 1, i.e. a disagreement sitting at index 0.
 * Forward: after i shifts the first right disagreement reaches index 0 and
 * the witness distance is exactly 1. Backward: after m inverse steps index 0
 * carries a fiber lift of the old index -m symbols; distinct Z-symbols have
 * disjoint fibers, so when p_{-m} != q_{-m} every branch choice separates to
 * distance 1. Ties prefer the forward witness.
 */
inline SeparationWitness separation_time(const System& sys, const Point& p, const Point& q) {
    if (!same_transition_map(p.tm(), q.tm()) || !same_transition_map(p.tm(), sys.tm))
        throw AlphabetMismatch("separation_time: mismatched transition maps");
    if (p.same_word(q)) throw EqualPoints("separation_time needs distinct points");
    auto fr = first_right_disagreement(p, q);
    auto fl = first_left_disagreement(p, q);
    if (fr && (!fl || *fr <= *fl)) return SeparationWitness{*fr, Rational(1), false};
    return SeparationWitness{-*fl, Rational(1), true};
}

namespace detail {

/// Worst-case disagreement radius over all inverse-branch compositions of
/// length m applied to p and q independently: the adversary copies branch
/// choices wherever the source Z-symbols agree, so only genuine Z
/// disagreements (and the untouched outer coordinates) survive.
inline std::optional<long long> universal_backward_radius(const Point& p, const Point& q,
                                                          long long m) {
    std::optional<long long> best;
    auto consider = [&](long long v) {
        if (!best || v < *best) best = v;
    };
    // lifted region: new index t in [0, m-1] is forced iff p,q differ at -(m-t)
    for (long long j = m; j >= 1; --j)
        if (p.at(-j) != q.at(-j)) {
            consider(m - j);
            break;  // larger j gives smaller t, scan from the outside in
        }
    if (auto fr = first_right_disagreement(p, q)) consider(m + *fr);
    // left coordinates slide outward by m
    const long long bound = left_search_bound(p, q) + m;
    for (long long j = m + 1; j <= bound; ++j)
        if (p.at(-j) != q.at(-j)) {
            consider(j - m);
            break;
        }
    return best;
}

}  // namespace detail

/*
 * Separation witness for the k-th power map sigma^k: minimal |n| with
 * d(sigma^{kn} p, sigma^{kn} q) > lambda^-k (backward steps branch-universal).
 * The threshold is the power map's own expansivity margin: a first
 * disagreement at radius r reaches the window [-(k-1), k-1] after
 * floor(r/k) power steps, so a witness always exists and satisfies
 * |n_power| <= |n_base| <= k |n_power| + (k-1). For k = 1 the condition
 * "d > lambda^-1" coincides with "d > 1/2" and this is separation_time.
 * (At threshold 1/2 the witness need not exist at all: a pair differing only
 * at odd indices never separates past 1/2 under sigma^2.)
 */
inline SeparationWitness power_separation(const System& sys, const Point& p, const Point& q,
                                          int k) {
    if (k < 1) throw Error("power_separation: k must be >= 1");
    if (!same_transition_map(p.tm(), q.tm()) || !same_transition_map(p.tm(), sys.tm))
        throw AlphabetMismatch("power_separation: mismatched transition maps");
    if (p.same_word(q)) throw EqualPoints("power_separation needs distinct points");

    auto fr = first_right_disagreement(p, q);
    auto fl = first_left_disagreement(p, q);
    const long long r = std::min(fr ? *fr : std::numeric_limits<long long>::max(),
                                 fl ? *fl : std::numeric_limits<long long>::max());
    const unsigned lambda = static_cast<unsigned>(sys.lambda());

    Point cur_p = p, cur_q = q;
    for (long long n_abs = 0; n_abs <= r / k + 2; ++n_abs) {
        if (n_abs > 0)
            for (int i = 0; i < k; ++i) {
                cur_p = shift(sys, cur_p);
                cur_q = shift(sys, cur_q);
            }
        auto m_fwd = first_disagreement(sys, cur_p, cur_q);
        if (m_fwd && *m_fwd <= k - 1)
            return SeparationWitness{n_abs, inv_power(lambda, static_cast<unsigned>(*m_fwd)),
                                     false};
        if (n_abs > 0) {
            auto m_bwd = detail::universal_backward_radius(p, q, k * n_abs);
            if (m_bwd && *m_bwd <= k - 1)
                return SeparationWitness{-n_abs,
                                         inv_power(lambda, static_cast<unsigned>(*m_bwd)), true};
        }
    }
    throw Error("power_separation: no witness found (unreachable for distinct points)");
}

// ---------------------------------------------------------------------------
// Periodic points, density, transitivity, mixing, sensitivity

/*
 * All points with shift^k(p) = p: exactly the points whose right tail is
 * w^inf for a word w of length k and whose left tail is the tau-image of the
 * periodic extension, x_{-j} = tau(w[-j mod k]). lambda^k points, pairwise
 * distinct.
 */
inline std::vector<Point> periodic_points(const System& sys, int k, const Caps& caps = {}) {
    if (k < 1) throw Error("periodic_points: k must be >= 1");
    const int n = sys.lambda();
    BigInt total = int_pow(BigInt(n), static_cast<unsigned>(k));
    if (total > BigInt(caps.enumeration))
        throw CapExceeded("periodic_points: lambda^k exceeds enumeration cap");
    std::vector<Point> out;
    Word w(static_cast<std::size_t>(k), 0);
    while (true) {
        Word left(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) left[i] = sys.tm->tau(w[i]);
        out.push_back(Point(sys.tm, std::move(left), {}, {}, w));
        // odometer
        int pos = k - 1;
        while (pos >= 0 && w[static_cast<std::size_t>(pos)] == n - 1) {
            w[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++w[static_cast<std::size_t>(pos)];
    }
    return out;
}

/*
 * A periodic point inside the cylinder: lift Z-constraints through tau
 * (lowest fiber symbol), fill free slots with the lowest S-symbol, and repeat
 * the resulting window as one period. Deterministic.
 */
inline std::pair<Point, int> density_witness(const System& sys, const Cylinder& c, int k_max,
                                             const Caps& caps = {}) {
    if (c.constraints.empty()) {
        Word w{0};
        Word left{sys.tm->tau(0)};
        return {Point(sys.tm, std::move(left), {}, {}, std::move(w)), 1};
    }
    const long long lo = c.constraints.begin()->first;
    const long long hi = c.constraints.rbegin()->first;
    const long long m = hi - lo + 1;
    if (m > caps.cylinder_span) throw CapExceeded("density_witness: cylinder span over cap");
    if (m > k_max) throw CapExceeded("density_witness: needed period exceeds k_max");
    Word v(static_cast<std::size_t>(m), 0);
    for (auto [i, sym] : c.constraints) {
        auto slot = static_cast<std::size_t>(i - lo);
        v[slot] = i >= 0 ? sym : sys.tm->fiber(sym).front();
    }
    Word w(static_cast<std::size_t>(m));
    for (long long j = 0; j < m; ++j)
        w[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(((j - lo) % m + m) % m)];
    Word left(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) left[i] = sys.tm->tau(w[i]);
    Point p(sys.tm, std::move(left), {}, {}, std::move(w));
    if (!in_cylinder(p, c)) throw Error("internal: density witness misses its cylinder");
    return {p, static_cast<int>(m)};
}

namespace detail {

/// Shortlex concatenation of all S-words of lengths 1, 2, ...: the right tail
/// of the transitive point. Emits whole length-sections until >= min_len.
inline Word transitive_stream(int nsym, long long min_len, const Caps& caps) {
    Word out;
    for (int len = 1; static_cast<long long>(out.size()) < min_len; ++len) {
        BigInt section = BigInt(len) * int_pow(BigInt(nsym), static_cast<unsigned>(len));
        if (BigInt(out.size()) + section > BigInt(caps.enumeration))
            throw CapExceeded("transitive stream exceeds enumeration cap");
        Word w(static_cast<std::size_t>(len), 0);
        while (true) {
            out.insert(out.end(), w.begin(), w.end());
            int pos = len - 1;
            while (pos >= 0 && w[static_cast<std::size_t>(pos)] == nsym - 1) {
                w[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++w[static_cast<std::size_t>(pos)];
        }
    }
    return out;
}

inline long long shortlex_length_through(int nsym, int max_len) {
    long long total = 0, power = 1;
    for (int l = 1; l <= max_len; ++l) {
        power *= nsym;
        total += static_cast<long long>(l) * power;
    }
    return total;
}

/// Every cylinder whose constraint window sits inside [-d, d]; each index is
/// either unconstrained or pinned to one symbol.
inline std::vector<Cylinder> enumerate_cylinders(const System& sys, int d, const Caps& caps) {
    const int nz = sys.tm->z_alphabet().size();
    const int ns = sys.lambda();
    BigInt count = 1;
    for (long long i = -d; i <= d; ++i) count *= (i < 0 ? nz : ns) + 1;
    if (count > BigInt(caps.enumeration))
        throw CapExceeded("cylinder enumeration exceeds cap");
    std::vector<Cylinder> out;
    std::vector<std::pair<long long, SymbolId>> current;
    std::function<void(long long)> rec = [&](long long i) {
        if (i > d) {
            out.push_back(make_cylinder(sys.tm, current));
            return;
        }
        rec(i + 1);  // unconstrained
        const int n = i < 0 ? nz : ns;
        for (SymbolId s = 0; s < n; ++s) {
            current.emplace_back(i, s);
            rec(i + 1);
            current.pop_back();
        }
    };
    rec(-d);
    return out;
}

}  // namespace detail

/// Finite right-side window of the transitive point (shortlex concatenation
/// of all S-words by length), long enough that every cylinder with window in
/// [-D, D] is hit by some forward shift.
inline Window transitive_window(const System& sys, int depth, const Caps& caps = {}) {
    const long long need =
        detail::shortlex_length_through(sys.lambda(), 2 * depth + 1) + 2 * depth + 2;
    Word stream = detail::transitive_stream(sys.lambda(), need, caps);
    return Window{sys.tm, 0, std::move(stream)};
}

/// Check the transitivity certificate: every cylinder with window in [-D, D]
/// is entered by some forward shift of the stream point. For shift n the
/// window reads stream[n-j] through tau on the negative side.
inline bool verify_transitive(const System& sys, int depth, const Caps& caps = {}) {
    Window win = transitive_window(sys, depth, caps);
    const Word& x = win.symbols;
    const long long len = static_cast<long long>(x.size());
    auto cyls = detail::enumerate_cylinders(sys, depth, caps);
    for (const Cylinder& c : cyls) {
        bool hit = false;
        for (long long n = depth; n + depth < len && !hit; ++n) {
            bool ok = true;
            for (auto [i, s] : c.constraints) {
                if (i >= 0) {
                    if (x[static_cast<std::size_t>(n + i)] != s) ok = false;
                } else {
                    if (sys.tm->tau(x[static_cast<std::size_t>(n + i)]) != s) ok = false;
                }
                if (!ok) break;
            }
            hit = ok;
        }
        if (!hit) return false;
    }
    return true;
}

/// A point of U whose n-th shift lies in V, if one exists. Merges U's
/// constraints with V's shifted back by n; a V-constraint at a negative index
/// that crosses into S-territory relaxes to the tau-fiber.
inline std::optional<Point> mixing_certificate(const System& sys, const Cylinder& u,
                                               const Cylinder& v, long long n) {
    std::map<long long, std::vector<SymbolId>> allowed;
    auto restrict_to = [&](long long idx, std::vector<SymbolId> opts) -> bool {
        auto it = allowed.find(idx);
        if (it == allowed.end()) {
            allowed.emplace(idx, std::move(opts));
            return true;
        }
        std::vector<SymbolId> merged;
        for (SymbolId s : it->second)
            if (std::find(opts.begin(), opts.end(), s) != opts.end()) merged.push_back(s);
        it->second = std::move(merged);
        return !it->second.empty();
    };
    for (auto [i, s] : u.constraints)
        if (!restrict_to(i, {s})) return std::nullopt;
    for (auto [i, s] : v.constraints) {
        const long long idx = i + n;  // sigma^n(p)_i is p_{i+n} away from the seam
        if (i >= 0) {
            if (!restrict_to(idx, {s})) return std::nullopt;
        } else if (idx >= 0) {
            if (!restrict_to(idx, sys.tm->fiber(s))) return std::nullopt;
        } else {
            if (!restrict_to(idx, {s})) return std::nullopt;
        }
    }
    long long lo = 0, hi = -1;
    if (!allowed.empty()) {
        lo = std::min<long long>(allowed.begin()->first, 0);
        hi = std::max<long long>(allowed.rbegin()->first, -1);
    }
    Word ltr(static_cast<std::size_t>(-lo), 0);
    Word rtr(static_cast<std::size_t>(hi + 1), 0);
    for (auto& [idx, opts] : allowed) {
        if (idx < 0)
            ltr[static_cast<std::size_t>(idx - lo)] = opts.front();
        else
            rtr[static_cast<std::size_t>(idx)] = opts.front();
    }
    Point p(sys.tm, Word{0}, std::move(ltr), std::move(rtr), Word{0});
    if (!in_cylinder(p, u) || !in_cylinder(iterate(sys, p, n), v)) return std::nullopt;
    return p;
}

/*
 * Least N such that sigma^n(U) meets V for every pair of depth-d cylinders
 * and every n >= N. For n >= 2d+1 the shifted V-constraints clear U's window
 * entirely, so feasibility is automatic; smaller n are decided pair by pair
 * by explicit point construction.
 */
inline int mixing_gap(const System& sys, int d, const Caps& caps = {}) {
    auto cyls = detail::enumerate_cylinders(sys, d, caps);
    const int bound = 2 * d + 1;
    BigInt work = BigInt(cyls.size()) * BigInt(cyls.size()) * bound;
    if (work > BigInt(caps.enumeration)) throw CapExceeded("mixing_gap work exceeds cap");
    int gap = 1;
    for (int n = 1; n <= bound; ++n) {
        bool all_ok = true;
        for (const Cylinder& u : cyls) {
            for (const Cylinder& v : cyls)
                if (!mixing_certificate(sys, u, v, n)) {
                    all_ok = false;
                    break;
                }
            if (!all_ok) break;
        }
        if (!all_ok) gap = n + 1;
    }
    if (gap > bound)
        throw Error("internal: mixing still failing at the structural bound 2d+1");
    return gap;
}

/// A point q agreeing with p on [-D, D] but separating to distance 1 after
/// D+1 shifts: flip the symbol at index D+1. Every cylinder neighborhood of p
/// contains such a q.
inline std::pair<Point, long long> sensitivity_witness(const System& sys, const Point& p,
                                                       int agreement_depth) {
    if (sys.lambda() < 2) throw Error("sensitivity needs at least two S-symbols");
    const long long idx = agreement_depth + 1;
    SymbolId cur = p.at(idx);
    SymbolId other = (cur + 1) % sys.lambda();
    return {with_symbol(p, idx, other), idx};
}

// ---------------------------------------------------------------------------
// Products

inline System product_system(const System& a, const System& b) {
    return System{product_transition(a.tm, b.tm)};
}

/// Pair two points coordinate-wise into the product system's alphabet.
inline Point product_point(const System& prod, const System& a, const System& b,
                           const Point& pa, const Point& pb) {
    const SymbolSet& ps = prod.tm->s_alphabet();
    const SymbolSet& pz = prod.tm->z_alphabet();
    auto pair_s = [&](long long i) {
        return ps.id(a.tm->s_alphabet().name(pa.at(i)) + "|" + b.tm->s_alphabet().name(pb.at(i)));
    };
    auto pair_z = [&](long long i) {
        return pz.id(a.tm->z_alphabet().name(pa.at(i)) + "|" + b.tm->z_alphabet().name(pb.at(i)));
    };
    const long long rt = static_cast<long long>(
        std::max(pa.right_transient().size(), pb.right_transient().size()));
    const long long rp =
        std::lcm<long long>(pa.right_period().size(), pb.right_period().size());
    Word rtr, rper;
    for (long long i = 0; i < rt; ++i) rtr.push_back(pair_s(i));
    for (long long i = rt; i < rt + rp; ++i) rper.push_back(pair_s(i));
    const long long lt = static_cast<long long>(
        std::max(pa.left_transient().size(), pb.left_transient().size()));
    const long long lp = std::lcm<long long>(pa.left_period().size(), pb.left_period().size());
    Word ltr, lper;
    for (long long i = -(lt + lp); i < -lt; ++i) lper.push_back(pair_z(i));
    for (long long i = -lt; i < 0; ++i) ltr.push_back(pair_z(i));
    return Point(prod.tm, std::move(lper), std::move(ltr), std::move(rtr), std::move(rper));
}

/// Max-coordinate metric on pairs, each coordinate under its own lambda.
inline Rational distance_max(const System& a, const Point& pa, const Point& qa,
                             const System& b, const Point& pb, const Point& qb) {
    return std::max(distance(a, pa, qa), distance(b, pb, qb));
}

}  // namespace zipshift
