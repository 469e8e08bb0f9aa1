#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "interval.hpp"
#include "point.hpp"
#include "space.hpp"

namespace zipshift {

// ---------------------------------------------------------------------------
// Piecewise-linear full-branch maps on [0,1)

struct Branch {
    Interval domain;  // open
    Rational slope;   // nonzero
    Rational offset;

    Rational apply(const Rational& x) const { return Rational(slope * x + offset); }
    Rational invert(const Rational& y) const { return Rational((y - offset) / slope); }

    Interval image(const Interval& i) const {
        Rational a = apply(i.lo), b = apply(i.hi);
        if (slope > 0) return {a, b, i.lo_closed, i.hi_closed};
        return {b, a, i.hi_closed, i.lo_closed};
    }

    /// {x in closure(domain) : f(x) in i}, i.e. the branch inverse applied to i.
    Interval preimage(const Interval& i) const {
        Rational a = invert(i.lo), b = invert(i.hi);
        if (slope > 0) return {a, b, i.lo_closed, i.hi_closed};
        return {b, a, i.hi_closed, i.lo_closed};
    }
};

/// Expanding-style interval map with affine branches: open pairwise disjoint
/// domains whose closures cover [0,1], each branch mapping its domain onto
/// (0,1) bijectively (the principal-domain condition).
class PwlMap {
public:
    explicit PwlMap(std::vector<Branch> branches) : branches_(std::move(branches)) {
        if (branches_.empty()) throw Error("map needs at least one branch");
        std::sort(branches_.begin(), branches_.end(),
                  [](const Branch& a, const Branch& b) { return a.domain.lo < b.domain.lo; });
        Rational prev(0);
        for (const Branch& b : branches_) {
            if (b.slope == 0) throw Error("branch slope must be nonzero");
            if (b.domain.lo != prev || b.domain.lo >= b.domain.hi)
                throw Error("branch domains must chain across [0,1]");
            prev = b.domain.hi;
            Interval img = b.image(b.domain);
            if (!(img.lo == 0 && img.hi == 1))
                throw NotFullBranch("branch image is not all of (0,1)");
        }
        if (prev != 1) throw Error("branch domains must chain across [0,1]");
    }

    const std::vector<Branch>& branches() const { return branches_; }
    int branch_count() const { return static_cast<int>(branches_.size()); }

    /// Index of the branch whose open domain contains x; nullopt on a domain
    /// boundary (the map is undefined there by construction).
    std::optional<int> branch_of(const Rational& x) const {
        for (int i = 0; i < branch_count(); ++i)
            if (branches_[static_cast<std::size_t>(i)].domain.contains(x)) return i;
        return std::nullopt;
    }

private:
    std::vector<Branch> branches_;
};

inline PwlMap doubling_map() {
    return PwlMap({Branch{Interval::open(Rational(0), Rational(1, 2)), Rational(2), Rational(0)},
                   Branch{Interval::open(Rational(1, 2), Rational(1)), Rational(2), Rational(-1)}});
}

inline PwlMap tripling_map() {
    return PwlMap({Branch{Interval::open(Rational(0), Rational(1, 3)), Rational(3), Rational(0)},
                   Branch{Interval::open(Rational(1, 3), Rational(2, 3)), Rational(3), Rational(-1)},
                   Branch{Interval::open(Rational(2, 3), Rational(1)), Rational(3), Rational(-2)}});
}

// ---------------------------------------------------------------------------
// Topological partitions of [0,1]: ordered open cells, pairwise disjoint,
// closures covering. Equivalently a chain of rational cut points.

struct Partition {
    std::vector<Interval> cells;  // open, ordered left to right

    int size() const { return static_cast<int>(cells.size()); }
    const Interval& cell(int i) const { return cells[static_cast<std::size_t>(i)]; }

    /// Index of the open cell containing x, nullopt on a cut point.
    std::optional<int> locate(const Rational& x) const {
        for (int i = 0; i < size(); ++i)
            if (cells[static_cast<std::size_t>(i)].contains(x)) return i;
        return std::nullopt;
    }
};

inline Partition partition_from_cuts(std::vector<Rational> cuts) {
    cuts.push_back(Rational(0));
    cuts.push_back(Rational(1));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.front() < 0 || cuts.back() > 1) throw Error("cut point outside [0,1]");
    Partition p;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        p.cells.push_back(Interval::open(cuts[i], cuts[i + 1]));
    return p;
}

inline std::vector<Rational> cuts_of(const Partition& p) {
    std::vector<Rational> cuts;
    for (const Interval& c : p.cells) {
        cuts.push_back(c.lo);
        cuts.push_back(c.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

inline Partition halves() { return partition_from_cuts({Rational(1, 2)}); }
inline Partition thirds() { return partition_from_cuts({Rational(1, 3), Rational(2, 3)}); }
inline Partition quarters() {
    return partition_from_cuts({Rational(1, 4), Rational(1, 2), Rational(3, 4)});
}
inline Partition whole() { return partition_from_cuts({}); }

/// The branch-domain partition; every cell maps onto (0,1) under its branch.
inline Partition principal_domains(const PwlMap& map) {
    Partition p;
    for (const Branch& b : map.branches()) p.cells.push_back(b.domain);
    return p;
}

/// Common refinement (cut-point union); refines both inputs.
inline Partition refine(const Partition& a, const Partition& b) {
    std::vector<Rational> cuts = cuts_of(a);
    auto cb = cuts_of(b);
    cuts.insert(cuts.end(), cb.begin(), cb.end());
    return partition_from_cuts(std::move(cuts));
}

/// Domain topological partition: principal domains refined by `extra`; each
/// cell sits inside one branch, so the map restricted to a cell is injective.
inline Partition build_dtp(const PwlMap& map, const Partition& extra) {
    return refine(principal_domains(map), extra);
}

namespace detail {

inline int branch_of_cell(const PwlMap& map, const Interval& cell) {
    Rational mid = Rational((cell.lo + cell.hi) / 2);
    auto b = map.branch_of(mid);
    if (!b || !cell.subset_of(map.branches()[static_cast<std::size_t>(*b)].domain.closure()))
        throw Error("partition cell is not inside a single branch domain");
    return *b;
}

}  // namespace detail

/// Image topological partition: the common refinement of the branch-images of
/// all DTP cells — a partition of [0,1) again.
inline Partition build_itp(const PwlMap& map, const Partition& dtp) {
    std::vector<Rational> cuts;
    for (const Interval& cell : dtp.cells) {
        const Branch& b = map.branches()[static_cast<std::size_t>(detail::branch_of_cell(map, cell))];
        Interval img = b.image(cell);
        cuts.push_back(img.lo);
        cuts.push_back(img.hi);
    }
    return partition_from_cuts(std::move(cuts));
}

/// Extended topological partition: preimages of the ITP cells inside each
/// branch domain. Always refines the principal domains.
inline Partition build_etp(const PwlMap& map, const Partition& itp) {
    std::vector<Rational> cuts;
    for (const Branch& b : map.branches()) {
        cuts.push_back(b.domain.lo);
        cuts.push_back(b.domain.hi);
        for (const Rational& c : cuts_of(itp)) {
            Rational pre = b.invert(c);
            if (pre >= b.domain.lo && pre <= b.domain.hi) cuts.push_back(pre);
        }
    }
    return partition_from_cuts(std::move(cuts));
}

// ---------------------------------------------------------------------------
// Coding scheme: partitions plus the derived alphabets and transition map

/// A concrete realization of the symbolic coding: S labels the ETP cells, Z
/// labels the ITP cells, tau sends each ETP cell to the ITP cell its branch
/// maps it onto.
struct CodingScheme {
    PwlMap map;
    Partition dtp;
    Partition itp;
    Partition etp;
    TmPtr tm;
    std::vector<int> cell_branch;  // ETP cell -> branch index
    std::vector<int> tau_hat;      // ETP cell -> ITP cell
};

namespace detail {

inline std::string z_label(int i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "z" + std::to_string(i);
}

}  // namespace detail

inline CodingScheme derive_zip_alphabets(const PwlMap& map, const Partition& etp,
                                         const Partition& itp) {
    std::vector<std::string> s_names;
    std::vector<std::string> z_names;
    for (int i = 0; i < etp.size(); ++i) s_names.push_back(std::to_string(i));
    for (int i = 0; i < itp.size(); ++i) z_names.push_back(detail::z_label(i));
    std::vector<int> cell_branch;
    std::vector<int> tau_hat;
    std::vector<SymbolId> tau;
    for (const Interval& cell : etp.cells) {
        int bi = detail::branch_of_cell(map, cell);
        Interval img = map.branches()[static_cast<std::size_t>(bi)].image(cell);
        int qi = -1;
        for (int q = 0; q < itp.size(); ++q)
            if (same_span(img, itp.cell(q))) qi = q;
        if (qi < 0)
            throw ImageMismatch("ETP cell image (" + to_frac(img.lo) + "," + to_frac(img.hi) +
                                ") is not a single ITP cell");
        cell_branch.push_back(bi);
        tau_hat.push_back(qi);
        tau.push_back(qi);
    }
    auto tm = std::make_shared<TransitionMap>(SymbolSet(std::move(s_names)),
                                              SymbolSet(std::move(z_names)), std::move(tau));
    return CodingScheme{map, etp, itp, etp, std::move(tm), std::move(cell_branch),
                        std::move(tau_hat)};
}

/// Full pipeline: DTP from the refinement, ITP from the DTP images, ETP from
/// the ITP preimages, then the alphabets.
inline CodingScheme make_coding_scheme(const PwlMap& map, const Partition& extra) {
    Partition dtp = build_dtp(map, extra);
    Partition itp = build_itp(map, dtp);
    Partition etp = build_etp(map, itp);
    CodingScheme scheme = derive_zip_alphabets(map, etp, itp);
    scheme.dtp = std::move(dtp);
    return scheme;
}

// ---------------------------------------------------------------------------
// Generator certificates

namespace detail {

/// Finite unions of open intervals, kept sorted and merged. Only what the
/// forward-image assertion in generator_diameter needs.
using IntervalUnion = std::vector<Interval>;

inline IntervalUnion normalize_union(IntervalUnion u) {
    std::sort(u.begin(), u.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    IntervalUnion out;
    for (const Interval& i : u) {
        if (i.empty()) continue;
        if (!out.empty() && i.lo <= out.back().hi) {
            if (i.hi > out.back().hi) out.back().hi = i.hi;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

inline IntervalUnion apply_map(const PwlMap& map, const IntervalUnion& u) {
    IntervalUnion out;
    for (const Branch& b : map.branches())
        for (const Interval& i : u) {
            Interval clipped = i.intersect(b.domain);
            if (!clipped.empty()) out.push_back(b.image(clipped));
        }
    return normalize_union(std::move(out));
}

}  // namespace detail

/*
 * Maximum cell diameter of the join of f^-n(partition) for n = 0..N, where
 * f^-n enumerates all branch-inverse compositions. The bilateral join of the
 * generator definition also carries forward-image terms f^+n; for full-branch
 * maps those are unions of intervals that either contain or miss every
 * backward cell, so they refine nothing. That claim is asserted here cell by
 * cell, not assumed.
 */
inline Rational generator_diameter(const PwlMap& map, const Partition& partition, int depth,
                                   const Caps& caps = {}) {
    if (depth < 0) throw Error("generator_diameter: depth must be >= 0");
    /*
     * Cuts are kept as integer numerators over a common denominator that
     * grows by a fixed factor per preimage level: with cut y = k/D and a
     * branch x -> (x - c)/s, the preimage is (k qc - pc D) qs / (D qc ps),
     * so multiplying D by lcm_b(qc |ps|) keeps every level integral. Exact
     * values, integer comparisons.
     */
    BigInt d0(1);
    auto absorb = [](BigInt& acc, const BigInt& d) { acc = boost::multiprecision::lcm(acc, d); };
    for (const Rational& c : cuts_of(partition)) absorb(d0, denominator(c));
    BigInt step(1);
    for (const Branch& b : map.branches()) {
        absorb(d0, denominator(Rational(b.domain.lo)));
        absorb(d0, denominator(Rational(b.domain.hi)));
        BigInt ps = numerator(b.slope) < 0 ? BigInt(-numerator(b.slope)) : numerator(b.slope);
        absorb(step, denominator(b.offset) * ps);
        absorb(d0, denominator(b.offset));
    }

    std::vector<std::vector<BigInt>> levels(1);
    BigInt den = d0;
    for (const Rational& c : cuts_of(partition))
        levels[0].push_back(numerator(c) * (d0 / denominator(c)));
    std::size_t total = levels[0].size();
    for (int n = 1; n <= depth; ++n) {
        const std::vector<BigInt>& prev = levels.back();
        std::vector<BigInt> next;
        next.reserve(prev.size() * map.branches().size() + 2 * map.branches().size());
        const BigInt next_den = den * step;
        for (const Branch& b : map.branches()) {
            const BigInt qc = denominator(b.offset);
            const BigInt pc = numerator(b.offset);
            const BigInt qs = denominator(b.slope);
            BigInt ps = numerator(b.slope);
            const bool neg = ps < 0;
            if (neg) ps = -ps;
            const BigInt scale = (step / (qc * ps)) * qs;
            const BigInt lo = numerator(b.domain.lo) * (next_den / denominator(b.domain.lo));
            const BigInt hi = numerator(b.domain.hi) * (next_den / denominator(b.domain.hi));
            next.push_back(lo);
            next.push_back(hi);
            for (const BigInt& k : prev) {
                BigInt num = (k * qc - pc * den) * scale;
                if (neg) num = -num;
                if (num >= lo && num <= hi) next.push_back(std::move(num));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        total += next.size();
        if (total > caps.enumeration)
            throw CapExceeded("generator join exceeds enumeration cap");
        levels.push_back(std::move(next));
        den = next_den;
    }
    // merge all levels over the final denominator
    std::vector<BigInt> join_nums;
    join_nums.reserve(total);
    BigInt scale_up(1);
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        for (const BigInt& k : *it) join_nums.push_back(k * scale_up);
        scale_up *= step;
    }
    std::sort(join_nums.begin(), join_nums.end());
    join_nums.erase(std::unique(join_nums.begin(), join_nums.end()), join_nums.end());

    // forward terms refine nothing: a join cell (an interval between
    // consecutive cuts) can only straddle an f^n(A) piece if that piece has
    // an endpoint strictly between two cuts, so it suffices that every
    // forward-image endpoint is itself a join cut
    auto is_cut = [&](const Rational& e) {
        if (den % denominator(e) != 0) return false;
        BigInt num = numerator(e) * (den / denominator(e));
        return std::binary_search(join_nums.begin(), join_nums.end(), num);
    };
    std::vector<detail::IntervalUnion> forward;
    for (const Interval& cell : partition.cells) forward.push_back({cell});
    for (int n = 1; n <= depth; ++n)
        for (auto& u : forward) {
            u = detail::apply_map(map, u);
            for (const Interval& piece : u)
                if (!is_cut(piece.lo) || !is_cut(piece.hi))
                    throw Error("forward image term would refine the backward join");
        }

    BigInt best(0);
    for (std::size_t i = 0; i + 1 < join_nums.size(); ++i)
        best = std::max(best, BigInt(join_nums[i + 1] - join_nums[i]));
    return Rational(best, den);
}

/*
 * A Lebesgue number for a finite open cover of [0,1]: every subinterval of
 * length < delta lies inside one element. Exact: on each segment between
 * activation points the reach H(x) - x is affine and left-continuous, so its
 * infimum sits at an activation point; segments whose best element already
 * sticks out past 1 impose no constraint. Capped at the ambient diameter 1.
 */
inline Rational lebesgue_number(const std::vector<Interval>& cover) {
    if (cover.empty()) throw NotACover("empty cover");
    auto reach = [&](const Rational& x) {
        // max hi over elements with lo < x
        Rational best(-1);
        bool found = false;
        for (const Interval& e : cover)
            if (e.lo < x && (!found || e.hi > best)) {
                best = e.hi;
                found = true;
            }
        if (!found) throw NotACover("point " + to_frac(x) + " is uncovered");
        return best;
    };
    if (reach(Rational(0)) <= 0) throw NotACover("0 is uncovered");
    std::vector<Rational> candidates{Rational(1)};
    for (const Interval& e : cover)
        if (e.lo > 0 && e.lo <= 1) candidates.push_back(e.lo);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    Rational delta(1);
    for (const Rational& x : candidates) {
        Rational h = reach(x);
        if (h <= x) throw NotACover("point " + to_frac(x) + " is uncovered");
        if (h <= 1) delta = std::min(delta, Rational(h - x));
    }
    return delta;
}

// ---------------------------------------------------------------------------
// Eilenberg preimage decomposition

/// The two constants of the local-homeomorphism decomposition: any set of
/// diameter < lambda_star pulls back to one component per branch, components
/// pairwise at least 2*mu apart. mu is half the exact worst-case component
/// distance over all admissible D (vertex enumeration of the (lo,hi)
/// polytope; the distance is a max of affines, so the minimum is at a
/// vertex). Folding maps (adjacent branches meeting in a common image value)
/// genuinely have mu = 0; full-branch maps with monotone branch layout get a
/// positive mu.
struct EilenbergConstants {
    Rational lambda_star;
    Rational mu;
};

inline EilenbergConstants eilenberg_constants(const PwlMap& map) {
    Rational lambda_star(1, 2);
    Rational min_dist(1);
    const auto& bs = map.branches();
    std::vector<std::pair<Rational, Rational>> vertices = {
        {Rational(0), Rational(0)},
        {Rational(0), lambda_star},
        {Rational(1) - lambda_star, Rational(1)},
        {Rational(1), Rational(1)}};
    for (std::size_t a = 0; a < bs.size(); ++a)
        for (std::size_t b = a + 1; b < bs.size(); ++b)
            for (const auto& [lo, hi] : vertices) {
                Interval d = Interval::closed(lo, hi);
                min_dist = std::min(min_dist,
                                    interval_distance(bs[a].preimage(d), bs[b].preimage(d)));
            }
    if (min_dist < 0) min_dist = 0;
    return EilenbergConstants{std::move(lambda_star), Rational(min_dist / 2)};
}

struct PreimageDecomposition {
    std::vector<Interval> components;  // one per branch, in branch order
    EilenbergConstants constants;
};

/// f^-1(D) for small D: the exact affine preimage inside every branch. Each
/// component maps bijectively back onto D; diameters are diam(D)/|slope|.
inline PreimageDecomposition decompose_preimage(const PwlMap& map, const Interval& d) {
    if (d.empty() || d.lo < 0 || d.hi > 1) throw Error("D must be a nonempty subset of [0,1]");
    EilenbergConstants constants = eilenberg_constants(map);
    if (d.diameter() >= constants.lambda_star)
        throw DiameterTooLarge("diam(D) = " + to_frac(d.diameter()) +
                               " is not below lambda_star = " + to_frac(constants.lambda_star));
    PreimageDecomposition out{{}, std::move(constants)};
    for (const Branch& b : map.branches()) out.components.push_back(b.preimage(d));
    return out;
}

// ---------------------------------------------------------------------------
// Itineraries and the factor map

/*
 * Symbolic window of a phase-space point. Forward: index n >= 0 holds the
 * S-label of the ETP cell containing f^n(x). Backward: index -k holds the
 * Z-label of the ITP cell containing the pre-orbit point p_{k-1}, with
 * p_0 = x and f(p_{j+1}) = p_j along the chosen branches; in particular
 * index -1 reads the ITP cell of x itself. That alignment is the one that
 * makes encoding exactly shift-equivariant: the cell of f(x) inside the ITP
 * is the tau-image of the cell of x inside the ETP.
 */
inline Window itinerary(const CodingScheme& scheme, const Rational& x,
                        const std::vector<int>& past, int fwd, int back) {
    if (fwd < 1) throw Error("itinerary: fwd must be >= 1");
    if (back < 0) throw Error("itinerary: back must be >= 0");
    if (static_cast<int>(past.size()) < back - 1)
        throw InvalidPastBranch("need at least back-1 branch choices");
    Word syms;
    // pre-orbit points p_0 = x, p_{k+1} = g_{past[k]}(p_k)
    std::vector<Rational> pre{x};
    for (int k = 0; k < back - 1; ++k) {
        int bi = past[static_cast<std::size_t>(k)];
        if (bi < 0 || bi >= scheme.map.branch_count())
            throw InvalidPastBranch("branch index out of range");
        pre.push_back(scheme.map.branches()[static_cast<std::size_t>(bi)].invert(pre.back()));
    }
    for (int k = back; k >= 1; --k) {
        auto q = scheme.itp.locate(pre[static_cast<std::size_t>(k - 1)]);
        if (!q)
            throw BoundaryHit("pre-orbit point " + to_frac(pre[static_cast<std::size_t>(k - 1)]) +
                              " lies on an ITP boundary");
        syms.push_back(*q);
    }
    Rational cur = x;
    for (int n = 0; n < fwd; ++n) {
        auto cell = scheme.etp.locate(cur);
        if (!cell) throw BoundaryHit("orbit point " + to_frac(cur) + " lies on an ETP boundary");
        syms.push_back(*cell);
        if (n + 1 < fwd)
            cur = scheme.map.branches()[static_cast<std::size_t>(
                                            scheme.cell_branch[static_cast<std::size_t>(*cell)])]
                      .apply(cur);
    }
    return Window{scheme.tm, -back, std::move(syms)};
}

/*
 * The factor map pi on a forward symbolic window: the nested intersection of
 * f^-n(closure of cell x_n), computed by composing the unique branch inverses
 * the cells select. Nonempty for admissible words; the diameter shrinks by
 * 1/|slope| per composed branch. An inconsistent word (not in the coding
 * subshift) intersects to nothing.
 */
inline Interval factor_pi_window(const CodingScheme& scheme, const Window& w) {
    if (w.symbols.empty()) return Interval::closed(Rational(0), Rational(1));
    if (w.lo != 0) throw Error("factor_pi_window expects a forward window starting at 0");
    const int q = static_cast<int>(w.symbols.size()) - 1;
    Interval j = scheme.etp.cell(w.symbols[static_cast<std::size_t>(q)]).closure();
    for (int n = q - 1; n >= 0; --n) {
        SymbolId s = w.symbols[static_cast<std::size_t>(n)];
        const Branch& b =
            scheme.map.branches()[static_cast<std::size_t>(scheme.cell_branch[static_cast<std::size_t>(s)])];
        j = b.preimage(j).intersect(scheme.etp.cell(s).closure());
        if (j.empty())
            throw EmptyIntersection("symbol word is not admissible for this coding (empty at depth " +
                                    std::to_string(n) + ")");
    }
    return j;
}

/// Split a window into its backward part and forward part.
inline Window forward_part(const Window& w) {
    Window out{w.tm, 0, {}};
    for (long long i = std::max<long long>(w.lo, 0); i <= w.hi(); ++i)
        out.symbols.push_back(w.at(i));
    return out;
}

/*
 * Do the backward symbols admit a pre-orbit? True iff some point of `target`
 * has a branch pre-orbit with p_{k-1} in closure(Q_{x_{-k}}) for k = 1..back
 * (p_0 = x itself, matching the itinerary convention). Exhaustive branch
 * search, exact interval arithmetic.
 */
inline bool backward_consistent(const CodingScheme& scheme, const Window& w,
                                const Interval& target, const Caps& caps = {}) {
    if (w.lo >= 0) return true;  // no backward symbols
    const int back = static_cast<int>(-w.lo);
    BigInt work = int_pow(BigInt(scheme.map.branch_count()), static_cast<unsigned>(back));
    if (work > BigInt(caps.enumeration))
        throw CapExceeded("backward_consistent branch search exceeds cap");
    Interval t0 = target.intersect(scheme.itp.cell(w.at(-1)).closure());
    if (t0.empty()) return false;
    std::function<bool(const Interval&, int)> dfs = [&](const Interval& cur, int k) -> bool {
        if (k > back) return true;
        for (const Branch& b : scheme.map.branches()) {
            Interval next = b.preimage(cur).intersect(scheme.itp.cell(w.at(-k)).closure());
            if (!next.empty() && dfs(next, k + 1)) return true;
        }
        return false;
    };
    return dfs(t0, 2);
}

struct SemiconjugacyReport {
    Interval f_image;   // f(pi(w|depth))
    Interval shifted;   // pi(shift(w)|depth-1)
    bool holds = false;
};

/*
 * Finite-resolution commuting-square check, pi o sigma = f o pi: the branch
 * image of the depth-d factor interval must contain the depth-(d-1) factor
 * interval of the shifted word. Exact rational containment.
 */
inline SemiconjugacyReport check_semiconjugacy(const CodingScheme& scheme, const Window& w,
                                               int depth) {
    Window fw = forward_part(w);
    if (depth > static_cast<int>(fw.symbols.size()))
        throw Error("check_semiconjugacy: window shorter than depth");
    if (depth <= 0) {
        Interval full = Interval::closed(Rational(0), Rational(1));
        return SemiconjugacyReport{full, full, true};
    }
    Window head{scheme.tm, 0, Word(fw.symbols.begin(), fw.symbols.begin() + depth)};
    Window tail{scheme.tm, 0, Word(fw.symbols.begin() + 1, fw.symbols.begin() + depth)};
    Interval i = factor_pi_window(scheme, head);
    Interval j = factor_pi_window(scheme, tail);
    const Branch& b = scheme.map.branches()[static_cast<std::size_t>(
        scheme.cell_branch[static_cast<std::size_t>(head.symbols.front())])];
    Interval fi = b.image(i);
    return SemiconjugacyReport{fi, j, j.subset_of(fi)};
}

/// ETP cells that may follow cell s in the coding subshift: those inside the
/// ITP cell s maps onto.
inline std::vector<SymbolId> admissible_successors(const CodingScheme& scheme, SymbolId s) {
    const Interval& q = scheme.itp.cell(scheme.tau_hat[static_cast<std::size_t>(s)]);
    std::vector<SymbolId> out;
    for (int i = 0; i < scheme.etp.size(); ++i)
        if (scheme.etp.cell(i).subset_of(q)) out.push_back(i);
    return out;
}

}  // namespace zipshift
