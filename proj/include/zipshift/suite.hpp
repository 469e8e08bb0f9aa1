#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "builtin.hpp"
#include "coding.hpp"
#include "shadowing.hpp"
#include "space.hpp"

namespace zipshift {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// ---------------------------------------------------------------------------
// Separation verification

/*
 * Full audit of a separation witness for a distinct pair: witness distance
 * exactly 1, |time| minimal, and for backward witnesses distance 1 under
 * every inverse-branch composition. Universality reduces exactly to the
 * index-0 symbols: after m backward steps they range over
 * fiber(p_{-m}) x fiber(q_{-m}) whatever the earlier choices, so pairwise
 * disjointness of those fibers is the every-composition check; small cases
 * are additionally enumerated composition by composition.
 */
namespace detail {

/// All backward compositions of depth `steps` applied to p, capped.
inline void all_backward_images(const System& sys, const Point& p, long long steps,
                                std::vector<Point>& out) {
    if (steps == 0) {
        out.push_back(p);
        return;
    }
    for (SymbolId s : sys.tm->fiber(p.at(-1)))
        all_backward_images(sys, preimage_with(p, s), steps - 1, out);
}

}  // namespace detail

inline bool verify_separation(const System& sys, const Point& p, const Point& q,
                              const SeparationWitness& w) {
    if (w.distance != 1) return false;
    const long long m = w.time < 0 ? -w.time : w.time;
    // forward minimality: every shift count strictly below |n| stays within 1/2
    Point cp = p, cq = q;
    for (long long i = 0; i < m; ++i) {
        if (2 * distance(sys, cp, cq) > 1) return false;
        cp = shift(sys, cp);
        cq = shift(sys, cq);
    }
    if (w.time >= 0) {
        if (distance(sys, cp, cq) != 1) return false;
    } else {
        if (!w.branch_universal) return false;
        // after m backward steps index 0 ranges over fiber(p_{-m}) x
        // fiber(q_{-m}) regardless of earlier choices; disjointness is the
        // every-composition certificate
        const auto& fp = sys.tm->fiber(p.at(-m));
        const auto& fq = sys.tm->fiber(q.at(-m));
        for (SymbolId a : fp)
            for (SymbolId b : fq)
                if (a == b) return false;
        double combos = 1;
        for (long long i = 1; i <= m; ++i)
            combos *= static_cast<double>(sys.tm->fiber(p.at(-i)).size()) *
                      static_cast<double>(sys.tm->fiber(q.at(-i)).size());
        if (combos <= 20000) {
            std::vector<Point> bp, bq;
            detail::all_backward_images(sys, p, m, bp);
            detail::all_backward_images(sys, q, m, bq);
            for (const Point& a : bp)
                for (const Point& b : bq)
                    if (distance(sys, a, b) != 1) return false;
        } else {
            for (int j = 0; j < 4; ++j) {
                Point a = iterate_back(sys, p, m, choose_fiber_index(j));
                Point b = iterate_back(sys, q, m, choose_fiber_index(j));
                if (distance(sys, a, b) != 1) return false;
            }
        }
    }
    // backward minimality: matched branch choices at depth < |n| cannot
    // separate past 1/2 (the source Z-symbols still agree there)
    for (long long mm = 1; mm < m; ++mm) {
        Point bp = iterate_back(sys, p, mm, choose_fiber_index(0));
        Point bq = iterate_back(sys, q, mm, choose_fiber_index(0));
        if (2 * distance(sys, bp, bq) > 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Batteries

inline CheckResult battery_expansivity(const System& sys, int trials, std::uint64_t seed) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        auto [p, q] = random_distinct_pair(sys.tm, rng);
        SeparationWitness w = separation_time(sys, p, q);
        if (!verify_separation(sys, p, q, w))
            return {"expansivity", false,
                    "trial " + std::to_string(t) + " failed witness audit"};
    }
    return {"expansivity", true,
            std::to_string(trials) + " pairs separated with distance 1, gamma=1/2"};
}

struct ShadowTrial {
    int trial = 0;
    int m = 0;
    Rational max_error;
    bool pass = false;
};

inline CheckResult battery_shadowing(const System& sys, int m, int trials, int length,
                                     std::uint64_t seed, std::vector<ShadowTrial>* rows = nullptr) {
    Rng rng(seed);
    Rational bound = inv_power(static_cast<unsigned>(sys.lambda()), static_cast<unsigned>(m));
    for (int t = 0; t < trials; ++t) {
        Rng trial_rng = rng.child(static_cast<std::uint64_t>(t));
        Point base = random_point(sys.tm, trial_rng);
        PseudoOrbit po = perturbed_orbit(sys, base, length, m, trial_rng.next());
        TraceReport tr = trace(sys, po, m);
        TraceReport vr = verify_tracing(sys, tr.tracer, po, bound);
        bool ok = tr.accepted && vr.accepted && tr.max_error == vr.max_error &&
                  vr.max_error < bound;
        if (rows) rows->push_back({t, m, vr.max_error, ok});
        if (!ok)
            return {"shadowing-m" + std::to_string(m), false,
                    "trial " + std::to_string(t) + " max_error " + to_frac(vr.max_error)};
    }
    return {"shadowing-m" + std::to_string(m), true,
            std::to_string(trials) + " orbits traced below " + to_frac(bound)};
}

inline CheckResult battery_periodic(const System& sys, int k_max, const Caps& caps = {}) {
    for (int k = 1; k <= k_max; ++k) {
        auto pts = periodic_points(sys, k, caps);
        BigInt expected = int_pow(BigInt(sys.lambda()), static_cast<unsigned>(k));
        if (BigInt(pts.size()) != expected)
            return {"periodic", false, "count mismatch at k=" + std::to_string(k)};
        std::set<std::string> seen;
        for (const Point& p : pts) {
            if (!equals(iterate(sys, p, k), p))
                return {"periodic", false, "point not fixed by shift^" + std::to_string(k)};
            std::ostringstream key;
            for (SymbolId s : p.right_transient()) key << s << ".";
            key << "|";
            for (SymbolId s : p.right_period()) key << s << ".";
            key << "|";
            for (SymbolId s : p.left_transient()) key << s << ".";
            key << "|";
            for (SymbolId s : p.left_period()) key << s << ".";
            if (!seen.insert(key.str()).second)
                return {"periodic", false, "duplicate periodic point at k=" + std::to_string(k)};
        }
    }
    return {"periodic", true, "counts lambda^k for k=1.." + std::to_string(k_max)};
}

inline CheckResult battery_metric(const System& sys, int trials, std::uint64_t seed) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        Point p = random_point(sys.tm, rng);
        Point q = random_point(sys.tm, rng);
        Point r = random_point(sys.tm, rng);
        Rational dpq = distance(sys, p, q);
        Rational dqp = distance(sys, q, p);
        Rational dpr = distance(sys, p, r);
        Rational dqr = distance(sys, q, r);
        if (dpq != dqp) return {"metric", false, "symmetry failed"};
        if ((dpq == 0) != equals(p, q))
            return {"metric", false, "identity of indiscernibles failed"};
        if (dpr > std::max(dpq, dqr))
            return {"metric", false, "ultrametric inequality failed at trial " + std::to_string(t)};
    }
    return {"metric", true, std::to_string(trials) + " triples satisfy the ultrametric axioms"};
}

inline CheckResult battery_density(const System& sys, int depth, int k_max,
                                   const Caps& caps = {}) {
    auto cyls = detail::enumerate_cylinders(sys, depth, caps);
    for (const Cylinder& c : cyls) {
        auto [p, k] = density_witness(sys, c, k_max, caps);
        if (!in_cylinder(p, c))
            return {"density", false, "witness point misses its cylinder"};
        if (!equals(iterate(sys, p, k), p))
            return {"density", false, "witness point is not k-periodic"};
    }
    return {"density", true,
            std::to_string(cyls.size()) + " depth-" + std::to_string(depth) +
                " cylinders contain periodic points"};
}

inline CheckResult battery_mixing(const System& sys, int depth, const Caps& caps = {}) {
    int gap = mixing_gap(sys, depth, caps);
    auto cyls = detail::enumerate_cylinders(sys, depth, caps);
    for (int n = gap; n <= 2 * depth + 2; ++n)
        for (const Cylinder& u : cyls)
            for (const Cylinder& v : cyls) {
                auto pt = mixing_certificate(sys, u, v, n);
                if (!pt)
                    return {"mixing", false,
                            "no certificate at n=" + std::to_string(n) + " >= gap"};
            }
    if (gap > 1) {
        bool some_failure = false;
        for (const Cylinder& u : cyls) {
            for (const Cylinder& v : cyls)
                if (!mixing_certificate(sys, u, v, gap - 1)) {
                    some_failure = true;
                    break;
                }
            if (some_failure) break;
        }
        if (!some_failure) return {"mixing", false, "gap not minimal"};
    }
    return {"mixing", true, "gap N=" + std::to_string(gap) + " certified through n=" +
                                std::to_string(2 * depth + 2)};
}

// ---------------------------------------------------------------------------
// Coding helpers shared by the CLI and the acceptance suite

/// Random admissible symbol word for the scheme's coding subshift.
inline Word random_admissible_word(const CodingScheme& scheme, int depth, Rng& rng) {
    Word w;
    SymbolId cur = static_cast<SymbolId>(
        rng.below(static_cast<std::uint64_t>(scheme.tm->s_alphabet().size())));
    w.push_back(cur);
    for (int i = 1; i < depth; ++i) {
        auto succ = admissible_successors(scheme, cur);
        cur = succ[static_cast<std::size_t>(rng.below(succ.size()))];
        w.push_back(cur);
    }
    return w;
}

/// Exact width the factor interval of an admissible word must have:
/// width(cell of the last symbol) shrunk by 1/|slope| per composed branch.
inline Rational predicted_factor_width(const CodingScheme& scheme, const Word& w) {
    Rational width = scheme.etp.cell(w.back()).diameter();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        Rational s = scheme.map.branches()[static_cast<std::size_t>(
                                               scheme.cell_branch[static_cast<std::size_t>(w[i])])]
                         .slope;
        if (s < 0) s = -s;
        width /= s;
    }
    return width;
}

inline CheckResult battery_coding(std::uint64_t seed, int sweep_trials = 200,
                                  int sweep_depth = 10) {
    struct Case {
        const char* name;
        CodingScheme scheme;
    };
    std::vector<Case> cases;
    cases.push_back({"doubling/quarters", make_coding_scheme(doubling_map(), quarters())});
    cases.push_back({"tripling/thirds", make_coding_scheme(tripling_map(), thirds())});
    Rng rng(seed);
    for (auto& [name, scheme] : cases) {
        for (int t = 0; t < sweep_trials; ++t) {
            Word w = random_admissible_word(scheme, sweep_depth, rng);
            Window win{scheme.tm, 0, w};
            auto rep = check_semiconjugacy(scheme, win, sweep_depth);
            if (!rep.holds)
                return {"coding", false, std::string(name) + ": semiconjugacy square failed"};
            Interval piw = factor_pi_window(scheme, win);
            if (piw.diameter() != predicted_factor_width(scheme, w))
                return {"coding", false, std::string(name) + ": factor width mismatch"};
        }
    }
    return {"coding", true, "semiconjugacy and factor widths exact on both builtin schemes"};
}

}  // namespace zipshift
