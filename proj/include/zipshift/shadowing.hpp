#pragma once

#include <utility>
#include <vector>

#include "rng.hpp"
#include "space.hpp"

namespace zipshift {

/// A finite delta-pseudo-orbit: points z^{j0}, ..., z^{j1} with
/// d(shift(z^j), z^{j+1}) < delta at every step (validated at construction).
struct PseudoOrbit {
    long long start_index = 0;
    std::vector<Point> points;
    Rational delta;
};

/// Outcome of tracing: the candidate tracer, its exact per-step errors
/// d(shift^j(tracer), z^{j0+j}), and the acceptance verdict max_error < epsilon.
struct TraceReport {
    Point tracer;
    Rational max_error;
    Rational epsilon;
    std::vector<Rational> per_step_errors;
    bool accepted = false;
};

inline PseudoOrbit validate_pseudo_orbit(const System& sys, std::vector<Point> points,
                                         const Rational& delta, long long start_index = 0) {
    if (points.size() < 2) throw Error("pseudo-orbit needs at least two points");
    if (delta <= 0) throw Error("delta must be positive");
    for (const Point& p : points)
        if (!same_transition_map(p.tm(), sys.tm))
            throw AlphabetMismatch("pseudo-orbit point over a different transition map");
    for (std::size_t j = 0; j + 1 < points.size(); ++j) {
        Rational gap = distance(sys, shift(sys, points[j]), points[j + 1]);
        if (gap >= delta)
            throw NotPseudoOrbit(start_index + static_cast<long long>(j), to_frac(gap));
    }
    return PseudoOrbit{start_index, std::move(points), delta};
}

/*
 * Seeded test-input generator: the true orbit p, shift(p), ..., shift^{L-1}(p)
 * with far coordinates of each point rewritten independently. Rewrites land at
 * |i| >= m+3, so after one shift the corruption of z^j sits at |i| >= m+2 and
 * every consecutive gap is at most lambda^-(m+2) < lambda^-(m+1) = delta.
 * (Rewriting at |i| = m+2 exactly would allow a gap equal to delta, which the
 * strict pseudo-orbit inequality rejects.) The rewrite pattern is drawn
 * independently of m, so enlarging m shifts the same corruption outward.
 */
inline PseudoOrbit perturbed_orbit(const System& sys, const Point& p, int length, int m,
                                   std::uint64_t seed) {
    if (m < 1) throw Error("perturbed_orbit: m must be >= 1");
    if (length < 2) throw Error("perturbed_orbit: length must be >= 2");
    const int window = 6;
    const int nz = sys.tm->z_alphabet().size();
    const int ns = sys.lambda();
    Rng rng(seed);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(length));
    Point cur = p;
    for (int j = 0; j < length; ++j) {
        Point z = cur;
        const auto left_rewrites = rng.below(4);
        for (std::uint64_t r = 0; r < left_rewrites; ++r) {
            long long off = static_cast<long long>(rng.below(window));
            SymbolId sym = static_cast<SymbolId>(rng.below(static_cast<std::uint64_t>(nz)));
            z = with_symbol(z, -(m + 3 + off), sym);
        }
        const auto right_rewrites = rng.below(4);
        for (std::uint64_t r = 0; r < right_rewrites; ++r) {
            long long off = static_cast<long long>(rng.below(window));
            SymbolId sym = static_cast<SymbolId>(rng.below(static_cast<std::uint64_t>(ns)));
            z = with_symbol(z, m + 3 + off, sym);
        }
        pts.push_back(std::move(z));
        if (j + 1 < length) cur = shift(sys, cur);
    }
    Rational delta = inv_power(static_cast<unsigned>(ns), static_cast<unsigned>(m + 1));
    return validate_pseudo_orbit(sys, std::move(pts), delta);
}

/*
 * The shadowing construction. A delta = lambda^-(m+1) pseudo-orbit satisfies
 * the overlap relations z^j_{k+1} = z^{j+1}_k for |k| <= m+1 (with
 * tau(z^j_0) = z^{j+1}_{-1} at the crossing), so the spliced coordinates
 * x_n := z^n_0 are consistent with every window they overlap. The returned
 * tracer is the time-j0 point: coordinate i >= 0 reads z^{j0+i}_0 while the
 * splice lasts, then the last point's right coordinates; negative coordinates
 * come from the first point's left coordinates. Chaining the overlap
 * relations gives d(shift^j(tracer), z^{j0+j}) <= lambda^-(m+2) < lambda^-m.
 */
inline TraceReport trace(const System& sys, const PseudoOrbit& po, int m) {
    if (m < 0) throw Error("trace: m must be >= 0");
    const unsigned lambda = static_cast<unsigned>(sys.lambda());
    Rational maxdelta = inv_power(lambda, static_cast<unsigned>(m + 1));
    if (po.delta > maxdelta)
        throw DeltaTooLarge("trace requires delta <= lambda^-(m+1), got " + to_frac(po.delta));
    const auto& z = po.points;
    // overlap consistency is asserted, never assumed
    for (std::size_t j = 0; j + 1 < z.size(); ++j) {
        for (long long k = -(m + 1); k <= m + 1; ++k) {
            bool ok = (k == -1) ? sys.tm->tau(z[j].at(0)) == z[j + 1].at(-1)
                                : z[j].at(k + 1) == z[j + 1].at(k);
            if (!ok)
                throw InconsistentSplice("overlap windows disagree at step " +
                                         std::to_string(po.start_index + (long long)j) +
                                         ", offset " + std::to_string(k));
        }
    }
    Word splice;
    splice.reserve(z.size());
    for (const Point& zp : z) splice.push_back(zp.at(0));
    auto [tail_tr, tail_per] =
        detail::tail_from(z.back().right_transient(), z.back().right_period(), 1);
    Word rtr = std::move(splice);
    rtr.insert(rtr.end(), tail_tr.begin(), tail_tr.end());
    Point tracer(sys.tm, z.front().left_period(), z.front().left_transient(), std::move(rtr),
                 std::move(tail_per));

    TraceReport report{tracer, Rational(0), inv_power(lambda, static_cast<unsigned>(m)), {}, false};
    Point cur = tracer;
    for (std::size_t j = 0; j < z.size(); ++j) {
        Rational err = distance(sys, cur, z[j]);
        if (err > report.max_error) report.max_error = err;
        report.per_step_errors.push_back(std::move(err));
        if (j + 1 < z.size()) cur = shift(sys, cur);
    }
    report.accepted = report.max_error < report.epsilon;
    return report;
}

/// Re-check a tracer against a pseudo-orbit from scratch: iterate, measure,
/// compare with epsilon. Independent of how the tracer was produced.
inline TraceReport verify_tracing(const System& sys, const Point& tracer, const PseudoOrbit& po,
                                  const Rational& epsilon) {
    if (epsilon <= 0) throw Error("verify_tracing: epsilon must be positive");
    if (!same_transition_map(tracer.tm(), sys.tm))
        throw AlphabetMismatch("tracer over a different transition map");
    TraceReport report{tracer, Rational(0), epsilon, {}, false};
    Point cur = tracer;
    for (std::size_t j = 0; j < po.points.size(); ++j) {
        Rational err = distance(sys, cur, po.points[j]);
        if (err > report.max_error) report.max_error = err;
        report.per_step_errors.push_back(std::move(err));
        if (j + 1 < po.points.size()) cur = shift(sys, cur);
    }
    report.accepted = report.max_error < epsilon;
    return report;
}

}  // namespace zipshift
