#include <catch2/catch_amalgamated.hpp>

#include <zipshift/builtin.hpp>
#include <zipshift/shadowing.hpp>

using namespace zipshift;

namespace {
const System& sys4() {
    static System s = builtin_system("full4");
    return s;
}
}  // namespace

TEST_CASE("pseudo-orbit validation") {
    const System& sys = sys4();
    Point p = make_point(sys.tm, "ab", "b", "103112", "2");
    SECTION("a true orbit segment is a delta-pseudo-orbit for every delta") {
        std::vector<Point> orbit{p, shift(sys, p), iterate(sys, p, 2)};
        auto po = validate_pseudo_orbit(sys, orbit, Rational(1, 1000000));
        CHECK(po.points.size() == 3);
        CHECK(po.delta == Rational(1, 1000000));
    }
    SECTION("a near corruption breaks the gap bound") {
        Point z1 = with_symbol(shift(sys, p), 2, (p.at(3) + 1) % 4);
        // gap = 4^-2 >= delta = 4^-3: rejected at step 0 with the exact gap
        try {
            validate_pseudo_orbit(sys, {p, z1}, inv_power(4, 3));
            FAIL("expected NotPseudoOrbit");
        } catch (const NotPseudoOrbit& e) {
            CHECK(e.index == 0);
            CHECK(e.gap == "1/16");
        }
    }
    SECTION("a far corruption stays below delta") {
        Point z1 = with_symbol(shift(sys, p), 10, 3);
        Point z1b = with_symbol(z1, -10, sys.tm->z_alphabet().id("a"));
        CHECK_NOTHROW(validate_pseudo_orbit(sys, {p, z1b}, inv_power(4, 3)));
    }
    SECTION("degenerate inputs") {
        CHECK_THROWS_AS(validate_pseudo_orbit(sys, {p}, Rational(1)), Error);
        CHECK_THROWS_AS(validate_pseudo_orbit(sys, {p, p}, Rational(0)), Error);
    }
}

TEST_CASE("perturbed orbits validate at delta = lambda^-(m+1)") {
    const System& sys = sys4();
    Rng rng(17);
    for (int m : {1, 2, 3}) {
        for (int trial = 0; trial < 20; ++trial) {
            Point base = random_point(sys.tm, rng);
            PseudoOrbit po = perturbed_orbit(sys, base, 20, m, 1000 + trial);
            CHECK(po.delta == inv_power(4, static_cast<unsigned>(m + 1)));
            // gaps vanish on |i| <= m+1 by construction
            for (std::size_t j = 0; j + 1 < po.points.size(); ++j) {
                auto fd = first_disagreement(sys, shift(sys, po.points[j]), po.points[j + 1]);
                if (fd) CHECK(*fd >= m + 2);
            }
        }
    }
}

TEST_CASE("trace and verify") {
    const System& sys = sys4();
    SECTION("a true orbit traces to the base point with zero error") {
        Point p = make_point(sys.tm, "ab", "b", "103112", "2");
        std::vector<Point> orbit;
        Point cur = p;
        for (int j = 0; j < 10; ++j) {
            orbit.push_back(cur);
            cur = shift(sys, cur);
        }
        auto po = validate_pseudo_orbit(sys, orbit, inv_power(4, 3));
        TraceReport r = trace(sys, po, 2);
        CHECK(equals(r.tracer, p));
        CHECK(r.max_error == 0);
        for (const Rational& e : r.per_step_errors) CHECK(e == 0);
    }
    SECTION("perturbed orbits trace strictly below lambda^-m") {
        Rng rng(23);
        for (int m = 1; m <= 5; ++m) {
            Point base = random_point(sys.tm, rng);
            PseudoOrbit po = perturbed_orbit(sys, base, 50, m, 555 + m);
            TraceReport r = trace(sys, po, m);
            CHECK(r.accepted);
            CHECK(r.max_error < inv_power(4, static_cast<unsigned>(m)));
            TraceReport v = verify_tracing(sys, r.tracer, po, inv_power(4, static_cast<unsigned>(m)));
            CHECK(v.accepted);
            CHECK(v.max_error == r.max_error);
        }
    }
    SECTION("a wandering orbit rejects an unrelated fixed point") {
        Point wander = make_point(sys.tm, "b", "", "", "1");
        std::vector<Point> orbit;
        Point cur = wander;
        for (int j = 0; j < 5; ++j) {
            orbit.push_back(cur);
            cur = shift(sys, cur);
        }
        auto po = validate_pseudo_orbit(sys, orbit, inv_power(4, 3));
        Point fixed = make_point(sys.tm, "a", "", "", "0");
        TraceReport v = verify_tracing(sys, fixed, po, inv_power(4, 2));
        CHECK_FALSE(v.accepted);
        CHECK(v.max_error >= Rational(1, 4));
        // the space has diameter 1, so epsilon = 2 accepts anything
        CHECK(verify_tracing(sys, fixed, po, Rational(2)).accepted);
    }
    SECTION("delta precondition is enforced") {
        Point p = make_point(sys.tm, "a", "", "", "0");
        std::vector<Point> orbit{p, p, p};
        auto po = validate_pseudo_orbit(sys, orbit, inv_power(4, 2));
        CHECK_THROWS_AS(trace(sys, po, 3), DeltaTooLarge);
    }
    SECTION("hand-built inconsistent inputs are caught, not spliced") {
        Point a = make_point(sys.tm, "a", "", "", "0");
        Point b = make_point(sys.tm, "b", "", "", "1");
        PseudoOrbit bogus{0, {a, b}, inv_power(4, 3)};  // bypasses validation
        CHECK_THROWS_AS(trace(sys, bogus, 2), InconsistentSplice);
    }
}

TEST_CASE("quantitative shadowing across metric bases") {
    for (int lambda : {2, 3, 4, 6}) {
        System sys = make_system(full_tm(lambda));
        Rng rng(600 + static_cast<std::uint64_t>(lambda));
        for (int m = 1; m <= 5; ++m) {
            Rational bound = inv_power(static_cast<unsigned>(lambda), static_cast<unsigned>(m));
            for (int t = 0; t < 100; ++t) {
                Rng trial = rng.child(static_cast<std::uint64_t>(m * 1000 + t));
                PseudoOrbit po =
                    perturbed_orbit(sys, random_point(sys.tm, trial), 100, m, trial.next());
                TraceReport r = trace(sys, po, m);
                REQUIRE(r.max_error < bound);
                REQUIRE(verify_tracing(sys, r.tracer, po, bound).accepted);
            }
        }
    }
}

TEST_CASE("tightening the perturbation never increases the error") {
    const System& sys = sys4();
    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        Point base = random_point(sys.tm, rng);
        std::uint64_t seed = 9000 + static_cast<std::uint64_t>(trial);
        Rational prev(-1);
        for (int m = 1; m <= 4; ++m) {
            // identical draw sequence: the corruption pattern just moves outward
            TraceReport r = trace(sys, perturbed_orbit(sys, base, 30, m, seed), m);
            if (prev >= 0) CHECK(r.max_error <= prev);
            prev = r.max_error;
        }
    }
}
