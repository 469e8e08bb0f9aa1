#include <catch2/catch_amalgamated.hpp>

#include <zipshift/builtin.hpp>
#include <zipshift/coding.hpp>
#include <zipshift/suite.hpp>

using namespace zipshift;

namespace {

Rational q(long long n, long long d) { return Rational(n, d); }

// branch-inverse composition oracle for generator diameters: enumerate every
// inverse-branch word (length <= depth applied to the partition cuts, length
// <= depth-1 applied to the branch endpoints, which enter at every preimage
// level), take the widest gap between the resulting cuts. Exponential but
// tiny at test depths; independent of the iterative cut accumulation inside
// generator_diameter.
Rational oracle_generator_diameter(const PwlMap& map, const Partition& partition, int depth) {
    std::vector<Rational> cuts;
    std::function<void(const Rational&, int)> apply_words = [&](const Rational& c, int remaining) {
        cuts.push_back(c);
        if (remaining == 0) return;
        for (const Branch& b : map.branches()) {
            Rational pre = b.invert(c);
            if (pre >= b.domain.lo && pre <= b.domain.hi) apply_words(pre, remaining - 1);
        }
    };
    for (const Rational& c : cuts_of(partition)) apply_words(c, depth);
    if (depth >= 1)
        for (const Branch& b : map.branches()) {
            apply_words(b.domain.lo, depth - 1);
            apply_words(b.domain.hi, depth - 1);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Rational best(0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        best = std::max(best, Rational(cuts[i + 1] - cuts[i]));
    return best;
}

}  // namespace

TEST_CASE("piecewise linear maps") {
    SECTION("builtin maps validate") {
        CHECK(doubling_map().branch_count() == 2);
        CHECK(tripling_map().branch_count() == 3);
    }
    SECTION("identity-like single full branch is fine") {
        PwlMap id({Branch{Interval::open(q(0, 1), q(1, 1)), Rational(1), Rational(0)}});
        CHECK(id.branch_count() == 1);
    }
    SECTION("a branch with a partial image is rejected") {
        CHECK_THROWS_AS(
            PwlMap({Branch{Interval::open(q(0, 1), q(1, 2)), Rational(1), Rational(0)},
                    Branch{Interval::open(q(1, 2), q(1, 1)), Rational(2), Rational(-1)}}),
            NotFullBranch);
    }
    SECTION("principal domains") {
        Partition pd = principal_domains(doubling_map());
        CHECK(cuts_of(pd) == std::vector<Rational>{q(0, 1), q(1, 2), q(1, 1)});
        CHECK(cuts_of(principal_domains(tripling_map())) ==
              std::vector<Rational>{q(0, 1), q(1, 3), q(2, 3), q(1, 1)});
    }
}

TEST_CASE("partition refinement") {
    Partition h = halves(), t = thirds();
    SECTION("idempotent") { CHECK(cuts_of(refine(h, h)) == cuts_of(h)); }
    SECTION("halves join thirds") {
        Partition r = refine(h, t);
        CHECK(cuts_of(r) == std::vector<Rational>{q(0, 1), q(1, 3), q(1, 2), q(2, 3), q(1, 1)});
        CHECK(r.size() <= h.size() + t.size() - 1);
        // the result refines both inputs
        for (const Interval& cell : r.cells) {
            bool in_h = false, in_t = false;
            for (const Interval& c : h.cells) in_h = in_h || cell.subset_of(c);
            for (const Interval& c : t.cells) in_t = in_t || cell.subset_of(c);
            CHECK((in_h && in_t));
        }
    }
}

TEST_CASE("partition builders") {
    PwlMap dbl = doubling_map(), tpl = tripling_map();
    SECTION("dtp") {
        CHECK(cuts_of(build_dtp(dbl, quarters())) == cuts_of(quarters()));
        CHECK(cuts_of(build_dtp(tpl, thirds())) == cuts_of(thirds()));
        CHECK(cuts_of(build_dtp(dbl, whole())) == cuts_of(principal_domains(dbl)));
    }
    SECTION("itp") {
        CHECK(cuts_of(build_itp(dbl, quarters())) == cuts_of(halves()));
        CHECK(cuts_of(build_itp(tpl, thirds())) == std::vector<Rational>{q(0, 1), q(1, 1)});
    }
    SECTION("etp") {
        CHECK(cuts_of(build_etp(dbl, halves())) == cuts_of(quarters()));
        CHECK(cuts_of(build_etp(tpl, whole())) == cuts_of(thirds()));
        // etp always refines the principal domains
        Partition etp = build_etp(dbl, halves());
        for (const Interval& cell : etp.cells) {
            bool inside = false;
            for (const Branch& b : dbl.branches()) inside = inside || cell.subset_of(b.domain);
            CHECK(inside);
        }
    }
}

TEST_CASE("alphabet derivation reproduces the worked transition maps") {
    SECTION("doubling with quarters") {
        CodingScheme s = make_coding_scheme(doubling_map(), quarters());
        CHECK(s.tm->s_alphabet().size() == 4);
        CHECK(s.tm->z_alphabet().size() == 2);
        auto e1 = example1_tm();
        CHECK(s.tm->assignment() == e1->assignment());   // tau(0)=tau(2)=a, tau(1)=tau(3)=b
        CHECK(s.tm->fiber(0).size() == 2);
        CHECK(s.tm->fiber(1).size() == 2);
    }
    SECTION("tripling") {
        CodingScheme s = make_coding_scheme(tripling_map(), thirds());
        CHECK(s.tm->s_alphabet().size() == 3);
        CHECK(s.tm->z_alphabet().size() == 1);
        CHECK(*s.tm == *example2_tm());
    }
    SECTION("mismatched partitions surface") {
        CHECK_THROWS_AS(derive_zip_alphabets(doubling_map(), quarters(), thirds()),
                        ImageMismatch);
    }
}

TEST_CASE("generator diameters") {
    PwlMap dbl = doubling_map(), tpl = tripling_map();
    SECTION("closed forms") {
        Rational prev(2);
        for (int n = 0; n <= 12; ++n) {
            Rational d = generator_diameter(dbl, quarters(), n);
            CHECK(d == inv_power(2, static_cast<unsigned>(n + 2)));
            CHECK(d < prev);
            prev = d;
        }
        for (int n = 0; n <= 8; ++n)
            CHECK(generator_diameter(tpl, thirds(), n) == inv_power(3, static_cast<unsigned>(n + 1)));
    }
    SECTION("matches the branch-composition oracle") {
        for (int n = 0; n <= 6; ++n) {
            CHECK(generator_diameter(dbl, quarters(), n) ==
                  oracle_generator_diameter(dbl, quarters(), n));
            CHECK(generator_diameter(tpl, thirds(), n) ==
                  oracle_generator_diameter(tpl, thirds(), n));
        }
    }
}

TEST_CASE("lebesgue numbers") {
    Rational eps(1, 1000);
    SECTION("two overlapping elements") {
        auto d = lebesgue_number({Interval::open(q(0, 1) - eps, q(2, 3)),
                                  Interval::open(q(1, 3), q(1, 1) + eps)});
        CHECK(d == q(1, 3));
    }
    SECTION("one element covering everything is capped at the diameter") {
        CHECK(lebesgue_number({Interval::open(q(0, 1) - eps, q(1, 1) + eps)}) == 1);
    }
    SECTION("touching at a point is not a cover") {
        CHECK_THROWS_AS(lebesgue_number({Interval::open(q(0, 1) - eps, q(1, 2)),
                                         Interval::open(q(1, 2), q(1, 1) + eps)}),
                        NotACover);
    }
    SECTION("certificate: every short window fits inside one element") {
        std::vector<Interval> cover{Interval::open(q(0, 1) - eps, q(2, 3)),
                                    Interval::open(q(1, 3), q(1, 1) + eps)};
        Rational d = lebesgue_number(cover);
        for (const Rational& anchor : {q(0, 1), q(1, 3), q(1, 2), q(2, 3), q(1, 1) - d / 2}) {
            Interval window = Interval::closed(anchor, std::min(Rational(anchor + d / 2), q(1, 1)));
            bool inside = false;
            for (const Interval& e : cover) inside = inside || window.subset_of(e);
            CHECK(inside);
        }
    }
}

TEST_CASE("eilenberg decomposition") {
    PwlMap dbl = doubling_map(), tpl = tripling_map();
    SECTION("worked doubling interval") {
        auto dec = decompose_preimage(dbl, Interval::open(q(1, 4), q(1, 3)));
        REQUIRE(dec.components.size() == 2);
        CHECK(dec.components[0] == Interval::open(q(1, 8), q(1, 6)));
        CHECK(dec.components[1] == Interval::open(q(5, 8), q(2, 3)));
        CHECK(interval_distance(dec.components[0], dec.components[1]) == q(11, 24));
        CHECK(q(11, 24) >= 2 * dec.constants.mu);
        CHECK(dec.constants.mu == q(1, 8));
    }
    SECTION("tripling components shrink by the slope") {
        auto dec = decompose_preimage(tpl, Interval::open(q(0, 1), q(1, 10)));
        REQUIRE(dec.components.size() == 3);
        for (const Interval& c : dec.components) CHECK(c.diameter() == q(1, 30));
    }
    SECTION("each component maps back onto D exactly") {
        Interval d = Interval::open(q(3, 10), q(2, 5));
        auto dec = decompose_preimage(dbl, d);
        for (std::size_t i = 0; i < dec.components.size(); ++i)
            CHECK(dbl.branches()[i].image(dec.components[i]) == d);
    }
    SECTION("oversized sets are rejected") {
        CHECK_THROWS_AS(decompose_preimage(dbl, Interval::open(q(0, 1), q(3, 4))),
                        DiameterTooLarge);
    }
}

TEST_CASE("itineraries") {
    CodingScheme tri = make_coding_scheme(tripling_map(), thirds());
    CodingScheme dq = make_coding_scheme(doubling_map(), quarters());
    SECTION("orbit of 1/4 under tripling alternates cells 0 and 2") {
        Window w = itinerary(tri, q(1, 4), {}, 4, 0);
        CHECK(w.symbols == Word{0, 2, 0, 2});
    }
    SECTION("orbit of 1/3 under doubling/quarters") {
        Window w = itinerary(dq, q(1, 3), {}, 2, 0);
        CHECK(w.symbols == Word{1, 2});
    }
    SECTION("boundary points are rejected, not coded") {
        CHECK_THROWS_AS(itinerary(dq, q(1, 2), {}, 1, 0), BoundaryHit);
        CHECK_THROWS_AS(itinerary(dq, q(1, 8), {}, 2, 0), BoundaryHit);  // 1/8 -> 1/4
    }
    SECTION("backward symbols read the image partition along the pre-orbit") {
        // index -1 is the ITP cell of x itself, so the encoding commutes with
        // the shift across the seam
        Window w = itinerary(dq, q(1, 5), {0}, 1, 2);
        CHECK(w.lo == -2);
        CHECK(w.at(-1) == dq.itp.locate(q(1, 5)).value());
        CHECK(w.at(-2) == dq.itp.locate(q(1, 10)).value());  // branch-0 preimage of 1/5
    }
    SECTION("insufficient past is an error") {
        CHECK_THROWS_AS(itinerary(dq, q(1, 5), {}, 1, 2), InvalidPastBranch);
        CHECK_THROWS_AS(itinerary(dq, q(1, 5), {9}, 1, 2), InvalidPastBranch);
    }
}

TEST_CASE("itinerary shift equivariance, exactly") {
    CodingScheme dq = make_coding_scheme(doubling_map(), quarters());
    Rng rng(13);
    int done = 0;
    for (int t = 0; done < 1000 && t < 5000; ++t) {
        // random rational in (0,1) with a boundary-free short orbit
        Rational x(1 + static_cast<long long>(rng.below(9973)), 9974);
        try {
            Window wx = itinerary(dq, x, {}, 5, 0);
            auto bx = dq.cell_branch[static_cast<std::size_t>(wx.symbols.front())];
            Rational fx = dq.map.branches()[static_cast<std::size_t>(bx)].apply(x);
            Window wfx = itinerary(dq, fx, {bx}, 4, 1);
            // forward part shifts by one
            for (int i = 0; i < 4; ++i)
                CHECK(wfx.at(i) == wx.at(i + 1));
            // the crossing symbol passes through tau
            CHECK(wfx.at(-1) == dq.tm->tau(wx.at(0)));
            ++done;
        } catch (const BoundaryHit&) {
            continue;
        }
    }
    CHECK(done == 1000);
}

TEST_CASE("factor map windows") {
    CodingScheme tri = make_coding_scheme(tripling_map(), thirds());
    CodingScheme dq = make_coding_scheme(doubling_map(), quarters());
    SECTION("empty word maps to the whole space") {
        CHECK(factor_pi_window(dq, Window{dq.tm, 0, {}}) ==
              Interval::closed(q(0, 1), q(1, 1)));
    }
    SECTION("admissible doubling words shrink dyadically") {
        Interval i = factor_pi_window(dq, Window{dq.tm, 0, Word{0, 0}});
        CHECK(i.diameter() == q(1, 8));
        CHECK(i.subset_of(Interval::closed(q(0, 1), q(1, 4))));
    }
    SECTION("the (0 2)-periodic tripling word pins 1/4") {
        Word w;
        for (int i = 0; i < 4; ++i) {
            w.push_back(0);
            w.push_back(2);
        }
        Interval i = factor_pi_window(tri, Window{tri.tm, 0, w});
        CHECK(i.diameter() == inv_power(3, 8));
        CHECK(i.contains(q(1, 4)));
    }
    SECTION("inadmissible words intersect to nothing") {
        CHECK_THROWS_AS(factor_pi_window(dq, Window{dq.tm, 0, Word{1, 0}}), EmptyIntersection);
    }
    SECTION("admissible successors follow the fibers") {
        CHECK(admissible_successors(dq, 0) == std::vector<SymbolId>{0, 1});
        CHECK(admissible_successors(dq, 1) == std::vector<SymbolId>{2, 3});
        CHECK(admissible_successors(tri, 1) == std::vector<SymbolId>{0, 1, 2});
    }
}

TEST_CASE("backward consistency") {
    CodingScheme dq = make_coding_scheme(doubling_map(), quarters());
    Word fw{0, 0};
    Interval target = factor_pi_window(dq, Window{dq.tm, 0, fw});
    SECTION("the image cell of the target itself decides index -1") {
        Window wa{dq.tm, -1, Word{0, 0, 0}};  // a . 0 0
        CHECK(backward_consistent(dq, wa, target));
        Window wb{dq.tm, -1, Word{1, 0, 0}};  // b . 0 0 — but target lies in (0,1/2) = Q_a
        CHECK_FALSE(backward_consistent(dq, wb, target));
    }
    SECTION("deeper alternating pasts have pre-orbits when branches allow") {
        Window w{dq.tm, -2, Word{1, 0, 0, 0}};  // b a . 0 0: p_1 in Q_b exists via branch 1
        CHECK(backward_consistent(dq, w, target));
    }
    SECTION("no backward symbols is vacuously consistent") {
        CHECK(backward_consistent(dq, Window{dq.tm, 0, fw}, target));
    }
    SECTION("branch search is capped") {
        Caps tiny;
        tiny.enumeration = 2;
        Window deep{dq.tm, -4, Word{0, 0, 0, 0, 0, 0}};
        CHECK_THROWS_AS(backward_consistent(dq, deep, target, tiny), CapExceeded);
    }
}

TEST_CASE("semiconjugacy squares") {
    CodingScheme tri = make_coding_scheme(tripling_map(), thirds());
    SECTION("periodic word, nested shrinking intervals") {
        Word w;
        for (int i = 0; i < 4; ++i) {
            w.push_back(0);
            w.push_back(2);
        }
        auto rep = check_semiconjugacy(tri, Window{tri.tm, 0, w}, 8);
        CHECK(rep.holds);
        CHECK(rep.shifted.subset_of(rep.f_image));
        CHECK(rep.shifted.contains(q(3, 4)));  // the shifted word codes 3/4
    }
    SECTION("empty window is trivially commuting") {
        CHECK(check_semiconjugacy(tri, Window{tri.tm, 0, {}}, 0).holds);
    }
    SECTION("random sweeps on both schemes") {
        CHECK(battery_coding(2027, 200, 10).pass);
    }
}
