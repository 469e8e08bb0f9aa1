#include <catch2/catch_amalgamated.hpp>

#include <zipshift/builtin.hpp>
#include <zipshift/json_io.hpp>

using namespace zipshift;

TEST_CASE("rational text form") {
    CHECK(to_frac(Rational(1, 16)) == "1/16");
    CHECK(to_frac(Rational(0)) == "0");
    CHECK(to_frac(Rational(2)) == "2");
    CHECK(to_frac(Rational(-3, 4)) == "-3/4");
    CHECK(parse_frac("1/16") == Rational(1, 16));
    CHECK(parse_frac("2") == Rational(2));
    CHECK(parse_frac("-3/4") == Rational(-3, 4));
    CHECK(parse_frac("6/8") == Rational(3, 4));
    CHECK_THROWS_AS(parse_frac("x/y"), ParseError);
    CHECK_THROWS_AS(parse_frac("1/0"), ParseError);
}

TEST_CASE("transition map serialization is canonical") {
    auto tm = example1_tm();
    Json j = tm_to_json(tm);
    auto back = tm_from_json(j);
    CHECK(*tm == *back);
    CHECK(j.dump() == tm_to_json(back).dump());
    CHECK(j["s"] == Json::array({"0", "1", "2", "3"}));
    CHECK(j["tau"]["2"] == "a");
}

TEST_CASE("point round trips, single and multi character alphabets") {
    Rng rng(41);
    SECTION("single-character symbols concatenate") {
        auto tm = example1_tm();
        Point p = make_point(tm, "ab", "b", "103112", "2");
        Json j = point_to_json(p);
        CHECK(j["right_transient"] == "10311");  // normal form absorbed the 2
        CHECK(equals(point_from_json(tm, j), p));
        for (int t = 0; t < 200; ++t) {
            Point r = random_point(tm, rng);
            CHECK(equals(point_from_json(tm, point_to_json(r)), r));
        }
    }
    SECTION("product symbols are comma separated") {
        auto prod = product_transition(example1_tm(), example2_tm());
        System psys = make_system(prod);
        for (int t = 0; t < 200; ++t) {
            Point r = random_point(prod, rng);
            Json j = point_to_json(r);
            CHECK(equals(point_from_json(prod, j), r));
        }
        Point p = make_point(prod, Word{0}, {}, {}, Word{0, 5});
        std::string s = point_to_json(p)["right_period"].get<std::string>();
        CHECK(s.find(',') != std::string::npos);
        CHECK(s.find('|') != std::string::npos);
    }
}

TEST_CASE("cylinder and witness shapes") {
    auto tm = example1_tm();
    Cylinder c = make_cylinder(tm, {{-1, 0}, {0, 1}});
    Json j = cylinder_to_json(c);
    CHECK(j["constraints"][0]["i"] == -1);
    CHECK(j["constraints"][0]["s"] == "a");
    Cylinder back = cylinder_from_json(tm, j);
    CHECK(back.constraints == c.constraints);

    SeparationWitness w{-2, Rational(1), true};
    Json wj = witness_to_json(w);
    CHECK(wj["n"] == -2);
    CHECK(wj["distance"] == "1");
    CHECK(wj["branch_universal"] == true);
}

TEST_CASE("piecewise map serialization") {
    PwlMap dbl = doubling_map();
    Json j = pwl_to_json(dbl);
    CHECK(j["branches"][0]["domain"] == Json::array({"0", "1/2"}));
    CHECK(j["branches"][0]["slope"] == "2");
    CHECK(j["branches"][1]["offset"] == "-1");
    PwlMap back = pwl_from_json(j);
    CHECK(pwl_to_json(back).dump() == j.dump());
    System sys = system_from_json(system_to_json(builtin_system("full6")));
    CHECK(sys.lambda() == 6);
}
