#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "riop/io.hpp"
#include "riop/pwfun.hpp"
#include "riop/verify.hpp"

using namespace riop;

TEST_CASE("eval at points and breakpoints") {
    const auto chi = PiecewisePowerFn::indicator(0, 1);
    CHECK(chi.eval(0.5) == 1);
    const auto f = PiecewisePowerFn::power(0, 1, 1, -0.5);
    CHECK(f.eval(4) == 0);
    CHECK(f.eval(0.25) == doctest::Approx(2).epsilon(1e-15));
    // left piece wins at a shared breakpoint
    const PiecewisePowerFn g({Piece(0, 1, 3, 0), Piece(1, 2, 1, 0)}, true);
    CHECK(g.eval(1) == 3);
    CHECK(g.eval(1.5) == 1);
}

TEST_CASE("closed-form integrals") {
    CHECK(PiecewisePowerFn::power(0, 1, 1, -0.5).integrate(0, 1) == doctest::Approx(2).epsilon(1e-15));
    CHECK(PiecewisePowerFn::power(0, 1, 1, -1).integrate(0, 1) == kInf);
    CHECK(PiecewisePowerFn::indicator(0, 3.5).integrate(0, kInf) == 3.5);
    CHECK(PiecewisePowerFn::power(1, kInf, 1, -1).integrate(1, kInf) == kInf);
    CHECK(PiecewisePowerFn::power(1, kInf, 2, -2).integrate(1, kInf) == doctest::Approx(2));
}

TEST_CASE("integrate against composite quadrature") {
    std::mt19937_64 rng(11);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const PiecewisePowerFn f = gen_function(rng);
        double lo = log_uniform(rng, 1e-3, 1e2), hi = lo * log_uniform(rng, 1.5, 1e3);
        const double exact = f.integrate(lo, hi);
        if (!std::isfinite(exact)) continue;
        // integrate each piece overlap separately so panels never straddle a kink
        double ref = 0;
        for (const auto& a : oracle::atoms_of(f)) {
            const double l = std::max(lo, a.lo), h = std::min(hi, a.hi);
            if (l < h) ref += oracle::log_gauss([&](double t) { return a.c * std::pow(t, a.e); }, l, h, 4096);
        }
        CHECK(oracle::close(exact, ref, 1e-8));
        ++compared;
    }
    CHECK(compared > 40);
}

TEST_CASE("dilation") {
    const auto e2 = dilate(PiecewisePowerFn::indicator(0, 1), 2);
    REQUIRE(e2.pieces().size() == 1);
    CHECK(e2.pieces()[0].hi == 2);
    CHECK(e2.eval(1.5) == 1);

    const auto f = PiecewisePowerFn::power(0, 1, 1, -0.5);
    const auto e4 = dilate(f, 4);
    CHECK(e4.pieces()[0].hi == 4);
    CHECK(e4.pieces()[0].atoms[0].coeff == doctest::Approx(2).epsilon(1e-15));
    CHECK(e4.pieces()[0].atoms[0].expo == -0.5);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const PiecewisePowerFn g = gen_function(rng);
        const double s = log_uniform(rng, 0.1, 10), t = log_uniform(rng, 0.1, 10);
        const auto a = dilate(dilate(g, s), t), b = dilate(g, s * t);
        REQUIRE(a.pieces().size() == b.pieces().size());
        for (std::size_t k = 0; k < a.pieces().size(); ++k) {
            CHECK(oracle::close(a.pieces()[k].lo, b.pieces()[k].lo, 1e-14));
            CHECK(oracle::close(a.pieces()[k].atoms[0].coeff, b.pieces()[k].atoms[0].coeff, 1e-13));
        }
        const double I = g.integrate(0, kInf);
        if (std::isfinite(I)) CHECK(oracle::close(dilate(g, t).integrate(0, kInf), t * I, 1e-12));
    }
    const auto id = dilate(f, 1);
    CHECK(id.eval(0.3) == f.eval(0.3));
}

TEST_CASE("tabulate samples and tail slopes") {
    GridSpec g;
    g.explicit_points = {0.5, 2};
    const TabulatedFn t = tabulate(PiecewisePowerFn::indicator(0, 1), g);
    CHECK(t.values == std::vector<double>{1, 0});

    const TabulatedFn p = tabulate(PiecewisePowerFn::power(0, kInf, 1, -0.5), GridSpec{1e-2, 1, 32, {}});
    CHECK(p.tail0 == doctest::Approx(-0.5).epsilon(0.1));

    const TabulatedFn c = tabulate(PiecewisePowerFn::power(0, kInf, 1, 0), GridSpec{1e-3, 1e3, 16, {}});
    CHECK(std::abs(c.tail0) < 0.05);
    REQUIRE(c.tail_inf);
    CHECK(std::abs(*c.tail_inf) < 0.05);
}

TEST_CASE("tabulate serial and parallel agree") {
    std::mt19937_64 rng(3);
    const PiecewisePowerFn f = gen_function(rng);
    const GridSpec g{1e-4, 1e4, 64, {}};
    const auto a = tabulate(f, g, {Exec::serial, true});
    const auto b = tabulate(f, g, {Exec::parallel, true});
    CHECK(a.values == b.values);
}

TEST_CASE("descriptor round trip") {
    const auto j = nlohmann::json::parse(R"({"pieces":[{"lo":0,"hi":1,"coeff":2,"expo":-0.5},
                                                      {"lo":1,"hi":"inf","coeff":2,"expo":-2}],
                                             "nonincreasing":true})");
    const PiecewisePowerFn f = function_from_json(j);
    CHECK(f.nonincreasing());
    CHECK(f.eval(4) == doctest::Approx(2.0 / 16));
    const PiecewisePowerFn g = function_from_json(function_to_json(f));
    CHECK(g.eval(0.3) == f.eval(0.3));
    CHECK(g.eval(7) == f.eval(7));
    CHECK_THROWS(function_from_json(nlohmann::json::parse(R"({"pieces":[{"lo":2,"hi":1,"coeff":1,"expo":0}]})")));
}
