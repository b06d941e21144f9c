#include <doctest.h>

#include <set>

#include "riop/kfunc.hpp"
#include "riop/spaces.hpp"
#include "riop/verify.hpp"

using namespace riop;

TEST_CASE("every anchor has a property") {
    CHECK(uncovered_anchors().empty());
    std::set<std::string> names;
    for (const auto& p : registry()) {
        CHECK(names.insert(p.name).second);
        CHECK(p.default_trials > 0);
    }
    CHECK(find_property("hardy-littlewood") != nullptr);
    CHECK(find_property("nope") == nullptr);
}

TEST_CASE("generator") {
    const auto a = gen_function(std::uint64_t{99}), b = gen_function(std::uint64_t{99});
    REQUIRE(a.pieces().size() == b.pieces().size());
    for (std::size_t i = 0; i < a.pieces().size(); ++i) {
        CHECK(a.pieces()[i].lo == b.pieces()[i].lo);
        CHECK(a.pieces()[i].atoms[0].coeff == b.pieces()[i].atoms[0].coeff);
    }
    GenProfile flat;
    flat.expo_lo = flat.expo_hi = 0;
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto f = gen_function(rng, flat);
        for (const auto& p : f.pieces()) CHECK(p.atoms[0].expo == 0);
        CHECK(std::isfinite(Distribution(gen_function(rng)).head_integral(1)));
    }
    for (int i = 0; i < 100; ++i) {
        const auto f = gen_function(rng);
        CHECK(f.pieces().size() <= 6);
        if (f.nonincreasing()) CHECK(sampled_nonincreasing(f));
    }
}

TEST_CASE("deterministic reports") {
    for (const char* name : {"hardy-littlewood", "k-sandwich-m-linf", "comparison-r-1"}) {
        const PropertySpec* p = find_property(name);
        REQUIRE(p);
        RunOptions o;
        o.trials = 20;
        o.seed = 7;
        o.keep_rows = true;
        const auto a = run_property(*p, o);
        o.exec = Exec::serial;
        const auto b = run_property(*p, o);
        CHECK(report_text(a) == report_text(b));
        CHECK(report_csv_rows(a) == report_csv_rows(b));
        o.seed = 8;
        CHECK(report_csv_rows(run_property(*p, o)) != report_csv_rows(a));
    }
}

TEST_CASE("worked property values") {
    const Distribution chi(PiecewisePowerFn::indicator(0, 1));
    const KBounds b = k_m_linf_bounds(chi, 0.5, 1, true, {512, {}, Exec::serial});
    CHECK(b.lower == doctest::Approx(0.5));
    CHECK(b.upper == doctest::Approx(1));
    CHECK(*b.oracle == doctest::Approx(0.5));
    // lemma (ii): sup_t t^{-1/p} int_0^{1/t}... for chi equals rho_{2,1}(chi) = 2
    CHECK(norm(chi, SpaceSpec::lorentz(2, 1)).value == doctest::Approx(2));
}

TEST_CASE("hard properties hold on a short run") {
    for (const auto& p : registry()) {
        if (!p.hard) continue;
        RunOptions o;
        o.trials = 10;
        o.seed = 1234;
        const auto r = run_property(p, o);
        INFO(report_text(r));
        CHECK(r.ok());
        CHECK(r.passed + r.degenerate + r.skipped == r.trials);
    }
}

TEST_CASE("degenerate bucket") {
    const PropertySpec boom{"boom", "none", true, 3, [](Rng&, const Tolerances&) -> Trial {
                                throw std::runtime_error("x");
                            }};
    const auto r = run_property(boom, {});
    CHECK(r.degenerate == 3);
    CHECK(r.passed == 0);
    const PropertySpec nan{"nan", "none", true, 2, [](Rng&, const Tolerances&) { return leq(kInf, 1, 0, {}); }};
    CHECK(run_property(nan, {}).degenerate == 2);
    const PropertySpec bad{"bad", "none", true, 2, [](Rng&, const Tolerances& t) { return leq(2, 1, t.exact, {}); }};
    const auto rb = run_property(bad, {});
    CHECK(rb.flagged == 2);
    CHECK_FALSE(rb.ok());
    CHECK(rb.worst_ratio == 2);
}
