#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "riop/kernelop.hpp"
#include "riop/spaces.hpp"
#include "riop/verify.hpp"

using namespace riop;

namespace {
Kernel box() { return Kernel::piecewise(PiecewisePowerFn::indicator(0, 1), 0, Decay::compact()); }
Kernel endpoint(double pc) {
    return Kernel::piecewise(PiecewisePowerFn(std::vector<Piece>{Piece(0, 1, 1, -1 / pc)}, true), 1 / pc,
                             Decay::compact());
}
}  // namespace

TEST_CASE("apply closed forms") {
    for (double u : {0.5, 2.0})
        for (double t : {0.1, 1.0, 3.0})
            CHECK(apply(box(), PiecewisePowerFn::indicator(0, u), t) == doctest::Approx(std::min(u, 1 / t)));
    CHECK(apply(endpoint(2), PiecewisePowerFn::indicator(0, 1), 4) == doctest::Approx(0.5));
    CHECK(apply(Kernel::laplace(), PiecewisePowerFn::indicator(0, 1), 1) ==
          doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-10));
    CHECK(apply(box(), PiecewisePowerFn::zero(), 1) == 0);
}

TEST_CASE("apply against quadrature, linearity and dilation") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const Kernel a = gen_kernel(rng);
        const PiecewisePowerFn f = gen_function(rng), g = gen_function(rng);
        const double t = log_uniform(rng, 0.05, 20);
        const double v = apply(a, f, t);
        if (!std::isfinite(v)) continue;
        // split the s-axis at every kink of a(st) and f(s)
        std::vector<double> br{0};
        for (double b : a.breakpoints()) br.push_back(b / t);
        for (double b : f.breakpoints()) br.push_back(b);
        std::sort(br.begin(), br.end());
        double ref = 0;
        const auto h = [&](double s) { return a.eval(s * t) * f.eval(s); };
        br.push_back(kInf);
        for (std::size_t i = 0; i + 1 < br.size(); ++i)
            if (br[i + 1] > br[i]) ref += oracle::power_like(h, br[i], br[i + 1], 2000);
        INFO("v=", v, " ref=", ref);
        CHECK(oracle::close(v, ref, 1e-6));

        const double w = apply(a, g, t);
        if (std::isfinite(w)) CHECK(oracle::close(apply(a, add(f, g), t), v + w, 1e-9));
        const double s = log_uniform(rng, 0.2, 5);
        CHECK(oracle::close(apply(a, dilate(f, s), t), s * apply(a, f, s * t), 1e-9));
    }
}

TEST_CASE("apply_tab") {
    const TabulatedFn tb = apply_tab(box(), PiecewisePowerFn::indicator(0, 1), GridSpec{1e-2, 1e2, 8, {}});
    for (std::size_t i = 0; i < tb.grid.size(); ++i)
        CHECK(tb.values[i] == doctest::Approx(std::min(1.0, 1 / tb.grid[i])));
    const TabulatedFn z = apply_tab(box(), PiecewisePowerFn::zero(), GridSpec{1e-2, 1e2, 8, {}});
    for (double v : z.values) CHECK(v == 0);

    std::mt19937_64 rng(1);
    GenProfile prof;
    prof.p_noninc = 1;
    const Kernel a = gen_kernel(rng);
    const PiecewisePowerFn f = gen_function(rng, prof);
    const auto s = apply_tab(a, f, GridSpec{1e-3, 1e3, 16, {}}, Exec::serial);
    const auto p = apply_tab(a, f, GridSpec{1e-3, 1e3, 16, {}}, Exec::parallel);
    CHECK(s.values == p.values);
    for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] <= s.values[i - 1] * (1 + 1e-12));
}

TEST_CASE("kernel split") {
    const auto [a1, ai] = split(box());
    CHECK(a1.eval(0.5) == 0);
    CHECK(ai.eval(0.5) == 1);

    const Kernel e = endpoint(2);
    const auto [b1, bi] = split(e);
    for (double t : {0.01, 0.5, 0.99}) {
        CHECK(b1.eval(t) == doctest::Approx(1 / std::sqrt(t) - 1));
        CHECK(bi.eval(t) == 1);
    }
    CHECK(b1.eval(2) == 0);

    std::mt19937_64 rng(17);
    for (int k = 0; k < 20; ++k) {
        const Kernel a = gen_kernel(rng);
        const auto [x, y] = split(a);
        for (int i = 0; i < 50; ++i) {
            const double t = log_uniform(rng, 1e-3, 1e3);
            CHECK(oracle::close(x.eval(t) + y.eval(t), a.eval(t), 1e-12));
            CHECK(y.eval(t) <= a.eval(1) * (1 + 1e-15));
        }
        CHECK(x.eval(1.5) == 0);
        if (a.beta0() < 1) CHECK(std::isfinite(norm(x.fn(), SpaceSpec::l1()).value));
    }
}

TEST_CASE("a double star") {
    for (double t : {0.1, 1.0, 10.0}) CHECK(astarstar(box(), t) == doctest::Approx(std::min(1.0, 1 / t)));
    for (double t : {0.04, 0.5, 1.0}) CHECK(astarstar(endpoint(2), t) == doctest::Approx(2 / std::sqrt(t)));
    const Kernel sing = Kernel::piecewise(PiecewisePowerFn::power(0, 1, 1, -1), 1, Decay::compact());
    CHECK(astarstar(sing, 3) == kInf);
}

TEST_CASE("self-adjointness") {
    const auto chi = PiecewisePowerFn::indicator(0, 1);
    const auto r = selfadjoint_check(box(), chi, chi);
    CHECK(r.lhs == doctest::Approx(1));
    CHECK(r.rhs == doctest::Approx(1));
    CHECK(selfadjoint_check(box(), PiecewisePowerFn::zero(), chi).lhs == 0);

    std::mt19937_64 rng(77);
    int n = 0;
    for (int i = 0; i < 100; ++i) {
        const auto rep = selfadjoint_check(gen_kernel(rng), gen_function(rng), gen_function(rng));
        if (rep.skipped) continue;
        CHECK(rep.discrepancy <= 1e-8);
        ++n;
    }
    CHECK(n > 30);
}

TEST_CASE("reversed constant") {
    const auto c = reversed_constant(endpoint(2));
    CHECK(c.u == 1);
    CHECK(c.c == doctest::Approx(1));
    const auto d = reversed_constant(Kernel::piecewise(PiecewisePowerFn::indicator(0, 0.25, 3), 0, Decay::compact()));
    CHECK(d.u == 0.25);
    CHECK(d.c == doctest::Approx(0.75));
}
