#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "riop/rops.hpp"
#include "riop/verify.hpp"

using namespace riop;

TEST_CASE("config powers") {
    const ROpConfig inf(SpaceSpec::linf(), 1);
    for (double t : {0.1, 3.0}) CHECK(inf.psi(t) == doctest::Approx(1 / t));
    for (double q : {1.5, 3.0}) {
        const ROpConfig c = ROpConfig::from_space(SpaceSpec::lorentz(q, 1));
        CHECK(c.gamma == doctest::Approx(1 - 1 / q));
        CHECK(c.psi(2.5) == doctest::Approx(0.4));
        CHECK(c.psi_tilde(2.5) == doctest::Approx(0.4));
    }
}

TEST_CASE("R infinity") {
    const ROpConfig cfg(SpaceSpec::linf(), 1);
    const Distribution chi(PiecewisePowerFn::indicator(0, 1));
    for (double t : {0.3, 1.0, 4.0}) {
        const double head = std::min(1 / t, 1.0);
        const double v = r_infty(cfg, chi, t);
        CHECK(v >= head * (1 - 1e-12));
        CHECK(v <= 2 * head * (1 + 1e-12));
    }
    CHECK(r_infty(cfg, Distribution(PiecewisePowerFn::zero()), 1) == 0);

    // L(q,1) with psi = 1/t: head integral plus t^{-1/q'} rho_{q,1} of the shifted tail
    std::mt19937_64 rng(3);
    GenProfile prof;
    prof.p_noninc = 1;
    prof.expo_lo = -0.3;
    prof.inf_expo_lo = -3;
    prof.inf_expo_hi = -0.8;
    const double q = 3;
    const ROpConfig lc = ROpConfig::from_space(SpaceSpec::lorentz(q, 1));
    for (int i = 0; i < 20; ++i) {
        const PiecewisePowerFn f = gen_function(rng, prof);
        const auto at = oracle::atoms_of(f);
        const double t = log_uniform(rng, 0.1, 10);
        const double head = f.integrate(0, 1 / t);
        // f* chi_(1/t,inf) rearranges to f*(s + 1/t)
        double tail = 0;
        for (const auto& a : at) {
            const double lo = std::max(a.lo, 1 / t);
            if (lo >= a.hi) continue;
            // u = s - 1/t
            tail += oracle::power_like(
                [&](double u) { return std::pow(u, 1 / q - 1) * a.c * std::pow(u + 1 / t, a.e); }, lo - 1 / t,
                a.hi == kInf ? kInf : a.hi - 1 / t);
        }
        const double ref = head + std::pow(t, -(1 - 1 / q)) * tail;
        INFO("got=", r_infty(lc, Distribution(f), t), " ref=", ref, " head=", head);
        CHECK(oracle::close(r_infty(lc, Distribution(f), t), ref, 1e-6));
    }
}

TEST_CASE("R one") {
    CHECK_THROWS(ROpConfig::from_space(SpaceSpec::l1()));
    const ROpConfig l(SpaceSpec::lorentz(2, 1), 0.5);
    CHECK(r_1(l, Distribution(PiecewisePowerFn::zero()), 1) == 0);
    const Distribution chi(PiecewisePowerFn::indicator(0, 1));
    double prev = kInf;
    for (double t = 0.05; t < 50; t *= 1.5) {
        const double v = r_1(l, chi, t);
        // ||chi_(0,min(1,1/t))||_{2,1} / t^{1/2}
        CHECK(v == doctest::Approx(2 * std::sqrt(std::min(1.0, 1 / t)) / std::sqrt(t)));
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("condition gates") {
    CHECK(gate_r_infty(0.5, SpaceSpec::lorentz(2, kInf)));
    CHECK_FALSE(gate_r_infty(0.5, SpaceSpec::lorentz(2, 1)));
    CHECK(gate_r_1(0.5, SpaceSpec::lorentz(2, kInf)));
}

TEST_CASE("optimal range functional") {
    const Kernel a = Kernel::piecewise(PiecewisePowerFn(std::vector<Piece>{Piece(0, 1, 1, -0.5)}, true), 0.5,
                                       Decay::compact());
    CHECK(rho_opt(a, Distribution(PiecewisePowerFn::zero()), SpaceSpec::lorentz(2, 1)).value == 0);
    const auto chi = PiecewisePowerFn::indicator(0, 1);
    CHECK(rho_opt(a, Distribution(chi), SpaceSpec::lorentz(2, 1)).value == doctest::Approx(2).epsilon(1e-6));
    const auto big = add(chi, PiecewisePowerFn::indicator(0.5, 3, 0.5));
    CHECK(rho_opt(a, Distribution(chi), SpaceSpec::lorentz(2, 1)).value <=
          rho_opt(a, Distribution(big), SpaceSpec::lorentz(2, 1)).value * (1 + 1e-9));
    const Kernel sing = Kernel::piecewise(PiecewisePowerFn::power(0, 1, 1, -1), 1, Decay::compact());
    CHECK(rho_opt(sing, Distribution(chi), SpaceSpec::lorentz(2, 1)).value == kInf);
}
