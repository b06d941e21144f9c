#include <doctest.h>

#include <random>

#include "riop/classify.hpp"
#include "riop/verify.hpp"

using namespace riop;

namespace {
Kernel endpoint(double p) {
    const double pc = p / (p - 1);
    return Kernel::piecewise(PiecewisePowerFn(std::vector<Piece>{Piece(0, 1, 1, -1 / pc)}, true), 1 / pc,
                             Decay::compact());
}
Kernel powered(double b0, double binf) {
    return Kernel::piecewise(PiecewisePowerFn(std::vector<Piece>{Piece(0, 1, 1, -b0), Piece(1, kInf, 1, -binf)}, true),
                             b0, Decay::power(binf));
}
}  // namespace

TEST_CASE("membership intervals") {
    const auto A = membership_A(endpoint(2));
    CHECK(A.lo == 2);
    CHECK(A.lo_included);
    CHECK(A.hi == kInf);
    CHECK(A.literal() == "[2,inf)");
    const auto B = membership_B(endpoint(2));
    CHECK(B.literal() == "(1,inf]");
    CHECK(membership_A(Kernel::piecewise(PiecewisePowerFn::indicator(0, 1), 0, Decay::compact())).lo == 1);
    CHECK(membership_A(powered(1, 2)).empty);
    const auto Bh = membership_B(powered(0.3, 0.5));
    CHECK(Bh.hi == doctest::Approx(2));
    CHECK(Bh.hi_included);
    CHECK(membership_B(powered(0.3, 0)).empty);
}

TEST_CASE("case list") {
    const Kernel a = endpoint(2);
    const auto r = classify(a, 3, 1);
    CHECK(r.verdict == Verdict::OptimalPartner);
    REQUIRE(r.partner);
    CHECK(*r.partner == SpaceSpec::lorentz(1.5, 1));
    CHECK(r.checks_passed());
    CHECK(classify(a, 1.5, 1).verdict == Verdict::NoPartner);
    CHECK(classify(a, 1.5, 1).case_label == "ii");
    const auto full = classify(a);
    CHECK(full.p == 2);
    CHECK(full.q == kInf);
    CHECK(classify(a, kInf, kInf).verdict == Verdict::NoPartner);
    CHECK(classify(a, kInf, kInf).case_label == "vii");
    // endpoint with eta = 1 is bracketed, other eta paper-open
    const auto br = classify(a, 2, 1);
    CHECK(br.verdict == Verdict::Bracketed);
    REQUIRE(br.bracket);
    CHECK(br.bracket->first == SpaceSpec::lorentz(2, 1));
    CHECK(br.bracket->second == SpaceSpec::lorentz(2, kInf));
    CHECK(classify(a, 2, 2).verdict == Verdict::PaperOpen);
    // domain L1
    CHECK(classify(a, 1, 1).verdict == Verdict::NoPartner);
    const auto l1 = classify(Kernel::laplace(), 1, 1);
    CHECK(l1.verdict == Verdict::L1Optimal);
    // singular kernel
    const auto iv = classify(powered(1, 2), 3, 1);
    CHECK(iv.verdict == Verdict::NoPartner);
    CHECK(iv.case_label == "iv");
    // constant tail
    CHECK(classify(powered(0.3, 0), 3, 1).case_label == "vi");
    CHECK_THROWS(classify(a, 0.5, 1));
}

TEST_CASE("Laplace kernel") {
    const auto r = classify(Kernel::laplace());
    CHECK(r.p == 1);
    CHECK(r.q == kInf);
    for (double xi : {1.5, 4.0}) {
        const auto c = classify(Kernel::laplace(), xi, 2);
        CHECK(c.verdict == Verdict::OptimalPartner);
        CHECK(*c.partner == SpaceSpec::lorentz(xi / (xi - 1), 2));
    }
}

TEST_CASE("existence criterion") {
    CHECK(existence_check(Kernel::piecewise(PiecewisePowerFn::indicator(0, 1), 0, Decay::compact()),
                          SpaceSpec::lorentz(2, 2)));
    CHECK_FALSE(existence_check(powered(1, 2), SpaceSpec::lorentz(2, 1)));
    CHECK(existence_check(endpoint(2), SpaceSpec::lorentz(2, 1)));
    CHECK_FALSE(existence_check(endpoint(2), SpaceSpec::lorentz(1.5, 1)));
}

TEST_CASE("verdicts agree with existence on random kernels") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const Kernel a = gen_kernel(rng);
        const double xi = uniform(rng, 1.05, 8), eta = uniform(rng, 1, 4);
        const auto r = classify(a, xi, eta);
        if (r.verdict == Verdict::OptimalPartner) CHECK(existence_check(a, SpaceSpec::lorentz(xi, eta)));
        if (r.verdict == Verdict::NoPartner && (r.case_label == "ii" || r.case_label == "iv"))
            CHECK_FALSE(existence_check(a, SpaceSpec::lorentz(xi, eta)));
    }
}
