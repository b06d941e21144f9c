#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riop/kernelop.hpp"
#include "riop/spaces.hpp"

namespace riop {

struct MembershipInterval {
    double lo = 1;
    double hi = kInf;
    bool lo_included = true;
    bool hi_included = true;
    bool empty = false;
    bool undecided = false;  // endpoint inclusion not decidable numerically

    bool contains(double r) const;
    std::string literal() const;
};

enum class Verdict { None, OptimalPartner, NoPartner, L1Optimal, Bracketed, PaperOpen };
std::string verdict_name(Verdict v);

struct ClassificationReport {
    MembershipInterval A;
    MembershipInterval B;
    double p = kInf;   // inf A
    double q = -kInf;  // sup B
    std::optional<std::pair<double, double>> query;  // (xi, eta)
    Verdict verdict = Verdict::None;
    std::string case_label;
    std::optional<SpaceSpec> partner;
    std::optional<std::pair<SpaceSpec, SpaceSpec>> bracket;
    std::vector<std::pair<std::string, bool>> checks;
    bool checks_passed() const;
};

// tail exponents of a kernel read from samples: slope of (a - a(1))_+ near 0
// and of a near infinity (nullopt: vanishes or decays faster than any power)
struct KernelSlopes {
    double at0 = 0;
    std::optional<double> at_inf;
};
KernelSlopes kernel_slopes(const Kernel& a);

MembershipInterval membership_A(const Kernel& a);
MembershipInterval membership_B(const Kernel& a);

ClassificationReport classify(const Kernel& a);
ClassificationReport classify(const Kernel& a, double xi, double eta);

// a** in X' decided from the asymptotics of a
bool existence_check(const Kernel& a, const SpaceSpec& X);
PowerProfile astarstar_profile(const Kernel& a);

}  // namespace riop
