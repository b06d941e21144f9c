#include "riop/classify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "riop/io.hpp"

namespace riop {

namespace {

constexpr double kMargin = 0.02;

bool exact_kernel(const Kernel& a) { return !a.analytic(); }

}  // namespace

bool MembershipInterval::contains(double r) const {
    if (empty) return false;
    if (r < lo || r > hi) return false;
    if (r == lo && !lo_included) return false;
    if (r == hi && !hi_included) return false;
    return true;
}

std::string MembershipInterval::literal() const {
    if (empty) return "empty";
    std::ostringstream os;
    os << (lo_included ? "[" : "(") << format_double(lo) << "," << format_double(hi)
       << (hi_included ? "]" : ")");
    if (undecided) os << " boundary-undecided";
    return os.str();
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::None: return "none";
        case Verdict::OptimalPartner: return "optimal-partner";
        case Verdict::NoPartner: return "no-partner";
        case Verdict::L1Optimal: return "l1-optimal-linf";
        case Verdict::Bracketed: return "bracketed";
        case Verdict::PaperOpen: return "paper-open";
    }
    return "";
}

bool ClassificationReport::checks_passed() const {
    for (const auto& c : checks)
        if (!c.second) return false;
    return true;
}

KernelSlopes kernel_slopes(const Kernel& a) {
    KernelSlopes s;
    const double a1 = a.eval(1.0);
    std::vector<double> t0 = log_grid(1e-12, 1e-10, 16), v0(t0.size());
    for (std::size_t i = 0; i < t0.size(); ++i) v0[i] = std::max(0.0, a.eval(t0[i]) - a1);
    const double e0 = fit_slope(t0, v0, t0.front(), t0.back());
    s.at0 = std::isnan(e0) ? 0.0 : e0;
    std::vector<double> ti = log_grid(1e8, 1e10, 16), vi(ti.size());
    for (std::size_t i = 0; i < ti.size(); ++i) vi[i] = a.eval(ti[i]);
    const double ei = fit_slope(ti, vi, ti.front(), ti.back());
    if (!std::isnan(ei) && ei > -5) s.at_inf = ei;
    return s;
}

MembershipInterval membership_A(const Kernel& a) {
    MembershipInterval A;
    const double b0 = a.beta0();
    A.hi = kInf;
    A.hi_included = false;
    if (b0 >= 1) {
        A.empty = true;
        return A;
    }
    A.lo = 1 / (1 - b0);
    A.lo_included = true;
    if (!exact_kernel(a) && b0 > 0) {
        const double e0 = kernel_slopes(a).at0;
        if (std::abs(e0 + b0) < kMargin) A.undecided = true;
    }
    return A;
}

MembershipInterval membership_B(const Kernel& a) {
    MembershipInterval B;
    B.lo = 1;
    B.lo_included = false;
    const Decay& d = a.decay();
    if (d.kind != DecayKind::power || d.beta >= 1) {
        B.hi = kInf;
        B.hi_included = true;
        return B;
    }
    if (d.beta == 0) {
        B.empty = true;
        return B;
    }
    B.hi = 1 / (1 - d.beta);
    B.hi_included = true;
    if (!exact_kernel(a)) {
        const auto ei = kernel_slopes(a).at_inf;
        if (ei && std::abs(*ei + d.beta) < kMargin) B.undecided = true;
    }
    return B;
}

namespace {

void add_checks(const Kernel& a, ClassificationReport& r) {
    const KernelSlopes s = kernel_slopes(a);
    r.checks.emplace_back("slope-at-0", std::abs(s.at0 + a.beta0()) < kMargin);
    const Decay& d = a.decay();
    bool ok;
    if (d.kind == DecayKind::power) ok = s.at_inf && std::abs(*s.at_inf + d.beta) < kMargin;
    else ok = !s.at_inf;
    r.checks.emplace_back("slope-at-inf", ok);
}

ClassificationReport base_report(const Kernel& a) {
    ClassificationReport r;
    r.A = membership_A(a);
    r.B = membership_B(a);
    r.p = r.A.empty ? kInf : r.A.lo;
    r.q = r.B.empty ? -kInf : r.B.hi;
    add_checks(a, r);
    return r;
}

void validate_pair(double xi, double eta) {
    if (xi == 1 && eta == 1) return;
    if (xi == kInf && eta == kInf) return;
    if (xi > 1 && xi < kInf && eta >= 1) return;
    throw std::invalid_argument("inadmissible index pair (xi, eta)");
}

}  // namespace

ClassificationReport classify(const Kernel& a) { return base_report(a); }

ClassificationReport classify(const Kernel& a, double xi, double eta) {
    validate_pair(xi, eta);
    ClassificationReport r = base_report(a);
    r.query = std::make_pair(xi, eta);
    auto none = [&](const char* label) {
        r.verdict = Verdict::NoPartner;
        r.case_label = label;
        return r;
    };
    if (xi == kInf) return none("vii");
    if (xi == 1) {
        r.case_label = "v";
        if (a.beta0() == 0) {
            r.verdict = Verdict::L1Optimal;
            r.partner = SpaceSpec::linf();
        } else {
            r.verdict = Verdict::NoPartner;
        }
        return r;
    }
    if (r.A.empty) return none("iv");
    if (r.B.empty) return none("vi");
    const double p = r.p, q = r.q;
    if (xi > p && xi < q) {
        r.verdict = Verdict::OptimalPartner;
        r.case_label = "i";
        r.partner = SpaceSpec::lorentz(conjugate(xi), eta);
        return r;
    }
    if (xi < p || xi > q) return none("ii");
    // xi is an endpoint
    const bool at_p = xi == p;
    const bool included = at_p ? r.A.lo_included : r.B.hi_included;
    const bool undecided = at_p ? r.A.undecided : r.B.undecided;
    if (undecided) {
        r.verdict = Verdict::PaperOpen;
        r.case_label = "boundary-undecided";
        return r;
    }
    if (!included) return none("iii");
    if (eta == 1) {
        r.verdict = Verdict::Bracketed;
        r.case_label = "endpoint";
        const double e = conjugate(xi);
        r.bracket = std::make_pair(SpaceSpec::lorentz(e, 1), SpaceSpec::lorentz(e, kInf));
        return r;
    }
    r.verdict = Verdict::PaperOpen;
    r.case_label = "endpoint";
    return r;
}

PowerProfile astarstar_profile(const Kernel& a) {
    PowerProfile g;
    g.e0 = -a.beta0();
    const Decay& d = a.decay();
    if (d.kind != DecayKind::power || d.beta > 1) {
        g.einf = -1;
    } else if (d.beta == 1) {
        g.einf = -1;
        g.log_inf = true;
    } else {
        g.einf = -d.beta;
    }
    return g;
}

bool existence_check(const Kernel& a, const SpaceSpec& X) {
    if (a.beta0() >= 1) return false;
    if (!a.analytic() && a.fn().empty()) return true;
    return profile_in(astarstar_profile(a), associate(X));
}

}  // namespace riop
