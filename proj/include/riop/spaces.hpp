#pragma once

#include <functional>
#include <string>

#include "riop/pwfun.hpp"
#include "riop/rearrange.hpp"

namespace riop {

enum class SpaceKind { Lorentz, MPhi, LambdaPhi, SmallM };

struct SpaceSpec {
    SpaceKind kind = SpaceKind::Lorentz;
    double p = 1;
    double q = 1;
    double gamma = 1;

    static SpaceSpec lorentz(double p, double q);
    static SpaceSpec l1() { return lorentz(1, 1); }
    static SpaceSpec linf() { return lorentz(kInf, kInf); }
    static SpaceSpec m_phi(double gamma);
    static SpaceSpec lambda_phi(double gamma);
    static SpaceSpec small_m(double gamma);

    bool is_lorentz() const { return kind == SpaceKind::Lorentz; }
    bool is_l1() const { return is_lorentz() && p == 1; }
    bool is_linf() const { return is_lorentz() && p == kInf; }
    bool is_weak() const { return is_lorentz() && q == kInf && p < kInf; }
    std::string literal() const;
    bool operator==(const SpaceSpec&) const = default;
};

SpaceSpec parse_space(const std::string& literal);
double conjugate(double p);  // p' with 1' = inf, inf' = 1

struct NormValue {
    double value = 0;
    bool exact = false;
    double rel_err = 0;
};

// The Lorentz functional is rho_{p,q}(f) = (int_0^inf (t^{1/p} f*(t))^q dt/t)^{1/q}.
NormValue norm(const PiecewisePowerFn& f, const SpaceSpec& X);
NormValue norm(const Distribution& d, const SpaceSpec& X);
NormValue norm(const TabulatedFn& f, const SpaceSpec& X);

// Norms of f* restricted by a window on the measure axis:
// mu'(l) = min(cap, (mu(l) - shift)_+), i.e. the rearrangement of
// f* chi_(0,cap) when shift = 0 and of f* chi_(shift,inf) when cap = inf.
NormValue windowed_norm(const Distribution& d, const SpaceSpec& X, double shift, double cap);

// sup_{l} l * min(cap, mu(l))^gamma  (m_phi / weak-type sup on a head window)
double weak_sup(const Distribution& d, double gamma, double cap = kInf);
// sup_{u >= from} f*(u) u^gamma
double tail_sup(const Distribution& d, double gamma, double from);

// Sup of t^w g(t) for a function given pointwise, on a log grid spanning
// [lo, hi] at per_decade density with golden refinement; the outermost two
// decades decide growth at either end (returns inf on growth).
struct SupScan {
    double value = 0;
    double argmax = 0;
    double grid_value = 0;  // max over the grid, ignoring growth
    bool growth0 = false;
    bool growth_inf = false;
};
SupScan sup_scan(const std::function<double(double)>& g, double w, double lo, double hi,
                 int per_decade = 64, Exec exec = Exec::serial);

double fundamental(const SpaceSpec& X, double t);
SpaceSpec associate(const SpaceSpec& X);
std::function<double(double)> dilation_norm_fn(const SpaceSpec& X);
double dilation_exponent(const SpaceSpec& X);  // E(X)(t) = t^e

struct RenormResult {
    bool ok = false;
    double constant = kInf;
};
RenormResult renorm_check(double gamma);

struct HolderReport {
    double pairing = 0;
    double norm_f = 0;
    double norm_g = 0;
    double constant = 1;
    double ratio = 0;
    bool ok = true;
};
HolderReport holder_check(const PiecewisePowerFn& f, const PiecewisePowerFn& g, const SpaceSpec& X);

// Recorded constants relating the normalized Lorentz functional
// rho_{p,q} / (p/q)^{1/q} to the endpoint spaces with phi = t^{1/p}:
// ||f||_M <= lower * normalized rho,  normalized rho <= upper * ||f||_Lambda.
struct SandwichConstants {
    double lower = 1;
    double upper = 1;
};
SandwichConstants sandwich_constants(double p, double q);
double lorentz_normalizer(double p, double q);      // (p/q)^{1/q}
double nesting_constant(double p, double q1, double q2);  // rho_{p,q2} <= C rho_{p,q1}

// Membership of a function behaving like t^e0 near 0 and t^einf near
// infinity (compact: vanishes for large t) in a Lorentz space.
struct PowerProfile {
    double e0 = 0;
    double einf = 0;
    bool compact = false;
    bool log_inf = false;  // extra log factor at infinity
};
bool profile_in(const PowerProfile& g, const SpaceSpec& X);

}  // namespace riop
