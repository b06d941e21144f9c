#include "riop/rops.hpp"

#include <cmath>
#include <stdexcept>

namespace riop {

namespace {

double fundamental_exponent(const SpaceSpec& X) {
    if (X.is_lorentz()) return X.p == kInf ? 0.0 : 1 / X.p;
    return X.gamma;
}

}  // namespace

ROpConfig::ROpConfig(const SpaceSpec& X_, double gamma_) : X(X_), gamma(gamma_) {
    if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in (0,1]");
    a = fundamental_exponent(X);
}

ROpConfig ROpConfig::from_space(const SpaceSpec& X) {
    const double e = dilation_exponent(X);
    if (!(e > 0)) throw std::invalid_argument("E(X) is constant for this space; pass gamma");
    return ROpConfig(X, e);
}

double ROpConfig::psi(double t) const {
    if (!has_psi()) throw std::invalid_argument("psi undefined: X' has constant fundamental function");
    return std::pow(t, -gamma / (1 - a));
}

double ROpConfig::psi_tilde(double t) const {
    if (!has_psi_tilde()) throw std::invalid_argument("psi~ needs t/phi unbounded and X != Linf");
    return std::pow(t, (gamma - 1) / a);
}

double r_infty(const ROpConfig& cfg, const Distribution& d, double t) {
    if (!(t > 0)) throw std::invalid_argument("R needs t > 0");
    if (d.function().empty()) return 0;
    const double s = cfg.psi(t);
    const double head = d.head_integral(s);
    if (head == kInf) return kInf;
    const double tail = windowed_norm(d, cfg.X, s, kInf).value;
    return head + tail / cfg.phi(t);
}

double r_1(const ROpConfig& cfg, const Distribution& d, double t) {
    if (!(t > 0)) throw std::invalid_argument("R needs t > 0");
    if (d.function().empty()) return 0;
    return windowed_norm(d, cfg.X, 0, cfg.psi_tilde(t)).value / cfg.phi(t);
}

bool gate_r_infty(double gamma, const SpaceSpec& W) {
    return profile_in({0.0, -gamma, false, false}, W);
}

bool gate_r_1(double gamma, const SpaceSpec& W) {
    return profile_in({-gamma, -1.0, false, false}, W);
}

namespace {

struct Limit {
    bool known = false;
    double value = 0;
};

// lim_{t->0} t^w S_a f*(t) when a = c u^{-b0} exactly near 0
Limit small_t_limit(const Kernel& a, const Distribution& d, double w) {
    double c = 0, b0 = 0;
    if (a.analytic()) {
        c = 1;
    } else {
        const Piece& p = a.fn().pieces().front();
        if (!p.single()) return {};
        c = p.atoms.front().coeff;
        b0 = -p.atoms.front().expo;
    }
    if (std::abs(w - b0) > 1e-12) {
        if (w > b0) return {true, 0.0};
        return {};
    }
    // c * int s^{-b0} f*(s) ds = c * rho_{1/(1-b0),1}(f)
    if (b0 >= 1) return {true, kInf};
    const double r = 1 / (1 - b0);
    const SpaceSpec Y = r == 1 ? SpaceSpec::l1() : SpaceSpec::lorentz(r, 1);
    return {true, c * norm(d, Y).value};
}

}  // namespace

NormValue rho_opt(const Kernel& a, const Distribution& d, const SpaceSpec& X, const RhoOptions& opt) {
    if (d.function().empty()) return {0, true, 0};
    const SpaceSpec Xp = associate(X);
    auto g = [&](double t) { return apply_rearranged(a, d, t); };
    const bool sup_type = Xp.kind == SpaceKind::SmallM || Xp.is_weak() || Xp.is_linf();
    if (sup_type) {
        const double w = Xp.is_lorentz() ? (Xp.p == kInf ? 0.0 : 1 / Xp.p) : Xp.gamma;
        const Limit lim = small_t_limit(a, d, w);
        if (lim.known && lim.value == kInf) return {kInf, true, 0};
        const SupScan s = sup_scan(g, w, opt.lo, opt.hi, opt.per_decade, opt.exec);
        if (s.growth_inf || (s.growth0 && !lim.known)) return {kInf, false, 0};
        const double grid_max = s.growth0 ? s.grid_value : s.value;
        return {std::max(grid_max, lim.value), false, 1e-9};
    }
    GridSpec grid;
    grid.lo = opt.lo;
    grid.hi = opt.hi;
    grid.per_decade = opt.per_decade;
    const TabulatedFn tab = apply_rearranged_tab(a, d, grid, opt.exec);
    if (!tab.nonfinite.empty()) return {kInf, false, 0};
    NormValue n = norm(tab, Xp);
    n.exact = false;
    n.rel_err = std::max(n.rel_err, 1e-4);
    return n;
}

}  // namespace riop
