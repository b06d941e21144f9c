#include "riop/kfunc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riop {

double k_l1_linf(const Distribution& d, double t) {
    if (!(t > 0)) throw std::invalid_argument("K needs t > 0");
    if (d.function().empty()) return 0;
    return d.head_integral(t);
}

KBounds k_m_linf_bounds(const Distribution& d, double t, double gamma, bool with_oracle,
                        OracleOptions opt) {
    if (!(t > 0)) throw std::invalid_argument("K needs t > 0");
    if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in (0,1]");
    KBounds b;
    if (d.function().empty()) {
        if (with_oracle) b.oracle = 0.0;
        return b;
    }
    const double T = std::pow(t, 1 / gamma);
    b.lower = weak_sup(d, gamma, T);
    b.upper = 2 * b.lower;
    if (with_oracle) {
        opt.hints.push_back(d.rstar(T));
        b.oracle = k_oracle(d, t, SpaceSpec::small_m(gamma), SpaceSpec::linf(), opt).value;
    }
    return b;
}

namespace {

// ||f* chi_A||_{m_phi} + t ||f* chi_B||_{m_psi}, A = {u : u^{gphi-gpsi} < t}
double pair_value(const Distribution& d, double t, double gphi, double gpsi) {
    const double e = gphi - gpsi;
    if (e == 0) return t > 1 ? weak_sup(d, gphi) : t * weak_sup(d, gpsi);
    const double T = std::pow(t, 1 / e);
    if (e > 0) return weak_sup(d, gphi, T) + t * tail_sup(d, gpsi, T);
    return tail_sup(d, gphi, T) + t * weak_sup(d, gpsi, T);
}

}  // namespace

KBounds k_pair_m_bounds(const PiecewisePowerFn& f, double t, double gphi, double gpsi,
                        bool with_oracle, const OracleOptions& opt) {
    if (!(t > 0)) throw std::invalid_argument("K needs t > 0");
    KBounds b;
    if (f.empty()) {
        if (with_oracle) b.oracle = 0.0;
        return b;
    }
    const Distribution d(f);
    b.upper = pair_value(d, t, gphi, gpsi);
    b.lower = pair_value(Distribution(dilate(f, 0.5)), t, gphi, gpsi);
    if (with_oracle)
        b.oracle = k_oracle(d, t, SpaceSpec::small_m(gphi), SpaceSpec::small_m(gpsi), opt).value;
    return b;
}

namespace {

std::vector<double> oracle_levels(const Distribution& d, const OracleOptions& opt) {
    const PiecewisePowerFn& f = d.function();
    const auto bp = f.breakpoints();
    double m_lo = 1e-6, m_hi = 1e6;
    if (!bp.empty()) {
        m_lo = std::min(m_lo, bp.front() * 1e-3);
        m_hi = std::max(m_hi, bp.back() * 1e3);
    }
    const double top = d.ess_sup();
    double hi = top < kInf ? top : d.rstar(m_lo);
    double lo = d.rstar(m_hi);
    if (!(lo > 0)) lo = hi * 1e-12;
    std::vector<double> ls{0.0};
    if (hi > lo && lo > 0) {
        const int n = std::max(opt.levels, 2);
        const double r = std::log(hi / lo);
        for (int i = 0; i < n; ++i) ls.push_back(lo * std::exp(r * i / (n - 1)));
    }
    if (top < kInf) ls.push_back(top);
    for (double v : d.levels())
        if (v < kInf) ls.push_back(v);
    for (double v : opt.hints)
        if (v >= 0 && v < kInf) ls.push_back(v);
    std::sort(ls.begin(), ls.end());
    // near-duplicates make secant slopes meaningless
    ls.erase(std::unique(ls.begin(), ls.end(),
                         [](double a, double b) { return b - a <= 1e-12 * b; }),
             ls.end());
    return ls;
}

// lower bound for a convex function on each cell from the neighbouring secants
double convex_floor(const std::vector<double>& x, const std::vector<double>& c) {
    const std::size_t n = x.size();
    double floor = *std::min_element(c.begin(), c.end());
    if (n < 2) return floor;
    auto slope = [&](std::size_t i) { return (c[i + 1] - c[i]) / (x[i + 1] - x[i]); };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!std::isfinite(c[i]) || !std::isfinite(c[i + 1])) continue;
        const bool has_left = i > 0 && std::isfinite(c[i - 1]);
        const bool has_right = i + 2 < n && std::isfinite(c[i + 2]);
        double lb;
        if (has_left && has_right) {
            // line through (x_i, c_i) with slope s_{i-1}, line through (x_{i+1}, c_{i+1}) with slope s_{i+1}
            const double s1 = slope(i - 1), s2 = slope(i + 1);
            if (s2 > s1) {
                double xi = (c[i + 1] - c[i] + s1 * x[i] - s2 * x[i + 1]) / (s1 - s2);
                xi = std::clamp(xi, x[i], x[i + 1]);
                lb = c[i] + s1 * (xi - x[i]);
            } else {
                lb = std::min(c[i], c[i + 1]);
            }
        } else if (has_right) {
            lb = std::min(c[i + 1], c[i + 1] + slope(i + 1) * (x[i] - x[i + 1]));
        } else if (has_left) {
            lb = std::min(c[i], c[i] + slope(i - 1) * (x[i + 1] - x[i]));
        } else {
            lb = std::min(c[i], c[i + 1]);
        }
        floor = std::min(floor, lb);
    }
    return floor;
}

}  // namespace

OracleResult k_oracle(const Distribution& d, double t, const SpaceSpec& X0, const SpaceSpec& X1,
                      const OracleOptions& opt) {
    if (!(t > 0)) throw std::invalid_argument("K needs t > 0");
    OracleResult out;
    const PiecewisePowerFn& f = d.function();
    if (f.empty()) {
        out.value = 0;
        out.convex = true;
        return out;
    }
    const std::vector<double> ls = oracle_levels(d, opt);
    std::vector<double> cost(ls.size());
    const bool exact_pair = X0.is_l1() && X1.is_linf();
    const double top = d.ess_sup();
    for_each_index(ls.size(), opt.exec, [&](std::size_t i) {
        const double l = ls[i];
        if (exact_pair) {
            const double e = d.excess(l);
            cost[i] = e == kInf ? kInf : e + t * std::min(l, top);
            return;
        }
        // both assignments of the two truncation parts; keeps K(t;X0,X1) = t K(1/t;X1,X0)
        const Distribution ex(excess_part(f, l));
        const Distribution cap(capped_part(f, l));
        auto part = [&](const Distribution& g, const SpaceSpec& X, bool capped) {
            if (capped && l == 0) return 0.0;
            if (X.is_linf()) return capped ? std::min(l, top) : std::max(0.0, top - l);
            return norm(g, X).value;
        };
        double c = kInf;
        const double e0 = part(ex, X0, false);
        if (e0 < kInf) c = e0 + t * part(cap, X1, true);
        if (!(X0 == X1)) {
            const double e1 = part(ex, X1, false);
            if (e1 < kInf) c = std::min(c, part(cap, X0, true) + t * e1);
        }
        cost[i] = c;
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < ls.size(); ++i)
        if (cost[i] < cost[best]) best = i;
    std::vector<double> xs = ls;
    if (exact_pair && ls.size() > 2 && cost[best] < kInf) {
        // golden refinement of the convex cost around the grid minimum
        auto c = [&](double l) {
            const double e = d.excess(l);
            return e == kInf ? kInf : e + t * std::min(l, top);
        };
        double a = ls[best > 0 ? best - 1 : 0], b = ls[std::min(best + 1, ls.size() - 1)];
        const double g = 0.5 * (std::sqrt(5.0) - 1);
        double x1 = b - g * (b - a), x2 = a + g * (b - a);
        double c1 = c(x1), c2 = c(x2);
        std::vector<std::pair<double, double>> extra{{x1, c1}, {x2, c2}};
        for (int it = 0; it < 80 && b - a > 1e-15 * b; ++it) {
            if (c1 <= c2) {
                b = x2;
                x2 = x1;
                c2 = c1;
                x1 = b - g * (b - a);
                c1 = c(x1);
                extra.emplace_back(x1, c1);
            } else {
                a = x1;
                x1 = x2;
                c1 = c2;
                x2 = a + g * (b - a);
                c2 = c(x2);
                extra.emplace_back(x2, c2);
            }
        }
        std::vector<std::pair<double, double>> all;
        for (std::size_t i = 0; i < ls.size(); ++i) all.emplace_back(ls[i], cost[i]);
        all.insert(all.end(), extra.begin(), extra.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end(),
                              [](const auto& u, const auto& v) { return v.first - u.first <= 1e-12 * v.first; }),
                  all.end());
        xs.clear();
        cost.clear();
        for (auto& [x, y] : all) {
            xs.push_back(x);
            cost.push_back(y);
        }
        best = 0;
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (cost[i] < cost[best]) best = i;
    }
    out.value = cost[best];
    out.lambda = xs[best];
    out.convex = exact_pair;
    if (out.value < kInf) out.resolution = std::max(0.0, out.value - convex_floor(xs, cost));
    return out;
}

}  // namespace riop
