#pragma once

// Independent reference computations for single-atom piecewise powers.
// Nothing here calls into the library's rearrangement, norm or quadrature code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "riop/pwfun.hpp"

namespace oracle {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct Atomic {
    double lo, hi, c, e;
};

inline std::vector<Atomic> atoms_of(const riop::PiecewisePowerFn& f) {
    std::vector<Atomic> out;
    for (const auto& p : f.pieces()) out.push_back({p.lo, p.hi, p.atoms.at(0).coeff, p.atoms.at(0).expo});
    return out;
}

// int_a^b c t^e
inline double power_int(double c, double e, double a, double b) {
    if (a >= b || c == 0) return 0;
    if (e == -1) {
        if (a == 0 || b == inf) return inf;
        return c * std::log(b / a);
    }
    const double k = e + 1;
    if (a == 0 && k < 0) return inf;
    if (b == inf && k > 0) return inf;
    const double fb = b == inf ? 0 : std::pow(b, k);
    const double fa = a == 0 ? 0 : std::pow(a, k);
    return c * (fb - fa) / k;
}

// {c t^e > l} inside (lo,hi] as an interval
inline std::pair<double, double> above(const Atomic& p, double l) {
    if (p.e == 0) return p.c > l ? std::pair{p.lo, p.hi} : std::pair{p.lo, p.lo};
    const double r = std::pow(l / p.c, 1 / p.e);
    if (p.e < 0) return {p.lo, std::clamp(r, p.lo, p.hi)};
    return {std::clamp(r, p.lo, p.hi), p.hi};
}

inline double measure(const std::vector<Atomic>& f, double l) {
    double m = 0;
    for (const auto& p : f) {
        const auto [a, b] = above(p, l);
        m += b - a;
    }
    return m;
}

// int (f - l)_+
inline double excess(const std::vector<Atomic>& f, double l) {
    double s = 0;
    for (const auto& p : f) {
        const auto [a, b] = above(p, l);
        if (b <= a) continue;
        if (b == inf && l > 0 && p.e >= 0) return inf;
        s += power_int(p.c, p.e, a, b) - (b == inf ? 0 : l * (b - a));
    }
    return s;
}

inline double sup(const std::vector<Atomic>& f) {
    double s = 0;
    for (const auto& p : f) {
        const double a = p.e == 0 ? p.c : p.e < 0 ? (p.lo == 0 ? inf : p.c * std::pow(p.lo, p.e))
                                               : (p.hi == inf ? inf : p.c * std::pow(p.hi, p.e));
        s = std::max(s, a);
    }
    return s;
}

// f*(t) by bisection on the level axis
inline double rstar(const std::vector<Atomic>& f, double t) {
    double lo = 0, hi = sup(f);
    if (hi == inf) {
        hi = 1;
        while (measure(f, hi) > t) hi *= 2;
    }
    if (measure(f, 0) <= t) return 0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (measure(f, mid) > t ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    return hi;
}

// int_0^t f* = min_l (int (f-l)_+ + t l), attained at l = f*(t)
inline double head(const std::vector<Atomic>& f, double t) {
    const double l = rstar(f, t);
    return excess(f, l) + t * l;
}

// Composite Gauss-Legendre (5 nodes) on `panels` log-spaced panels of [a,b], 0 < a < b < inf.
inline double log_gauss(const std::function<double(double)>& g, double a, double b, int panels = 4096) {
    static const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0, 0.5384693101056831,
                                0.9061798459386640};
    static const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                0.4786286704993665, 0.2369268850561891};
    const double la = std::log(a), lb = std::log(b), h = (lb - la) / panels;
    double s = 0;
    for (int i = 0; i < panels; ++i) {
        const double mid = la + (i + 0.5) * h;
        for (int k = 0; k < 5; ++k) {
            const double u = std::exp(mid + 0.5 * h * x[k]);
            s += w[k] * g(u) * u;
        }
    }
    return s * 0.5 * h;
}

// int_a^b g for g behaving like a pure power near 0 (a == 0) and near inf (b == inf):
// log-scale panels over the bulk, exact power closures for what lies beyond.
inline double power_like(const std::function<double(double)>& g, double a, double b, int panels = 4000) {
    auto closure = [&](double x, double y) {
        // g ~ g(x) (s/x)^k with k fitted between x and y
        const double gx = g(x), gy = g(y);
        if (gx == 0) return 0.0;
        const double k = std::log(gy / gx) / std::log(y / x);
        return gx * x / std::abs(k + 1);
    };
    double lo = a, hi = b, extra = 0;
    if (a == 0) {
        lo = (b == inf ? 1.0 : b) * 1e-12;
        extra += closure(lo, lo * 0.1);
    }
    if (b == inf) {
        hi = std::max(lo, 1.0) * 1e12;
        extra += closure(hi, hi * 10);
    }
    return log_gauss(g, lo, hi, panels) + extra;
}

// rho_{p,1}(f) = int t^{1/p - 1} f(t) dt for non-increasing f (f = f*)
inline double lorentz_p1_noninc(const std::vector<Atomic>& f, double p) {
    double s = 0;
    for (const auto& a : f) s += power_int(a.c, a.e + 1 / p - 1, a.lo, a.hi);
    return s;
}

inline bool close(double a, double b, double rel) {
    if (a == b) return true;
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace oracle
