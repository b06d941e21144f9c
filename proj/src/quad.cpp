#include "riop/quad.hpp"

// nodes may round onto a finite endpoint; integrands here are finite there
#define BOOST_DISABLE_ASSERTS

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace riop::quad {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

boost::math::quadrature::tanh_sinh<double>& ts() {
    thread_local boost::math::quadrature::tanh_sinh<double> rule(12);
    return rule;
}

boost::math::quadrature::exp_sinh<double>& es() {
    thread_local boost::math::quadrature::exp_sinh<double> rule(12);
    return rule;
}

Result finish(double v, double err) {
    Result r;
    r.value = v;
    r.error = err;
    r.ok = std::isfinite(v);
    if (!r.ok) r.value = inf;
    return r;
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (!(a < b)) return {};
    try {
        double err = 0, l1 = 0;
        if (b == inf) {
            if (a == 0) {
                const Result head = integrate(f, 0, 1, rel_tol);
                const Result tail = integrate(f, 1, inf, rel_tol);
                return finish(head.value + tail.value, head.error + tail.error);
            }
            const double v = es().integrate(f, a, inf, rel_tol, &err, &l1);
            return finish(v, err);
        }
        const double v = ts().integrate(f, a, b, rel_tol, &err, &l1);
        return finish(v, err);
    } catch (const std::exception&) {
        Result r;
        r.value = inf;
        r.ok = false;
        return r;
    }
}

Result integrate_breaks(const std::function<double(double)>& f, const std::vector<double>& breaks,
                        double rel_tol) {
    Result total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const Result r = integrate(f, breaks[i], breaks[i + 1], rel_tol);
        total.value += r.value;
        total.error += r.error;
        total.ok = total.ok && r.ok;
    }
    if (!std::isfinite(total.value)) total.ok = false;
    return total;
}

double maximize_log(const std::function<double(double)>& f, double a, double b, int samples,
                    double* argmax) {
    const double ua = std::log(a), ub = std::log(b);
    samples = std::max(samples, 3);
    double best = -inf, best_u = ua;
    int best_i = 0;
    std::vector<double> us(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double u = ua + (ub - ua) * i / (samples - 1);
        us[static_cast<std::size_t>(i)] = u;
        const double v = f(std::exp(u));
        if (v > best) {
            best = v;
            best_u = u;
            best_i = i;
        }
    }
    if (best == inf) {
        if (argmax) *argmax = std::exp(best_u);
        return inf;
    }
    double lo = us[static_cast<std::size_t>(std::max(best_i - 1, 0))];
    double hi = us[static_cast<std::size_t>(std::min(best_i + 1, samples - 1))];
    const double g = 0.5 * (std::sqrt(5.0) - 1);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(std::exp(x1)), f2 = f(std::exp(x2));
    for (int it = 0; it < 100 && hi - lo > 1e-14 * (1 + std::abs(lo)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(std::exp(x2));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(std::exp(x1));
        }
    }
    if (f1 > best) {
        best = f1;
        best_u = x1;
    }
    if (f2 > best) {
        best = f2;
        best_u = x2;
    }
    if (argmax) *argmax = std::exp(best_u);
    return best;
}

}  // namespace riop::quad
