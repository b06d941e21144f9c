#pragma once

#include <functional>
#include <vector>

namespace riop::quad {

struct Result {
    double value = 0;
    double error = 0;
    bool ok = true;
};

// Integral over [a,b] with 0 <= a < b <= inf; double-exponential rules
// handle algebraic endpoint singularities. Non-finite results set ok=false.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

// Sum over consecutive break intervals (breaks sorted, may start at 0 and end at inf).
Result integrate_breaks(const std::function<double(double)>& f, const std::vector<double>& breaks,
                        double rel_tol = 1e-12);

// Maximize a function that is unimodal near its maximum on [a,b] (log-spaced
// scan followed by golden-section refinement). a > 0, b finite.
double maximize_log(const std::function<double(double)>& f, double a, double b, int samples,
                    double* argmax = nullptr);

}  // namespace riop::quad
