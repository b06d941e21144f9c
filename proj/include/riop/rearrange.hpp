#pragma once

#include <cstddef>
#include <vector>

#include "riop/pwfun.hpp"

namespace riop {

struct RearrangementResult {
    double value = 0;
    double width = 0;  // bisection bracket width certificate (0 on exact paths)
};

// Asymptotic shape of f near 0 and infinity, read off the outer pieces.
struct TailInfo {
    bool unbounded = false;     // f -> inf as t -> 0
    double expo0 = 0;           // dominant exponent at 0 when unbounded
    double coeff0 = 0;
    bool infinite_measure = false;  // a piece reaches infinity with positive value
    double level_inf = 0;       // lim f at infinity (measure infinite below it)
    bool power_tail = false;    // decays like coeff_inf * t^expo_inf, expo_inf < 0
    double expo_inf = 0;
    double coeff_inf = 0;
};

// Distribution function mu(l) = |{|f| > l}| of a piecewise-power function,
// with the level axis cut at the piece endpoint values. Between consecutive
// cut levels mu is continuous and strictly decreasing or constant.
class Distribution {
public:
    explicit Distribution(PiecewisePowerFn f);

    const PiecewisePowerFn& function() const { return f_; }
    double measure(double lambda) const;     // |{f > l}|
    double measure_ge(double lambda) const;  // |{f >= l}|
    // Continuous branch of mu on level interval k, extended to its closure.
    double branch(std::size_t k, double lambda) const;

    const std::vector<double>& levels() const { return levels_; }  // 0 = v0 < ... (may end in inf)
    std::size_t interval_count() const { return levels_.size() - 1; }
    double ess_sup() const { return sup_; }
    const TailInfo& tails() const { return tails_; }

    double rstar(double t) const;
    RearrangementResult rstar_certified(double t) const;
    double excess(double lambda) const;     // integral of (f - l)_+
    double head_integral(double t) const;   // integral of f* over (0,t)
    double dstar(double t) const;

private:
    double sum_measure(double lambda, double ref, bool ge) const;

    PiecewisePowerFn f_;
    std::vector<double> levels_;
    double sup_ = 0;
    TailInfo tails_;
    bool simple_ = false;
    bool rearranged_ = false;
};

double dist(const PiecewisePowerFn& f, double lambda);
double rstar(const PiecewisePowerFn& f, double t);
double dstar(const PiecewisePowerFn& f, double t);

struct TabRearrangement {
    TabulatedFn fn;
    bool mass_outside_flag = false;
    double outside_fraction = 0;
};

TabRearrangement rstar_tab(const TabulatedFn& f);

}  // namespace riop
