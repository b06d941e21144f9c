#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "riop/parallel.hpp"

namespace riop {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// c * t^expo
struct Atom {
    double coeff;
    double expo;
};

// Integral of c*t^alpha over [a,b], 0 <= a < b <= inf. Divergent -> +-inf.
double atom_integral(double coeff, double expo, double a, double b);

// A piece is a short sum of power atoms on (lo, hi]. Pieces built through the
// public constructors are monotone on their interval.
struct Piece {
    double lo = 0;
    double hi = kInf;
    std::vector<Atom> atoms;

    Piece() = default;
    Piece(double lo, double hi, double coeff, double expo);
    Piece(double lo, double hi, std::vector<Atom> atoms);

    double eval(double t) const;
    double length() const { return hi - lo; }
    double lim_lo() const;  // t -> lo+
    double lim_hi() const;  // t -> hi-
    double min_expo() const;
    double max_expo() const;
    // leading coefficient as t -> 0 (min exponent) and t -> inf (max exponent)
    double lead_lo() const;
    double lead_hi() const;
    int trend() const;  // -1 decreasing, 0 constant, +1 increasing
    bool single() const { return atoms.size() == 1; }
    double integral(double a, double b) const;
    // point in [lo,hi] where the piece crosses level v, v between the limits
    double inverse(double v) const;
};

class PiecewisePowerFn {
public:
    PiecewisePowerFn() = default;
    explicit PiecewisePowerFn(std::vector<Piece> pieces, bool nonincreasing = false);

    static PiecewisePowerFn zero() { return {}; }
    static PiecewisePowerFn indicator(double lo, double hi, double height = 1.0);
    static PiecewisePowerFn power(double lo, double hi, double coeff, double expo);

    double eval(double t) const;
    double operator()(double t) const { return eval(t); }
    double integrate(double lo, double hi) const;

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    bool nonincreasing() const { return nonincreasing_; }
    int sign() const { return sign_; }
    void set_sign(int s) { sign_ = s < 0 ? -1 : 1; }

    // already equal to its decreasing rearrangement (up to a null set)
    bool is_rearranged() const;
    double sup() const;
    // Finite breakpoints, sorted.
    std::vector<double> breakpoints() const;
    double support_measure() const;
    bool touches_zero() const { return !pieces_.empty() && pieces_.front().lo == 0; }
    bool reaches_infinity() const { return !pieces_.empty() && pieces_.back().hi == kInf; }

private:
    std::vector<Piece> pieces_;
    bool nonincreasing_ = false;
    int sign_ = 1;
};

PiecewisePowerFn dilate(const PiecewisePowerFn& f, double t);  // E_t f = f(./t)
PiecewisePowerFn scale(const PiecewisePowerFn& f, double c);
PiecewisePowerFn add(const PiecewisePowerFn& f, const PiecewisePowerFn& g);
PiecewisePowerFn restrict_to(const PiecewisePowerFn& f, double lo, double hi);
PiecewisePowerFn excess_part(const PiecewisePowerFn& f, double lambda);  // (f-lambda)_+
PiecewisePowerFn capped_part(const PiecewisePowerFn& f, double lambda);  // min(f, lambda)
double integrate_product(const PiecewisePowerFn& f, const PiecewisePowerFn& g);
bool sampled_nonincreasing(const PiecewisePowerFn& f);

struct GridSpec {
    double lo = 1e-6;
    double hi = 1e6;
    int per_decade = 64;
    std::vector<double> explicit_points;  // used when non-empty

    std::vector<double> points() const;
};

std::vector<double> log_grid(double lo, double hi, int per_decade);

struct TabulatedFn {
    std::vector<double> grid;
    std::vector<double> values;
    double tail0 = 0;
    std::optional<double> tail_inf;  // nullopt: rapid
    std::vector<std::size_t> nonfinite;  // indices of +inf samples

    double eval(double t) const;
    // log-log interpolation is exact on each cell as a power; tails from the
    // declared exponents.
    PiecewisePowerFn to_piecewise() const;
};

struct TabulateOptions {
    Exec exec = Exec::parallel;
    bool allow_infinite = false;
};

double fit_slope(const std::vector<double>& t, const std::vector<double>& v,
                 double from, double to);

TabulatedFn tabulate(const std::function<double(double)>& fn, const GridSpec& grid,
                     TabulateOptions opt = {});
TabulatedFn tabulate(const PiecewisePowerFn& fn, const GridSpec& grid,
                     TabulateOptions opt = {});

}  // namespace riop
