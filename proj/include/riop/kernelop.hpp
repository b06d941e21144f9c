#pragma once

#include <string>
#include <utility>

#include "riop/pwfun.hpp"
#include "riop/rearrange.hpp"

namespace riop {

enum class DecayKind { compact, power, rapid };

struct Decay {
    DecayKind kind = DecayKind::compact;
    double beta = 0;  // power decay exponent; 0 means a constant tail

    static Decay compact() { return {DecayKind::compact, 0}; }
    static Decay power(double b) { return {DecayKind::power, b}; }
    static Decay rapid() { return {DecayKind::rapid, 0}; }
    std::string literal() const;
};

Decay parse_decay(const std::string& s);

// Non-increasing kernel a on (0,inf) with declared asymptotics. Either an
// exact piecewise-power function or the built-in Laplace kernel e^{-t}.
class Kernel {
public:
    static Kernel piecewise(PiecewisePowerFn a, double beta0, Decay decay);
    // infers beta0 and decay from the outer pieces
    static Kernel from_fn(PiecewisePowerFn a);
    static Kernel laplace();

    bool analytic() const { return analytic_; }
    const PiecewisePowerFn& fn() const { return fn_; }
    double beta0() const { return beta0_; }
    const Decay& decay() const { return decay_; }
    const std::string& name() const { return name_; }

    double eval(double t) const;
    double primitive(double t) const;  // int_0^t a
    double l1_norm() const;
    // finite breakpoints of a (empty for the analytic kernel)
    std::vector<double> breakpoints() const;

private:
    PiecewisePowerFn fn_;
    double beta0_ = 0;
    Decay decay_;
    bool analytic_ = false;
    std::string name_ = "piecewise";
};

// S_a f(t) = int a(st) f(s) ds
double apply(const Kernel& a, const PiecewisePowerFn& f, double t);
// S_a(f*)(t) through the distribution of f
double apply_rearranged(const Kernel& a, const Distribution& d, double t);
TabulatedFn apply_tab(const Kernel& a, const PiecewisePowerFn& f, const GridSpec& grid,
                      Exec exec = Exec::parallel);
TabulatedFn apply_rearranged_tab(const Kernel& a, const Distribution& d, const GridSpec& grid,
                                 Exec exec = Exec::parallel);

// a1 = (a - a(1)) chi_(0,1),  a_inf = min(a(1), a)
std::pair<Kernel, Kernel> split(const Kernel& a);

double astarstar(const Kernel& a, double t);
// a** as a piecewise function (piecewise kernels only)
PiecewisePowerFn astarstar_fn(const Kernel& a);

// C = u * inf_{(0,u)} a with u the right end of the first piece clipped to (0,1]
struct ReversedConstant {
    double u = 1;
    double c = 0;
};
ReversedConstant reversed_constant(const Kernel& a);

struct SelfAdjointReport {
    double lhs = 0;  // int (S_a f) g
    double rhs = 0;  // int f (S_a g)
    double discrepancy = 0;
    bool skipped = false;
};
SelfAdjointReport selfadjoint_check(const Kernel& a, const PiecewisePowerFn& f,
                                    const PiecewisePowerFn& g);

}  // namespace riop
