#pragma once

#include <cmath>

#include "riop/kernelop.hpp"
#include "riop/rearrange.hpp"
#include "riop/spaces.hpp"

namespace riop {

// phi(t) = t^gamma against X with fundamental function t^a (a = 1/p);
// psi(t) = t^{-gamma/(1-a)},  psi~(t) = t^{(gamma-1)/a}.
struct ROpConfig {
    SpaceSpec X;
    double gamma = 1;
    double a = 0;

    ROpConfig(const SpaceSpec& X, double gamma);
    static ROpConfig from_space(const SpaceSpec& X);  // phi = E(X)

    double phi(double t) const { return std::pow(t, gamma); }
    bool has_psi() const { return a < 1; }
    bool has_psi_tilde() const { return a > 0 && gamma < 1; }
    double psi(double t) const;
    double psi_tilde(double t) const;
};

double r_infty(const ROpConfig& cfg, const Distribution& d, double t);
double r_1(const ROpConfig& cfg, const Distribution& d, double t);

// min{1/phi, 1} in W  and  min{1/phi, 1/t} in W
bool gate_r_infty(double gamma, const SpaceSpec& W);
bool gate_r_1(double gamma, const SpaceSpec& W);

struct RhoOptions {
    double lo = 1e-8;
    double hi = 1e8;
    int per_decade = 32;
    Exec exec = Exec::parallel;
};

// ||S_a f*||_{X'}
NormValue rho_opt(const Kernel& a, const Distribution& d, const SpaceSpec& X, const RhoOptions& opt = {});

}  // namespace riop
