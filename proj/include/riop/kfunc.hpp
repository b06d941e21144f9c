#pragma once

#include <optional>
#include <vector>

#include "riop/rearrange.hpp"
#include "riop/spaces.hpp"

namespace riop {

struct KBounds {
    double lower = 0;
    double upper = 0;
    std::optional<double> oracle;
};

struct OracleOptions {
    int levels = 512;
    std::vector<double> hints;  // extra truncation levels
    Exec exec = Exec::parallel;
};

// K(f,t;L1,Linf) = int_0^t f*
double k_l1_linf(const Distribution& d, double t);

// sup_{s < t^{1/gamma}} f*(s) s^gamma and twice it
KBounds k_m_linf_bounds(const Distribution& d, double t, double gamma, bool with_oracle = false,
                        OracleOptions opt = {});

// Raw bounds for K(f,t;m_phi,m_psi) with phi = u^gphi, psi = u^gpsi; the
// lower one is taken on f(2.), unknown constants reported as 1.
KBounds k_pair_m_bounds(const PiecewisePowerFn& f, double t, double gphi, double gpsi,
                        bool with_oracle = false, const OracleOptions& opt = {});

struct OracleResult {
    double value = kInf;
    double lambda = 0;       // minimizing truncation level
    double resolution = 0;   // gap to a lower bound for the true minimum (convex costs)
    bool convex = false;     // resolution is a certified bound
};

// min of ||g||_X0 + t ||h||_X1 over truncation levels l, with {g,h} = {(|f|-l)_+, min(|f|,l)}
// in either order
OracleResult k_oracle(const Distribution& d, double t, const SpaceSpec& X0, const SpaceSpec& X1,
                      const OracleOptions& opt = {});

}  // namespace riop
