#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "riop/kernelop.hpp"
#include "riop/pwfun.hpp"

namespace riop {

using Rng = std::mt19937_64;

struct GenProfile {
    int max_pieces = 6;
    double expo_lo = -0.9;
    double expo_hi = 2;
    // exponent range for a piece reaching infinity; NaN: [expo_lo, min(0, expo_hi)]
    // so that generated f stays in L1+Linf
    double inf_expo_lo = std::numeric_limits<double>::quiet_NaN();
    double inf_expo_hi = std::numeric_limits<double>::quiet_NaN();
    double coeff_lo = 0.1;
    double coeff_hi = 10;
    double bp_lo = 1e-3;
    double bp_hi = 1e3;
    double p_touch0 = 0.5;
    double p_inf = 0.5;
    double p_gap = 0.3;
    double p_noninc = 0.5;
};

PiecewisePowerFn gen_function(Rng& rng, const GenProfile& prof = {});
PiecewisePowerFn gen_function(std::uint64_t seed, const GenProfile& prof = {});

struct KernelProfile {
    double beta0_max = 0.9;
    double p_bounded = 0.3;     // beta0 = 0
    double beta_inf_lo = 0.2;
    double beta_inf_hi = 3;
    double p_compact = 0.3;
    int max_pieces = 4;
};

Kernel gen_kernel(Rng& rng, const KernelProfile& prof = {});

double uniform(Rng& rng, double a, double b);
double log_uniform(Rng& rng, double a, double b);

struct Trial {
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;
    bool violated = false;
    bool degenerate = false;
    bool skipped = false;
    nlohmann::json witness;
};

// lhs <= rhs * (1 + rel_tol); non-finite sides land in the degenerate bucket
Trial leq(double lhs, double rhs, double rel_tol, nlohmann::json witness = {});

// relative slack for exact paths and for comparisons against quadrature
struct Tolerances {
    double exact = 1e-9;
    double quad = 1e-6;
};

struct PropertySpec {
    std::string name;
    std::string anchor;  // registry inequality the property is bound to
    bool hard = true;
    std::size_t default_trials = 100;
    std::function<Trial(Rng&, const Tolerances&)> run;
};

struct PropertyReport {
    std::string name;
    std::string anchor;
    bool hard = true;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t flagged = 0;
    std::size_t degenerate = 0;
    std::size_t skipped = 0;
    double worst_ratio = 0;
    std::size_t worst_index = 0;
    nlohmann::json witness;
    std::vector<Trial> rows;

    bool ok() const { return !hard || flagged == 0; }
};

struct RunOptions {
    std::size_t trials = 0;  // 0: the property's default
    std::uint64_t seed = 42;
    Exec exec = Exec::parallel;
    bool keep_rows = false;
    Tolerances tol;
};

PropertyReport run_property(const PropertySpec& spec, const RunOptions& opt = {});

// inequalities that must each carry at least one property
const std::vector<std::string>& registry_anchors();
const std::vector<PropertySpec>& registry();
const PropertySpec* find_property(const std::string& name);
std::vector<std::string> uncovered_anchors();

std::string report_text(const PropertyReport& r);
std::string report_csv_header();
std::string report_csv_rows(const PropertyReport& r);

}  // namespace riop
