#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "riop/kernelop.hpp"
#include "riop/pwfun.hpp"

namespace riop {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// {"pieces":[{"lo":0,"hi":"inf","coeff":1,"expo":-0.5}], "nonincreasing":true}
// A piece may carry "atoms":[[c,e],...] instead of coeff/expo.
PiecewisePowerFn function_from_json(const nlohmann::json& j);
nlohmann::json function_to_json(const PiecewisePowerFn& f);
PiecewisePowerFn load_function(const std::string& path);

// function descriptor plus "beta0" and "decay", or {"builtin":"laplace"}
Kernel kernel_from_json(const nlohmann::json& j);
nlohmann::json kernel_to_json(const Kernel& a);
Kernel load_kernel(const std::string& path);

std::string format_double(double x);  // 17 significant digits, inf as "inf"

}  // namespace riop
