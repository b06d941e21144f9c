#include "riop/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace riop {

namespace {

using nlohmann::json;

double number(const json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "Inf") return kInf;
    }
    throw ParseError(std::string("expected a number for ") + what);
}

json number_json(double x) {
    if (x == kInf) return "inf";
    return x;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace

PiecewisePowerFn function_from_json(const json& j) {
    if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array())
        throw ParseError("function descriptor needs a 'pieces' array");
    std::vector<Piece> pieces;
    try {
        for (const json& p : j["pieces"]) {
            if (!p.is_object()) throw ParseError("piece must be an object");
            const double lo = p.contains("lo") ? number(p["lo"], "lo") : 0.0;
            const double hi = number(p.at("hi"), "hi");
            if (!(lo >= 0) || !(lo < hi)) throw ParseError("piece needs 0 <= lo < hi");
            if (p.contains("atoms")) {
                std::vector<Atom> atoms;
                for (const json& a : p["atoms"]) {
                    if (!a.is_array() || a.size() != 2) throw ParseError("atom must be [coeff, expo]");
                    atoms.push_back({number(a[0], "coeff"), number(a[1], "expo")});
                }
                pieces.emplace_back(lo, hi, std::move(atoms));
            } else {
                const double c = number(p.at("coeff"), "coeff");
                const double e = p.contains("expo") ? number(p["expo"], "expo") : 0.0;
                if (!(c >= 0) || !std::isfinite(c) || !std::isfinite(e))
                    throw ParseError("coeff must be finite and >= 0");
                pieces.emplace_back(lo, hi, c, e);
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad piece: ") + e.what());
    }
    const bool noninc = j.value("nonincreasing", false);
    try {
        PiecewisePowerFn f(std::move(pieces), noninc);
        if (noninc && !sampled_nonincreasing(f)) throw ParseError("function flagged nonincreasing is not");
        return f;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

json function_to_json(const PiecewisePowerFn& f) {
    json pieces = json::array();
    for (const Piece& p : f.pieces()) {
        json jp{{"lo", p.lo}, {"hi", number_json(p.hi)}};
        if (p.single()) {
            jp["coeff"] = p.atoms.front().coeff;
            jp["expo"] = p.atoms.front().expo;
        } else {
            json atoms = json::array();
            for (const Atom& a : p.atoms) atoms.push_back({a.coeff, a.expo});
            jp["atoms"] = atoms;
        }
        pieces.push_back(jp);
    }
    return {{"pieces", pieces}, {"nonincreasing", f.nonincreasing()}};
}

PiecewisePowerFn load_function(const std::string& path) { return function_from_json(read_file(path)); }

Kernel kernel_from_json(const json& j) {
    if (j.is_object() && j.contains("builtin")) {
        if (j["builtin"] == "laplace") return Kernel::laplace();
        throw ParseError("unknown builtin kernel");
    }
    PiecewisePowerFn a = function_from_json(j);
    try {
        if (!j.contains("beta0") && !j.contains("decay")) return Kernel::from_fn(std::move(a));
        const double b0 = number(j.at("beta0"), "beta0");
        const Decay d = parse_decay(j.at("decay").get<std::string>());
        return Kernel::piecewise(std::move(a), b0, d);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

json kernel_to_json(const Kernel& a) {
    if (a.analytic()) return {{"builtin", a.name()}};
    json j = function_to_json(a.fn());
    j["beta0"] = a.beta0();
    j["decay"] = a.decay().literal();
    return j;
}

Kernel load_kernel(const std::string& path) { return kernel_from_json(read_file(path)); }

std::string format_double(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace riop
