#include "riop/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "riop/quad.hpp"

namespace riop {

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * (1 + std::abs(a) + std::abs(b)); }

void check_gamma(double g) {
    if (!(g > 0 && g <= 1)) throw std::invalid_argument("gamma must lie in (0,1]");
}

std::string num(double x) {
    if (x == kInf) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_number(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
    const auto slash = s.find('/');
    std::size_t used = 0;
    if (slash != std::string::npos) {
        const double a = std::stod(s.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("bad number");
        const std::string rest = s.substr(slash + 1);
        const double b = std::stod(rest, &used);
        if (used != rest.size() || b == 0) throw std::invalid_argument("bad number");
        return a / b;
    }
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number");
    return v;
}

// Level axis of a distribution with a measure window, cut at every level
// where the window clamps switch on or off.
struct LevelView {
    const Distribution& d;
    double shift = 0;
    double cap = kInf;
    std::vector<double> cuts;
    double top = 0;
    bool ceiling = false;  // levels above top excluded on purpose

    LevelView(const Distribution& dist, double s, double c) : d(dist), shift(s), cap(c) {
        cuts = d.levels();
        top = shift > 0 ? d.rstar(shift) : d.ess_sup();
        if (shift > 0) cuts.push_back(top);
        if (cap < kInf) cuts.push_back(d.rstar(shift + cap));
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::erase_if(cuts, [&](double v) { return v > top; });
        if (cuts.empty() || cuts.back() < top) cuts.push_back(top);
    }

    double clampm(double m) const { return std::min(cap, std::max(0.0, m - shift)); }

    // window measure on augmented interval j, continuous on the closure
    double at(std::size_t j, double lambda) const {
        const auto& lv = d.levels();
        const double probe = cuts[j];
        std::size_t k = static_cast<std::size_t>(std::upper_bound(lv.begin(), lv.end(), probe) - lv.begin());
        k = k == 0 ? 0 : k - 1;
        if (k >= d.interval_count()) k = d.interval_count() - 1;
        return clampm(d.branch(k, lambda));
    }

    bool infinite_low() const { return cap == kInf && d.tails().infinite_measure; }
    bool power_low() const { return cap == kInf && d.tails().power_tail; }
    bool singular_high() const { return shift == 0 && !ceiling && d.tails().unbounded; }

    void clip_top(double level) {
        if (level >= top) return;
        top = level;
        ceiling = true;
        std::erase_if(cuts, [&](double v) { return v > top; });
        if (cuts.empty() || cuts.back() < top) cuts.push_back(top);
    }
};

// p * int l^{q-1} m(l)^{q/p} dl, returned as rho^q
quad::Result lorentz_integral(const LevelView& v, double p, double q) {
    quad::Result total;
    // above the last finite cut only the singular first piece c t^e is
    // left, mu = (l/c)^{1/e}; slowly decaying tails defeat quadrature there
    const auto& pcs = v.d.function().pieces();
    const bool power_top = v.singular_high() && !pcs.empty() && pcs.front().lo == 0 &&
                           pcs.front().single() && pcs.front().atoms.front().expo < 0;
    for (std::size_t j = 0; j + 1 < v.cuts.size(); ++j) {
        const double a = v.cuts[j], b = v.cuts[j + 1];
        if (power_top && b == kInf && a > 0 && a >= pcs.front().lim_hi()) {
            const Atom& at = pcs.front().atoms.front();
            const double e = q / (p * at.expo);
            // int_a^inf l^{q-1+e} dl with c^{-e}, in logs: tiny exponents overflow both factors
            const double k = q + e;
            if (k >= 0) {
                total.value = kInf;
                total.ok = false;
                return total;
            }
            total.value += p * std::exp(-e * std::log(at.coeff) + k * std::log(a)) / -k;
            continue;
        }
        const TailInfo& tl = v.d.tails();
        auto integrand = [&](double l) {
            double lm = 0;
            const double m = v.at(j, l);
            if (m <= 0) return 0.0;
            if (std::isfinite(m)) {
                lm = std::log(m);
            } else if (v.power_low() && l > 0) {
                // mu overflowed near level 0: power tail t^e gives mu ~ (l/c)^{1/e}
                lm = (std::log(l) - std::log(tl.coeff_inf)) / tl.expo_inf;
            } else {
                return kInf;
            }
            return p * std::exp((q - 1) * std::log(l) + q / p * lm);
        };
        const quad::Result r = quad::integrate(integrand, a, b);
        total.value += r.value;
        total.error += r.error;
        total.ok = total.ok && r.ok;
    }
    return total;
}

// sup over levels of l * m(l)^g with analytic limits at both ends
double level_sup(const LevelView& v, double g) {
    const TailInfo& tl = v.d.tails();
    if (v.infinite_low()) return kInf;
    double best = 0;
    if (v.power_low()) {
        const double ex = 1 + 1 / (tl.expo_inf / g);
        if (ex < -1e-12) return kInf;
        if (close(ex, 0)) best = std::max(best, std::pow(tl.coeff_inf, -g / tl.expo_inf));
    }
    if (v.singular_high()) {
        const double ex = 1 + g / tl.expo0;
        if (ex > 1e-12) return kInf;
        if (close(ex, 0)) best = std::max(best, tl.coeff0);
    }
    for (std::size_t j = 0; j + 1 < v.cuts.size(); ++j) {
        double a = v.cuts[j], b = v.cuts[j + 1];
        auto G = [&](double l) {
            const double m = v.at(j, l);
            if (m <= 0) return 0.0;
            if (m == kInf) return kInf;
            return l * std::pow(m, g);
        };
        if (b < kInf) best = std::max(best, G(b));
        if (a > 0) best = std::max(best, G(a));
        if (b == kInf) b = std::max(a, 1.0) * 1e12;
        if (a == 0) a = b * 1e-14;
        const int samples = 48 + static_cast<int>(8 * std::log10(b / a));
        best = std::max(best, quad::maximize_log(G, a, b, samples));
        if (best == kInf) return kInf;
    }
    return best;
}

NormValue lorentz_norm(const Distribution& d, double p, double q, double shift, double cap) {
    const LevelView v(d, shift, cap);
    const TailInfo& tl = d.tails();
    if (p == kInf) {
        NormValue r;
        r.value = v.top;
        r.exact = true;
        return r;
    }
    if (q == kInf) return {level_sup(v, 1 / p), false, 1e-12};
    if (v.infinite_low()) return {kInf, true, 0};
    if (v.power_low() && !(tl.expo_inf < -1 / p && !close(tl.expo_inf, -1 / p))) return {kInf, true, 0};
    if (v.singular_high() && !(tl.expo0 > -1 / p && !close(tl.expo0, -1 / p))) return {kInf, true, 0};

    const PiecewisePowerFn& f = d.function();
    if (shift == 0 && cap == kInf && close(p, q)) {
        bool single = true;
        for (const Piece& pc : f.pieces()) single = single && pc.single();
        if (single) {
            double s = 0;
            for (const Piece& pc : f.pieces()) {
                const Atom& a = pc.atoms.front();
                s += Piece(pc.lo, pc.hi, std::pow(a.coeff, p), a.expo * p).integral(pc.lo, pc.hi);
            }
            return {std::pow(s, 1 / p), true, 0};
        }
    }
    const quad::Result r = lorentz_integral(v, p, q);
    if (!r.ok) return {kInf, false, 0};
    const double val = std::pow(r.value, 1 / q);
    return {val, false, r.value > 0 ? r.error / r.value / q : 0};
}

NormValue big_m_norm(const Distribution& d, double g) {
    const TailInfo& tl = d.tails();
    if (d.function().empty()) return {0, true, 0};
    if (g == 1) return {d.function().integrate(0, kInf), true, 0};
    if (tl.infinite_measure) return {kInf, true, 0};
    double best = 0;
    if (tl.unbounded) {
        if (tl.expo0 <= -1 || tl.expo0 < -g - 1e-12) return {kInf, true, 0};
        if (close(tl.expo0, -g)) best = tl.coeff0 / (1 + tl.expo0);
    }
    if (tl.power_tail && tl.expo_inf > -1) {
        if (tl.expo_inf + g > 1e-12) return {kInf, true, 0};
        if (close(tl.expo_inf, -g)) best = std::max(best, tl.coeff_inf / (1 + tl.expo_inf));
    }
    std::vector<double> ts;
    for (double l : d.levels()) {
        for (double m : {d.measure(l), d.measure_ge(l)})
            if (m > 0 && m < kInf) ts.push_back(m);
    }
    // the hump of t^{g-1} H(t) sits near the scale of the pieces, not only of the level cuts
    for (double b : d.function().breakpoints()) ts.push_back(b);
    for (const Piece& p : d.function().pieces())
        if (p.length() < kInf) ts.push_back(p.length());
    double lo = 1, hi = 1;
    if (!ts.empty()) {
        lo = *std::min_element(ts.begin(), ts.end());
        hi = *std::max_element(ts.begin(), ts.end());
    }
    auto H = [&](double t) {
        const double h = d.head_integral(t);
        return h == kInf ? kInf : std::pow(t, g - 1) * h;
    };
    for (double t : ts) best = std::max(best, H(t));
    lo *= 1e-4;
    hi *= 1e4;
    const int samples = static_cast<int>(64 * std::log10(hi / lo)) + 2;
    best = std::max(best, quad::maximize_log(H, lo, hi, samples));
    return {best, false, 1e-12};
}

NormValue lambda_norm(const Distribution& d, double g) {
    if (g == 1) return {d.function().integrate(0, kInf), true, 0};
    const TailInfo& tl = d.tails();
    if (tl.infinite_measure) return {kInf, true, 0};
    if (tl.power_tail && !(tl.expo_inf < -g && !close(tl.expo_inf, -g))) return {kInf, true, 0};
    if (tl.unbounded && !(tl.expo0 > -g && !close(tl.expo0, -g))) return {kInf, true, 0};
    // layer cake: gamma int f* t^{gamma-1} = int mu^gamma, i.e. rho_{1/g,1} * g
    const LevelView v(d, 0, kInf);
    const quad::Result r = lorentz_integral(v, 1 / g, 1);
    if (!r.ok) return {kInf, false, 0};
    return {g * r.value, false, r.value > 0 ? r.error / r.value : 0};
}

}  // namespace

SpaceSpec SpaceSpec::lorentz(double p, double q) {
    const bool ok = (p > 1 && p < kInf && q >= 1) || (p == 1 && q == 1) || (p == kInf && q == kInf);
    if (!ok) throw std::invalid_argument("inadmissible Lorentz indices (" + num(p) + "," + num(q) + ")");
    SpaceSpec s;
    s.kind = SpaceKind::Lorentz;
    s.p = p;
    s.q = q;
    return s;
}

SpaceSpec SpaceSpec::m_phi(double g) {
    check_gamma(g);
    SpaceSpec s;
    s.kind = SpaceKind::MPhi;
    s.gamma = g;
    return s;
}

SpaceSpec SpaceSpec::lambda_phi(double g) {
    check_gamma(g);
    SpaceSpec s;
    s.kind = SpaceKind::LambdaPhi;
    s.gamma = g;
    return s;
}

SpaceSpec SpaceSpec::small_m(double g) {
    check_gamma(g);
    SpaceSpec s;
    s.kind = SpaceKind::SmallM;
    s.gamma = g;
    return s;
}

std::string SpaceSpec::literal() const {
    switch (kind) {
        case SpaceKind::Lorentz:
            if (p == 1) return "L1";
            if (p == kInf) return "Linf";
            return "L(" + num(p) + "," + num(q) + ")";
        case SpaceKind::MPhi: return "M(" + num(gamma) + ")";
        case SpaceKind::LambdaPhi: return "Lam(" + num(gamma) + ")";
        case SpaceKind::SmallM: return "m(" + num(gamma) + ")";
    }
    return "";
}

SpaceSpec parse_space(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "L1") return SpaceSpec::l1();
    if (s == "Linf") return SpaceSpec::linf();
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        throw std::invalid_argument("unknown space literal '" + raw + "'");
    const std::string head = s.substr(0, open);
    const std::string body = s.substr(open + 1, s.size() - open - 2);
    try {
        if (head == "L") {
            const auto comma = body.find(',');
            if (comma == std::string::npos) {
                const double p = parse_number(body);
                return SpaceSpec::lorentz(p, p);
            }
            return SpaceSpec::lorentz(parse_number(body.substr(0, comma)),
                                      parse_number(body.substr(comma + 1)));
        }
        if (head == "M") return SpaceSpec::m_phi(parse_number(body));
        if (head == "Lam") return SpaceSpec::lambda_phi(parse_number(body));
        if (head == "m") return SpaceSpec::small_m(parse_number(body));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("bad space literal '" + raw + "': " + e.what());
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("bad space literal '" + raw + "'");
    }
    throw std::invalid_argument("unknown space literal '" + raw + "'");
}

double conjugate(double p) {
    if (p == 1) return kInf;
    if (p == kInf) return 1;
    return p / (p - 1);
}

NormValue norm(const Distribution& d, const SpaceSpec& X) { return windowed_norm(d, X, 0, kInf); }

NormValue windowed_norm(const Distribution& d, const SpaceSpec& X, double shift, double cap) {
    if (d.function().empty() || !(cap > 0)) return {0, true, 0};
    const bool whole = shift == 0 && cap == kInf;
    switch (X.kind) {
        case SpaceKind::Lorentz:
            if (X.p == 1) {
                if (whole) return {d.function().integrate(0, kInf), true, 0};
                const double hi = cap == kInf ? kInf : d.head_integral(shift + cap);
                const double total = cap == kInf ? d.function().integrate(0, kInf) : hi;
                if (total == kInf) return {kInf, true, 0};
                return {std::max(0.0, total - d.head_integral(shift)), false, 1e-14};
            }
            return lorentz_norm(d, X.p, X.q, shift, cap);
        case SpaceKind::SmallM: {
            const LevelView v(d, shift, cap);
            return {level_sup(v, X.gamma), false, 1e-12};
        }
        case SpaceKind::MPhi:
            if (!whole) throw std::invalid_argument("windowed M_phi norm not supported");
            return big_m_norm(d, X.gamma);
        case SpaceKind::LambdaPhi:
            if (!whole) throw std::invalid_argument("windowed Lambda_phi norm not supported");
            return lambda_norm(d, X.gamma);
    }
    return {};
}

NormValue norm(const PiecewisePowerFn& f, const SpaceSpec& X) { return norm(Distribution(f), X); }
NormValue norm(const TabulatedFn& f, const SpaceSpec& X) { return norm(f.to_piecewise(), X); }

double weak_sup(const Distribution& d, double gamma, double cap) {
    if (d.function().empty()) return 0;
    const LevelView v(d, 0, cap);
    return level_sup(v, gamma);
}

double tail_sup(const Distribution& d, double gamma, double from) {
    if (d.function().empty()) return 0;
    if (!(from > 0)) return weak_sup(d, gamma);
    const double L = d.rstar(from);
    if (L == 0) return 0;
    LevelView v(d, 0, kInf);
    v.clip_top(L);
    return std::max(L * std::pow(from, gamma), level_sup(v, gamma));
}

SupScan sup_scan(const std::function<double(double)>& g, double w, double lo, double hi,
                 int per_decade, Exec exec) {
    const std::vector<double> ts = log_grid(lo, hi, per_decade);
    std::vector<double> hs(ts.size());
    for_each_index(ts.size(), exec, [&](std::size_t i) {
        const double v = g(ts[i]);
        hs[i] = v == 0 ? 0 : std::pow(ts[i], w) * v;
    });
    SupScan out;
    std::size_t best = 0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (std::isnan(hs[i])) throw std::domain_error("NaN in sup scan");
        if (hs[i] > hs[best]) best = i;
    }
    out.value = hs[best];
    out.grid_value = hs[best];
    out.argmax = ts[best];
    if (out.value == kInf) return out;
    const double s0 = fit_slope(ts, hs, lo, lo * 100);
    const double s1 = fit_slope(ts, hs, hi / 100, hi);
    out.growth0 = !std::isnan(s0) && s0 < -1e-4;
    out.growth_inf = !std::isnan(s1) && s1 > 1e-4;
    if (out.growth0 || out.growth_inf) {
        out.value = kInf;
        return out;
    }
    if (best > 0 && best + 1 < ts.size()) {
        auto h = [&](double t) {
            const double v = g(t);
            return v == 0 ? 0 : std::pow(t, w) * v;
        };
        double arg = out.argmax;
        const double v = quad::maximize_log(h, ts[best - 1], ts[best + 1], 5, &arg);
        if (v > out.value) {
            out.value = v;
            out.grid_value = v;
            out.argmax = arg;
        }
    }
    return out;
}

double fundamental(const SpaceSpec& X, double t) {
    if (X.is_lorentz()) return X.p == kInf ? 1.0 : std::pow(t, 1 / X.p);
    return std::pow(t, X.gamma);
}

SpaceSpec associate(const SpaceSpec& X) {
    switch (X.kind) {
        case SpaceKind::Lorentz:
            if (X.p == 1) return SpaceSpec::linf();
            if (X.p == kInf) return SpaceSpec::l1();
            return SpaceSpec::lorentz(conjugate(X.p), conjugate(X.q));
        case SpaceKind::MPhi:
            if (X.gamma >= 1) throw std::invalid_argument("associate of M(1) not in the family");
            return SpaceSpec::lambda_phi(1 - X.gamma);
        case SpaceKind::LambdaPhi:
            if (X.gamma >= 1) return SpaceSpec::linf();
            return SpaceSpec::m_phi(1 - X.gamma);
        case SpaceKind::SmallM:
            throw std::invalid_argument("m_phi is quasinormed; no associate space");
    }
    return X;
}

double dilation_exponent(const SpaceSpec& X) {
    if (X.is_lorentz()) return X.p == kInf ? 1.0 : 1 - 1 / X.p;
    return 1 - X.gamma;
}

std::function<double(double)> dilation_norm_fn(const SpaceSpec& X) {
    const double e = dilation_exponent(X);
    if (e == 0) return [](double) { return 1.0; };
    return [e](double t) { return std::pow(t, e); };
}

RenormResult renorm_check(double gamma) {
    if (!(gamma >= 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in [0,1]");
    if (gamma >= 1) return {false, kInf};
    return {true, 1 / (1 - gamma)};
}

double lorentz_normalizer(double p, double q) {
    if (q == kInf || p == kInf) return 1;
    return std::pow(p / q, 1 / q);
}

double nesting_constant(double p, double q1, double q2) {
    if (!(q1 <= q2)) throw std::invalid_argument("nesting needs q1 <= q2");
    if (p == kInf) return 1;
    const double e = 1 / q1 - (q2 == kInf ? 0 : 1 / q2);
    return std::pow(q1 / p, e);
}

SandwichConstants sandwich_constants(double p, double q) {
    if (q <= p) return {1, 1};
    return {conjugate(p), q == kInf ? 1.0 : std::pow(q, 1 / q)};
}

HolderReport holder_check(const PiecewisePowerFn& f, const PiecewisePowerFn& g, const SpaceSpec& X) {
    HolderReport r;
    r.pairing = integrate_product(f, g);
    r.norm_f = norm(f, X).value;
    r.norm_g = norm(g, associate(X)).value;
    const double bound = r.constant * r.norm_f * r.norm_g;
    if (r.pairing == 0) r.ratio = 0;
    else if (bound == kInf) r.ratio = 0;
    else r.ratio = bound > 0 ? r.pairing / bound : kInf;
    r.ok = r.pairing <= bound * (1 + 1e-9) || std::isnan(bound);
    return r;
}

bool profile_in(const PowerProfile& g, const SpaceSpec& X) {
    double p = X.p, q = X.q;
    switch (X.kind) {
        case SpaceKind::Lorentz: break;
        case SpaceKind::MPhi:
        case SpaceKind::SmallM:
            p = 1 / X.gamma;
            q = kInf;
            break;
        case SpaceKind::LambdaPhi:
            p = 1 / X.gamma;
            q = 1;
            break;
    }
    if (p == kInf) return g.e0 >= -1e-12 && (g.compact || g.einf <= 1e-12);
    const double crit = -1 / p;
    const bool weak = q == kInf;
    const bool at0 = g.e0 > crit + 1e-12 || (close(g.e0, crit) && weak);
    const bool atinf = g.compact || g.einf < crit - 1e-12 || (close(g.einf, crit) && weak && !g.log_inf);
    return at0 && atinf;
}

}  // namespace riop
