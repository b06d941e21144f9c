#include "riop/kernelop.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "riop/quad.hpp"

namespace riop {

namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * (1 + std::abs(a) + std::abs(b)); }

double infer_beta0(const PiecewisePowerFn& a) {
    if (a.empty() || !a.touches_zero()) return 0;
    const Piece& p = a.pieces().front();
    return p.min_expo() < 0 ? -p.min_expo() : 0;
}

Decay infer_decay(const PiecewisePowerFn& a) {
    if (!a.reaches_infinity()) return Decay::compact();
    const Piece& p = a.pieces().back();
    return Decay::power(std::max(0.0, -p.max_expo()));
}

// e^{-st} f(s) integrated over one piece of f
double laplace_piece(const Piece& p, double t) {
    const double lo = p.lo;
    const double cut = lo + 40 / t;
    const double hi = std::min(p.hi, cut);
    if (!(lo < hi)) return 0;
    std::vector<double> br{lo};
    for (double k : {1.0, 8.0}) {
        const double b = lo + k / t;
        if (b < hi) br.push_back(b);
    }
    br.push_back(hi);
    const quad::Result r =
        quad::integrate_breaks([&](double s) { return std::exp(-s * t) * p.eval(s); }, br);
    return r.ok ? r.value : kInf;
}

}  // namespace

std::string Decay::literal() const {
    switch (kind) {
        case DecayKind::compact: return "compact";
        case DecayKind::rapid: return "rapid";
        case DecayKind::power: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "power:%.17g", beta);
            return buf;
        }
    }
    return "";
}

Decay parse_decay(const std::string& s) {
    if (s == "compact") return Decay::compact();
    if (s == "rapid") return Decay::rapid();
    if (s.rfind("power:", 0) == 0) {
        std::size_t used = 0;
        const std::string num = s.substr(6);
        double b = 0;
        try {
            b = std::stod(num, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad decay '" + s + "'");
        }
        if (used != num.size() || !(b >= 0)) throw std::invalid_argument("bad decay '" + s + "'");
        return Decay::power(b);
    }
    throw std::invalid_argument("bad decay '" + s + "'");
}

Kernel Kernel::piecewise(PiecewisePowerFn a, double beta0, Decay decay) {
    if (!sampled_nonincreasing(a)) throw std::invalid_argument("kernel must be non-increasing");
    if (!(beta0 >= 0)) throw std::invalid_argument("beta0 must be >= 0");
    if (!a.empty() && !a.touches_zero()) throw std::invalid_argument("kernel support must start at 0");
    if (!near(beta0, infer_beta0(a)))
        throw std::invalid_argument("declared beta0 does not match the first piece");
    const Decay seen = infer_decay(a);
    if (decay.kind == DecayKind::rapid)
        throw std::invalid_argument("rapid decay needs an analytic kernel");
    if (decay.kind != seen.kind || !near(decay.beta, seen.beta))
        throw std::invalid_argument("declared decay does not match the last piece");
    Kernel k;
    k.fn_ = PiecewisePowerFn(a.pieces(), true);
    k.beta0_ = beta0;
    k.decay_ = decay;
    return k;
}

Kernel Kernel::from_fn(PiecewisePowerFn a) {
    const double b0 = infer_beta0(a);
    const Decay d = infer_decay(a);
    return piecewise(std::move(a), b0, d);
}

Kernel Kernel::laplace() {
    Kernel k;
    k.analytic_ = true;
    k.beta0_ = 0;
    k.decay_ = Decay::rapid();
    k.name_ = "laplace";
    return k;
}

double Kernel::eval(double t) const { return analytic_ ? std::exp(-t) : fn_.eval(t); }

double Kernel::primitive(double t) const {
    if (!(t > 0)) return 0;
    return analytic_ ? -std::expm1(-t) : fn_.integrate(0, t);
}

double Kernel::l1_norm() const { return analytic_ ? 1.0 : fn_.integrate(0, kInf); }

std::vector<double> Kernel::breakpoints() const {
    return analytic_ ? std::vector<double>{} : fn_.breakpoints();
}

double apply(const Kernel& a, const PiecewisePowerFn& f, double t) {
    if (!(t > 0)) throw std::invalid_argument("apply needs t > 0");
    double s = 0;
    if (a.analytic()) {
        for (const Piece& pf : f.pieces()) {
            s += laplace_piece(pf, t);
            if (s == kInf) return kInf;
        }
        return s;
    }
    for (const Piece& pa : a.fn().pieces()) {
        const double la = pa.lo / t, ha = pa.hi == kInf ? kInf : pa.hi / t;
        for (const Piece& pf : f.pieces()) {
            const double lo = std::max(la, pf.lo), hi = std::min(ha, pf.hi);
            if (!(lo < hi)) continue;
            std::vector<Atom> prod;
            prod.reserve(pa.atoms.size() * pf.atoms.size());
            for (const Atom& u : pa.atoms)
                for (const Atom& v : pf.atoms)
                    prod.push_back({u.coeff * v.coeff * std::pow(t, u.expo), u.expo + v.expo});
            s += Piece(lo, hi, std::move(prod)).integral(lo, hi);
            if (s == kInf) return kInf;
        }
    }
    return s;
}

double apply_rearranged(const Kernel& a, const Distribution& d, double t) {
    if (!(t > 0)) throw std::invalid_argument("apply needs t > 0");
    if (d.function().is_rearranged()) return apply(a, d.function(), t);
    const double l1 = a.l1_norm();
    std::set<double> cuts(d.levels().begin(), d.levels().end());
    for (double b : a.breakpoints()) {
        const double v = d.rstar(b / t);
        if (v > 0) cuts.insert(v);
    }
    const std::vector<double> lv(cuts.begin(), cuts.end());
    const auto& levels = d.levels();
    double total = 0;
    for (std::size_t j = 0; j + 1 < lv.size(); ++j) {
        const double x = lv[j], y = lv[j + 1];
        auto k = static_cast<std::size_t>(std::upper_bound(levels.begin(), levels.end(), x) - levels.begin());
        k = std::min(k == 0 ? 0 : k - 1, d.interval_count() - 1);
        auto integrand = [&](double l) {
            const double m = d.branch(k, l);
            return m == kInf ? l1 : a.primitive(t * m);
        };
        const quad::Result r = quad::integrate(integrand, x, y);
        if (!r.ok) return kInf;
        total += r.value;
    }
    return total / t;
}

TabulatedFn apply_tab(const Kernel& a, const PiecewisePowerFn& f, const GridSpec& grid, Exec exec) {
    return tabulate([&](double t) { return apply(a, f, t); }, grid, {exec, true});
}

TabulatedFn apply_rearranged_tab(const Kernel& a, const Distribution& d, const GridSpec& grid,
                                 Exec exec) {
    return tabulate([&](double t) { return apply_rearranged(a, d, t); }, grid, {exec, true});
}

std::pair<Kernel, Kernel> split(const Kernel& a) {
    if (a.analytic()) throw std::invalid_argument("split needs a piecewise kernel");
    const double a1v = a.fn().eval(1.0);
    if (!std::isfinite(a1v)) throw std::invalid_argument("a(1) is not finite");
    std::vector<Piece> head, tail;
    for (const Piece& p : a.fn().pieces()) {
        if (p.lo < 1) {
            std::vector<Atom> atoms = p.atoms;
            atoms.push_back({-a1v, 0.0});
            Piece q(p.lo, std::min(p.hi, 1.0), std::move(atoms));
            if (!q.atoms.empty()) head.push_back(std::move(q));
        }
        if (p.hi > 1) tail.emplace_back(std::max(p.lo, 1.0), p.hi, p.atoms);
    }
    if (a1v > 0) tail.insert(tail.begin(), Piece(0, 1, a1v, 0.0));
    Kernel k1 = Kernel::from_fn(PiecewisePowerFn(std::move(head), true));
    Kernel kinf = Kernel::from_fn(PiecewisePowerFn(std::move(tail), true));
    return {std::move(k1), std::move(kinf)};
}

double astarstar(const Kernel& a, double t) {
    if (!(t > 0)) throw std::invalid_argument("astarstar needs t > 0");
    const double p = a.primitive(t);
    return p == kInf ? kInf : p / t;
}

PiecewisePowerFn astarstar_fn(const Kernel& a) {
    if (a.analytic()) throw std::invalid_argument("a** is tabulated for analytic kernels");
    std::vector<Piece> out;
    double acc = 0;  // int_0^lo a
    double last = 0;
    for (const Piece& p : a.fn().pieces()) {
        if (p.lo == 0 && p.min_expo() <= -1) throw std::domain_error("a** is infinite");
        std::vector<Atom> atoms;
        double cst = acc;
        for (const Atom& at : p.atoms) {
            if (at.expo == -1) throw std::domain_error("a** has a logarithmic piece");
            atoms.push_back({at.coeff / (at.expo + 1), at.expo});
            if (p.lo > 0) cst -= at.coeff * std::pow(p.lo, at.expo + 1) / (at.expo + 1);
        }
        atoms.push_back({cst, -1.0});
        out.emplace_back(p.lo, p.hi, std::move(atoms));
        acc += p.integral(p.lo, p.hi);
        last = p.hi;
    }
    if (last < kInf && acc > 0) out.emplace_back(last, kInf, acc, -1.0);
    return PiecewisePowerFn(std::move(out), true);
}

ReversedConstant reversed_constant(const Kernel& a) {
    if (a.analytic()) return {1.0, a.eval(1.0)};
    if (a.fn().empty()) return {1.0, 0.0};
    const double u = std::min(a.fn().pieces().front().hi, 1.0);
    return {u, u * a.eval(u)};
}

namespace {

// int_0^inf (S_a f)(t) g(t) dt, split at the kinks of t -> S_a f(t)
// int of q over [a,b] spanning many decades, in log t, plus the power
// closure beyond the far end (toward 0 when at_zero, else toward inf)
double log_stretch(const std::function<double(double)>& q, double a, double b, bool at_zero) {
    const quad::Result r = quad::integrate(
        [&](double u) {
            const double t = std::exp(u);
            return q(t) * t;
        },
        std::log(a), std::log(b));
    if (!r.ok) return kInf;
    const double e = at_zero ? a : b;
    const double q1 = q(e), q2 = q(at_zero ? e / 10 : e * 10);
    if (!(q1 > 0)) return r.value;
    const double k = at_zero ? std::log10(q1 / q2) : std::log10(q2 / q1);
    if (at_zero ? k <= -1 : k >= -1) return kInf;
    return r.value + (at_zero ? q1 * e / (k + 1) : -q1 * e / (k + 1));
}

quad::Result pairing(const Kernel& a, const PiecewisePowerFn& f, const PiecewisePowerFn& g) {
    std::set<double> kinks;
    for (double b : a.breakpoints())
        for (double c : f.breakpoints()) kinks.insert(b / c);
    if (a.analytic())
        for (double c : f.breakpoints()) kinks.insert(1 / c);
    quad::Result total;
    for (const Piece& pg : g.pieces()) {
        auto q = [&](double t) {
            const double v = pg.eval(t);
            return v == 0 ? 0.0 : apply(a, f, t) * v;
        };
        // near-critical power ends carry mass far below double range; there
        // the outermost stretch is closed with the power read off two samples
        double lo = pg.lo, hi = pg.hi, tails = 0;
        const double k_lo = kinks.empty() ? 1.0 : *kinks.begin();
        const double k_hi = kinks.empty() ? 1.0 : *kinks.rbegin();
        if (lo == 0) {
            lo = 1e-10 * std::min(pg.hi < kInf ? pg.hi : 1.0, k_lo);
            const double q1 = q(lo), q2 = q(lo / 10);
            const double k = q1 > 0 ? std::log10(q1 / q2) : 0;
            if (k <= -1) tails = kInf;
            else if (k < -0.9) tails += log_stretch(q, lo * 1e-90, lo, true);
            else lo = 0;
        }
        if (hi == kInf) {
            hi = 1e10 * std::max(pg.lo > 0 ? pg.lo : 1.0, k_hi);
            const double q1 = q(hi), q2 = q(hi * 10);
            const double k = q1 > 0 ? std::log10(q2 / q1) : -2;
            if (k >= -1) tails = kInf;
            else if (k > -1.1) tails += log_stretch(q, hi, hi * 1e90, false);
            else hi = kInf;
        }
        std::vector<double> br{lo};
        for (double k : kinks)
            if (k > lo && k < hi) br.push_back(k);
        br.push_back(hi);
        const quad::Result r = quad::integrate_breaks(q, br);
        total.value += r.value + tails;
        total.error += r.error;
        total.ok = total.ok && r.ok && std::isfinite(tails);
    }
    return total;
}

// integrand t * (S_a f)(t) g(t) must vanish at both ends for a finite pairing
bool tails_ok(const Kernel& a, const PiecewisePowerFn& f, const PiecewisePowerFn& g) {
    auto q = [&](double t) {
        const double v = g.eval(t);
        return v == 0 ? 0.0 : t * apply(a, f, t) * v;
    };
    // log-slope of q between t1 and t2 must point downward toward t2
    auto decays = [&](double t1, double t2, double sgn) {
        const double q1 = q(t1), q2 = q(t2);
        if (!std::isfinite(q1) || !std::isfinite(q2)) return false;
        if (q2 == 0) return true;
        if (q1 == 0) return false;
        return sgn * std::log(q2 / q1) / std::log(t2 / t1) < -0.02;
    };
    if (g.touches_zero() && !decays(1e-9, 1e-11, -1)) return false;
    if (g.reaches_infinity() && !decays(1e9, 1e11, 1)) return false;
    return true;
}

}  // namespace

SelfAdjointReport selfadjoint_check(const Kernel& a, const PiecewisePowerFn& f,
                                    const PiecewisePowerFn& g) {
    SelfAdjointReport r;
    if (f.empty() || g.empty()) return r;
    if (!tails_ok(a, f, g) || !tails_ok(a, g, f)) {
        r.skipped = true;
        return r;
    }
    const quad::Result L = pairing(a, f, g);
    const quad::Result R = pairing(a, g, f);
    if (!L.ok || !R.ok) {
        r.skipped = true;
        return r;
    }
    r.lhs = L.value;
    r.rhs = R.value;
    const double scale = std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-300});
    r.discrepancy = std::abs(r.lhs - r.rhs) / scale;
    return r;
}

}  // namespace riop
