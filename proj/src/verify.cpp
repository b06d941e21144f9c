#include "riop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "riop/io.hpp"

namespace riop {

double uniform(Rng& rng, double a, double b) {
    if (a == b) return a;
    return std::uniform_real_distribution<double>(a, b)(rng);
}

double log_uniform(Rng& rng, double a, double b) {
    return std::exp(uniform(rng, std::log(a), std::log(b)));
}

namespace {

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::pair<double, double> inf_range(const GenProfile& prof) {
    double lo = prof.inf_expo_lo, hi = prof.inf_expo_hi;
    // default profile: exponents of the generic range that keep the tail bounded
    if (std::isnan(lo)) lo = prof.expo_lo;
    if (std::isnan(hi)) hi = std::min(0.0, prof.expo_hi);
    return {lo, std::max(lo, hi)};
}

std::vector<double> sorted_breaks(Rng& rng, const GenProfile& prof, int count) {
    std::set<double> s;
    while (static_cast<int>(s.size()) < count) s.insert(log_uniform(rng, prof.bp_lo, prof.bp_hi));
    return {s.begin(), s.end()};
}

PiecewisePowerFn gen_noninc(Rng& rng, const GenProfile& prof, int n) {
    const bool to_inf = coin(rng, prof.p_inf);
    // one piece on (0,inf) would carry the tail exponent down to 0
    if (to_inf && n == 1) n = 2;
    std::vector<double> b = sorted_breaks(rng, prof, to_inf ? n - 1 : n);
    b.insert(b.begin(), 0.0);
    if (to_inf) b.push_back(kInf);
    const auto [ilo, ihi] = inf_range(prof);
    const double elo = prof.expo_lo, ehi = std::min(0.0, prof.expo_hi);
    std::vector<Piece> pieces;
    double prev = kInf;
    for (int i = 0; i < n; ++i) {
        const double lo = b[i], hi = b[i + 1];
        double e = hi == kInf ? uniform(rng, ilo, std::min(0.0, ihi)) : uniform(rng, elo, std::max(elo, ehi));
        double c = log_uniform(rng, prof.coeff_lo, prof.coeff_hi);
        if (lo > 0) c = std::min(c, prev / std::pow(lo, e) * (1 - 1e-12));
        if (!(c > 0)) break;
        pieces.emplace_back(lo, hi, c, e);
        if (hi < kInf) prev = c * std::pow(hi, e);
    }
    return PiecewisePowerFn(std::move(pieces), true);
}

}  // namespace

PiecewisePowerFn gen_function(Rng& rng, const GenProfile& prof) {
    int n = std::uniform_int_distribution<int>(1, std::max(1, prof.max_pieces))(rng);
    if (coin(rng, prof.p_noninc)) return gen_noninc(rng, prof, n);
    const bool from0 = coin(rng, prof.p_touch0);
    const bool to_inf = coin(rng, prof.p_inf);
    if (from0 && to_inf && n == 1) n = 2;
    std::vector<double> b = sorted_breaks(rng, prof, n + 1 - from0 - to_inf);
    if (from0) b.insert(b.begin(), 0.0);
    if (to_inf) b.push_back(kInf);
    const auto [ilo, ihi] = inf_range(prof);
    std::vector<Piece> pieces;
    for (int i = 0; i < n; ++i) {
        double lo = b[i];
        const double hi = b[i + 1];
        if (i > 0 && hi < kInf && coin(rng, prof.p_gap)) lo = std::sqrt(lo * hi);
        const double e = hi == kInf ? uniform(rng, ilo, ihi) : uniform(rng, prof.expo_lo, prof.expo_hi);
        const double c = log_uniform(rng, prof.coeff_lo, prof.coeff_hi);
        pieces.emplace_back(lo, hi, c, e);
    }
    return PiecewisePowerFn(std::move(pieces), false);
}

PiecewisePowerFn gen_function(std::uint64_t seed, const GenProfile& prof) {
    Rng rng(seed);
    return gen_function(rng, prof);
}

Kernel gen_kernel(Rng& rng, const KernelProfile& prof) {
    const int n = std::uniform_int_distribution<int>(1, std::max(1, prof.max_pieces))(rng);
    const double beta0 = coin(rng, prof.p_bounded) ? 0.0 : uniform(rng, 0.05, prof.beta0_max);
    const bool compact = coin(rng, prof.p_compact);
    GenProfile bp;
    std::vector<double> b = sorted_breaks(rng, bp, compact ? n : n - 1);
    b.insert(b.begin(), 0.0);
    if (!compact) b.push_back(kInf);
    const double beta_inf = uniform(rng, prof.beta_inf_lo, prof.beta_inf_hi);
    std::vector<Piece> pieces;
    double prev = kInf;
    for (int i = 0; i < n; ++i) {
        const double lo = b[i], hi = b[i + 1];
        double e = i == 0 ? -beta0 : uniform(rng, -2.0, 0.0);
        if (hi == kInf) e = -beta_inf;
        if (i == 0 && hi == kInf && beta0 != beta_inf) {
            // a single infinite piece cannot carry two exponents; split it
            const double m = log_uniform(rng, 1e-2, 1e2);
            const double c = log_uniform(rng, 0.1, 10);
            pieces.emplace_back(0.0, m, c, -beta0);
            const double v = c * std::pow(m, -beta0);
            pieces.emplace_back(m, kInf, v * std::pow(m, beta_inf) * (1 - 1e-12), -beta_inf);
            break;
        }
        double c = log_uniform(rng, 0.1, 10);
        if (lo > 0) c = std::min(c, prev / std::pow(lo, e) * (1 - 1e-12));
        pieces.emplace_back(lo, hi, c, e);
        if (hi < kInf) prev = c * std::pow(hi, e);
    }
    return Kernel::from_fn(PiecewisePowerFn(std::move(pieces), true));
}

Trial leq(double lhs, double rhs, double rel_tol, nlohmann::json witness) {
    Trial t;
    t.lhs = lhs;
    t.rhs = rhs;
    t.witness = std::move(witness);
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
        t.degenerate = true;
        t.ratio = std::numeric_limits<double>::quiet_NaN();
        return t;
    }
    t.ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? kInf : 0.0);
    t.violated = lhs > rhs + rel_tol * std::abs(rhs) + 1e-300;
    return t;
}

PropertyReport run_property(const PropertySpec& spec, const RunOptions& opt) {
    PropertyReport rep;
    rep.name = spec.name;
    rep.anchor = spec.anchor;
    rep.hard = spec.hard;
    rep.trials = opt.trials ? opt.trials : spec.default_trials;
    std::vector<Trial> out(rep.trials);
    for_each_index(rep.trials, opt.exec, [&](std::size_t i) {
        const auto s = static_cast<std::uint32_t>(opt.seed), sh = static_cast<std::uint32_t>(opt.seed >> 32);
        const auto k = static_cast<std::uint32_t>(i), kh = static_cast<std::uint32_t>(std::uint64_t(i) >> 32);
        std::seed_seq seq{s, sh, k, kh};
        Rng rng(seq);
        try {
            out[i] = spec.run(rng, opt.tol);
        } catch (const std::exception& e) {
            out[i] = Trial{};
            out[i].degenerate = true;
            out[i].ratio = std::numeric_limits<double>::quiet_NaN();
            out[i].witness = {{"error", e.what()}};
        }
    });
    bool have_worst = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Trial& t = out[i];
        if (t.skipped) {
            ++rep.skipped;
            continue;
        }
        if (t.degenerate) {
            ++rep.degenerate;
            continue;
        }
        if (t.violated) ++rep.flagged; else ++rep.passed;
        if (!have_worst || t.ratio > rep.worst_ratio) {
            have_worst = true;
            rep.worst_ratio = t.ratio;
            rep.worst_index = i;
            rep.witness = t.witness;
        }
    }
    if (opt.keep_rows) rep.rows = std::move(out);
    return rep;
}

const PropertySpec* find_property(const std::string& name) {
    for (const PropertySpec& p : registry())
        if (p.name == name) return &p;
    return nullptr;
}

std::vector<std::string> uncovered_anchors() {
    std::set<std::string> bound;
    for (const PropertySpec& p : registry()) bound.insert(p.anchor);
    std::vector<std::string> out;
    for (const std::string& a : registry_anchors())
        if (!bound.count(a)) out.push_back(a);
    return out;
}

std::string report_text(const PropertyReport& r) {
    std::ostringstream os;
    os << "property " << r.name << " [" << (r.hard ? "hard" : "soft") << "] anchor=" << r.anchor
       << " trials=" << r.trials << " passed=" << r.passed << " flagged=" << r.flagged
       << " degenerate=" << r.degenerate << " skipped=" << r.skipped
       << " worst_ratio=" << format_double(r.worst_ratio) << " worst_trial=" << r.worst_index
       << " verdict=" << (r.ok() ? "ok" : "FAIL") << "\n";
    if (!r.witness.is_null()) os << "  witness " << r.witness.dump() << "\n";
    return os.str();
}

std::string report_csv_header() { return "property,trial,lhs,rhs,ratio,status"; }

std::string report_csv_rows(const PropertyReport& r) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const Trial& t = r.rows[i];
        const char* status = t.skipped ? "skipped" : t.degenerate ? "degenerate" : t.violated ? "flagged" : "passed";
        os << r.name << "," << i << "," << format_double(t.lhs) << "," << format_double(t.rhs) << ","
           << format_double(t.ratio) << "," << status << "\n";
    }
    return os.str();
}

}  // namespace riop
