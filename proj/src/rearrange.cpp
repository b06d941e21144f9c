#include "riop/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace riop {

namespace {

// measure of {g > lambda} inside one monotone non-constant piece
double piece_measure(const Piece& p, double lambda) {
    const double a = p.lim_lo(), b = p.lim_hi();
    const double lo_v = std::min(a, b), hi_v = std::max(a, b);
    if (lambda >= hi_v) return 0;
    if (lambda < lo_v) return p.length();
    const double r = p.inverse(lambda);
    return p.trend() < 0 ? r - p.lo : p.hi - r;
}

}  // namespace

Distribution::Distribution(PiecewisePowerFn f) : f_(std::move(f)) {
    levels_.push_back(0.0);
    simple_ = true;
    for (const Piece& p : f_.pieces()) {
        levels_.push_back(p.lim_lo());
        levels_.push_back(p.lim_hi());
        if (p.trend() != 0) simple_ = false;
    }
    std::sort(levels_.begin(), levels_.end());
    levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
    if (levels_.size() == 1) levels_.push_back(0.0);  // f = 0: one degenerate interval
    sup_ = f_.sup();
    rearranged_ = f_.is_rearranged();

    const auto& ps = f_.pieces();
    if (!ps.empty()) {
        const Piece& first = ps.front();
        if (first.lo == 0 && first.lim_lo() == kInf) {
            tails_.unbounded = true;
            tails_.expo0 = first.min_expo();
            tails_.coeff0 = first.lead_lo();
        }
        const Piece& last = ps.back();
        if (last.hi == kInf) {
            const double l = last.lim_hi();
            if (l > 0) {
                tails_.infinite_measure = true;
                tails_.level_inf = l;
            } else {
                tails_.power_tail = true;
                tails_.expo_inf = last.max_expo();
                tails_.coeff_inf = last.lead_hi();
            }
        }
    }
}

double Distribution::sum_measure(double lambda, double ref, bool ge) const {
    double m = 0;
    for (const Piece& p : f_.pieces()) {
        if (p.trend() == 0) {
            const double c = p.lim_lo();
            if (ge ? c >= ref : c > ref) m += p.length();
        } else {
            m += piece_measure(p, lambda);
        }
        if (m == kInf) return kInf;
    }
    return m;
}

double Distribution::measure(double lambda) const { return sum_measure(lambda, lambda, false); }
double Distribution::measure_ge(double lambda) const { return sum_measure(lambda, lambda, true); }

double Distribution::branch(std::size_t k, double lambda) const {
    return sum_measure(lambda, levels_[k], false);
}

RearrangementResult Distribution::rstar_certified(double t) const {
    if (!(t > 0)) throw std::invalid_argument("rstar needs t > 0");
    if (f_.empty() || measure(0) <= t) return {0, 0};
    const auto& ps = f_.pieces();
    if (rearranged_) {
        auto it = std::upper_bound(ps.begin(), ps.end(), t,
                                   [](double x, const Piece& p) { return x < p.hi; });
        if (it == ps.end() || it->lo > t) return {0, 0};
        return {it->lo == t ? it->lim_lo() : it->eval(t), 0};
    }
    // first level with mu(level) <= t
    std::size_t lo = 1, hi = levels_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (measure(levels_[mid]) <= t) hi = mid; else lo = mid + 1;
    }
    const std::size_t k = lo - 1;  // answer in (v_k, v_{k+1}]
    const double vk = levels_[k], vk1 = levels_[k + 1];
    if (vk1 < kInf && branch(k, vk1) > t) return {vk1, 0};

    // single active power atom: algebraic inverse
    const Piece* active = nullptr;
    int n_active = 0;
    double others = 0;
    const double probe = vk1 < kInf ? 0.5 * (vk + vk1) : vk + 1;
    for (const Piece& p : ps) {
        const double a = p.lim_lo(), b = p.lim_hi();
        if (p.trend() != 0 && std::min(a, b) <= vk && std::max(a, b) >= vk1) {
            ++n_active;
            active = &p;
        } else {
            others += p.trend() == 0 ? (p.lim_lo() > vk ? p.length() : 0) : piece_measure(p, probe);
        }
    }
    if (n_active == 1 && active->single()) {
        const double own = t - others;
        const double r = active->trend() < 0 ? active->lo + own : active->hi - own;
        if (r > active->lo && r < active->hi) {
            const double v = active->eval(r);
            if (v >= vk && v <= vk1) return {v, 0};
        }
    }

    double a = vk, b = vk1;
    if (b == kInf) {
        b = std::max(2 * a, 1.0);
        while (branch(k, b) > t && b < 1e300) b *= 4;
    }
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        if (branch(k, m) > t) a = m; else b = m;
        if (b - a < 1e-15 * (1 + b)) break;
    }
    return {b, b - a};
}

double Distribution::rstar(double t) const { return rstar_certified(t).value; }

double Distribution::excess(double lambda) const {
    if (lambda <= 0) return f_.integrate(0, kInf);
    double s = 0;
    for (const Piece& p : f_.pieces()) {
        const double l = p.lim_lo(), h = p.lim_hi();
        if (std::max(l, h) <= lambda) continue;
        double a = p.lo, b = p.hi;
        const int tr = p.trend();
        if (tr < 0 && h < lambda) b = p.inverse(lambda);
        if (tr > 0 && l < lambda) a = p.inverse(lambda);
        if (!(a < b)) continue;
        std::vector<Atom> atoms = p.atoms;
        atoms.push_back({-lambda, 0.0});
        s += Piece(a, b, std::move(atoms)).integral(a, b);
        if (s == kInf) return kInf;
    }
    return s;
}

double Distribution::head_integral(double t) const {
    if (!(t > 0)) return 0;
    if (rearranged_) return f_.integrate(0, t);
    const double l = rstar(t);
    if (l == kInf) return kInf;
    return l * t + excess(l);
}

double Distribution::dstar(double t) const { return head_integral(t) / t; }

double dist(const PiecewisePowerFn& f, double lambda) { return Distribution(f).measure(lambda); }
double rstar(const PiecewisePowerFn& f, double t) { return Distribution(f).rstar(t); }
double dstar(const PiecewisePowerFn& f, double t) { return Distribution(f).dstar(t); }

TabRearrangement rstar_tab(const TabulatedFn& f) {
    const std::size_t n = f.grid.size();
    struct Cell {
        double value, width;
        std::size_t index;
    };
    std::vector<Cell> cells(n);
    double inside = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i == 0 ? 0.0 : f.grid[i - 1];
        cells[i] = {f.values[i], f.grid[i] - left, i};
        inside += f.values[i] * cells[i].width;
    }
    const double g0 = f.grid.front(), gn = f.grid.back();
    double outside = 0;
    if (f.values.front() > 0)
        outside += f.tail0 > -1 ? std::max(0.0, f.values.front() * g0 / (1 + f.tail0) - f.values.front() * g0)
                                : kInf;
    if (f.tail_inf && f.values.back() > 0)
        outside += *f.tail_inf < -1 ? f.values.back() * gn / (-1 - *f.tail_inf) : kInf;

    std::stable_sort(cells.begin(), cells.end(),
                     [](const Cell& a, const Cell& b) { return a.value > b.value; });
    bool ordered = true;
    for (std::size_t i = 0; i < n; ++i) ordered = ordered && cells[i].index == i;

    TabRearrangement out;
    out.fn.grid.resize(n);
    out.fn.values.resize(n);
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += cells[i].width;
        out.fn.grid[i] = ordered ? f.grid[i] : acc;
        out.fn.values[i] = cells[i].value;
    }
    out.fn.tail0 = ordered ? f.tail0 : 0.0;
    out.fn.tail_inf = f.tail_inf;
    const double total = inside + outside;
    out.outside_fraction = total > 0 ? (outside == kInf ? 1.0 : outside / total) : 0.0;
    out.mass_outside_flag = out.outside_fraction > 0.05;
    return out;
}

}  // namespace riop
