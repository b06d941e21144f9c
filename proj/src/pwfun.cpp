#include "riop/pwfun.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace riop {

double atom_integral(double coeff, double expo, double a, double b) {
    if (!(a < b) || coeff == 0) return 0;
    const double inf = coeff > 0 ? kInf : -kInf;
    const double s = expo + 1;
    if (a == 0) {
        if (s <= 0 || b == kInf) return inf;
        return coeff * std::pow(b, s) / s;
    }
    if (b == kInf) {
        if (s >= 0) return inf;
        return -coeff * std::pow(a, s) / s;
    }
    const double L = std::log(b / a);
    if (s == 0) return coeff * L;
    return coeff * std::pow(a, s) * std::expm1(s * L) / s;
}

namespace {

std::vector<Atom> normalize_atoms(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.expo < y.expo; });
    std::vector<Atom> out;
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.coeff) || !std::isfinite(a.expo))
            throw std::invalid_argument("non-finite atom");
        if (!out.empty() && out.back().expo == a.expo)
            out.back().coeff += a.coeff;
        else
            out.push_back(a);
    }
    std::erase_if(out, [](const Atom& a) { return a.coeff == 0; });
    return out;
}

double sum_atoms(const std::vector<Atom>& atoms, double t) {
    double s = 0;
    for (const Atom& a : atoms) s += a.coeff * (a.expo == 0 ? 1.0 : std::pow(t, a.expo));
    return s;
}

// t*g'(t) for the atom sum
double log_slope_sum(const std::vector<Atom>& atoms, double t) {
    double s = 0;
    for (const Atom& a : atoms)
        if (a.expo != 0) s += a.coeff * a.expo * std::pow(t, a.expo);
    return s;
}

double clamp_log(double x) { return std::clamp(x, -700.0, 700.0); }

// Splits a multi-atom piece at the sign changes of its derivative.
std::vector<Piece> split_monotone(const Piece& p) {
    if (p.atoms.size() < 2) return {p};
    const double ulo = p.lo > 0 ? std::log(p.lo) : std::log(p.hi == kInf ? 1.0 : p.hi) - 60;
    const double uhi = p.hi < kInf ? std::log(p.hi) : (p.lo > 0 ? std::log(p.lo) : 0.0) + 60;
    const int n = 400;
    std::vector<double> cuts;
    double prev_u = ulo;
    double prev = log_slope_sum(p.atoms, std::exp(ulo));
    for (int i = 1; i <= n; ++i) {
        const double u = ulo + (uhi - ulo) * i / n;
        const double d = log_slope_sum(p.atoms, std::exp(u));
        if ((prev < 0 && d > 0) || (prev > 0 && d < 0)) {
            double a = prev_u, b = u;
            const bool neg = prev < 0;
            for (int it = 0; it < 200 && b - a > 1e-15 * (1 + std::abs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double dm = log_slope_sum(p.atoms, std::exp(m));
                if ((dm < 0) == neg) a = m; else b = m;
            }
            const double c = std::exp(0.5 * (a + b));
            if (c > p.lo && c < p.hi) cuts.push_back(c);
        }
        if (d != 0) {
            prev = d;
            prev_u = u;
        }
    }
    if (cuts.empty()) return {p};
    std::vector<Piece> out;
    double lo = p.lo;
    for (double c : cuts) {
        out.emplace_back(lo, c, p.atoms);
        lo = c;
    }
    out.emplace_back(lo, p.hi, p.atoms);
    return out;
}

}  // namespace

Piece::Piece(double lo_, double hi_, double coeff, double expo)
    : Piece(lo_, hi_, std::vector<Atom>{{coeff, expo}}) {}

Piece::Piece(double lo_, double hi_, std::vector<Atom> atoms_)
    : lo(lo_), hi(hi_), atoms(normalize_atoms(std::move(atoms_))) {
    if (!(lo >= 0) || !(lo < hi)) throw std::invalid_argument("piece needs 0 <= lo < hi");
}

double Piece::eval(double t) const { return std::max(0.0, sum_atoms(atoms, t)); }

double Piece::min_expo() const { return atoms.empty() ? 0 : atoms.front().expo; }
double Piece::max_expo() const { return atoms.empty() ? 0 : atoms.back().expo; }
double Piece::lead_lo() const { return atoms.empty() ? 0 : atoms.front().coeff; }
double Piece::lead_hi() const { return atoms.empty() ? 0 : atoms.back().coeff; }

double Piece::lim_lo() const {
    if (atoms.empty()) return 0;
    if (lo > 0) return eval(lo);
    const Atom& a = atoms.front();
    if (a.expo < 0) return a.coeff > 0 ? kInf : 0;
    if (a.expo == 0) return std::max(0.0, a.coeff);
    return 0;
}

double Piece::lim_hi() const {
    if (atoms.empty()) return 0;
    if (hi < kInf) return eval(hi);
    const Atom& a = atoms.back();
    if (a.expo > 0) return a.coeff > 0 ? kInf : 0;
    if (a.expo == 0) return std::max(0.0, a.coeff);
    return 0;
}

int Piece::trend() const {
    if (atoms.empty()) return 0;
    if (atoms.size() == 1) {
        const Atom& a = atoms.front();
        return a.expo == 0 ? 0 : (a.expo < 0 ? -1 : 1);
    }
    const double l = lim_lo(), h = lim_hi();
    if (l == h) return 0;
    return h < l ? -1 : 1;
}

double Piece::integral(double a, double b) const {
    a = std::max(a, lo);
    b = std::min(b, hi);
    if (!(a < b) || atoms.empty()) return 0;
    if (a == 0 && min_expo() <= -1) return kInf;
    if (b == kInf && max_expo() >= -1) return kInf;
    double s = 0;
    for (const Atom& at : atoms) s += atom_integral(at.coeff, at.expo, a, b);
    return std::max(0.0, s);
}

double Piece::inverse(double v) const {
    const int tr = trend();
    if (tr == 0) return lo;
    if (atoms.size() == 1) {
        const Atom& a = atoms.front();
        const double t = std::pow(v / a.coeff, 1.0 / a.expo);
        return std::clamp(t, lo, hi);
    }
    // bisection in log t on a monotone sum
    double ulo = lo > 0 ? std::log(lo) : std::log(hi < kInf ? hi : 1.0) - 1;
    double uhi = hi < kInf ? std::log(hi) : ulo + 2;
    auto above = [&](double u) { return sum_atoms(atoms, std::exp(u)) > v; };
    if (lo == 0) {
        while (above(ulo) != (tr < 0) && ulo > -700) ulo -= 8;
        ulo = clamp_log(ulo);
    }
    if (hi == kInf) {
        while (above(uhi) == (tr < 0) && uhi < 700) uhi += 8;
        uhi = clamp_log(uhi);
    }
    // safeguarded Newton in log t
    double u = 0.5 * (ulo + uhi);
    for (int it = 0; it < 200 && uhi - ulo > 1e-15 * (1 + std::abs(ulo)); ++it) {
        const double t = std::exp(u);
        double h = -v, dh = 0;
        for (const Atom& a : atoms) {
            const double x = a.coeff * std::pow(t, a.expo);
            h += x;
            dh += a.expo * x;
        }
        if ((h > 0) == (tr < 0)) ulo = u; else uhi = u;
        double next = dh != 0 ? u - h / dh : 0.5 * (ulo + uhi);
        if (!(next > ulo && next < uhi)) next = 0.5 * (ulo + uhi);
        if (std::abs(next - u) <= 1e-15 * (1 + std::abs(u))) {
            u = next;
            break;
        }
        u = next;
    }
    return std::clamp(std::exp(u), lo, hi);
}

PiecewisePowerFn::PiecewisePowerFn(std::vector<Piece> pieces, bool nonincreasing)
    : nonincreasing_(nonincreasing) {
    std::erase_if(pieces, [](const Piece& p) { return p.atoms.empty(); });
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    for (const Piece& p : pieces)
        for (const Piece& q : split_monotone(p)) pieces_.push_back(q);
    for (std::size_t i = 1; i < pieces_.size(); ++i)
        if (pieces_[i].lo < pieces_[i - 1].hi)
            throw std::invalid_argument("pieces overlap");
    auto magnitude = [](const Piece& p, double t) {
        double m = 0;
        for (const Atom& a : p.atoms) m += std::abs(a.coeff) * std::pow(t, a.expo);
        return m;
    };
    for (const Piece& p : pieces_) {
        bool bad = false;
        if (p.lo > 0) bad |= sum_atoms(p.atoms, p.lo) < -1e-9 * magnitude(p, p.lo);
        else bad |= p.lead_lo() < 0;
        if (p.hi < kInf) bad |= sum_atoms(p.atoms, p.hi) < -1e-9 * magnitude(p, p.hi);
        else bad |= p.lead_hi() < 0;
        if (bad) throw std::invalid_argument("negative piece value");
    }
}

PiecewisePowerFn PiecewisePowerFn::indicator(double lo, double hi, double height) {
    return PiecewisePowerFn({Piece(lo, hi, height, 0.0)}, lo == 0);
}

PiecewisePowerFn PiecewisePowerFn::power(double lo, double hi, double coeff, double expo) {
    return PiecewisePowerFn({Piece(lo, hi, coeff, expo)}, lo == 0 && expo <= 0);
}

double PiecewisePowerFn::eval(double t) const {
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                               [](const Piece& p, double x) { return p.hi < x; });
    if (it == pieces_.end() || !(it->lo < t)) return 0;
    return it->eval(t);
}

double PiecewisePowerFn::integrate(double lo, double hi) const {
    double s = 0;
    for (const Piece& p : pieces_) {
        s += p.integral(lo, hi);
        if (s == kInf) return kInf;
    }
    return s;
}

bool PiecewisePowerFn::is_rearranged() const {
    if (pieces_.empty()) return true;
    if (pieces_.front().lo != 0) return false;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].trend() > 0) return false;
        if (i + 1 < pieces_.size()) {
            if (pieces_[i + 1].lo != pieces_[i].hi) return false;
            const double h = pieces_[i].lim_hi(), l = pieces_[i + 1].lim_lo();
            if (l > h * (1 + 1e-12)) return false;
        }
    }
    return true;
}

double PiecewisePowerFn::sup() const {
    double m = 0;
    for (const Piece& p : pieces_) m = std::max({m, p.lim_lo(), p.lim_hi()});
    return m;
}

std::vector<double> PiecewisePowerFn::breakpoints() const {
    std::set<double> s;
    for (const Piece& p : pieces_) {
        if (p.lo > 0) s.insert(p.lo);
        if (p.hi < kInf) s.insert(p.hi);
    }
    return {s.begin(), s.end()};
}

double PiecewisePowerFn::support_measure() const {
    double m = 0;
    for (const Piece& p : pieces_) m += p.length();
    return m;
}

PiecewisePowerFn dilate(const PiecewisePowerFn& f, double t) {
    if (!(t > 0)) throw std::invalid_argument("dilation factor must be positive");
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) {
        std::vector<Atom> atoms;
        for (const Atom& a : p.atoms) atoms.push_back({a.coeff * std::pow(t, -a.expo), a.expo});
        out.emplace_back(p.lo * t, p.hi == kInf ? kInf : p.hi * t, std::move(atoms));
    }
    return PiecewisePowerFn(std::move(out), f.nonincreasing());
}

PiecewisePowerFn scale(const PiecewisePowerFn& f, double c) {
    if (!(c >= 0)) throw std::invalid_argument("scale must be nonnegative");
    if (c == 0) return {};
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) {
        std::vector<Atom> atoms = p.atoms;
        for (Atom& a : atoms) a.coeff *= c;
        out.emplace_back(p.lo, p.hi, std::move(atoms));
    }
    return PiecewisePowerFn(std::move(out), f.nonincreasing());
}

namespace {

const Piece* covering(const PiecewisePowerFn& f, double t) {
    const auto& ps = f.pieces();
    auto it = std::lower_bound(ps.begin(), ps.end(), t,
                               [](const Piece& p, double x) { return p.hi < x; });
    if (it == ps.end() || !(it->lo < t)) return nullptr;
    return &*it;
}

std::vector<double> merged_breaks(const PiecewisePowerFn& f, const PiecewisePowerFn& g) {
    std::set<double> s{0.0, kInf};
    for (const auto* h : {&f, &g})
        for (const Piece& p : h->pieces()) {
            s.insert(p.lo);
            s.insert(p.hi);
        }
    return {s.begin(), s.end()};
}

double interior_point(double x, double y) { return y == kInf ? x + 1 : 0.5 * (x + y); }

}  // namespace

PiecewisePowerFn add(const PiecewisePowerFn& f, const PiecewisePowerFn& g) {
    const auto br = merged_breaks(f, g);
    std::vector<Piece> out;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const double m = interior_point(br[i], br[i + 1]);
        const Piece* a = covering(f, m);
        const Piece* b = covering(g, m);
        if (!a && !b) continue;
        std::vector<Atom> atoms;
        if (a) atoms.insert(atoms.end(), a->atoms.begin(), a->atoms.end());
        if (b) atoms.insert(atoms.end(), b->atoms.begin(), b->atoms.end());
        out.emplace_back(br[i], br[i + 1], std::move(atoms));
    }
    return PiecewisePowerFn(std::move(out), f.nonincreasing() && g.nonincreasing());
}

PiecewisePowerFn restrict_to(const PiecewisePowerFn& f, double lo, double hi) {
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) {
        const double a = std::max(lo, p.lo), b = std::min(hi, p.hi);
        if (a < b) out.emplace_back(a, b, p.atoms);
    }
    return PiecewisePowerFn(std::move(out));
}

PiecewisePowerFn excess_part(const PiecewisePowerFn& f, double lambda) {
    if (lambda <= 0) return f;
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) {
        const double l = p.lim_lo(), h = p.lim_hi();
        if (std::max(l, h) <= lambda) continue;
        double a = p.lo, b = p.hi;
        const int tr = p.trend();
        if (tr < 0 && h < lambda) b = p.inverse(lambda);
        if (tr > 0 && l < lambda) a = p.inverse(lambda);
        if (!(a < b)) continue;
        std::vector<Atom> atoms = p.atoms;
        atoms.push_back({-lambda, 0.0});
        Piece q(a, b, std::move(atoms));
        if (!q.atoms.empty()) out.push_back(std::move(q));
    }
    return PiecewisePowerFn(std::move(out), f.nonincreasing());
}

PiecewisePowerFn capped_part(const PiecewisePowerFn& f, double lambda) {
    if (!(lambda > 0)) return {};
    if (lambda == kInf) return f;
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) {
        const double l = p.lim_lo(), h = p.lim_hi();
        if (std::max(l, h) <= lambda) {
            out.push_back(p);
            continue;
        }
        if (std::min(l, h) >= lambda) {
            out.emplace_back(p.lo, p.hi, lambda, 0.0);
            continue;
        }
        const double r = p.inverse(lambda);
        if (p.trend() < 0) {
            if (p.lo < r) out.emplace_back(p.lo, r, lambda, 0.0);
            if (r < p.hi) out.emplace_back(r, p.hi, p.atoms);
        } else {
            if (p.lo < r) out.emplace_back(p.lo, r, p.atoms);
            if (r < p.hi) out.emplace_back(r, p.hi, lambda, 0.0);
        }
    }
    return PiecewisePowerFn(std::move(out), f.nonincreasing());
}

double integrate_product(const PiecewisePowerFn& f, const PiecewisePowerFn& g) {
    const auto br = merged_breaks(f, g);
    double s = 0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const double x = br[i], y = br[i + 1];
        const double m = interior_point(x, y);
        const Piece* a = covering(f, m);
        const Piece* b = covering(g, m);
        if (!a || !b) continue;
        if (x == 0 && a->min_expo() + b->min_expo() <= -1) return kInf;
        if (y == kInf && a->max_expo() + b->max_expo() >= -1) return kInf;
        double part = 0;
        for (const Atom& u : a->atoms)
            for (const Atom& v : b->atoms)
                part += atom_integral(u.coeff * v.coeff, u.expo + v.expo, x, y);
        s += std::max(0.0, part);
    }
    return s;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    if (!(lo > 0) || !(hi > lo) || per_decade < 1)
        throw std::invalid_argument("log_grid needs 0 < lo < hi");
    const double decades = std::log10(hi / lo);
    const auto n = static_cast<std::size_t>(std::ceil(decades * per_decade - 1e-9)) + 1;
    std::vector<double> g(std::max<std::size_t>(n, 2));
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = lo * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(g.size() - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

bool sampled_nonincreasing(const PiecewisePowerFn& f) {
    std::vector<double> ts = log_grid(1e-8, 1e8, 16);
    for (double b : f.breakpoints()) {
        ts.push_back(b * (1 - 1e-9));
        ts.push_back(b);
        ts.push_back(b * (1 + 1e-9));
    }
    std::sort(ts.begin(), ts.end());
    double prev = kInf;
    for (double t : ts) {
        const double v = f.eval(t);
        if (v > prev * (1 + 1e-12) + 1e-300) return false;
        prev = v;
    }
    return true;
}

std::vector<double> GridSpec::points() const {
    if (!explicit_points.empty()) {
        if (!std::is_sorted(explicit_points.begin(), explicit_points.end()) ||
            explicit_points.front() <= 0)
            throw std::invalid_argument("grid points must be positive and increasing");
        return explicit_points;
    }
    return log_grid(lo, hi, per_decade);
}

double fit_slope(const std::vector<double>& t, const std::vector<double>& v, double from,
                 double to) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < from || t[i] > to || !(v[i] > 0) || !std::isfinite(v[i])) continue;
        const double x = std::log(t[i]), y = std::log(v[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::nan("");
    const double d = n * sxx - sx * sx;
    if (d <= 0) return std::nan("");
    return (n * sxy - sx * sy) / d;
}

double TabulatedFn::eval(double t) const {
    const std::size_t n = grid.size();
    if (t <= grid.front()) {
        if (values.front() == 0) return 0;
        return values.front() * std::pow(t / grid.front(), tail0);
    }
    if (t > grid.back()) {
        if (!tail_inf || values.back() == 0) return 0;
        return values.back() * std::pow(t / grid.back(), *tail_inf);
    }
    const auto it = std::lower_bound(grid.begin(), grid.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - grid.begin());
    if (j < n && grid[j] == t) return values[j];
    const std::size_t i = j - 1;
    const double a = values[i], b = values[j];
    if (a > 0 && b > 0 && std::isfinite(a) && std::isfinite(b)) {
        const double alpha = std::log(b / a) / std::log(grid[j] / grid[i]);
        return a * std::pow(t / grid[i], alpha);
    }
    return std::max(a, b);
}

PiecewisePowerFn TabulatedFn::to_piecewise() const {
    if (!nonfinite.empty()) throw std::domain_error("tabulated function has infinite samples");
    std::vector<Piece> out;
    const std::size_t n = grid.size();
    if (values.front() > 0)
        out.emplace_back(0.0, grid.front(), values.front() * std::pow(grid.front(), -tail0), tail0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = values[i], b = values[i + 1];
        if (a == 0 && b == 0) continue;
        if (a > 0 && b > 0) {
            const double alpha = std::log(b / a) / std::log(grid[i + 1] / grid[i]);
            out.emplace_back(grid[i], grid[i + 1], a * std::pow(grid[i], -alpha), alpha);
        } else {
            out.emplace_back(grid[i], grid[i + 1], std::max(a, b), 0.0);
        }
    }
    if (tail_inf && values.back() > 0)
        out.emplace_back(grid.back(), kInf, values.back() * std::pow(grid.back(), -*tail_inf),
                         *tail_inf);
    return PiecewisePowerFn(std::move(out));
}

TabulatedFn tabulate(const std::function<double(double)>& fn, const GridSpec& spec,
                     TabulateOptions opt) {
    TabulatedFn tab;
    tab.grid = spec.points();
    if (tab.grid.size() < 2) throw std::invalid_argument("grid needs at least two points");
    tab.values.assign(tab.grid.size(), 0.0);
    for_each_index(tab.grid.size(), opt.exec, [&](std::size_t i) { tab.values[i] = fn(tab.grid[i]); });
    for (std::size_t i = 0; i < tab.values.size(); ++i) {
        const double v = tab.values[i];
        if (std::isnan(v) || v < 0)
            throw std::domain_error("non-finite or negative sample at t=" + std::to_string(tab.grid[i]));
        if (std::isinf(v)) {
            if (!opt.allow_infinite)
                throw std::domain_error("infinite sample at t=" + std::to_string(tab.grid[i]));
            tab.nonfinite.push_back(i);
        }
    }
    const double g0 = tab.grid.front(), gn = tab.grid.back();
    const double s0 = fit_slope(tab.grid, tab.values, g0, g0 * 100);
    tab.tail0 = std::isnan(s0) ? 0.0 : s0;
    if (tab.values.back() == 0) {
        tab.tail_inf.reset();
    } else {
        const double s1 = fit_slope(tab.grid, tab.values, gn / 100, gn);
        if (std::isnan(s1)) tab.tail_inf = 0.0;
        else if (s1 < -50) tab.tail_inf.reset();
        else tab.tail_inf = s1;
    }
    return tab;
}

TabulatedFn tabulate(const PiecewisePowerFn& fn, const GridSpec& spec, TabulateOptions opt) {
    return tabulate([&fn](double t) { return fn.eval(t); }, spec, opt);
}

}  // namespace riop
