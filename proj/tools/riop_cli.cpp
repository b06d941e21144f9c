// riop: command-line access to rearrangements, norms, kernel operators,
// K functionals, the partner classifier and the property harness.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riop/classify.hpp"
#include "riop/io.hpp"
#include "riop/kernelop.hpp"
#include "riop/kfunc.hpp"
#include "riop/rearrange.hpp"
#include "riop/spaces.hpp"
#include "riop/verify.hpp"

using namespace riop;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kParse = 2, kDivergence = 3, kUnknown = 4, kViolation = 5 };

struct UnknownEntity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string fn, kernel, space, pair, format = "csv";
    std::vector<double> points;
    double xi = 0, eta = 0;
    bool has_xi = false, has_eta = false;
    std::size_t trials = 0;
    std::uint64_t seed = 42;
    double tol = 0;
    std::string suite = "all";
    bool rows = false;
};

// inline JSON when the argument starts with '{', else a file path
json read_descriptor(const std::string& arg) {
    if (arg.empty()) throw ParseError("missing descriptor");
    std::string text = arg;
    if (arg.front() != '{') {
        std::ifstream in(arg);
        if (!in) throw ParseError("cannot read '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
}

PiecewisePowerFn read_fn(const std::string& arg) {
    try {
        return function_from_json(read_descriptor(arg));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Kernel read_kernel(const std::string& arg) {
    if (arg == "laplace") return Kernel::laplace();
    try {
        return kernel_from_json(read_descriptor(arg));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

SpaceSpec read_space(const std::string& lit) {
    try {
        return parse_space(lit);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

// split "X0,X1" at the comma outside parentheses
std::pair<SpaceSpec, SpaceSpec> read_pair(const std::string& lit) {
    int depth = 0;
    for (std::size_t i = 0; i < lit.size(); ++i) {
        if (lit[i] == '(') ++depth;
        if (lit[i] == ')') --depth;
        if (lit[i] == ',' && depth == 0) return {read_space(lit.substr(0, i)), read_space(lit.substr(i + 1))};
    }
    throw ParseError("pair literal needs two spaces: '" + lit + "'");
}

std::string fmt(double x) { return format_double(x); }

json jnum(double x) {
    if (std::isfinite(x)) return x;
    return fmt(x);
}

class Table {
public:
    Table(const Config& cfg, std::string cmd) : cfg_(cfg), cmd_(std::move(cmd)) {}

    void echo(const std::string& key, const std::string& value) { echo_.emplace_back(key, value); }
    void header(std::vector<std::string> cols) { cols_ = std::move(cols); }
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    void print(std::ostream& os) const {
        if (cfg_.format == "structured") {
            json j;
            j["command"] = cmd_;
            json c = json::object();
            for (const auto& [k, v] : echo_) c[k] = v;
            j["config"] = c;
            json rows = json::array();
            for (const auto& r : rows_) {
                json o = json::object();
                for (std::size_t i = 0; i < cols_.size() && i < r.size(); ++i) o[cols_[i]] = r[i];
                rows.push_back(o);
            }
            j["rows"] = rows;
            os << j.dump(2) << "\n";
            return;
        }
        os << "# riop " << cmd_ << "\n";
        for (const auto& [k, v] : echo_) os << "# " << k << "=" << v << "\n";
        for (std::size_t i = 0; i < cols_.size(); ++i) os << (i ? "," : "") << cols_[i];
        os << "\n";
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\n";
        }
    }

private:
    const Config& cfg_;
    std::string cmd_;
    std::vector<std::pair<std::string, std::string>> echo_;
    std::vector<std::string> cols_;
    std::vector<std::vector<std::string>> rows_;
};

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + fmt(v[i]);
    return s;
}

void need_points(const Config& cfg) {
    if (cfg.points.empty()) throw ParseError("--points is required");
    for (double t : cfg.points)
        if (!(t > 0)) throw ParseError("points must be positive");
}

int cmd_rearrange(const Config& cfg) {
    need_points(cfg);
    const Distribution d(read_fn(cfg.fn));
    Table tab(cfg, "rearrange");
    tab.echo("fn", cfg.fn);
    tab.echo("points", join(cfg.points));
    tab.header({"t", "fstar", "fstarstar"});
    bool diverged = false;
    for (double t : cfg.points) {
        const double a = d.rstar(t), b = d.dstar(t);
        diverged = diverged || !std::isfinite(a) || !std::isfinite(b);
        tab.row({fmt(t), fmt(a), fmt(b)});
    }
    tab.print(std::cout);
    return diverged ? kDivergence : kOk;
}

int cmd_norm(const Config& cfg) {
    const PiecewisePowerFn f = read_fn(cfg.fn);
    const SpaceSpec X = read_space(cfg.space);
    const NormValue v = norm(f, X);
    Table tab(cfg, "norm");
    tab.echo("fn", cfg.fn);
    tab.echo("space", X.literal());
    tab.header({"space", "value", "exact", "rel_err"});
    tab.row({X.literal(), fmt(v.value), v.exact ? "true" : "false", fmt(v.rel_err)});
    tab.print(std::cout);
    return std::isfinite(v.value) ? kOk : kDivergence;
}

int cmd_apply(const Config& cfg) {
    need_points(cfg);
    const Kernel a = read_kernel(cfg.kernel);
    const PiecewisePowerFn f = read_fn(cfg.fn);
    Table tab(cfg, "apply");
    tab.echo("kernel", cfg.kernel);
    tab.echo("fn", cfg.fn);
    tab.echo("points", join(cfg.points));
    tab.header({"t", "Saf"});
    bool diverged = false;
    for (double t : cfg.points) {
        const double v = apply(a, f, t);
        diverged = diverged || !std::isfinite(v);
        tab.row({fmt(t), fmt(v)});
    }
    tab.print(std::cout);
    return diverged ? kDivergence : kOk;
}

int cmd_kfunc(const Config& cfg) {
    need_points(cfg);
    const auto [X0, X1] = read_pair(cfg.pair);
    const PiecewisePowerFn f = read_fn(cfg.fn);
    const Distribution d(f);
    Table tab(cfg, "kfunc");
    tab.echo("pair", X0.literal() + "," + X1.literal());
    tab.echo("fn", cfg.fn);
    tab.echo("points", join(cfg.points));
    tab.header({"t", "lower", "upper", "oracle"});
    const bool m0 = X0.kind == SpaceKind::SmallM, m1 = X1.kind == SpaceKind::SmallM;
    bool diverged = false;
    for (double t : cfg.points) {
        KBounds b;
        if (X0.is_l1() && X1.is_linf()) {
            b.lower = b.upper = k_l1_linf(d, t);
            b.oracle = k_oracle(d, t, X0, X1, {512, {}, Exec::serial}).value;
        } else if (m0 && X1.is_linf()) {
            b = k_m_linf_bounds(d, t, X0.gamma, true, {512, {}, Exec::serial});
        } else if (m0 && m1) {
            b = k_pair_m_bounds(f, t, X0.gamma, X1.gamma, true, {512, {}, Exec::serial});
        } else {
            b.lower = std::numeric_limits<double>::quiet_NaN();
            b.upper = b.lower;
            b.oracle = k_oracle(d, t, X0, X1, {512, {}, Exec::serial}).value;
        }
        const double o = b.oracle.value_or(std::numeric_limits<double>::quiet_NaN());
        diverged = diverged || o == kInf;
        tab.row({fmt(t), fmt(b.lower), fmt(b.upper), fmt(o)});
    }
    tab.print(std::cout);
    return diverged ? kDivergence : kOk;
}

std::string interval_str(const MembershipInterval& m) { return m.literal(); }

int cmd_classify(const Config& cfg) {
    const Kernel a = read_kernel(cfg.kernel);
    if (cfg.has_xi != cfg.has_eta) throw ParseError("--xi and --eta go together");
    const ClassificationReport r = cfg.has_xi ? classify(a, cfg.xi, cfg.eta) : classify(a);
    Table tab(cfg, "classify");
    tab.echo("kernel", cfg.kernel);
    if (cfg.has_xi) {
        tab.echo("xi", fmt(cfg.xi));
        tab.echo("eta", fmt(cfg.eta));
    }
    std::string checks;
    for (const auto& [name, ok] : r.checks) checks += (checks.empty() ? "" : ";") + name + ":" + (ok ? "ok" : "fail");
    std::string partner = r.partner ? r.partner->literal() : "";
    if (r.bracket) partner = r.bracket->first.literal() + ".." + r.bracket->second.literal();
    tab.header({"A", "B", "p", "q", "verdict", "case", "partner", "checks"});
    tab.row({"\"" + interval_str(r.A) + "\"", "\"" + interval_str(r.B) + "\"", fmt(r.p), fmt(r.q),
             verdict_name(r.verdict), r.case_label, "\"" + partner + "\"", checks});
    tab.print(std::cout);
    return kOk;
}

int cmd_verify(const Config& cfg) {
    std::vector<const PropertySpec*> chosen;
    if (cfg.suite == "all") {
        for (const PropertySpec& p : registry()) chosen.push_back(&p);
    } else {
        const PropertySpec* p = find_property(cfg.suite);
        if (!p) throw UnknownEntity("unknown property '" + cfg.suite + "'");
        chosen.push_back(p);
    }
    RunOptions opt;
    opt.trials = cfg.trials;
    opt.seed = cfg.seed;
    opt.keep_rows = cfg.rows || cfg.format == "csv";
    if (cfg.tol > 0) opt.tol = {cfg.tol, cfg.tol};
    bool violated = false;
    std::ostream& os = std::cout;
    if (cfg.format == "structured") {
        json out = json::array();
        for (const PropertySpec* p : chosen) {
            const PropertyReport r = run_property(*p, opt);
            violated = violated || !r.ok();
            out.push_back({{"property", r.name},        {"anchor", r.anchor},
                           {"hard", r.hard},            {"trials", r.trials},
                           {"passed", r.passed},        {"flagged", r.flagged},
                           {"degenerate", r.degenerate}, {"skipped", r.skipped},
                           {"worst_ratio", jnum(r.worst_ratio)}, {"worst_trial", r.worst_index},
                           {"witness", r.witness}});
        }
        json j{{"command", "verify"},
               {"config", {{"suite", cfg.suite}, {"trials", cfg.trials}, {"seed", cfg.seed}, {"tol", cfg.tol}}},
               {"reports", out}};
        os << j.dump(2) << "\n";
    } else {
        os << "# riop verify\n# suite=" << cfg.suite << "\n# trials=" << cfg.trials << "\n# seed=" << cfg.seed
           << "\n# tol=" << fmt(cfg.tol) << "\n";
        std::vector<PropertyReport> reps;
        for (const PropertySpec* p : chosen) {
            reps.push_back(run_property(*p, opt));
            violated = violated || !reps.back().ok();
            std::istringstream summary(report_text(reps.back()));
            for (std::string line; std::getline(summary, line);) os << "# " << line << "\n";
        }
        os << report_csv_header() << "\n";
        for (const PropertyReport& r : reps) os << report_csv_rows(r);
    }
    return violated ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"riop: rearrangement-invariant optimal range tools"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--format", cfg.format, "csv | structured")
        ->check(CLI::IsMember({"csv", "structured"}))
        ->capture_default_str();

    auto points = [&](CLI::App* sub) {
        sub->add_option("--points", cfg.points, "comma-separated evaluation points")->delimiter(',');
    };
    auto* r = app.add_subcommand("rearrange", "f* and f** at points");
    r->add_option("--fn", cfg.fn, "function descriptor (file or inline JSON)")->required();
    points(r);
    auto* n = app.add_subcommand("norm", "norm of f in a space");
    n->add_option("--fn", cfg.fn, "function descriptor")->required();
    n->add_option("--space", cfg.space, "space literal: L1, Linf, L(p,q), M(g), Lam(g), m(g)")->required();
    auto* a = app.add_subcommand("apply", "S_a f at points");
    a->add_option("--kernel", cfg.kernel, "kernel descriptor or 'laplace'")->required();
    a->add_option("--fn", cfg.fn, "function descriptor")->required();
    points(a);
    auto* k = app.add_subcommand("kfunc", "K functional bounds and oracle");
    k->add_option("--pair", cfg.pair, "pair literal, e.g. 'L1,Linf' or 'm(1),m(0.5)'")->required();
    k->add_option("--fn", cfg.fn, "function descriptor")->required();
    points(k);
    auto* c = app.add_subcommand("classify", "optimal partner classification of a kernel");
    c->add_option("--kernel", cfg.kernel, "kernel descriptor or 'laplace'")->required();
    auto* xi = c->add_option("--xi", cfg.xi, "Lorentz index xi of the domain");
    auto* eta = c->add_option("--eta", cfg.eta, "Lorentz index eta of the domain");
    auto* v = app.add_subcommand("verify", "run the property harness");
    v->add_option("suite", cfg.suite, "property name or 'all'")->capture_default_str();
    v->add_option("--trials", cfg.trials, "trials per property (0: property default)")->capture_default_str();
    v->add_option("--seed", cfg.seed, "base seed")->capture_default_str();
    v->add_option("--tol", cfg.tol, "relative slack for hard verdicts (0: built-in)")->capture_default_str();
    v->add_flag("--rows", cfg.rows, "keep per-trial rows in structured output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }
    cfg.has_xi = xi->count() > 0;
    cfg.has_eta = eta->count() > 0;

    try {
        if (r->parsed()) return cmd_rearrange(cfg);
        if (n->parsed()) return cmd_norm(cfg);
        if (a->parsed()) return cmd_apply(cfg);
        if (k->parsed()) return cmd_kfunc(cfg);
        if (c->parsed()) return cmd_classify(cfg);
        if (v->parsed()) return cmd_verify(cfg);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const UnknownEntity& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    return kOk;
}
