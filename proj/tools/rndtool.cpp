#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rnd/calib.hpp"
#include "rnd/chain.hpp"
#include "rnd/errors.hpp"
#include "rnd/experiments.hpp"
#include "rnd/format.hpp"
#include "rnd/loo.hpp"
#include "rnd/pricing.hpp"
#include "rnd/specfun.hpp"

using namespace rnd;

namespace {

struct Global {
    bool full = false;
    bool strict = false;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& kv) {
    std::map<std::string, double> out;
    for (const auto& s : kv) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw SchemaError("--param expects name=value, got '" + s + "'");
        const std::string v = s.substr(eq + 1);
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != v.size() || v.empty()) throw SchemaError("--param " + s + ": value is not a number");
        out[s.substr(0, eq)] = x;
    }
    return out;
}

void take(std::map<std::string, double>& m, const char* name, double& dst) {
    auto it = m.find(name);
    if (it == m.end()) return;
    dst = it->second;
    m.erase(it);
}

void no_leftovers(const std::map<std::string, double>& m, const std::string& model) {
    if (!m.empty()) throw SchemaError("unknown parameter '" + m.begin()->first + "' for model " + model);
}

VgParams vg_params(std::map<std::string, double> m) {
    VgParams p;
    take(m, "theta", p.theta);
    take(m, "sigma", p.sigma);
    take(m, "alpha", p.alpha);
    no_leftovers(m, "vg");
    check_vg(p);
    return p;
}

HestonParams heston_params(std::map<std::string, double> m) {
    HestonParams p;
    take(m, "v0", p.v0);
    take(m, "kappa", p.kappa);
    take(m, "theta", p.theta);
    take(m, "eta", p.eta);
    take(m, "rho", p.rho);
    no_leftovers(m, "heston");
    check_heston(p);
    return p;
}

double bs_sigma(std::map<std::string, double> m) {
    double s = 0.2;
    take(m, "sigma", s);
    no_leftovers(m, "bs");
    if (!(s > 0.0)) throw DomainError("bs: sigma must be positive");
    return s;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << text;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size()) throw SchemaError(std::string("bad ") + what + " '" + tok + "'");
        out.push_back(x);
    }
    return out;
}

std::vector<double> read_strikes_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    std::vector<double> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty() || line[0] == '#') continue;
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(line, &used);
        } catch (const std::exception&) {
            if (n == 1) continue;  // header
            throw SchemaError(path + " line " + std::to_string(n) + ": not a number");
        }
        while (used < line.size() && (line[used] == ' ' || line[used] == '\r' || line[used] == '\t')) ++used;
        if (used != line.size()) throw SchemaError(path + " line " + std::to_string(n) + ": not a number");
        out.push_back(x);
    }
    return out;
}

void print_tables(const std::vector<TextTable>& ts, const std::string& csv) {
    std::string text, delim;
    for (const auto& t : ts) {
        text += render_text(t) + "\n";
        delim += "# " + t.title + "\n" + render_delimited(t);
    }
    std::cout << text;
    if (!csv.empty()) write_file(csv, delim);
}

// ---- approx-density

struct DensityArgs {
    std::string model = "vg";
    std::vector<std::string> params;
    double t = 1.0;
    std::string flavor = "p";
    int n = 1;
    std::string scale;
    bool optimize = false;
    std::string out, model_out;
};

int cmd_approx_density(const DensityArgs& a, const Global& g) {
    ApproxSpec spec;
    spec.flavor = parse_flavor(a.flavor);
    spec.n = a.n;
    if (a.n < 0 || a.n > kMaxHermiteOrder) throw DomainError("n must be in [0, 64]");
    if (spec.flavor == Flavor::m && a.n < 1) throw DomainError("flavor m needs n >= 1");
    if (spec.flavor == Flavor::free && a.n == 0)
        std::cerr << "notice: the order-0 free approximation is degenerate (a single Gaussian bump with free scale)\n";
    if (a.scale.empty()) spec.mode = spec.flavor == Flavor::free ? ScaleMode::moment : ScaleMode::p;
    else if (a.scale == "p") spec.mode = ScaleMode::p;
    else if (a.scale == "moment") spec.mode = ScaleMode::moment;
    else throw SchemaError("--scale must be p or moment");
    if (spec.flavor != Flavor::free && spec.mode == ScaleMode::moment)
        throw DomainError("flavors p and m tie b to a (b = -a^2/2); use --scale p");
    spec.optimized = a.optimize;
    spec.name = "f" + std::to_string(a.n) + flavor_name(spec.flavor) + (a.optimize ? "*" : "");

    DensityTable dt;
    if (a.model == "vg") {
        const auto p = vg_params(parse_params(a.params));
        if (!(a.t > 0.0)) throw DomainError("t must be positive");
        dt = vg_density_table(p, a.t, {spec});
    } else if (a.model == "heston") {
        const auto p = heston_params(parse_params(a.params));
        if (!(a.t > 0.0)) throw DomainError("t must be positive");
        dt = heston_density_table(p, a.t, {spec});
    } else {
        throw SchemaError("--model must be vg or heston");
    }
    const auto& row = dt.rows.front();
    std::cout << "target mean " << fmt_num(dt.mean, g.full) << "  std " << fmt_num(dt.std, g.full) << "  L2 norm "
              << fmt_num(dt.l2, g.full) << "\n";
    std::cout << "model a " << fmt_num(row.model.a, g.full) << "  b " << fmt_num(row.model.b, g.full) << "\n\n";
    std::cout << render_text(density_panel(dt, g.full));
    if (!a.out.empty()) {
        std::ostringstream os;
        write_columns(os, dt.grid, {"f", row.spec.name},
                      {dt.grid.f, eval_model(row.model, dt.grid.abscissae())});
        write_file(a.out, os.str());
    }
    if (!a.model_out.empty()) write_file(a.model_out, model_to_json(row.model) + "\n");
    if (!row.converged) {
        std::cerr << "warning: scale-location optimizer did not converge\n";
        if (g.strict) return 4;
    }
    return 0;
}

// ---- price

struct PriceArgs {
    std::string model = "bs";
    std::vector<std::string> params;
    std::string hermite_file;
    std::string strikes = "1";
    std::string strikes_file;
    double s0 = 1.0, r = 0.0, q = 0.0, t = 1.0;
    double damping = kDefaultDamping;
};

int cmd_price(const PriceArgs& a, const Global& g) {
    std::vector<double> ks = a.strikes_file.empty() ? parse_list(a.strikes, "strike") : read_strikes_file(a.strikes_file);
    PutSpec s{a.s0, 1.0, a.r, a.q, a.t};
    check_put(s);
    if (!(a.damping < -1.0)) throw DomainError("--alpha-damp must be < -1");
    std::vector<double> pos;
    for (double k : ks) {
        if (k < 0.0 || !std::isfinite(k)) throw DomainError("strikes must be non-negative");
        if (k > 0.0) pos.push_back(k);
    }
    std::vector<double> pp;
    if (!pos.empty()) {
        if (a.model == "bs") {
            const double sig = bs_sigma(parse_params(a.params));
            for (double k : pos) {
                PutSpec sk = s;
                sk.k = k;
                pp.push_back(bs_put(sk, sig));
            }
        } else if (a.model == "vg") {
            pp = vg_put_ladder(vg_params(parse_params(a.params)), s, pos);
        } else if (a.model == "heston") {
            pp = heston_put_ladder(heston_params(parse_params(a.params)), s, pos, a.damping);
        } else if (a.model == "hermite") {
            if (a.hermite_file.empty()) throw SchemaError("--model hermite needs --hermite-model FILE");
            if (!a.params.empty()) throw SchemaError("--param is not used with --model hermite");
            pp = hermite_put_ladder(model_from_json(slurp(a.hermite_file)), s, pos);
        } else {
            throw SchemaError("--model must be bs, vg, heston or hermite");
        }
    }
    TextTable t;
    t.header = {"strike", "put"};
    std::size_t i = 0;
    for (double k : ks) {
        double v = 0.0;
        if (k == 0.0) std::cerr << "warning: strike 0 has put price 0\n";
        else v = pp[i++];
        t.rows.push_back({fmt_num(k, g.full), fmt_num(v, g.full)});
    }
    std::cout << render_delimited(t, '\t');
    return 0;
}

// ---- calibrate

struct CalibArgs {
    std::string chain;
    std::vector<std::string> estimators{"bs"};
    std::string json_out;
    int max_iter = 0;
};

int cmd_calibrate(const CalibArgs& a, const Global& g) {
    const auto blocks = clean_dataset(group_blocks(read_chain_file(a.chain)));
    std::vector<Estimator> ests;
    for (const auto& e : a.estimators) ests.push_back(parse_estimator(e));
    FitOptions fo;
    if (a.max_iter < 0) throw SchemaError("--max-iter must be >= 0");
    if (a.max_iter > 0) {
        fo.nm.max_iter = a.max_iter;
        fo.restarts = 0;
    }
    nlohmann::ordered_json js = nlohmann::ordered_json::array();
    bool all_conv = true;
    TextTable t;
    t.header = {"date", "days", "estimator", "quotes", "mean error %", "converged", "flags", "parameters"};
    for (const auto& b : blocks)
        for (const auto& e : ests) {
            const auto f = calibrate(e, b, fo);
            const auto& r = f.result;
            all_conv = all_conv && r.converged;
            std::string flags;
            if (r.overfit) flags += "overfit ";
            if (!r.admissible) flags += e.kind == Estimator::Kind::heston ? "feller-violated " : "inadmissible ";
            if (!flags.empty()) flags.pop_back();
            std::string ps;
            for (std::size_t i = 0; i < r.params.size(); ++i)
                ps += (i ? " " : "") + r.names[i] + "=" + fmt_num(r.params[i], g.full);
            if (e.kind == Estimator::Kind::hermite) {
                ps += " coeffs=[";
                for (std::size_t i = 0; i < f.hermite.coeffs.size(); ++i)
                    ps += (i ? " " : "") + fmt_num(f.hermite.coeffs[i], g.full);
                ps += "]";
            }
            t.rows.push_back({b.valuation_date, std::to_string(b.maturity_days), e.name(), std::to_string(b.size()),
                              fmt_num(100.0 * r.objective / static_cast<double>(b.size()), g.full),
                              r.converged ? "yes" : "no", flags.empty() ? "-" : flags, ps});
            nlohmann::ordered_json o;
            o["valuation_date"] = b.valuation_date;
            o["maturity_days"] = b.maturity_days;
            o["estimator"] = e.name();
            o["quotes"] = b.size();
            o["objective"] = r.objective;
            o["iterations"] = r.iterations;
            o["converged"] = r.converged;
            o["overfit"] = r.overfit;
            o["admissible"] = r.admissible;
            for (std::size_t i = 0; i < r.params.size(); ++i) o["params"][r.names[i]] = r.params[i];
            if (e.kind == Estimator::Kind::hermite) o["model"] = nlohmann::ordered_json::parse(model_to_json(f.hermite));
            js.push_back(o);
        }
    std::cout << render_text(t);
    if (!a.json_out.empty()) write_file(a.json_out, js.dump(2) + "\n");
    if (!all_conv) {
        std::cerr << "warning: some calibrations did not converge\n";
        if (g.strict) return 4;
    }
    return 0;
}

// ---- tables

struct TablesArgs {
    std::string which;
    std::uint64_t seed = 1;
    bool no_floor = false;
    std::string csv, grid_out;
};

int cmd_tables(const TablesArgs& a, const Global& g) {
    const bool vg = a.which.rfind("vg", 0) == 0;
    const char kind = a.which.back();
    const double t = 1.0;
    const DensityTable dt = vg ? vg_density_table() : heston_density_table();
    bool conv = true;
    for (const auto& r : dt.rows) conv = conv && r.converged;
    std::vector<TextTable> ts;
    if (kind == '1') {
        std::cout << (vg ? "variance-gamma" : "Heston") << " test density: mean " << fmt_num(dt.mean, g.full)
                  << ", std " << fmt_num(dt.std, g.full) << ", L2 norm " << fmt_num(dt.l2, g.full) << "\n\n";
        ts.push_back(density_panel(dt, g.full));
        if (!a.grid_out.empty()) {
            std::vector<std::string> names{"f"};
            std::vector<std::vector<double>> cols{dt.grid.f};
            const auto xs = dt.grid.abscissae();
            for (const auto& r : dt.rows) {
                names.push_back(r.spec.name);
                cols.push_back(eval_model(r.model, xs));
            }
            std::ostringstream os;
            write_columns(os, dt.grid, names, cols);
            write_file(a.grid_out, os.str());
        }
    } else {
        const bool floor = !a.no_floor;
        const PricingTable pt = vg ? vg_pricing_table(dt, VgParams{}, t, a.seed, floor)
                                   : heston_pricing_table(dt, HestonParams{}, t, a.seed, floor);
        std::cout << "strikes drawn with seed " << a.seed << (floor ? "; negative model prices count as 0\n\n" : "\n\n");
        for (auto& p : pricing_panels(pt, kind == '3', g.full)) ts.push_back(std::move(p));
        if (kind == '2') {
            const auto fit = vg ? price_fit_experiment(pt.strikes, pt.target, t, 1, Flavor::p)
                                : price_fit_experiment(pt.strikes, pt.target, t, 3, Flavor::p);
            ts.push_back(price_fit_panel(fit, g.full));
            conv = conv && fit.result.converged;
        }
    }
    print_tables(ts, a.csv);
    if (!conv) {
        std::cerr << "warning: an optimizer did not converge\n";
        if (g.strict) return 4;
    }
    return 0;
}

// ---- loo

struct LooArgs {
    std::string chain;
    std::vector<std::string> estimators{"bs", "vg", "heston"};
    std::string sizes = "1";
    bool serial = false;
    std::string csv, points_out;
};

int cmd_loo(const LooArgs& a, const Global& g) {
    const auto blocks = group_blocks(read_chain_file(a.chain));
    std::vector<Estimator> ests;
    for (const auto& e : a.estimators) ests.push_back(parse_estimator(e));
    std::vector<int> sizes;
    for (double s : parse_list(a.sizes, "min block size")) {
        if (s < 1 || s != std::floor(s)) throw SchemaError("min block sizes must be positive integers");
        sizes.push_back(static_cast<int>(s));
    }
    CleanReport cr;
    const auto clean = clean_dataset(blocks, {}, &cr);
    if (cr.total()) std::cerr << "cleaning removed " << cr.total() << " quotes\n";
    std::vector<std::vector<LooReport>> runs;
    std::size_t failures = 0;
    for (int s : sizes) {
        LooOptions o;
        o.min_block_size = s;
        o.exec = a.serial ? Exec::serial : Exec::parallel;
        runs.push_back(loo_experiment(clean, ests, o));
        for (const auto& r : runs.back()) failures += r.report.failures;
    }
    std::cout << "Out-of-sample absolute relative pricing errors (percent); in-range figures in parentheses\n\n";
    print_tables(loo_panels(sizes, runs, g.full), a.csv);
    if (!a.points_out.empty()) {
        std::ostringstream os;
        os << "min_block_size,estimator,valuation_date,maturity_days,strike,observed,model,error,in_range,failed\n";
        for (std::size_t i = 0; i < runs.size(); ++i)
            for (const auto& r : runs[i])
                for (const auto& p : r.points) {
                    const auto& b = clean[p.block];
                    os << sizes[i] << ',' << r.estimator.name() << ',' << b.valuation_date << ',' << b.maturity_days
                       << ',' << fmt_num(p.strike, true) << ',' << fmt_num(p.observed, true) << ','
                       << fmt_num(p.model, true) << ',' << fmt_num(p.error, true) << ',' << p.in_range << ','
                       << p.failed << '\n';
                }
        write_file(a.points_out, os.str());
    }
    if (failures) std::cerr << failures << " calibrations failed and were excluded\n";
    return 0;
}

// ---- clean

struct CleanArgs {
    std::string in, out;
    long min_volume = 1;
    bool keep_higher = false;
};

int cmd_clean(const CleanArgs& a, const Global&) {
    CleanOptions o;
    o.min_volume = a.min_volume;
    o.keep_lower_strike = !a.keep_higher;
    CleanReport r;
    const auto blocks = clean_dataset(group_blocks(read_chain_file(a.in)), o, &r);
    std::ostringstream os;
    write_chain(os, blocks);
    if (a.out.empty()) std::cout << os.str();
    else write_file(a.out, os.str());
    std::cerr << "removed " << r.total() << " quotes: " << r.low_volume << " low volume, " << r.duplicate_strike
              << " duplicate strike, " << r.non_monotone << " non-monotone; " << r.empty_blocks
              << " empty blocks dropped\n";
    return 0;
}

// ---- synth-chain

struct SynthArgs {
    std::string model = "heston";
    std::vector<std::string> params;
    std::uint64_t seed = 1;
    int days = 2;
    int quotes = 8;
    std::string maturities = "30,91,182";
    std::string out;
};

int cmd_synth(const SynthArgs& a, const Global&) {
    SynthChainSpec s;
    s.model = a.model;
    s.seed = a.seed;
    s.days = a.days;
    s.quotes = a.quotes;
    s.maturities.clear();
    for (double m : parse_list(a.maturities, "maturity")) s.maturities.push_back(static_cast<int>(m));
    const auto p = parse_params(a.params);
    if (a.model == "bs") s.sigma = bs_sigma(p);
    else if (a.model == "vg") s.vg = vg_params(p);
    else if (a.model == "heston") s.heston = heston_params(p);
    else throw SchemaError("--model must be bs, vg or heston");
    std::ostringstream os;
    write_chain(os, synth_chain(s));
    if (a.out.empty()) std::cout << os.str();
    else write_file(a.out, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Risk-neutral density and put pricing tool"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_flag("--full-precision", g.full, "print 17 significant digits");
    app.add_flag("--strict", g.strict, "exit 4 when an optimizer does not converge");

    DensityArgs da;
    auto* ad = app.add_subcommand("approx-density", "Hermite approximation of a test density");
    ad->add_option("--model", da.model, "vg or heston")->capture_default_str();
    ad->add_option("--param", da.params, "model parameter name=value (repeatable)");
    ad->add_option("--t", da.t, "maturity in years")->capture_default_str();
    ad->add_option("--flavor", da.flavor, "free, p or m")->capture_default_str();
    ad->add_option("--n", da.n, "expansion order")->capture_default_str();
    ad->add_option("--scale", da.scale, "initial scale/location: p or moment");
    ad->add_flag("--optimize", da.optimize, "minimize the L2 error over the scale");
    ad->add_option("--out", da.out, "grid file with target and approximation");
    ad->add_option("--model-out", da.model_out, "JSON model record");

    PriceArgs pa;
    auto* pr = app.add_subcommand("price", "European put prices");
    pr->add_option("--model", pa.model, "bs, vg, heston or hermite")->capture_default_str();
    pr->add_option("--param", pa.params, "model parameter name=value (repeatable)");
    pr->add_option("--hermite-model", pa.hermite_file, "JSON model record");
    pr->add_option("--strikes", pa.strikes, "comma-separated strikes")->capture_default_str();
    pr->add_option("--strikes-file", pa.strikes_file, "one strike per line");
    pr->add_option("--s0", pa.s0)->capture_default_str();
    pr->add_option("--r", pa.r)->capture_default_str();
    pr->add_option("--q", pa.q)->capture_default_str();
    pr->add_option("--t", pa.t)->capture_default_str();
    pr->add_option("--alpha-damp", pa.damping, "Fourier damping, < -1")->capture_default_str();

    CalibArgs ca;
    auto* cal = app.add_subcommand("calibrate", "Calibrate estimators to every block of a chain");
    cal->add_option("--chain", ca.chain, "chain CSV")->required();
    cal->add_option("--estimator", ca.estimators, "bs, vg, heston, hermite:<free|p|m>:<n> (repeatable)");
    cal->add_option("--json", ca.json_out, "write results as JSON");
    cal->add_option("--max-iter", ca.max_iter, "simplex iteration cap per fit (0: default)");

    TablesArgs ta;
    auto* tb = app.add_subcommand("tables", "Synthetic experiment tables");
    tb->add_option("which", ta.which, "vg1 vg2 vg3 hes1 hes2 hes3")
        ->required()
        ->check(CLI::IsMember({"vg1", "vg2", "vg3", "hes1", "hes2", "hes3"}));
    tb->add_option("--seed", ta.seed, "strike draw seed")->capture_default_str();
    tb->add_flag("--no-floor", ta.no_floor, "use negative model prices as they are");
    tb->add_option("--csv", ta.csv, "also write the panels as CSV");
    tb->add_option("--grid-out", ta.grid_out, "vg1/hes1: density and approximations on the grid");

    LooArgs la;
    auto* lo = app.add_subcommand("loo", "Leave-one-out pricing errors");
    lo->add_option("--chain", la.chain, "chain CSV")->required();
    lo->add_option("--estimator", la.estimators, "estimators (repeatable)");
    lo->add_option("--min-block-size", la.sizes, "comma-separated sizes; blocks with at most n quotes are skipped")
        ->capture_default_str();
    lo->add_flag("--serial", la.serial, "single-threaded reference run");
    lo->add_option("--csv", la.csv, "also write the panels as CSV");
    lo->add_option("--points", la.points_out, "per-test-point CSV");

    CleanArgs cla;
    auto* cl = app.add_subcommand("clean", "Drop low-volume and non-monotone quotes");
    cl->add_option("--in", cla.in, "chain CSV")->required();
    cl->add_option("--out", cla.out, "output CSV (stdout if omitted)");
    cl->add_option("--min-volume", cla.min_volume)->capture_default_str();
    cl->add_flag("--keep-higher", cla.keep_higher, "on a monotonicity conflict keep the higher strike");

    SynthArgs sa;
    auto* sy = app.add_subcommand("synth-chain", "Write a chain CSV priced by a known model");
    sy->add_option("--model", sa.model, "bs, vg or heston")->capture_default_str();
    sy->add_option("--param", sa.params, "model parameter name=value (repeatable)");
    sy->add_option("--seed", sa.seed)->capture_default_str();
    sy->add_option("--days", sa.days)->capture_default_str();
    sy->add_option("--quotes", sa.quotes, "quotes per block")->capture_default_str();
    sy->add_option("--maturities", sa.maturities, "comma-separated days")->capture_default_str();
    sy->add_option("--out", sa.out, "output CSV (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*ad) return cmd_approx_density(da, g);
        if (*pr) return cmd_price(pa, g);
        if (*cal) return cmd_calibrate(ca, g);
        if (*tb) return cmd_tables(ta, g);
        if (*lo) return cmd_loo(la, g);
        if (*cl) return cmd_clean(cla, g);
        if (*sy) return cmd_synth(sa, g);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "not converged: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
