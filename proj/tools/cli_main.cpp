// loggas-cli: equilibrium solves, MCMC sampling, free-energy scans, and
// invariant verification over the shared C API.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loggas/loggas.h"
#include "svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // verification / convergence failure
constexpr int kExitUsage = 2;

struct Options {
    std::string model = "jack";
    double theta = 1.0;
    double t = -1.0;  // required for jack
    std::vector<int> n_list;
    std::vector<double> window;  // LO HI
    size_t grid_cells = 2000;
    double tol = 1e-3;
    long long steps = 100000;
    long long burn_in = 10000;
    long long thin = 100;
    uint64_t seed = 1;
    std::string out_dir = "out";
    std::string table_file;  // custom-table potential samples
    double theta_prime = 0.0, floor_const = 0.0, tail_value = 0.0;
    std::string config_file;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--model", o.model)
        ->check(CLI::IsMember({"jack", "cauchy", "custom-table"}));
    cmd->add_option("--theta", o.theta);
    cmd->add_option("--t", o.t);
    cmd->add_option("--N", o.n_list);
    cmd->add_option("--window", o.window)->expected(2);
    cmd->add_option("--grid-cells,-M", o.grid_cells);
    cmd->add_option("--tol", o.tol);
    cmd->add_option("--steps", o.steps);
    cmd->add_option("--burn-in", o.burn_in);
    cmd->add_option("--thin", o.thin);
    cmd->add_option("--seed", o.seed);
    cmd->add_option("--out", o.out_dir);
    cmd->add_option("--table-file", o.table_file);
    cmd->add_option("--theta-prime", o.theta_prime);
    cmd->add_option("--floor-const", o.floor_const);
    cmd->add_option("--tail-value", o.tail_value);
    cmd->add_option("--config", o.config_file);
}

// "key = value" config file; command-line flags take precedence over file
// entries, which take precedence over built-in defaults.
void apply_config_file(CLI::App* cmd, Options& o) {
    if (o.config_file.empty()) return;
    std::ifstream is(o.config_file);
    if (!is)
        throw std::runtime_error("cannot read config file " + o.config_file);
    auto trim = [](const std::string& s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    auto unset = [&](const char* flag) { return cmd->count(flag) == 0; };
    std::string line;
    while (std::getline(is, line)) {
        std::string l = trim(line);
        if (l.empty() || l[0] == '#' || l[0] == '[') continue;
        size_t eq = l.find('=');
        if (eq == std::string::npos) continue;
        std::string key = trim(l.substr(0, eq));
        std::string val = trim(l.substr(eq + 1));
        for (char& ch : key)
            if (ch == '_') ch = '-';
        if (key == "model" && unset("--model")) o.model = val;
        else if (key == "theta" && unset("--theta")) o.theta = std::stod(val);
        else if (key == "t" && unset("--t")) o.t = std::stod(val);
        else if (key == "tol" && unset("--tol")) o.tol = std::stod(val);
        else if (key == "grid-cells" && unset("--grid-cells"))
            o.grid_cells = static_cast<size_t>(std::stoul(val));
        else if (key == "steps" && unset("--steps")) o.steps = std::stoll(val);
        else if (key == "burn-in" && unset("--burn-in")) o.burn_in = std::stoll(val);
        else if (key == "thin" && unset("--thin")) o.thin = std::stoll(val);
        else if (key == "seed" && unset("--seed")) o.seed = std::stoull(val);
        else if (key == "out" && unset("--out")) o.out_dir = val;
        else if (key == "table-file" && unset("--table-file")) o.table_file = val;
        else if (key == "theta-prime" && unset("--theta-prime"))
            o.theta_prime = std::stod(val);
        else if (key == "floor-const" && unset("--floor-const"))
            o.floor_const = std::stod(val);
        else if (key == "tail-value" && unset("--tail-value"))
            o.tail_value = std::stod(val);
        else if (key == "window" && unset("--window")) {
            std::istringstream ws(val);
            o.window.clear();
            for (double x; ws >> x;) o.window.push_back(x);
        } else if (key == "N" && unset("--N")) {
            std::istringstream ws(val);
            o.n_list.clear();
            for (int x; ws >> x;) o.n_list.push_back(x);
        }
    }
}

// the resolved values (flags > config file > defaults) are echoed here for
// reproducibility.
void echo_config(const Options& o, const std::string& cmd) {
    std::ofstream os(o.out_dir + "/effective_config.txt");
    os << "command = " << cmd << "\n";
    os << "model = " << o.model << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", o.theta);
    os << "theta = " << buf << "\n";
    if (o.t > 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", o.t);
        os << "t = " << buf << "\n";
    }
    if (!o.n_list.empty()) {
        os << "N =";
        for (int n : o.n_list) os << ' ' << n;
        os << "\n";
    }
    if (o.window.size() == 2) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g", o.window[0], o.window[1]);
        os << "window = " << buf << "\n";
    }
    os << "grid_cells = " << o.grid_cells << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", o.tol);
    os << "tol = " << buf << "\n";
    os << "steps = " << o.steps << "\n";
    os << "burn_in = " << o.burn_in << "\n";
    os << "thin = " << o.thin << "\n";
    os << "seed = " << o.seed << "\n";
}

lg_model* build_model(const Options& o, std::string& err) {
    if (o.model == "jack") {
        if (o.t <= 0.0) {
            err = "usage: --t > 0 is required for the jack model";
            return nullptr;
        }
        lg_model* m = lg_model_jack(o.theta, o.t);
        if (!m) err = lg_last_error();
        return m;
    }
    if (o.model == "cauchy") {
        lg_model* m = lg_model_cauchy(o.theta);
        if (!m) err = lg_last_error();
        return m;
    }
    // custom table: file of "x v" lines plus a growth certificate
    if (o.table_file.empty() || o.theta_prime == 0.0) {
        err = "usage: custom-table needs --table-file and --theta-prime";
        return nullptr;
    }
    std::ifstream is(o.table_file);
    if (!is) {
        err = "cannot read " + o.table_file;
        return nullptr;
    }
    std::vector<double> xs, vs;
    double x, v;
    while (is >> x >> v) {
        xs.push_back(x);
        vs.push_back(v);
    }
    lg_model* m = lg_model_table(xs.data(), vs.data(), xs.size(), o.theta,
                                 o.theta_prime, o.floor_const, o.tail_value);
    if (!m) err = lg_last_error();
    return m;
}

int cmd_equilibrium(const Options& o) {
    std::string err;
    lg_model* m = build_model(o, err);
    if (!m) {
        std::fprintf(stderr, "%s\n", err.c_str());
        return err.rfind("usage:", 0) == 0 ? kExitUsage : kExitFailure;
    }
    double wlo = -8.0, whi = 8.0;
    if (o.window.size() == 2) {
        wlo = o.window[0];
        whi = o.window[1];
    } else if (o.model == "jack") {
        double slo, shi;
        lg_model_support(m, &slo, &shi);
        wlo = 0.0;
        whi = shi + 2.0;
    }
    std::filesystem::create_directories(o.out_dir);
    echo_config(o, "equilibrium");

    lg_measure* mu = nullptr;
    double c, rs, ro, f;
    int iters;
    lg_status st = lg_equilibrium_solve(m, wlo, whi, o.grid_cells, o.tol, &mu,
                                        &c, &rs, &ro, &f, &iters);
    if (st != LG_OK) {
        std::fprintf(stderr, "equilibrium solve failed: %s\n", lg_last_error());
        std::ofstream(o.out_dir + "/summary.txt")
            << "status = FAILED\nreason = " << lg_last_error() << "\n";
        lg_model_free(m);
        return kExitFailure;
    }
    lg_measure_write_csv(mu, (o.out_dir + "/equilibrium.csv").c_str());
    lg_measure_write_cdf_csv(mu, (o.out_dir + "/cdf.csv").c_str());

    // support estimate: outermost cells carrying non-negligible density
    size_t cells = lg_measure_cells(mu);
    double dmax = 0.0;
    for (size_t i = 0; i < cells; ++i)
        dmax = std::max(dmax, lg_measure_density(mu, i));
    double slo = 0.0, shi = 0.0;
    bool found = false;
    for (size_t i = 0; i < cells; ++i) {
        if (lg_measure_density(mu, i) > 1e-3 * dmax) {
            double mid = lg_measure_left(mu) +
                         (static_cast<double>(i) + 0.5) * lg_measure_h(mu);
            if (!found) slo = mid;
            shi = mid;
            found = true;
        }
    }

    {
        std::ofstream os(o.out_dir + "/summary.txt");
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "status = OK\nconstant_c = %.10g\nresidual_support = "
                      "%.3g\nresidual_offsupport = %.3g\nenergy = "
                      "%.10g\niterations = %d\nsupport = [%.6g, %.6g]\n",
                      c, rs, ro, f, iters, slo, shi);
        os << buf;
    }

    // density plot, with the closed form overlaid when the model has one
    std::vector<double> xs, ys;
    for (size_t i = 0; i < cells; ++i) {
        xs.push_back(lg_measure_left(mu) +
                     (static_cast<double>(i) + 0.5) * lg_measure_h(mu));
        ys.push_back(lg_measure_density(mu, i));
    }
    svgplot::Plot plot("equilibrium density");
    plot.add_line(xs, ys, "steelblue", "solver");
    double d0;
    if (lg_model_closed_density(m, xs.front(), &d0) == LG_OK) {
        std::vector<double> yc;
        for (double x : xs) {
            double d;
            lg_model_closed_density(m, x, &d);
            yc.push_back(d);
        }
        plot.add_line(xs, yc, "firebrick", "closed form");
    }
    plot.write(o.out_dir + "/density.svg");

    lg_measure_free(mu);
    lg_model_free(m);
    return kExitOk;
}

int cmd_sample(const Options& o) {
    std::string err;
    lg_model* m = build_model(o, err);
    if (!m) {
        std::fprintf(stderr, "%s\n", err.c_str());
        return err.rfind("usage:", 0) == 0 ? kExitUsage : kExitFailure;
    }
    if (o.n_list.size() != 1) {
        std::fprintf(stderr, "usage: sample needs exactly one --N\n");
        lg_model_free(m);
        return kExitUsage;
    }
    int n = o.n_list.front();
    int has_lower = 0, has_upper = 0;
    long long lower = 0, upper = 0;
    if (o.window.size() == 2) {
        has_lower = has_upper = 1;
        lower = static_cast<long long>(std::ceil(o.window[0]));
        upper = static_cast<long long>(std::floor(o.window[1]));
    }
    lg_sampler* s = nullptr;
    int init_mode = (o.model == "jack" && n >= 8) ? 1 : 0;
    lg_status st = lg_sampler_new(m, n, has_lower, lower, has_upper, upper,
                                  o.seed, init_mode, &s);
    if (st != LG_OK) {
        std::fprintf(stderr, "sampler refused: %s\n", lg_last_error());
        lg_model_free(m);
        return kExitFailure;
    }
    std::filesystem::create_directories(o.out_dir);
    echo_config(o, "sample");

    lg_sampler_run(s, o.burn_in);
    long long retained = o.steps / std::max<long long>(1, o.thin);
    std::vector<long long> lam(static_cast<size_t>(n));
    std::vector<long long> all;
    all.reserve(static_cast<size_t>(retained) * static_cast<size_t>(n));
    std::ofstream stream(o.out_dir + "/samples.txt");
    char head[160];
    std::snprintf(head, sizeof head, "# theta=%.17g N=%d t=%.17g seed=%llu thin=%lld\n",
                  o.theta, n, o.model == "jack" ? o.t : 0.0,
                  static_cast<unsigned long long>(o.seed), o.thin);
    stream << head;
    char line[8192];
    for (long long k = 0; k < retained; ++k) {
        lg_sampler_run(s, o.thin);
        lg_sampler_state(s, lam.data());
        all.insert(all.end(), lam.begin(), lam.end());
        lg_sampler_line(s, line, sizeof line);
        stream << line << '\n';
    }
    stream.close();

    // histogram of rescaled particles l_i/N
    double lo = 1e300, hi = -1e300;
    double dn = n;
    auto pos = [&](long long lambda, int i) {
        return (static_cast<double>(lambda) +
                static_cast<double>(n - 1 - i) * o.theta) /
               dn;
    };
    for (size_t k = 0; k < all.size(); k += static_cast<size_t>(n))
        for (int i = 0; i < n; ++i) {
            double x = pos(all[k + static_cast<size_t>(i)], i);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    size_t bins = (n == 1) ? static_cast<size_t>(std::max(1.0, hi - lo + 1.0))
                           : 60;
    double width = (n == 1) ? 1.0 : (hi - lo) / static_cast<double>(bins);
    if (width <= 0.0) width = 1.0;
    double origin = (n == 1) ? lo - 0.5 : lo;
    std::vector<double> counts(bins, 0.0);
    double total = 0.0;
    for (size_t k = 0; k < all.size(); k += static_cast<size_t>(n))
        for (int i = 0; i < n; ++i) {
            double x = pos(all[k + static_cast<size_t>(i)], i);
            size_t b = static_cast<size_t>((x - origin) / width);
            if (b >= bins) b = bins - 1;
            counts[b] += 1.0;
            total += 1.0;
        }
    {
        std::ofstream os(o.out_dir + "/hist.csv");
        os << "left,count,density\n";
        char buf[128];
        for (size_t b = 0; b < bins; ++b) {
            std::snprintf(buf, sizeof buf, "%.17g,%.0f,%.17g\n",
                          origin + static_cast<double>(b) * width, counts[b],
                          counts[b] / (total * width));
            os << buf;
        }
    }
    {
        std::ofstream os(o.out_dir + "/ks.txt");
        double ks;
        if (lg_ks_against_model(m, n, all.data(),
                                all.size() / static_cast<size_t>(n),
                                &ks) == LG_OK) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "ks = %.6g\nsamples = %zu\nacceptance = %.4g\n", ks,
                          all.size() / static_cast<size_t>(n),
                          static_cast<double>(lg_sampler_accepted(s)) /
                              static_cast<double>(lg_sampler_proposals(s)));
            os << buf;
        } else {
            os << "ks = unavailable (" << lg_last_error() << ")\n";
        }
    }
    lg_sampler_free(s);
    lg_model_free(m);
    return kExitOk;
}

int cmd_scan(const Options& o) {
    std::string err;
    lg_model* m = build_model(o, err);
    if (!m) {
        std::fprintf(stderr, "%s\n", err.c_str());
        return err.rfind("usage:", 0) == 0 ? kExitUsage : kExitFailure;
    }
    if (o.n_list.empty()) {
        std::fprintf(stderr, "usage: scan needs a nonempty --N list\n");
        lg_model_free(m);
        return kExitUsage;
    }
    std::filesystem::create_directories(o.out_dir);
    echo_config(o, "scan");

    double reference = 0.0;
    if (lg_model_reference_free_energy(m, &reference) != LG_OK) {
        // fall back to the solver's energy on a default window
        lg_measure* mu = nullptr;
        double c, rs, ro, f;
        int iters;
        if (lg_equilibrium_solve(m, -8.0, 8.0, 1000, 5e-3, &mu, &c, &rs, &ro,
                                 &f, &iters) == LG_OK) {
            reference = -lg_model_theta(m) * f;
            lg_measure_free(mu);
        } else {
            reference = std::nan("");
        }
    }

    std::ofstream os(o.out_dir + "/scan.csv");
    os << "N,value,reference,gap,tail_bound\n";
    std::vector<double> ns, vals;
    bool row_failures = false;
    for (int n : o.n_list) {
        double value, tail = 0.0;
        int method = (o.model == "jack") ? 1 : 0;
        lg_status st = lg_scaled_free_energy(m, n, method, &value, &tail);
        if (st != LG_OK) {
            std::fprintf(stderr, "scan row N=%d failed: %s\n", n,
                         lg_last_error());
            row_failures = true;
            continue;
        }
        char buf[192];
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", n,
                      value, reference, value - reference, tail);
        os << buf;
        ns.push_back(n);
        vals.push_back(value);
    }
    os.close();

    svgplot::Plot plot("free energy scan");
    plot.add_points(ns, vals, "steelblue", "(1/N^2) log Z'_N");
    if (std::isfinite(reference) && !ns.empty())
        plot.add_line({ns.front(), ns.back()}, {reference, reference},
                      "firebrick", "limit");
    plot.write(o.out_dir + "/free_energy.svg");

    lg_model_free(m);
    return row_failures && ns.empty() ? kExitFailure : kExitOk;
}

int cmd_verify(const std::string& suite) {
    std::vector<char> report(1 << 16);
    int all_pass = 0;
    lg_status st = lg_verify(suite.c_str(), report.data(), report.size(),
                             &all_pass);
    if (st != LG_OK) {
        std::fprintf(stderr, "verify: %s\n", lg_last_error());
        return kExitUsage;
    }
    std::fputs(report.data(), stdout);
    return all_pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete log-gas toolkit"};
    app.require_subcommand(1);

    Options oe, osamp, oscan;
    auto* ce = app.add_subcommand("equilibrium", "solve the equilibrium measure");
    add_common(ce, oe);
    auto* cs = app.add_subcommand("sample", "run the Metropolis sampler");
    add_common(cs, osamp);
    auto* cn = app.add_subcommand("scan", "free-energy convergence scan");
    add_common(cn, oscan);
    std::string suite = "all";
    auto* cv = app.add_subcommand("verify", "run invariant property suites");
    cv->add_option("suite", suite)
        ->check(CLI::IsMember({"kernels", "energy", "equilibrium", "ldp", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ce->parsed()) {
            apply_config_file(ce, oe);
            return cmd_equilibrium(oe);
        }
        if (cs->parsed()) {
            apply_config_file(cs, osamp);
            return cmd_sample(osamp);
        }
        if (cn->parsed()) {
            apply_config_file(cn, oscan);
            return cmd_scan(oscan);
        }
        if (cv->parsed()) return cmd_verify(suite);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
