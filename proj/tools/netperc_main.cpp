// netperc: configuration-model networks, bond-percolation epidemic analytics,
// edge-based compartmental dynamics and stochastic SIR simulation, sharing one
// distribution vocabulary. Subcommands: dist, check-seq, generate, percolate,
// ebcm, simulate, compare.

#include <CLI11.hpp>

#include "netperc/degree.hpp"
#include "netperc/ebcm.hpp"
#include "netperc/network.hpp"
#include "netperc/percolation.hpp"
#include "netperc/power_series.hpp"
#include "netperc/run_config.hpp"
#include "netperc/serialize.hpp"
#include "netperc/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace netperc;

namespace {

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("NETPERC_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const auto hardware = static_cast<int>(std::thread::hardware_concurrency());
    return hardware > 0 ? hardware : 1;
}

template <typename Fn>
void parallel_for(int count, int threads, const Fn& fn) {
    threads = std::clamp(threads, 1, std::max(count, 1));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int first = t * chunk, past = std::min(count, first + chunk);
        if (first < past)
            pool.emplace_back([&, first, past] {
                for (int i = first; i < past; ++i) fn(i);
            });
    }
    for (auto& th : pool) th.join();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cli::ValidationError("cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Flags override JSON config values; required fields may come from either.
struct Merge {
    const CLI::App* app;
    cli::RunConfig config;

    bool given(const std::string& flag) const { return app->count(flag) > 0; }

    double num(const std::string& flag, double value, const std::string& key,
               double fallback) const {
        return given(flag) ? value : config.number(key, fallback);
    }
    long long integer(const std::string& flag, long long value, const std::string& key,
                      long long fallback) const {
        return given(flag) ? value : config.integer(key, fallback);
    }
    std::string text(const std::string& flag, const std::string& value, const std::string& key,
                     const std::string& fallback) const {
        return given(flag) ? value : config.text(key, fallback);
    }
    bool flag_set(const std::string& flag, bool value, const std::string& key,
                  bool fallback) const {
        return given(flag) ? value : config.flag(key, fallback);
    }
    bool present(const std::string& flag, const std::string& key) const {
        return given(flag) || config.has(key);
    }
};

// Distribution options shared by every command that builds a pmf.
struct DistFlags {
    std::string family;
    std::string spec_file;
    double lambda = 0.0, alpha = 0.0, gamma = 0.0, mean = 0.0;
    long long k = 0, delta = 200, k_min = 1;
    std::vector<double> pmf;

    void attach(CLI::App* cmd) {
        cmd->add_option("--dist-spec", spec_file,
                        "distribution spec document {family, params, delta, k_min}");
        cmd->add_option("--family", family, "constant|poisson|geometric|powerlaw|custom");
        cmd->add_option("--lambda", lambda, "poisson rate");
        cmd->add_option("--alpha", alpha, "geometric (discrete exponential) decay");
        cmd->add_option("--gamma-exp", gamma, "power-law exponent");
        cmd->add_option("--k", k, "constant degree");
        cmd->add_option("--mean", mean, "solve the family parameter for this mean degree");
        cmd->add_option("--delta", delta, "truncation degree (default 200)");
        cmd->add_option("--k-min", k_min, "minimum degree, 0 or 1 (default 1)");
        cmd->add_option("--pmf", pmf, "custom pmf p_0,p_1,... (comma separated)")
            ->delimiter(',');
    }

    DegreeDistribution resolve(const Merge& merge) const {
        const std::string spec = merge.text("--dist-spec", spec_file, "dist_spec", "");
        if (!spec.empty()) return distribution_from_json(read_file(spec));

        const std::string name = merge.text("--family", family, "family", "");
        if (name.empty())
            throw cli::ValidationError("--family is required (or 'family' in the config)");
        const DegreeFamily fam = family_from_name(name);

        if (fam == DegreeFamily::custom) {
            std::vector<double> coeffs =
                merge.given("--pmf") ? pmf : merge.config.numbers("pmf", {});
            if (coeffs.empty()) throw cli::ValidationError("custom family needs --pmf values");
            Eigen::ArrayXd array(static_cast<Eigen::Index>(coeffs.size()));
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                array[static_cast<Eigen::Index>(i)] = coeffs[i];
            return custom_distribution(PowerSeries(std::move(array)));
        }

        const int kmin = static_cast<int>(merge.integer("--k-min", k_min, "k_min", 1));
        long long delta_value = merge.integer("--delta", delta, "delta", 200);
        if (fam == DegreeFamily::constant && !merge.present("--delta", "delta"))
            delta_value = merge.integer("--k", k, "k", 0);

        double param = 0.0;
        if (merge.present("--mean", "mean")) {
            param = solve_param_for_mean(fam, merge.num("--mean", mean, "mean", 0.0),
                                         static_cast<int>(delta_value), kmin);
        } else {
            switch (fam) {
                case DegreeFamily::constant:
                    if (!merge.present("--k", "k"))
                        throw cli::ValidationError("constant needs --k");
                    param = static_cast<double>(merge.integer("--k", k, "k", 0));
                    break;
                case DegreeFamily::poisson:
                    if (!merge.present("--lambda", "lambda"))
                        throw cli::ValidationError("poisson needs --lambda or --mean");
                    param = merge.num("--lambda", lambda, "lambda", 0.0);
                    break;
                case DegreeFamily::geometric:
                    if (!merge.present("--alpha", "alpha"))
                        throw cli::ValidationError("geometric needs --alpha or --mean");
                    param = merge.num("--alpha", alpha, "alpha", 0.0);
                    break;
                case DegreeFamily::powerlaw:
                    if (!merge.present("--gamma-exp", "gamma"))
                        throw cli::ValidationError("powerlaw needs --gamma-exp or --mean");
                    param = merge.num("--gamma-exp", gamma, "gamma", 0.0);
                    break;
                case DegreeFamily::custom: break;
            }
        }
        return build_distribution(fam, param, static_cast<int>(delta_value), kmin);
    }
};

std::string csv_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------- dist ----

int cmd_dist(const Merge& merge, const DistFlags& dist_flags, const std::string& output,
             const std::string& format) {
    const auto dist = dist_flags.resolve(merge);
    const double lambda_mr = molloy_reed_lambda(dist);
    const auto tc = critical_T(dist.pmf);

    if (format == "csv") {
        std::ostringstream csv;
        csv << "k,p_k\n";
        for (Eigen::Index k = 0; k <= dist.pmf.max_degree(); ++k)
            csv << k << ',' << csv_cell(dist.pmf.coeff(k)) << '\n';
        write_output(output, csv.str());
        return 0;
    }
    if (format != "json") throw cli::ValidationError("--format must be json or csv");

    std::ostringstream json;
    json.precision(15);
    json << "{\"spec\":" << distribution_to_json(dist) << ",\"mean\":" << dist.mean_degree
         << ",\"molloy_reed\":" << lambda_mr
         << ",\"critical\":" << (std::abs(lambda_mr) < 1e-12 ? "true" : "false") << ",\"T_c\":";
    if (tc.infinite)
        json << "null";
    else
        json << tc.value;
    json << ",\"epidemic_possible\":" << (tc.no_epidemic ? "false" : "true")
         << ",\"tail_mass\":" << dist.tail_mass << ",\"pmf\":[";
    for (Eigen::Index k = 0; k <= dist.pmf.max_degree(); ++k)
        json << (k ? "," : "") << dist.pmf.coeff(k);
    json << "]}\n";
    write_output(output, json.str());
    return 0;
}

// ----------------------------------------------------------- check-seq ----

int cmd_check_seq(const Merge& merge, const std::string& file,
                  const std::vector<double>& degrees_flag, const std::string& output) {
    std::vector<int> degrees;
    const std::string path = merge.text("--file", file, "file", "");
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        long long d = 0;
        while (in >> d) degrees.push_back(static_cast<int>(d));
    } else {
        const auto values =
            merge.given("--degrees") ? degrees_flag : merge.config.numbers("degrees", {});
        if (values.empty()) throw cli::ValidationError("check-seq needs --degrees or --file");
        for (double v : values) {
            if (v < 0 || v != std::floor(v))
                throw cli::ValidationError("degrees must be nonnegative integers");
            degrees.push_back(static_cast<int>(v));
        }
    }
    long long total = 0;
    int max_degree = 0;
    for (int d : degrees) {
        total += d;
        max_degree = std::max(max_degree, d);
    }
    const bool realizable = erdos_gallai(degrees);
    std::ostringstream json;
    json << "{\"n\":" << degrees.size() << ",\"total_degree\":" << total
         << ",\"max_degree\":" << max_degree
         << ",\"even_total\":" << (total % 2 == 0 ? "true" : "false")
         << ",\"realizable\":" << (realizable ? "true" : "false") << "}\n";
    write_output(output, json.str());
    return 0;
}

// ------------------------------------------------------------ generate ----

int cmd_generate(const Merge& merge, const DistFlags& dist_flags, long long n,
                 std::uint64_t seed, const std::string& mode, long long restart_budget,
                 bool binary, const std::string& output) {
    const auto dist = dist_flags.resolve(merge);
    const auto n_value = merge.integer("--n", n, "n", 0);
    if (n_value < 2) throw cli::ValidationError("generate needs --n >= 2");
    const auto seed_value = static_cast<std::uint64_t>(
        merge.integer("--seed", static_cast<long long>(seed), "seed", 1));
    const std::string mode_name = merge.text("--mode", mode, "mode", "reject");
    GenMode gen_mode;
    if (mode_name == "reject")
        gen_mode = GenMode::reject;
    else if (mode_name == "erased")
        gen_mode = GenMode::erased;
    else
        throw cli::ValidationError("--mode must be reject or erased");
    const auto budget = static_cast<int>(
        merge.integer("--restart-budget", restart_budget, "restart_budget", 1000));

    Rng rng(seed_value);
    const auto seq = sample_sequence(dist, static_cast<int>(n_value), rng, budget);
    const auto result = configuration_model(seq, rng, budget, gen_mode);

    const std::string path = merge.text("--output", output, "output", "");
    if (path.empty()) throw cli::ValidationError("generate needs --output FILE");
    save_network(result.network, path, merge.flag_set("--binary", binary, "binary", false));

    std::cout << "{\"N\":" << result.network.vertex_count()
              << ",\"M\":" << result.network.edge_count() << ",\"attempts\":" << result.attempts
              << ",\"mode\":\"" << mode_name << "\",\"file\":\"" << path << "\"}\n";
    return 0;
}

// ----------------------------------------------------------- percolate ----

TransmissibilityModel variant_from_name(const std::string& name) {
    if (name == "constant_rates") return TransmissibilityModel::constant_rates();
    if (name == "fixed_duration") return TransmissibilityModel::fixed_duration();
    throw cli::ValidationError(
        "--variant must be constant_rates or fixed_duration (tabulated i.i.d. variants are "
        "library-level)");
}

int cmd_percolate(const Merge& merge, const DistFlags& dist_flags, double beta, double gamma_rate,
                  double t_flag, const std::string& variant, double sweep_min, double sweep_max,
                  long long sweep_points, const std::string& output, int threads) {
    const auto dist = dist_flags.resolve(merge);
    const std::string variant_name = merge.text("--variant", variant, "variant", "constant_rates");

    if (merge.present("--sweep-points", "sweep_points")) {
        const auto points = merge.integer("--sweep-points", sweep_points, "sweep_points", 0);
        const double lo = merge.num("--sweep-min", sweep_min, "sweep_min", 0.0);
        const double hi = merge.num("--sweep-max", sweep_max, "sweep_max", 0.0);
        const double gam = merge.num("--gamma", gamma_rate, "gamma_rate", 1.0);
        if (points < 2 || !(hi > lo)) throw cli::ValidationError("bad sweep grid");
        const auto model = variant_from_name(variant_name);

        std::vector<std::string> rows(static_cast<std::size_t>(points));
        parallel_for(static_cast<int>(points), threads, [&](int i) {
            const double b =
                lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
            const EpidemicParams params{b, gam};
            const auto report = percolation_report(dist.pmf, model, params);
            const auto ebcm_report = final_size(dist.pmf, params);
            std::ostringstream row;
            row << csv_cell(b) << ',' << csv_cell(gam) << ',' << csv_cell(report.T) << ','
                << csv_cell(report.T_c) << ',' << csv_cell(report.u_T) << ','
                << csv_cell(report.S_T) << ',' << csv_cell(ebcm_report.r0) << ','
                << csv_cell(ebcm_report.r_inf) << '\n';
            rows[static_cast<std::size_t>(i)] = row.str();
        });
        std::string csv = "beta,gamma,T,Tc,uT,ST,R0,Rinf\n";
        for (const auto& row : rows) csv += row;
        write_output(output, csv);
        return 0;
    }

    double t_value;
    if (merge.present("--T", "T")) {
        t_value = merge.num("--T", t_flag, "T", 0.0);
    } else if (merge.present("--beta", "beta")) {
        const EpidemicParams params{merge.num("--beta", beta, "beta", 0.0),
                                    merge.num("--gamma", gamma_rate, "gamma_rate", 1.0)};
        t_value = transmissibility(variant_from_name(variant_name), params);
    } else {
        throw cli::ValidationError("percolate needs --T or --beta/--gamma");
    }
    const auto report = percolation_report(dist.pmf, t_value);
    write_output(output, to_json(report) + "\n");
    return 0;
}

// ---------------------------------------------------------------- ebcm ----

int cmd_ebcm(const Merge& merge, const DistFlags& dist_flags, double beta, double gamma_rate,
             double theta0, double t_end, double dt, const std::string& trajectory_path,
             const std::string& output) {
    const auto dist = dist_flags.resolve(merge);
    if (!merge.present("--beta", "beta")) throw cli::ValidationError("ebcm needs --beta");
    const EpidemicParams params{merge.num("--beta", beta, "beta", 0.0),
                                merge.num("--gamma", gamma_rate, "gamma_rate", 1.0)};

    const std::string traj_file = merge.text("--trajectory", trajectory_path, "trajectory", "");
    if (!traj_file.empty()) {
        const auto trajectory =
            integrate(dist.pmf, params, merge.num("--theta0", theta0, "theta0", kDefaultTheta0),
                      merge.num("--t-end", t_end, "t_end", 40.0),
                      merge.num("--dt", dt, "dt", 0.0));
        std::ofstream out(traj_file);
        if (!out) throw std::runtime_error("cannot open " + traj_file);
        write_trajectory_csv(out, trajectory);
    }
    write_output(output, to_json(final_size(dist.pmf, params)) + "\n");
    return 0;
}

// ------------------------------------------------------------ simulate ----

int cmd_simulate(const Merge& merge, const DistFlags& dist_flags, const std::string& network_path,
                 long long n, double beta, double gamma_rate, double t_flag,
                 const std::string& mode, long long replicates, double cutoff, std::uint64_t seed,
                 const std::string& event_log, const std::string& output, int threads) {
    const std::string net_file = merge.text("--network", network_path, "network", "");
    const auto seed_value = static_cast<std::uint64_t>(
        merge.integer("--seed", static_cast<long long>(seed), "seed", 1));

    std::optional<Network> net;
    if (!net_file.empty()) {
        net = load_network(net_file);
    } else {
        const auto dist = dist_flags.resolve(merge);
        const auto n_value = merge.integer("--n", n, "n", 0);
        if (n_value < 2)
            throw cli::ValidationError("simulate needs --network FILE or a distribution with --n");
        Rng rng(seed_value ^ 0x9e3779b97f4a7c15ULL);
        const auto seq = sample_sequence(dist, static_cast<int>(n_value), rng);
        net = configuration_model(seq, rng, 1000).network;
    }

    SimConfig config;
    config.seed = seed_value;
    config.replicates =
        static_cast<int>(merge.integer("--replicates", replicates, "replicates", 100));
    config.epidemic_cutoff_fraction = merge.num("--cutoff", cutoff, "cutoff", 0.05);
    config.threads = threads;
    const std::string log_path = merge.text("--event-log", event_log, "event_log", "");
    config.record_event_log = !log_path.empty();

    const std::string mode_name = merge.text("--mode", mode, "mode", "gillespie");
    EnsembleSummary summary;
    if (mode_name == "gillespie") {
        if (!merge.present("--beta", "beta")) throw cli::ValidationError("gillespie needs --beta");
        const EpidemicParams params{merge.num("--beta", beta, "beta", 0.0),
                                    merge.num("--gamma", gamma_rate, "gamma_rate", 1.0)};
        summary = run_ensemble(*net, params, config);
    } else if (mode_name == "percolation") {
        if (!merge.present("--T", "T")) throw cli::ValidationError("percolation mode needs --T");
        summary = percolation_ensemble(*net, merge.num("--T", t_flag, "T", 0.0), config);
    } else {
        throw cli::ValidationError("--mode must be gillespie or percolation");
    }

    if (!log_path.empty()) {
        std::ofstream out(log_path);
        if (!out) throw std::runtime_error("cannot open " + log_path);
        write_event_log_csv(out, summary.event_log);
    }
    write_output(output, to_json(summary) + "\n");
    return 0;
}

// ------------------------------------------------------------- compare ----

int cmd_compare(const Merge& merge, const std::string& family, double mean_degree,
                long long delta, const std::vector<double>& gammas_flag, double beta_max,
                long long beta_points, double tolerance, const std::string& output, int threads) {
    const std::string name = merge.text("--family", family, "family", "all");
    std::vector<DegreeFamily> families;
    if (name == "all") {
        families = {DegreeFamily::poisson, DegreeFamily::geometric, DegreeFamily::powerlaw};
    } else {
        const auto fam = family_from_name(name);
        if (fam != DegreeFamily::poisson && fam != DegreeFamily::geometric &&
            fam != DegreeFamily::powerlaw)
            throw cli::ValidationError("compare runs on poisson, geometric or powerlaw");
        families = {fam};
    }
    const double mean_target = merge.num("--mean", mean_degree, "mean", 10.0);
    const auto delta_value = static_cast<int>(merge.integer("--delta", delta, "delta", 200));
    const std::vector<double> gammas =
        merge.given("--gammas") ? gammas_flag : merge.config.numbers("gammas", {0.5, 1.0, 3.0});
    const double bmax = merge.num("--beta-max", beta_max, "beta_max", 6.0);
    const auto points =
        static_cast<int>(merge.integer("--beta-points", beta_points, "beta_points", 40));
    const double tol = merge.num("--tolerance", tolerance, "tolerance", 1e-8);
    if (points < 1 || !(bmax > 0.0) || gammas.empty())
        throw cli::ValidationError("bad beta/gamma grid");

    const bool tagged = families.size() > 1;  // family column only in the multi-family table
    std::string csv =
        tagged ? "family,beta,gamma,ST,Rinf,residual\n" : "beta,gamma,ST,Rinf,residual\n";
    double max_residual = 0.0;
    for (const auto fam : families) {
        const double param = solve_param_for_mean(fam, mean_target, delta_value, 1);
        const auto dist = build_distribution(fam, param, delta_value, 1);
        if (std::abs(dist.mean_degree - mean_target) > 0.05)
            throw std::runtime_error("parameterization failed to reach the target mean");
        const PowerSeries g_q = excess_pgf(dist.pmf);

        const int rows = static_cast<int>(gammas.size()) * points;
        std::vector<std::string> chunk(static_cast<std::size_t>(rows));
        std::vector<double> residuals(static_cast<std::size_t>(rows), 0.0);
        parallel_for(rows, threads, [&](int index) {
            const double gam =
                gammas[static_cast<std::size_t>(index) / static_cast<std::size_t>(points)];
            const int i = index % points;
            // beta grid over (0, beta_max]
            const double b = bmax * static_cast<double>(i + 1) / static_cast<double>(points);
            const EpidemicParams params{b, gam};
            const double t = params.beta / (params.beta + params.gamma);
            const double u_t = solve_uT(g_q, t, 1e-12);
            const double s_t = giant_fraction_T(dist.pmf, t, u_t);
            const auto msv = final_size(dist.pmf, params, 1e-12);
            const double residual = std::abs(s_t - msv.r_inf);
            residuals[static_cast<std::size_t>(index)] = residual;
            std::ostringstream row;
            if (tagged) row << family_name(fam) << ',';
            row << csv_cell(b) << ',' << csv_cell(gam) << ',' << csv_cell(s_t) << ','
                << csv_cell(msv.r_inf) << ',' << csv_cell(residual) << '\n';
            chunk[static_cast<std::size_t>(index)] = row.str();
        });
        for (int i = 0; i < rows; ++i) {
            csv += chunk[static_cast<std::size_t>(i)];
            max_residual = std::max(max_residual, residuals[static_cast<std::size_t>(i)]);
        }
    }
    write_output(output, csv);
    std::cerr << "max_residual=" << max_residual << " tolerance=" << tol << '\n';
    return max_residual <= tol ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"configuration-model networks, percolation analytics, EBCM dynamics and "
                 "stochastic SIR simulation"};
    app.require_subcommand(1);

    std::string config_path;
    int threads_flag = 0;
    app.add_option("--config", config_path, "JSON config file; flags override its values");
    app.add_option("--threads", threads_flag,
                   "worker threads (default: machine parallelism, env NETPERC_THREADS)");

    std::string output, format = "json";
    DistFlags dist_flags;

    auto* dist_cmd = app.add_subcommand("dist", "build a degree distribution and report its "
                                                "mean, Molloy-Reed criterion and T_c");
    dist_flags.attach(dist_cmd);
    dist_cmd->add_option("--output", output, "output path (default stdout)");
    dist_cmd->add_option("--format", format, "json|csv");

    auto* check_cmd = app.add_subcommand("check-seq", "Erdos-Gallai realizability of a sequence");
    std::string seq_file;
    std::vector<double> degrees_flag;
    check_cmd->add_option("--file", seq_file, "whitespace-separated degrees");
    check_cmd->add_option("--degrees", degrees_flag, "comma-separated degrees")->delimiter(',');
    check_cmd->add_option("--output", output, "output path");

    auto* gen_cmd = app.add_subcommand("generate", "sample a configuration-model network");
    long long n = 0, restart_budget = 1000;
    std::uint64_t seed = 1;
    std::string mode = "reject";
    bool binary = false;
    dist_flags.attach(gen_cmd);
    gen_cmd->add_option("--n", n, "vertex count");
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_option("--mode", mode, "reject|erased");
    gen_cmd->add_option("--restart-budget", restart_budget, "generation restarts");
    gen_cmd->add_flag("--binary", binary, "write the compact binary format");
    gen_cmd->add_option("--output", output, "network file to write");

    auto* perc_cmd = app.add_subcommand("percolate", "analytic percolation report or beta sweep");
    double beta = 0.0, gamma_rate = 1.0, t_flag = 0.0;
    double sweep_min = 0.0, sweep_max = 0.0;
    long long sweep_points = 0;
    std::string variant = "constant_rates";
    dist_flags.attach(perc_cmd);
    perc_cmd->add_option("--beta", beta, "transmission rate");
    perc_cmd->add_option("--gamma", gamma_rate, "recovery rate");
    perc_cmd->add_option("--T", t_flag, "transmissibility directly");
    perc_cmd->add_option("--variant", variant, "constant_rates|fixed_duration");
    perc_cmd->add_option("--sweep-min", sweep_min, "sweep lower beta");
    perc_cmd->add_option("--sweep-max", sweep_max, "sweep upper beta");
    perc_cmd->add_option("--sweep-points", sweep_points, "sweep point count");
    perc_cmd->add_option("--output", output, "output path");

    auto* ebcm_cmd =
        app.add_subcommand("ebcm", "edge-based compartmental trajectory and final size");
    double theta0 = kDefaultTheta0, t_end = 40.0, dt = 0.0;
    std::string trajectory_path;
    dist_flags.attach(ebcm_cmd);
    ebcm_cmd->add_option("--beta", beta, "transmission rate");
    ebcm_cmd->add_option("--gamma", gamma_rate, "recovery rate");
    ebcm_cmd->add_option("--theta0", theta0, "initial theta (default 1-1e-6)");
    ebcm_cmd->add_option("--t-end", t_end, "integration horizon");
    ebcm_cmd->add_option("--dt", dt, "step (default 0.01/max(beta,gamma))");
    ebcm_cmd->add_option("--trajectory", trajectory_path, "write the trajectory CSV here");
    ebcm_cmd->add_option("--output", output, "final-size report path");

    auto* sim_cmd = app.add_subcommand("simulate", "stochastic ensembles on a concrete network");
    std::string network_path, sim_mode = "gillespie", event_log;
    long long replicates = 100;
    double cutoff = 0.05;
    dist_flags.attach(sim_cmd);
    sim_cmd->add_option("--network", network_path, "edge-list or binary network file");
    sim_cmd->add_option("--n", n, "vertex count when generating in place");
    sim_cmd->add_option("--seed", seed, "master seed");
    sim_cmd->add_option("--beta", beta, "transmission rate");
    sim_cmd->add_option("--gamma", gamma_rate, "recovery rate");
    sim_cmd->add_option("--T", t_flag, "bond retention probability (percolation mode)");
    sim_cmd->add_option("--mode", sim_mode, "gillespie|percolation");
    sim_cmd->add_option("--replicates", replicates, "ensemble size");
    sim_cmd->add_option("--cutoff", cutoff, "epidemic cutoff fraction (default 0.05)");
    sim_cmd->add_option("--event-log", event_log, "CSV event log of replicate 0");
    sim_cmd->add_option("--output", output, "summary path");

    auto* cmp_cmd = app.add_subcommand(
        "compare", "S_T (percolation) against R_inf (EBCM) over the beta/gamma grid");
    std::string cmp_family = "all";
    double cmp_mean = 10.0, beta_max = 6.0, tolerance = 1e-8;
    long long cmp_delta = 200, beta_points = 40;
    std::vector<double> gammas_flag;
    cmp_cmd->add_option("--family", cmp_family, "poisson|geometric|powerlaw|all");
    cmp_cmd->add_option("--mean", cmp_mean, "target mean degree (default 10)");
    cmp_cmd->add_option("--delta", cmp_delta, "truncation degree (default 200)");
    cmp_cmd->add_option("--gammas", gammas_flag, "recovery rates (default 0.5,1,3)")
        ->delimiter(',');
    cmp_cmd->add_option("--beta-max", beta_max, "top of the beta grid (default 6)");
    cmp_cmd->add_option("--beta-points", beta_points, "grid size (default 40)");
    cmp_cmd->add_option("--tolerance", tolerance, "max residual accepted (default 1e-8)");
    cmp_cmd->add_option("--output", output, "CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        const std::string name = active->get_name();
        Merge merge{active, config_path.empty()
                                ? cli::RunConfig::empty(name)
                                : cli::RunConfig::parse(name, read_file(config_path))};
        const int threads = resolve_threads(threads_flag);

        if (name == "dist") return cmd_dist(merge, dist_flags, output, format);
        if (name == "check-seq") return cmd_check_seq(merge, seq_file, degrees_flag, output);
        if (name == "generate")
            return cmd_generate(merge, dist_flags, n, seed, mode, restart_budget, binary, output);
        if (name == "percolate")
            return cmd_percolate(merge, dist_flags, beta, gamma_rate, t_flag, variant, sweep_min,
                                 sweep_max, sweep_points, output, threads);
        if (name == "ebcm")
            return cmd_ebcm(merge, dist_flags, beta, gamma_rate, theta0, t_end, dt,
                            trajectory_path, output);
        if (name == "simulate")
            return cmd_simulate(merge, dist_flags, network_path, n, beta, gamma_rate, t_flag,
                                sim_mode, replicates, cutoff, seed, event_log, output, threads);
        if (name == "compare")
            return cmd_compare(merge, cmp_family, cmp_mean, cmp_delta, gammas_flag, beta_max,
                               beta_points, tolerance, output, threads);
        std::cerr << "unknown command\n";
        return 2;
    } catch (const cli::ValidationError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
