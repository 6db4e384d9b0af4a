// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion pins its tolerances in code; stochastic
// criteria run under fixed seeds.

#include "netperc/degree.hpp"
#include "netperc/ebcm.hpp"
#include "netperc/network.hpp"
#include "netperc/percolation.hpp"
#include "netperc/power_series.hpp"
#include "netperc/simulate.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace netperc;

namespace {

struct Checker {
    bool pass = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            pass = false;
            detail << (detail.tellp() > 0 ? "; " : "") << "FAILED: " << what;
        }
    }
    void note(const std::string& text) {
        detail << (detail.tellp() > 0 ? "; " : "") << text;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", value);
    return buf;
}

PowerSeries random_pmf_series(Rng& rng, int max_degree, int k_min = 0) {
    const auto raw = oracles::random_pmf(rng, max_degree, k_min);
    return PowerSeries(
        Eigen::Map<const Eigen::ArrayXd>(raw.data(), static_cast<Eigen::Index>(raw.size())));
}

// E_tau[ G(e^{-beta tau} + (1 - e^{-beta tau}) q) ] for tau ~ Exp(gamma).
double recovery_averaged(const PowerSeries& g, double beta, double gamma, double q) {
    const int cells = 4000;
    const double upper = 60.0 / gamma, h = upper / cells;
    double acc = 0.0;
    for (int i = 0; i <= cells; ++i) {
        const double tau = i * h;
        const double keep = std::exp(-beta * tau);
        const double value =
            gamma * std::exp(-gamma * tau) * evaluate(g, keep + (1.0 - keep) * q);
        acc += value * ((i == 0 || i == cells) ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    return acc * h / 3.0;
}

// Epidemic probability of the Markovian dynamics themselves: transmissions
// out of one vertex share its recovery time, so the survival fixed point
// averages over tau instead of thinning edges independently. Reported next to
// the paper-claimed comparison for context.
double markov_epidemic_probability(const PowerSeries& g_p, double beta, double gamma) {
    const PowerSeries g_q = excess_pgf(g_p);
    double q = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double next = recovery_averaged(g_q, beta, gamma, q);
        if (std::abs(next - q) < 1e-13) {
            q = next;
            break;
        }
        q = next;
    }
    return 1.0 - recovery_averaged(g_p, beta, gamma, q);
}

// --- criterion 1: percolation/EBCM equivalence over the comparison grid ----

Checker criterion_equivalence() {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    double max_residual = 0.0;
    for (const auto family :
         {DegreeFamily::poisson, DegreeFamily::geometric, DegreeFamily::powerlaw}) {
        const double param = solve_param_for_mean(family, 10.0, 200, 1);
        const auto dist = build_distribution(family, param, 200, 1);
        c.require(std::abs(dist.mean_degree - 10.0) < 0.05,
                  family_name(family) + " mean degree 10");
        const PowerSeries g_q = excess_pgf(dist.pmf);
        for (const double gamma : {0.5, 1.0, 3.0}) {
            for (int i = 1; i <= 40; ++i) {
                const double beta = 6.0 * i / 40.0;
                const double t = beta / (beta + gamma);
                const double s_t = giant_fraction_T(dist.pmf, t, solve_uT(g_q, t, 1e-12));
                const auto msv = final_size(dist.pmf, {beta, gamma}, 1e-12);
                max_residual = std::max(max_residual, std::abs(s_t - msv.r_inf));
            }
        }
    }
    const double elapsed = seconds_since(start);
    c.require(max_residual <= 1e-8, "max |S_T - R_inf| <= 1e-8");
    c.require(elapsed < 10.0, "runtime < 10 s");
    c.note("max residual " + fmt(max_residual) + ", " + fmt(elapsed) + " s");
    return c;
}

// --- criterion 2: threshold identities over random pmfs --------------------

Checker criterion_threshold_identity() {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    Rng rng(0xacce97ULL);
    double worst_r0 = 0.0, worst_lambda = 0.0;
    int tested = 0;
    while (tested < 200) {
        const PowerSeries pmf = random_pmf_series(rng, 20);
        if (!(mean(pmf) > 0.0)) continue;
        const auto tc = critical_T(pmf);
        const EpidemicParams params{0.05 + 4.0 * rng.uniform(), 0.1 + 2.0 * rng.uniform()};
        if (!tc.infinite) {
            const double t = params.beta / (params.beta + params.gamma);
            worst_r0 = std::max(worst_r0, std::abs(r0(pmf, params) - t / tc.value));
        }
        // Lambda = <K> (G_q'(1) - 1): zero on one side iff zero on the other
        const double lambda = molloy_reed_lambda(pmf);
        const double slope = evaluate(derivative(excess_pgf(pmf)), 1.0) - 1.0;
        worst_lambda = std::max(worst_lambda, std::abs(lambda - mean(pmf) * slope));
        ++tested;
    }
    const double elapsed = seconds_since(start);
    c.require(worst_r0 <= 1e-12, "R0 = T/T_c to 1e-12");
    c.require(worst_lambda <= 1e-12, "Lambda = <K>(G_q'(1)-1) to 1e-12");
    c.require(elapsed < 1.0, "runtime < 1 s");
    c.note("|R0 - T/T_c| <= " + fmt(worst_r0) + ", |Lambda - <K>(G_q'(1)-1)| <= " +
           fmt(worst_lambda) + ", " + fmt(elapsed) + " s");
    return c;
}

// --- criterion 3: 3-regular desk oracle ------------------------------------

Checker criterion_desk_oracle() {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    const PowerSeries g_p = PowerSeries::monomial(3);
    const PowerSeries g_q = excess_pgf(g_p);
    const EpidemicParams params{1.5, 1.0};

    // quadratic-root oracle: 0.36 u^2 - 0.52 u + 0.16 = 0 has roots 1 and 4/9;
    // theta and R follow from theta = 1 + (u-1)T and 1 - theta^3
    const double t_oracle = 1.5 / 2.5;
    const double u_oracle = (0.52 - std::sqrt(0.52 * 0.52 - 4.0 * 0.36 * 0.16)) / (2.0 * 0.36);
    const double s_oracle = 1.0 - std::pow(1.0 + (u_oracle - 1.0) * t_oracle, 3);
    const double theta_oracle = 1.0 + (u_oracle - 1.0) * t_oracle;

    const double t = transmissibility(TransmissibilityModel::constant_rates(), params);
    const double u_t = solve_uT(g_q, t, 1e-12);
    const auto tc = critical_T(g_p);
    const auto msv = final_size(g_p, params, 1e-12);

    c.require(std::abs(t - t_oracle) <= 1e-9, "T = 0.6");
    c.require(std::abs(tc.value - 0.5) <= 1e-9, "T_c = 0.5");
    c.require(std::abs(u_t - u_oracle) <= 1e-9, "u_T = 4/9");
    c.require(std::abs(giant_fraction_T(g_p, t, u_t) - s_oracle) <= 1e-9, "S_T = 19/27");
    c.require(std::abs(msv.theta_inf - theta_oracle) <= 1e-9, "theta_inf = 2/3");
    c.require(std::abs(msv.r_inf - s_oracle) <= 1e-9, "R_inf = 19/27");
    c.require(std::abs(msv.r0 - 1.2) <= 1e-9, "R0 = 1.2");
    const double elapsed = seconds_since(start);
    c.require(elapsed < 1.0, "runtime < 1 s");
    c.note("u_T err " + fmt(std::abs(u_t - 4.0 / 9.0)) + ", " + fmt(elapsed) + " s");
    return c;
}

// --- criterion 4: stochastic ensembles vs analytics ------------------------

Checker criterion_stochastic() {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    const EpidemicParams params{1.5, 1.0};
    const double t = params.beta / (params.beta + params.gamma);  // 0.6

    std::uint64_t seed = 0x5eedbea7ULL;
    for (const auto family :
         {DegreeFamily::poisson, DegreeFamily::geometric, DegreeFamily::powerlaw}) {
        const std::string name = family_name(family);
        const double param = solve_param_for_mean(family, 10.0, 200, 1);
        const auto dist = build_distribution(family, param, 200, 1);
        const PowerSeries g_q = excess_pgf(dist.pmf);

        // mean degree 10 makes whole-graph rejection hopeless (acceptance
        // odds fall like e^{-nu^2/4}), so these networks use erased mode
        Rng rng(seed += 0x9e37ULL);
        const auto seq = sample_sequence(dist, 100000, rng);
        const auto net = configuration_model(seq, rng, 10, GenMode::erased).network;

        // (a) giant component at T = 1 against 1 - G_p(u)
        const double s_analytic = giant_fraction(dist.pmf, solve_u(g_q).u);
        const double s_empirical = components(net).giant_fraction;
        c.require(std::abs(s_empirical - s_analytic) <= 0.01,
                  name + " giant fraction vs 1-G_p(u) (got " +
                      fmt(std::abs(s_empirical - s_analytic)) + ")");

        // (b) bond-percolation ensemble at T = 0.6 against S_T
        const double s_t = giant_fraction_T(dist.pmf, t, solve_uT(g_q, t, 1e-12));
        SimConfig perc_config{.seed = seed + 1, .replicates = 2000};
        const auto perc = percolation_ensemble(net, t, perc_config);
        c.require(std::abs(perc.epidemic_probability - s_t) <= 0.02,
                  name + " percolation epidemic probability vs S_T (got " +
                      fmt(std::abs(perc.epidemic_probability - s_t)) + ")");
        c.require(std::abs(perc.major_mean_fraction - s_t) <= 0.02,
                  name + " percolation major-outbreak fraction vs S_T (got " +
                      fmt(std::abs(perc.major_mean_fraction - s_t)) + ")");

        // (c) Gillespie ensemble against the EBCM final size
        const double r_inf = final_size(dist.pmf, params, 1e-12).r_inf;
        SimConfig sir_config{.seed = seed + 2, .replicates = 500};
        const auto sir = run_ensemble(net, params, sir_config);
        c.require(std::abs(sir.major_mean_fraction - r_inf) <= 0.02,
                  name + " Gillespie major-outbreak fraction vs R_inf (got " +
                      fmt(std::abs(sir.major_mean_fraction - r_inf)) + ")");
        // paper-claimed: epidemic probability equals S_T (loose tolerance; the
        // literature allows a correction for Markovian recovery)
        c.require(std::abs(sir.epidemic_probability - s_t) <= 0.05,
                  name + " [paper-claimed] Gillespie epidemic probability vs S_T (got " +
                      fmt(std::abs(sir.epidemic_probability - s_t)) +
                      "; shared-recovery theory predicts a gap of " +
                      fmt(s_t - markov_epidemic_probability(dist.pmf, params.beta,
                                                            params.gamma)) +
                      ")");
        c.note(name + " dS=" + fmt(std::abs(s_empirical - s_analytic)) +
               " dPerc=" + fmt(std::abs(perc.major_mean_fraction - s_t)) +
               " dSIR=" + fmt(std::abs(sir.major_mean_fraction - r_inf)) +
               " dEpi[paper-claimed]=" + fmt(std::abs(sir.epidemic_probability - s_t)));
    }
    const double elapsed = seconds_since(start);
    c.require(elapsed < 600.0, "runtime < 10 min");
    c.note(fmt(elapsed) + " s");
    return c;
}

// --- criterion 5: Erdos-Gallai against exhaustive enumeration --------------

Checker criterion_erdos_gallai() {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    long long checked = 0, mismatches = 0;
    for (int n = 1; n <= 7; ++n) {
        const auto realizable = oracles::realizable_sequences(n);
        oracles::enumerate_sequences(n, 6, [&](const std::vector<int>& seq) {
            ++checked;
            if (erdos_gallai(seq) != (realizable.count(seq) > 0)) ++mismatches;
        });
    }
    const double elapsed = seconds_since(start);
    c.require(mismatches == 0, "all sequences agree with brute force");
    c.require(elapsed < 60.0, "runtime < 1 min");
    c.note(std::to_string(checked) + " sequences, " + fmt(elapsed) + " s");
    return c;
}

// --- criterion 6: subcritical component statistics --------------------------

Checker criterion_subcritical_components() {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    const PowerSeries g_p = PowerSeries::monomial(3);
    const double t = 0.25;

    const auto dist = build_distribution(DegreeFamily::constant, 3, 3);
    Rng rng(0x5ca1ab1eULL);
    const auto seq = sample_sequence(dist, 100000, rng);
    const auto net = configuration_model(seq, rng, 1000).network;

    double total = 0.0;
    const int draws = 5000;
    for (int i = 0; i < draws; ++i)
        total += static_cast<double>(infected_component_size(net, t, rng));
    const double ensemble_mean = total / draws;
    const double analytic = mean_small_component(g_p, t);  // 2.5
    c.require(std::abs(analytic - 2.5) < 1e-12, "closed form <s_T> = 2.5");
    c.require(std::abs(ensemble_mean - analytic) / analytic <= 0.05,
              "ensemble mean within 5% (got " + fmt(ensemble_mean) + ")");

    const auto p = small_component_distribution(g_p, t, 64, 1e-12);
    const double p1_direct = std::pow(1.0 - t, 3);
    c.require(std::abs(p[1] - p1_direct) <= 1e-6,
              "P_1 = (1-T)^3 via series extraction (err " + fmt(std::abs(p[1] - p1_direct)) +
                  ")");
    const double elapsed = seconds_since(start);
    c.note("ensemble mean " + fmt(ensemble_mean) + " vs 2.5, " + fmt(elapsed) + " s");
    return c;
}

// --- criterion 7: ODE quality ----------------------------------------------

Checker criterion_ode_quality() {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    const PowerSeries g_p = PowerSeries::monomial(3);
    const EpidemicParams params{1.5, 1.0};

    // conservation along the supercritical desk trajectory
    const auto traj = integrate(g_p, params, 1.0 - 1e-5, 40.0);
    const double conservation = (traj.S + traj.I + traj.R - 1.0).abs().maxCoeff();
    c.require(conservation <= 1e-8, "|S+I+R-1| <= 1e-8");

    // endpoint converges to theta_inf by t_end = 40 (theta0 = 1 - 1e-5)
    const double theta_inf = final_size(g_p, params, 1e-12).theta_inf;
    const double endpoint_gap = std::abs(traj.theta[traj.theta.size() - 1] - theta_inf);
    c.require(endpoint_gap <= 1e-4, "|theta(40) - theta_inf| <= 1e-4");

    // 4th-order convergence against the closed-form logistic solution
    const double exact = oracles::three_regular_theta(1.5, 1.0, 0.9, 8.0);
    const auto endpoint_error = [&](double dt) {
        const auto run = integrate(g_p, params, 0.9, 8.0, dt);
        return std::abs(run.theta[run.theta.size() - 1] - exact);
    };
    const double coarse = endpoint_error(0.4);
    const double fine = endpoint_error(0.2);
    c.require(coarse > 1e-13 && fine <= coarse / 8.0,
              "halving dt cuts the endpoint error by >= 8x (ratio " + fmt(coarse / fine) + ")");

    const double elapsed = seconds_since(start);
    c.note("conservation " + fmt(conservation) + ", endpoint gap " + fmt(endpoint_gap) +
           ", order ratio " + fmt(coarse / fine) + ", " + fmt(elapsed) + " s");
    return c;
}

// --- criterion 8: PGF engine property suite ---------------------------------

Checker criterion_pgf_properties() {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    Rng rng(0x96f96fULL);

    double worst_norm = 0.0, worst_excess = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const PowerSeries pmf = random_pmf_series(rng, 20);
        worst_norm = std::max(worst_norm, std::abs(evaluate(pmf, 1.0) - 1.0));
        if (mean(pmf) > 0.0) {
            const PowerSeries q = excess_pgf(pmf);
            worst_excess = std::max(worst_excess, std::abs(q.sum() - 1.0));
            worst_excess = std::max(worst_excess, -q.coeffs().minCoeff());
        }
    }
    c.require(worst_norm <= 1e-12, "pmf normalization to 1e-12");
    c.require(worst_excess <= 1e-12, "excess pgf is a pmf to 1e-12");

    double worst_compose = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = oracles::random_pmf(rng, 6);
        const auto b = oracles::random_pmf(rng, 6);
        const PowerSeries outer(
            Eigen::Map<const Eigen::ArrayXd>(a.data(), static_cast<Eigen::Index>(a.size())));
        const PowerSeries inner(
            Eigen::Map<const Eigen::ArrayXd>(b.data(), static_cast<Eigen::Index>(b.size())));
        const PowerSeries composed = compose(outer, inner);
        const auto expected =
            oracles::compose_by_convolution(a, b, static_cast<std::size_t>(composed.max_degree()));
        for (Eigen::Index k = 0; k <= composed.max_degree(); ++k)
            worst_compose = std::max(
                worst_compose, std::abs(composed.coeff(k) - expected[static_cast<std::size_t>(k)]));
    }
    c.require(worst_compose <= 1e-10, "compose vs convolution oracle to 1e-10");

    double worst_extract = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::ArrayXd coeffs(51);
        for (auto& value : coeffs.reshaped()) value = 2.0 * rng.uniform() - 1.0;
        const PowerSeries poly{coeffs};
        const auto recovered =
            extract_coefficients([&](std::complex<double> z) { return evaluate(poly, z); }, 51);
        for (int k = 0; k <= 50; ++k)
            worst_extract = std::max(
                worst_extract, std::abs(recovered[static_cast<std::size_t>(k)] - poly.coeff(k)));
    }
    c.require(worst_extract <= 1e-8, "extraction round-trip to 1e-8");

    const double elapsed = seconds_since(start);
    c.note("norm " + fmt(worst_norm) + ", compose " + fmt(worst_compose) + ", extract " +
           fmt(worst_extract) + ", " + fmt(elapsed) + " s");
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    struct Entry {
        int id;
        const char* label;
        std::function<Checker()> run;
    };
    const std::vector<Entry> criteria = {
        {1, "equivalence regression |S_T - R_inf| over the comparison grid",
         criterion_equivalence},
        {2, "threshold identities R0 = T/T_c and Lambda = <K>(G_q'(1)-1)",
         criterion_threshold_identity},
        {3, "closed-form desk oracle (3-regular, beta=1.5, gamma=1)", criterion_desk_oracle},
        {4, "stochastic ensembles vs analytic predictions (N=1e5)", criterion_stochastic},
        {5, "Erdos-Gallai vs exhaustive simple-graph enumeration", criterion_erdos_gallai},
        {6, "subcritical component statistics (3-regular, T=0.25)",
         criterion_subcritical_components},
        {7, "ODE conservation, 4th-order convergence, endpoint limit", criterion_ode_quality},
        {8, "PGF engine property suite", criterion_pgf_properties},
    };

    std::vector<int> requested;
    for (int i = 1; i < argc; ++i) requested.push_back(std::atoi(argv[i]));

    bool all_pass = true;
    for (const auto& entry : criteria) {
        if (!requested.empty() &&
            std::find(requested.begin(), requested.end(), entry.id) == requested.end())
            continue;
        const Checker result = entry.run();
        all_pass = all_pass && result.pass;
        std::printf("[%s] criterion %d: %s (%s)\n", result.pass ? "PASS" : "FAIL", entry.id,
                    entry.label, result.detail.str().c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
