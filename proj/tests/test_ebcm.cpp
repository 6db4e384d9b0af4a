#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netperc/degree.hpp"
#include "netperc/ebcm.hpp"
#include "netperc/serialize.hpp"
#include "oracles.hpp"

#include <cmath>
#include <sstream>

using namespace netperc;

namespace {

const PowerSeries kThreeRegular = PowerSeries::monomial(3);

PowerSeries random_pmf_series(Rng& rng, int max_degree, int k_min = 0) {
    const auto raw = oracles::random_pmf(rng, max_degree, k_min);
    return PowerSeries(
        Eigen::Map<const Eigen::ArrayXd>(raw.data(), static_cast<Eigen::Index>(raw.size())));
}

}  // namespace

TEST_CASE("integrate: disease-free equilibrium stays put") {
    const auto traj = integrate(kThreeRegular, {1.5, 1.0}, 1.0, 5.0);
    CHECK(traj.theta.minCoeff() == 1.0);
    CHECK(traj.I.abs().maxCoeff() < 1e-14);
    CHECK(traj.R.abs().maxCoeff() < 1e-14);
}

TEST_CASE("integrate: matches the closed-form 3-regular solution") {
    // theta' = beta (theta-1)(theta - gamma/beta) is logistic for x^3
    const double beta = 1.5, gamma = 1.0, theta0 = 0.9;
    const auto traj = integrate(kThreeRegular, {beta, gamma}, theta0, 10.0, 0.005);
    for (Eigen::Index i = 0; i < traj.t.size(); i += 200) {
        const double exact = oracles::three_regular_theta(beta, gamma, theta0, traj.t[i]);
        CHECK(std::abs(traj.theta[i] - exact) < 1e-10);
    }
}

TEST_CASE("integrate: supercritical desk case reaches theta_inf = 2/3 by t = 40") {
    const auto traj = integrate(kThreeRegular, {1.5, 1.0}, 1.0 - 1e-5, 40.0);
    const auto n = traj.t.size() - 1;
    CHECK(std::abs(traj.theta[n] - 2.0 / 3.0) < 1e-4);
    CHECK(std::abs(traj.S[n] - 8.0 / 27.0) < 1e-3);
    // conservation by construction, nailed down numerically
    CHECK((traj.S + traj.I + traj.R - 1.0).abs().maxCoeff() < 1e-8);
    // theta never increases
    for (Eigen::Index i = 1; i < traj.theta.size(); ++i)
        CHECK(traj.theta[i] <= traj.theta[i - 1] + 1e-14);
    // flow split adds back up to theta
    CHECK(traj.has_phi);
    CHECK((traj.phi_S + traj.phi_I + traj.phi_R - traj.theta).abs().maxCoeff() < 1e-8);
}

TEST_CASE("integrate: subcritical epidemic fizzles") {
    // R0 = (0.4/1.4) * 2 = 4/7 < 1
    const EpidemicParams params{0.4, 1.0};
    CHECK(r0(kThreeRegular, params) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
    const auto traj = integrate(kThreeRegular, params, 1.0 - 1e-6, 60.0);
    const auto n = traj.t.size() - 1;
    CHECK(traj.R[n] < 0.01);
    CHECK(traj.I[n] < 1e-6);
    // infectious mass decays monotonically after the initial transient
    const auto peak = std::max_element(traj.I.data(), traj.I.data() + traj.I.size());
    CHECK(*peak < 1e-5);
}

TEST_CASE("integrate: phi fields omitted when beta = 0") {
    const auto traj = integrate(kThreeRegular, {0.0, 1.0}, 0.99, 5.0);
    CHECK_FALSE(traj.has_phi);
    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    CHECK(csv.str().substr(0, 14) == "t,theta,S,I,R\n");
}

TEST_CASE("integrate: validation and stability errors") {
    CHECK_THROWS_AS((void)integrate(kThreeRegular, {1.5, 1.0}, 1.5, 10.0), std::invalid_argument);
    CHECK_THROWS_AS((void)integrate(kThreeRegular, {1.5, 1.0}, 0.9, -1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)integrate(kThreeRegular, {1.5, 1.0}, 0.9, 10.0, -0.1),
                    std::invalid_argument);
    // wildly oversized step on a stiffer system blows up into the error path
    const auto stiff = build_distribution(DegreeFamily::poisson, 10.0, 200, 1);
    CHECK_THROWS_AS((void)integrate(stiff.pmf, {200.0, 0.01}, 0.5, 2000.0, 90.0),
                    std::runtime_error);
}

TEST_CASE("r0: formula values and threshold identity") {
    CHECK(r0(kThreeRegular, {1.5, 1.0}) == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(r0(kThreeRegular, {0.0, 1.0}) == 0.0);

    Rng rng(0xdadaULL);
    for (int trial = 0; trial < 100; ++trial) {
        const PowerSeries pmf = random_pmf_series(rng, 18);
        const EpidemicParams params{0.1 + 3.0 * rng.uniform(), 0.2 + 2.0 * rng.uniform()};
        const auto tc = critical_T(pmf);
        if (tc.infinite) continue;
        const double t = params.beta / (params.beta + params.gamma);
        CHECK(std::abs(r0(pmf, params) - t / tc.value) < 1e-12);
    }
}

TEST_CASE("final_size: closed-form desk values") {
    const auto report = final_size(kThreeRegular, {1.5, 1.0});
    CHECK(report.theta_inf == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(report.r_inf == doctest::Approx(19.0 / 27.0).epsilon(1e-10));
    CHECK(report.r0 == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(report.resid_theta < 1e-9);
    CHECK(report.resid_final_size < 1e-9);

    // threshold case: double root at theta = 1
    const auto critical = final_size(kThreeRegular, {1.0, 1.0});
    CHECK(critical.theta_inf == 1.0);
    CHECK(critical.r_inf == 0.0);

    const auto json = to_json(report);
    CHECK(json.find("\"R0\":1.2") != std::string::npos);
    CHECK(json.find("theta_inf") != std::string::npos);
}

TEST_CASE("final_size: percolation equivalence over random ensembles") {
    Rng rng(0x5150ULL);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 100; ++trial) {
        const PowerSeries pmf = random_pmf_series(rng, 15);
        if (mean(pmf) < 0.05) continue;
        const EpidemicParams params{0.05 + 4.0 * rng.uniform(), 0.2 + 2.5 * rng.uniform()};
        const auto report = final_size(pmf, params, 1e-12);
        CHECK(report.resid_theta <= 1e-9);
        CHECK(report.resid_final_size <= 1e-9);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("final_size: positive outbreak exactly above R0 = 1") {
    // walk beta so R0 brackets 1 with a 1e-6 margin on each side
    const double g_ratio = 2.0;  // G''/G' for x^3
    for (double margin : {1e-6, 1e-3, 0.1, 0.5}) {
        const double r0_target_hi = 1.0 + margin;
        const double t_hi = r0_target_hi / g_ratio;
        const double beta_hi = t_hi / (1.0 - t_hi);  // gamma = 1
        const auto above = final_size(kThreeRegular, {beta_hi, 1.0});
        CHECK(above.r_inf > 1e-6);

        const double r0_target_lo = 1.0 - margin;
        const double t_lo = r0_target_lo / g_ratio;
        const double beta_lo = t_lo / (1.0 - t_lo);
        const auto below = final_size(kThreeRegular, {beta_lo, 1.0});
        CHECK(below.r_inf == 0.0);
    }
}

TEST_CASE("trajectory endpoint converges to the fixed point as t_end grows") {
    const double theta_inf = final_size(kThreeRegular, {1.5, 1.0}).theta_inf;
    const auto at = [&](double t_end) {
        const auto traj = integrate(kThreeRegular, {1.5, 1.0}, 1.0 - 1e-5, t_end);
        return std::abs(traj.theta[traj.theta.size() - 1] - theta_inf);
    };
    const double err20 = at(20.0), err40 = at(40.0);
    CHECK(err40 <= 0.5 * err20);
    CHECK(err40 < 1e-4);
}

TEST_CASE("integration error drops at 4th order under dt halving") {
    // reference solution from the closed form: no solver self-comparison
    const double beta = 1.5, gamma = 1.0, theta0 = 0.9, t_end = 8.0;
    const double exact = oracles::three_regular_theta(beta, gamma, theta0, t_end);
    const auto endpoint_error = [&](double dt) {
        const auto traj = integrate(kThreeRegular, {beta, gamma}, theta0, t_end, dt);
        return std::abs(traj.theta[traj.theta.size() - 1] - exact);
    };
    const double coarse = endpoint_error(0.4);
    const double fine = endpoint_error(0.2);
    CHECK(coarse > 1e-12);  // above rounding noise, the ratio is meaningful
    CHECK(fine <= coarse / 8.0);
}
