#include "netperc/ebcm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netperc {

Trajectory integrate(const PowerSeries& g_p, const EpidemicParams& params, double theta0,
                     double t_end, double dt) {
    validate(params);
    if (!(theta0 > 0.0 && theta0 <= 1.0))
        throw std::invalid_argument("integrate: theta0 must lie in (0,1]");
    if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");
    if (dt == 0.0) dt = default_dt(params);
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");

    const PowerSeries g_p_prime = derivative(g_p);
    const double mean_degree = evaluate(g_p_prime, 1.0);
    if (!(mean_degree > 0.0)) throw std::domain_error("integrate: mean degree must be > 0");
    const double beta = params.beta, gamma = params.gamma;

    const auto theta_dot = [&](double theta) {
        return -beta * theta + beta * evaluate(g_p_prime, theta) / mean_degree +
               gamma * (1.0 - theta);
    };
    const auto r_dot = [&](double theta, double r) {
        return gamma * (1.0 - evaluate(g_p, theta) - r);
    };

    const auto steps = static_cast<Eigen::Index>(std::lround(std::ceil(t_end / dt - 1e-9)));
    const double h = t_end / static_cast<double>(steps);

    Trajectory traj;
    traj.t.resize(steps + 1);
    traj.theta.resize(steps + 1);
    traj.S.resize(steps + 1);
    traj.I.resize(steps + 1);
    traj.R.resize(steps + 1);

    double theta = theta0, r = 0.0;
    for (Eigen::Index i = 0; i <= steps; ++i) {
        traj.t[i] = static_cast<double>(i) * h;
        traj.theta[i] = theta;
        traj.S[i] = evaluate(g_p, theta);
        traj.R[i] = r;
        traj.I[i] = 1.0 - traj.S[i] - r;
        if (!std::isfinite(theta) || !std::isfinite(r))
            throw std::runtime_error("integrate: state became non-finite; reduce dt");
        if (i == steps) break;

        const double k1t = theta_dot(theta), k1r = r_dot(theta, r);
        const double k2t = theta_dot(theta + 0.5 * h * k1t),
                     k2r = r_dot(theta + 0.5 * h * k1t, r + 0.5 * h * k1r);
        const double k3t = theta_dot(theta + 0.5 * h * k2t),
                     k3r = r_dot(theta + 0.5 * h * k2t, r + 0.5 * h * k2r);
        const double k4t = theta_dot(theta + h * k3t), k4r = r_dot(theta + h * k3t, r + h * k3r);
        theta += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
        r += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
    }

    if (beta > 0.0) {
        traj.has_phi = true;
        traj.phi_S.resize(steps + 1);
        traj.phi_I.resize(steps + 1);
        traj.phi_R.resize(steps + 1);
        for (Eigen::Index i = 0; i <= steps; ++i) {
            traj.phi_S[i] = evaluate(g_p_prime, traj.theta[i]) / mean_degree;
            traj.phi_R[i] = gamma / beta * (1.0 - traj.theta[i]);
            traj.phi_I[i] = traj.theta[i] - traj.phi_S[i] - traj.phi_R[i];
        }
    }
    return traj;
}

double r0(const PowerSeries& g_p, const EpidemicParams& params) {
    validate(params);
    const double g1 = evaluate(derivative(g_p), 1.0);
    if (!(g1 > 0.0)) throw std::domain_error("r0: mean degree must be > 0");
    const double g2 = g_p.max_degree() >= 2 ? evaluate(derivative(g_p, 2), 1.0) : 0.0;
    return params.beta / (params.beta + params.gamma) * g2 / g1;
}

FinalSizeReport final_size(const PowerSeries& g_p, const EpidemicParams& params, double tol) {
    validate(params);
    const double t = params.beta / (params.beta + params.gamma);
    const PowerSeries g_q = excess_pgf(g_p);

    // The fixed point theta = 1 - T + T G_q(theta) factors through the
    // tail-sum polynomial Q as (1-theta)(1 - T Q(theta)) = 0, so the interior
    // root solves the monotone equation T Q(theta) = 1 without cancellation
    // near theta = 1. It exists exactly when T G_q'(1) > 1 and is then the
    // smallest root in [0,1].
    const PowerSeries q_tail = tail_sum_series(g_q);
    const auto defect = [&](double theta) { return t * evaluate(q_tail, theta) - 1.0; };
    double theta_inf = 1.0;
    if (defect(1.0) > 0.0) {
        if (defect(0.0) >= 0.0) {
            theta_inf = 0.0;
        } else {
            double lo = 0.0, hi = 1.0;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                (defect(mid) < 0.0 ? lo : hi) = mid;
            }
            theta_inf = 0.5 * (lo + hi);
        }
    }

    FinalSizeReport report;
    report.theta_inf = theta_inf;
    report.r_inf =
        theta_inf == 1.0 ? 0.0 : std::clamp(1.0 - evaluate(g_p, theta_inf), 0.0, 1.0);
    report.r0 = r0(g_p, params);
    const double u_t = solve_uT(g_q, t, tol);
    report.resid_theta = std::abs(theta_inf - (1.0 + (u_t - 1.0) * t));
    report.resid_final_size = std::abs(report.r_inf - giant_fraction_T(g_p, t, u_t));
    return report;
}

}  // namespace netperc
