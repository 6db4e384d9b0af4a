#pragma once

#include "netperc/percolation.hpp"
#include "netperc/power_series.hpp"

#include <Eigen/Core>

namespace netperc {

inline constexpr double kDefaultTheta0 = 1.0 - 1e-6;

inline double default_dt(const EpidemicParams& params) {
    return 0.01 / std::max(params.beta, params.gamma);
}

/// Edge-based compartmental trajectory. theta is the probability a random
/// partner has not yet transmitted; S = G_p(theta), I = 1 - S - R. The phi
/// arrays split theta into susceptible / infectious / recovered partners and
/// are only available for beta > 0 (phi_R carries a gamma/beta factor).
struct Trajectory {
    Eigen::ArrayXd t;
    Eigen::ArrayXd theta;
    Eigen::ArrayXd S, I, R;
    Eigen::ArrayXd phi_S, phi_I, phi_R;
    bool has_phi = false;
};

/// Classic fixed-step 4th-order integration of
///   theta' = -beta theta + beta G_p'(theta)/G_p'(1) + gamma (1 - theta)
///   R'     = gamma I,  S = G_p(theta),  I = 1 - S - R.
/// The step is adjusted to divide t_end exactly. Throws std::runtime_error if
/// the state leaves the finite range (suggesting a smaller dt).
Trajectory integrate(const PowerSeries& g_p, const EpidemicParams& params,
                     double theta0 = kDefaultTheta0, double t_end = 40.0, double dt = 0.0);

/// Basic reproduction number T G_p''(1) / G_p'(1) with T = beta/(beta+gamma).
double r0(const PowerSeries& g_p, const EpidemicParams& params);

struct FinalSizeReport {
    double theta_inf = 1.0;
    double r_inf = 0.0;
    double r0 = 0.0;
    // Residuals of the percolation equivalence theta(inf) = 1 + (u_T - 1) T and
    // R(inf) = S_T, valid under constant transmission and recovery rates.
    double resid_theta = 0.0;
    double resid_final_size = 0.0;
};

/// Smallest root of the theta(inf) fixed point (bisection on [0, 1 - 1e-12]),
/// the final epidemic fraction R(inf) = 1 - G_p(theta(inf)), and the residuals
/// against the bond-percolation route.
FinalSizeReport final_size(const PowerSeries& g_p, const EpidemicParams& params,
                           double tol = 1e-12);

}  // namespace netperc
