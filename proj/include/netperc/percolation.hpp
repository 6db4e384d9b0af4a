#pragma once

#include "netperc/power_series.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace netperc {

struct EpidemicParams {
    double beta = 0.0;   // per-edge transmission rate
    double gamma = 1.0;  // per-capita recovery rate
};

void validate(const EpidemicParams& params);

/// Piecewise-linear density on a finite grid. The integral of the interpolant
/// (the trapezoid sum) must be 1 within 1e-8.
struct TabulatedDensity {
    Eigen::ArrayXd grid;    // strictly increasing, nonnegative
    Eigen::ArrayXd values;  // nonnegative

    double integral() const;
    /// Same table rescaled so the interpolant integrates to exactly 1.
    static TabulatedDensity normalized(Eigen::ArrayXd grid, Eigen::ArrayXd values);
};

/// Per-edge transmission probability models:
///   constant_rates:      fixed rate beta, exponential recovery at rate gamma
///   fixed_duration:      fixed rate beta, fixed infectious period 1/gamma
///   iid_general:         rate ~ f_beta, infectious period ~ f_tau
///   iid_rate_reciprocal: rate ~ f_beta, period 1/r with recovery rate r ~ f_gamma
enum class TransmissionVariant { constant_rates, fixed_duration, iid_general, iid_rate_reciprocal };

struct TransmissibilityModel {
    TransmissionVariant variant = TransmissionVariant::constant_rates;
    std::optional<TabulatedDensity> f_beta;
    std::optional<TabulatedDensity> f_tau;
    std::optional<TabulatedDensity> f_gamma;

    static TransmissibilityModel constant_rates() { return {}; }
    static TransmissibilityModel fixed_duration() {
        return {TransmissionVariant::fixed_duration, {}, {}, {}};
    }
    static TransmissibilityModel iid_general(TabulatedDensity f_beta, TabulatedDensity f_tau) {
        return {TransmissionVariant::iid_general, std::move(f_beta), std::move(f_tau), {}};
    }
    static TransmissibilityModel iid_rate_reciprocal(TabulatedDensity f_beta,
                                                     TabulatedDensity f_gamma) {
        return {TransmissionVariant::iid_rate_reciprocal, std::move(f_beta), {},
                std::move(f_gamma)};
    }
};

/// Mean probability that an edge ever transmits. Closed forms for the two
/// constant variants (beta/(beta+gamma) and 1 - e^{-beta/gamma}); numerical
/// quadrature over the tabulated densities for the i.i.d. variants.
double transmissibility(const TransmissibilityModel& model, const EpidemicParams& params);

struct UResult {
    double u = 1.0;
    bool degenerate = false;  // g_q is the identity: every u in [0,1] solves u = G_q(u)
};

/// Smallest solution of u = G_q(u) in [0,1]: 0 when p_1 = 0, the interior
/// root when G_q'(1) > 1, otherwise 1.
UResult solve_u(const PowerSeries& g_q, double tol = 1e-12);

/// Smallest solution in [0,1] of u = G_q(1 + (u-1) T); exactly 1 at or below
/// the threshold. Bisection is safe here: the defect function is convex with
/// a known sign structure.
double solve_uT(const PowerSeries& g_q, double transmissibility, double tol = 1e-12);

struct CriticalT {
    double value = 0.0;   // G_p'(1) / G_p''(1); +inf when G_p''(1) = 0
    bool infinite = false;
    bool no_epidemic = false;  // threshold at or above 1: no epidemic for any T
};

CriticalT critical_T(const PowerSeries& g_p);

/// S = 1 - G_p(u) for a solution u of u = G_q(u).
double giant_fraction(const PowerSeries& g_p, double u);

/// S_T = 1 - G_p(1 + (u_T-1) T) for a solution u_T of the percolated fixed point.
double giant_fraction_T(const PowerSeries& g_p, double transmissibility, double u_T);

/// Subcritical mean occupied-component size 1 + T G_p'(1) / (1 - T G_q'(1)),
/// size-biased by the initially infected vertex. Throws std::domain_error at
/// or above the threshold, where it diverges.
double mean_small_component(const PowerSeries& g_p, double transmissibility);

/// Unconditional small-component size probabilities P_s(T) for s = 0..s_max
/// (P_0 = 0). Solves the H_q functional equation by fixed-point iteration on
/// truncated coefficient vectors, forms H_p, extracts coefficients by contour
/// integration and multiplies by 1 - S_T.
std::vector<double> small_component_distribution(const PowerSeries& g_p, double transmissibility,
                                                 int s_max, double tol = 1e-10);

struct PercolationReport {
    double T = 0.0;
    double T_c = 0.0;
    double u_T = 1.0;
    double S_T = 0.0;
    std::optional<double> mean_small;  // absent at or above threshold
    bool epidemic = false;
};

PercolationReport percolation_report(const PowerSeries& g_p, double transmissibility);
PercolationReport percolation_report(const PowerSeries& g_p, const TransmissibilityModel& model,
                                     const EpidemicParams& params);

}  // namespace netperc
