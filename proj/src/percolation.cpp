#include "netperc/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace netperc {

void validate(const EpidemicParams& params) {
    if (!(params.beta >= 0.0) || !std::isfinite(params.beta))
        throw std::invalid_argument("EpidemicParams: beta must be >= 0");
    if (!(params.gamma > 0.0) || !std::isfinite(params.gamma))
        throw std::invalid_argument("EpidemicParams: gamma must be > 0");
}

double TabulatedDensity::integral() const {
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < grid.size(); ++i)
        acc += 0.5 * (values[i] + values[i + 1]) * (grid[i + 1] - grid[i]);
    return acc;
}

TabulatedDensity TabulatedDensity::normalized(Eigen::ArrayXd grid, Eigen::ArrayXd values) {
    TabulatedDensity d{std::move(grid), std::move(values)};
    const double total = d.integral();
    if (!(total > 0.0)) throw std::invalid_argument("TabulatedDensity: zero mass");
    d.values /= total;
    return d;
}

namespace {

void validate_density(const TabulatedDensity& d, const char* name) {
    if (d.grid.size() < 2 || d.grid.size() != d.values.size())
        throw std::invalid_argument(std::string(name) + ": need matching grid/value tables");
    for (Eigen::Index i = 0; i + 1 < d.grid.size(); ++i)
        if (!(d.grid[i + 1] > d.grid[i]))
            throw std::invalid_argument(std::string(name) + ": grid must be increasing");
    if (!(d.grid[0] >= 0.0)) throw std::invalid_argument(std::string(name) + ": negative domain");
    if ((d.values < 0.0).any())
        throw std::invalid_argument(std::string(name) + ": negative density");
    if (std::abs(d.integral() - 1.0) > 1e-8)
        throw std::invalid_argument(std::string(name) + ": density must integrate to 1");
}

// int_0^1 e^{-u x} dx and int_0^1 x e^{-u x} dx, stable near u = 0.
double phi0(double u) {
    if (std::abs(u) < 1e-4) return 1.0 - u / 2 + u * u / 6 - u * u * u / 24;
    return -std::expm1(-u) / u;
}
double phi1(double u) {
    if (std::abs(u) < 1e-4) return 0.5 - u / 3 + u * u / 8 - u * u * u / 30;
    return (1.0 - (1.0 + u) * std::exp(-u)) / (u * u);
}

// Exact integral of the piecewise-linear density times e^{-s x}.
double laplace_of_table(const TabulatedDensity& d, double s) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < d.grid.size(); ++i) {
        const double x0 = d.grid[i], h = d.grid[i + 1] - x0;
        const double f0 = d.values[i], f1 = d.values[i + 1];
        const double u = s * h;
        acc += std::exp(-s * x0) * h * (f0 * phi0(u) + (f1 - f0) * phi1(u));
    }
    return acc;
}

constexpr long kQuadratureBudget = 1 << 20;

struct QuadratureState {
    long evaluations = 0;
    void charge() {
        if (++evaluations > kQuadratureBudget)
            throw std::runtime_error(
                "transmissibility: quadrature did not converge within the evaluation budget");
    }
};

template <typename F>
double adaptive_simpson(const F& f, double a, double fa, double b, double fb, double fm,
                        double whole, double tol, int depth, QuadratureState& state) {
    const double m = 0.5 * (a + b);
    state.charge();
    state.charge();
    const double fl = f(0.5 * (a + m));
    const double fr = f(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, fa, m, fm, fl, left, 0.5 * tol, depth - 1, state) +
           adaptive_simpson(f, m, fm, b, fb, fr, right, 0.5 * tol, depth - 1, state);
}

// Integral of f over the cells of `grid`, each cell refined adaptively.
template <typename F>
double integrate_over_grid(const F& f, const Eigen::ArrayXd& grid, double tol,
                           QuadratureState& state) {
    double acc = 0.0;
    const double cell_tol = tol / static_cast<double>(grid.size() - 1);
    for (Eigen::Index i = 0; i + 1 < grid.size(); ++i) {
        const double a = grid[i], b = grid[i + 1];
        state.charge();
        state.charge();
        state.charge();
        const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        acc += adaptive_simpson(f, a, fa, b, fb, fm, whole, cell_tol, 24, state);
    }
    return acc;
}

double interpolate(const TabulatedDensity& d, double x) {
    if (x <= d.grid[0]) return x == d.grid[0] ? d.values[0] : 0.0;
    if (x >= d.grid[d.grid.size() - 1])
        return x == d.grid[d.grid.size() - 1] ? d.values[d.values.size() - 1] : 0.0;
    Eigen::Index lo = 0, hi = d.grid.size() - 1;
    while (hi - lo > 1) {
        const Eigen::Index mid = (lo + hi) / 2;
        (d.grid[mid] <= x ? lo : hi) = mid;
    }
    const double w = (x - d.grid[lo]) / (d.grid[lo + 1] - d.grid[lo]);
    return d.values[lo] + w * (d.values[lo + 1] - d.values[lo]);
}

}  // namespace

double transmissibility(const TransmissibilityModel& model, const EpidemicParams& params) {
    validate(params);
    switch (model.variant) {
        case TransmissionVariant::constant_rates:
            return params.beta / (params.beta + params.gamma);
        case TransmissionVariant::fixed_duration:
            return -std::expm1(-params.beta / params.gamma);
        case TransmissionVariant::iid_general: {
            if (!model.f_beta || !model.f_tau)
                throw std::invalid_argument("iid_general: f_beta and f_tau required");
            validate_density(*model.f_beta, "f_beta");
            validate_density(*model.f_tau, "f_tau");
            // T = 1 - int f_tau(t) [int f_beta(b) e^{-b t} db] dt; the inner
            // integral is exact for the piecewise-linear table.
            QuadratureState state;
            const auto& fb = *model.f_beta;
            const auto& ft = *model.f_tau;
            const auto integrand = [&](double t) {
                return interpolate(ft, t) * laplace_of_table(fb, t);
            };
            return 1.0 - integrate_over_grid(integrand, ft.grid, 1e-12, state);
        }
        case TransmissionVariant::iid_rate_reciprocal: {
            if (!model.f_beta || !model.f_gamma)
                throw std::invalid_argument("iid_rate_reciprocal: f_beta and f_gamma required");
            validate_density(*model.f_beta, "f_beta");
            validate_density(*model.f_gamma, "f_gamma");
            if (!(model.f_gamma->grid[0] > 0.0))
                throw std::invalid_argument("f_gamma: recovery rates must be positive");
            QuadratureState state;
            const auto& fb = *model.f_beta;
            const auto& fg = *model.f_gamma;
            const auto integrand = [&](double r) {
                return interpolate(fg, r) * laplace_of_table(fb, 1.0 / r);
            };
            return 1.0 - integrate_over_grid(integrand, fg.grid, 1e-12, state);
        }
    }
    throw std::logic_error("transmissibility: unknown variant");
}

namespace {

void require_pmf(const PowerSeries& s, const char* who) {
    if (!(s.coeffs() >= -1e-15).all() || std::abs(s.sum() - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(who) + ": series is not a pmf");
}

// Smallest root in [0,1] of G_q(1 + (u-1)T) = u. With Q the tail-sum
// polynomial of g_q, the defect factors as (1-u)(1 - T Q(1 + (u-1)T)), so the
// interior root solves T Q(x) = 1, with T Q increasing in u. Bisection on the
// monotone factor is free of the cancellation that the raw defect suffers
// near u = 1, and the interior root exists exactly when T Q(1) = T G_q'(1) > 1.
double percolated_fixed_point(const PowerSeries& g_q, double t, double tol) {
    const PowerSeries q_tail = tail_sum_series(g_q);
    const auto defect = [&](double u) {
        return t * evaluate(q_tail, 1.0 + (u - 1.0) * t) - 1.0;
    };
    if (defect(1.0) <= 0.0) return 1.0;  // at or below threshold
    if (defect(0.0) >= 0.0) return 0.0;  // root at the bottom (p_1 = 0 at T = 1)
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (defect(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

UResult solve_u(const PowerSeries& g_q, double tol) {
    require_pmf(g_q, "solve_u");
    // g_q == x: excess degree exactly 1 (p_2 = 1), every u in [0,1] is a fix point.
    bool identity = std::abs(g_q.coeff(1) - 1.0) <= 1e-12;
    for (Eigen::Index k = 0; identity && k <= g_q.max_degree(); ++k)
        if (k != 1 && std::abs(g_q.coeff(k)) > 1e-12) identity = false;
    if (identity) return {1.0, true};
    return {percolated_fixed_point(g_q, 1.0, tol), false};
}

double solve_uT(const PowerSeries& g_q, double transmissibility, double tol) {
    require_pmf(g_q, "solve_uT");
    if (!(transmissibility >= 0.0 && transmissibility <= 1.0))
        throw std::domain_error("solve_uT: transmissibility must lie in [0,1]");
    return percolated_fixed_point(g_q, transmissibility, tol);
}

CriticalT critical_T(const PowerSeries& g_p) {
    const double g1 = evaluate(derivative(g_p), 1.0);
    const double g2 = g_p.max_degree() >= 2 ? evaluate(derivative(g_p, 2), 1.0) : 0.0;
    if (!(g1 > 0.0)) throw std::domain_error("critical_T: mean degree must be > 0");
    if (g2 <= 0.0) return {std::numeric_limits<double>::infinity(), true, true};
    const double value = g1 / g2;
    return {value, false, value >= 1.0};
}

double giant_fraction(const PowerSeries& g_p, double u) {
    if (u == 1.0) return 0.0;  // G_p(1) = 1 for a pmf by definition
    return std::clamp(1.0 - evaluate(g_p, u), 0.0, 1.0);
}

double giant_fraction_T(const PowerSeries& g_p, double transmissibility, double u_T) {
    if (u_T == 1.0 || transmissibility == 0.0) return 0.0;
    return std::clamp(1.0 - evaluate(g_p, 1.0 + (u_T - 1.0) * transmissibility), 0.0, 1.0);
}

double mean_small_component(const PowerSeries& g_p, double transmissibility) {
    const CriticalT tc = critical_T(g_p);
    if (!(transmissibility < tc.value))
        throw std::domain_error("mean_small_component: diverges at the threshold T_c");
    const double g1 = evaluate(derivative(g_p), 1.0);
    const double gq1 = evaluate(derivative(excess_pgf(g_p)), 1.0);
    return 1.0 + transmissibility * g1 / (1.0 - transmissibility * gq1);
}

std::vector<double> small_component_distribution(const PowerSeries& g_p, double transmissibility,
                                                 int s_max, double tol) {
    require_pmf(g_p, "small_component_distribution");
    if (s_max < 1) throw std::invalid_argument("small_component_distribution: s_max >= 1");
    const double t = transmissibility;
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("small_component_distribution: T must lie in [0,1]");

    const PowerSeries g_q = excess_pgf(g_p);
    const double u = percolated_fixed_point(g_q, t, 1e-13);
    const double s_giant = giant_fraction_T(g_p, t, u);
    std::vector<double> probabilities(static_cast<std::size_t>(s_max) + 1, 0.0);
    if (1.0 - s_giant < 1e-12) return probabilities;  // no small components

    const PowerSeries gp_t = percolate_pgf(g_p, t);
    const PowerSeries gq_t = percolate_pgf(g_q, t);
    const Eigen::Index len = s_max + 1;

    // H_q(x) = (x/u) G_q(u H_q(x); T), iterated on truncated coefficients.
    // Coefficient s is fixed after s iterations, so the sup-norm change is a
    // faithful stopping criterion.
    Eigen::ArrayXd h = Eigen::ArrayXd::Zero(len);
    if (u > 0.0) {
        const Eigen::Index init = std::min<Eigen::Index>(len - 1, gq_t.max_degree());
        h.head(init + 1) = gq_t.coeffs().head(init + 1);
        constexpr int kMaxIterations = 10000;
        bool converged = false;
        for (int it = 0; it < kMaxIterations && !converged; ++it) {
            const PowerSeries composed = compose(gq_t, PowerSeries((u * h).eval()), s_max);
            Eigen::ArrayXd next = Eigen::ArrayXd::Zero(len);
            for (Eigen::Index k = 0; k + 1 < len; ++k) next[k + 1] = composed.coeff(k) / u;
            converged = ((next - h).abs().maxCoeff() <= tol);
            h = std::move(next);
        }
        if (!converged)
            throw std::runtime_error("small_component_distribution: H_q iteration did not "
                                     "converge within the iteration cap");
    }

    // H_p(x) = x / (1 - S_T) G_p(u H_q(x); T)
    const PowerSeries composed_p = compose(gp_t, PowerSeries((u * h).eval()), s_max);
    Eigen::ArrayXd hp = Eigen::ArrayXd::Zero(len);
    for (Eigen::Index k = 0; k + 1 < len; ++k) hp[k + 1] = composed_p.coeff(k) / (1.0 - s_giant);
    const PowerSeries hp_series{std::move(hp)};

    const auto coefficients = extract_coefficients(
        [&](std::complex<double> z) { return evaluate(hp_series, z); }, s_max + 1);
    for (int s = 1; s <= s_max; ++s)
        probabilities[static_cast<std::size_t>(s)] =
            (1.0 - s_giant) * coefficients[static_cast<std::size_t>(s)];
    return probabilities;
}

PercolationReport percolation_report(const PowerSeries& g_p, double transmissibility) {
    require_pmf(g_p, "percolation_report");
    const double t = transmissibility;
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("percolation_report: transmissibility must lie in [0,1]");
    const CriticalT tc = critical_T(g_p);
    const PowerSeries g_q = excess_pgf(g_p);
    PercolationReport report;
    report.T = t;
    report.T_c = tc.value;
    report.u_T = solve_uT(g_q, t);
    report.S_T = giant_fraction_T(g_p, t, report.u_T);
    report.epidemic = t > tc.value;
    if (t < tc.value) report.mean_small = mean_small_component(g_p, t);
    return report;
}

PercolationReport percolation_report(const PowerSeries& g_p, const TransmissibilityModel& model,
                                     const EpidemicParams& params) {
    return percolation_report(g_p, transmissibility(model, params));
}

}  // namespace netperc
