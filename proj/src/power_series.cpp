#include "netperc/power_series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace netperc {

PowerSeries::PowerSeries(Eigen::ArrayXd coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) throw std::invalid_argument("PowerSeries: empty coefficient vector");
    if (!coeffs_.isFinite().all())
        throw std::invalid_argument("PowerSeries: coefficients must be finite");
}

PowerSeries::PowerSeries(std::initializer_list<double> coeffs)
    : PowerSeries(Eigen::Map<const Eigen::ArrayXd>(coeffs.begin(),
                                                   static_cast<Eigen::Index>(coeffs.size()))) {}

PowerSeries PowerSeries::zero(Eigen::Index max_degree) {
    return PowerSeries(Eigen::ArrayXd::Zero(max_degree + 1));
}

PowerSeries PowerSeries::monomial(Eigen::Index k, double c) {
    Eigen::ArrayXd coeffs = Eigen::ArrayXd::Zero(k + 1);
    coeffs[k] = c;
    return PowerSeries(std::move(coeffs));
}

bool PowerSeries::is_pmf(double tol) const {
    return (coeffs_ >= 0.0).all() && std::abs(coeffs_.sum() - 1.0) <= tol;
}

PowerSeries derivative(const PowerSeries& s, int order) {
    if (order <= 0) throw std::invalid_argument("derivative: order must be positive");
    if (order > s.max_degree()) return PowerSeries::zero(0);
    const Eigen::Index n = s.max_degree() - order + 1;
    Eigen::ArrayXd out(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double factor = 1.0;
        for (int j = 0; j < order; ++j) factor *= static_cast<double>(k + order - j);
        out[k] = factor * s.coeff(k + order);
    }
    return PowerSeries(std::move(out));
}

double mean(const PowerSeries& s) {
    double acc = 0.0;
    for (Eigen::Index k = 1; k <= s.max_degree(); ++k) acc += static_cast<double>(k) * s.coeff(k);
    return acc;
}

PowerSeries excess_pgf(const PowerSeries& g_p) {
    const double mean_degree = mean(g_p);
    if (mean_degree <= 0.0)
        throw std::domain_error("excess_pgf: mean degree is zero (isolated vertices only)");
    PowerSeries d = derivative(g_p, 1);
    return PowerSeries(d.coeffs() / mean_degree);
}

PowerSeries tail_sum_series(const PowerSeries& s) {
    if (s.max_degree() == 0) return PowerSeries::zero(0);
    Eigen::ArrayXd tails(s.max_degree());
    double acc = 0.0;
    for (Eigen::Index j = s.max_degree() - 1; j >= 0; --j) {
        acc += s.coeff(j + 1);
        tails[j] = acc;
    }
    return PowerSeries(std::move(tails));
}

PowerSeries percolate_pgf(const PowerSeries& s, double transmissibility) {
    const double t = transmissibility;
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("percolate_pgf: transmissibility must lie in [0,1]");
    // s(a + t x) with a = 1 - t, expanded by repeated multiplication with the
    // linear inner factor.
    const Eigen::Index n = s.coeffs().size();
    const double a = 1.0 - t;
    Eigen::ArrayXd out = Eigen::ArrayXd::Zero(n);
    Eigen::ArrayXd power = Eigen::ArrayXd::Zero(n);  // (a + t x)^k, built incrementally
    power[0] = 1.0;
    Eigen::Index power_deg = 0;
    out[0] = s.coeff(0);
    for (Eigen::Index k = 1; k < n; ++k) {
        for (Eigen::Index j = ++power_deg; j > 0; --j) power[j] = power[j] * a + power[j - 1] * t;
        power[0] *= a;
        const double ck = s.coeff(k);
        if (ck != 0.0) out.head(power_deg + 1) += ck * power.head(power_deg + 1);
    }
    return PowerSeries(std::move(out));
}

namespace {

// result[0..cap] += scale * (lhs * rhs), all truncated at cap.
void fma_truncated(Eigen::ArrayXd& result, const Eigen::ArrayXd& lhs, const Eigen::ArrayXd& rhs,
                   double scale, Eigen::Index cap) {
    for (Eigen::Index i = 0; i < lhs.size() && i <= cap; ++i) {
        const double li = lhs[i] * scale;
        if (li == 0.0) continue;
        const Eigen::Index jmax = std::min<Eigen::Index>(rhs.size() - 1, cap - i);
        result.segment(i, jmax + 1) += li * rhs.head(jmax + 1);
    }
}

}  // namespace

PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner, Eigen::Index degree_cap) {
    const Eigen::Index full = outer.max_degree() * std::max<Eigen::Index>(inner.max_degree(), 1);
    const Eigen::Index cap = std::min(full, degree_cap);
    // Horner: acc = acc * inner + c_k, highest coefficient first.
    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(cap + 1);
    acc[0] = outer.coeff(outer.max_degree());
    for (Eigen::Index k = outer.max_degree() - 1; k >= 0; --k) {
        Eigen::ArrayXd next = Eigen::ArrayXd::Zero(cap + 1);
        fma_truncated(next, acc, inner.coeffs(), 1.0, cap);
        next[0] += outer.coeff(k);
        acc.swap(next);
    }
    return PowerSeries(std::move(acc));
}

std::vector<double> extract_coefficients(
    const std::function<std::complex<double>(std::complex<double>)>& f, int count, double radius) {
    if (count <= 0) return {};
    std::size_t samples = 1;
    while (samples < 4 * static_cast<std::size_t>(count)) samples <<= 1;

    std::vector<std::complex<double>> values(samples);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(samples);
    for (std::size_t j = 0; j < samples; ++j)
        values[j] = f(std::polar(radius, step * static_cast<double>(j)));

    std::vector<double> coeffs(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t j = 0; j < samples; ++j)
            acc += values[j] * std::polar(1.0, -step * static_cast<double>(j) * s);
        coeffs[static_cast<std::size_t>(s)] =
            acc.real() / (static_cast<double>(samples) * std::pow(radius, s));
    }
    return coeffs;
}

}  // namespace netperc
