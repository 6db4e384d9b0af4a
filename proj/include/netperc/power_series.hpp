#pragma once

#include <Eigen/Core>

#include <complex>
#include <functional>
#include <vector>

namespace netperc {

/// Finite truncated power series c_0 + c_1 x + ... + c_D x^D.
///
/// This is the representation used for every probability generating function
/// in the project: degree PGFs G_p, excess-degree PGFs G_q, their percolated
/// variants, and the small-component series H_p/H_q. Distributions with
/// unbounded support are truncated at a maximum degree and renormalized before
/// they reach this class, so all operations here are exact polynomial algebra.
class PowerSeries {
  public:
    explicit PowerSeries(Eigen::ArrayXd coeffs);
    PowerSeries(std::initializer_list<double> coeffs);

    static PowerSeries zero(Eigen::Index max_degree);
    static PowerSeries monomial(Eigen::Index k, double c = 1.0);

    Eigen::Index max_degree() const { return coeffs_.size() - 1; }
    const Eigen::ArrayXd& coeffs() const { return coeffs_; }

    /// Coefficient of x^k; zero outside the stored range.
    double coeff(Eigen::Index k) const {
        return (k >= 0 && k < coeffs_.size()) ? coeffs_[k] : 0.0;
    }

    double sum() const { return coeffs_.sum(); }

    /// Nonnegative coefficients summing to one within `tol`.
    bool is_pmf(double tol = 1e-12) const;

    bool operator==(const PowerSeries& other) const = default;

  private:
    Eigen::ArrayXd coeffs_;
};

/// Horner evaluation; instantiated for double and complex arguments.
template <typename Scalar>
Scalar evaluate(const PowerSeries& s, Scalar x) {
    const auto& c = s.coeffs();
    Scalar acc = Scalar(c[c.size() - 1]);
    for (Eigen::Index k = c.size() - 2; k >= 0; --k) acc = acc * x + Scalar(c[k]);
    return acc;
}

/// Formal derivative of the given order. Orders past the degree give the zero
/// series.
PowerSeries derivative(const PowerSeries& s, int order = 1);

/// Mean of a pmf series, sum_k k c_k.
double mean(const PowerSeries& s);

/// Excess-degree PGF G_q(x) = G_p'(x) / G_p'(1), i.e. q_k = (k+1) p_{k+1} / <K>.
/// Throws std::domain_error when the mean degree is zero.
PowerSeries excess_pgf(const PowerSeries& g_p);

/// Tail-sum polynomial (1 - s(x)) / (1 - x) of a pmf series: coefficient j is
/// P(X > j). Evaluating it costs no cancellation near x = 1, which makes
/// fixed points of the form G(x) = x solvable right up to the threshold.
PowerSeries tail_sum_series(const PowerSeries& s);

/// Series of x -> s(1 + (x-1) T), the binomial thinning of a pmf by retention
/// probability T. Expanded to the same max degree as `s`.
/// Throws std::domain_error for T outside [0,1].
PowerSeries percolate_pgf(const PowerSeries& s, double transmissibility);

inline constexpr Eigen::Index kComposeDegreeCap = 4096;

/// Coefficients of outer(inner(x)) truncated to min(D_out * D_in, cap).
PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner,
                    Eigen::Index degree_cap = kComposeDegreeCap);

inline constexpr double kContourRadius = 0.95;

/// First `count` power-series coefficients of an analytic function, recovered
/// by sampling on a circle of radius r < 1 and discrete Fourier inversion
/// (Cauchy's formula). Sample count is 4*count rounded up to a power of two.
std::vector<double> extract_coefficients(
    const std::function<std::complex<double>(std::complex<double>)>& f, int count,
    double radius = kContourRadius);

}  // namespace netperc
