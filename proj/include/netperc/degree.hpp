#pragma once

#include "netperc/power_series.hpp"
#include "netperc/rng.hpp"

#include <string>
#include <vector>

namespace netperc {

class Rng;

enum class DegreeFamily { constant, poisson, geometric, powerlaw, custom };

std::string family_name(DegreeFamily family);
DegreeFamily family_from_name(const std::string& name);

/// Mass the family formula puts beyond the truncation degree. Building a
/// distribution whose dropped tail exceeds this limit fails with a suggested
/// larger truncation degree; the renormalization is then a no-op at the
/// tolerances used downstream. (The truncated power-law is normalized on its
/// finite support directly and has no dropped tail.)
inline constexpr double kTailMassLimit = 1e-8;

/// Truncated, renormalized degree distribution over {k_min, ..., delta}.
struct DegreeDistribution {
    DegreeFamily family;
    double param;  // k (constant), lambda (poisson), alpha (geometric), gamma (powerlaw)
    int delta;
    int k_min;
    PowerSeries pmf;  // coefficient k = probability of degree k
    double mean_degree;
    double tail_mass;  // family mass beyond delta, dropped at truncation
};

/// Families:
///   constant:  p_k = 1 at k = param
///   poisson:   p_k ~ e^{-lambda} lambda^k / k!
///   geometric: p_k ~ (1 - e^{-alpha}) e^{-alpha (k-1)}, k >= 1
///   powerlaw:  p_k ~ k^{-gamma}, k >= 1
/// k_min is 0 or 1; the default 1 excludes isolated vertices.
DegreeDistribution build_distribution(DegreeFamily family, double param, int delta, int k_min = 1);

DegreeDistribution custom_distribution(PowerSeries pmf);

/// Family parameter whose truncated distribution has the requested mean
/// degree, found by bisection (the truncated mean is monotone in the
/// parameter for every family). Throws std::domain_error when the mean is
/// unreachable under the given truncation.
double solve_param_for_mean(DegreeFamily family, double target_mean, int delta, int k_min = 1,
                            double tol = 1e-10);

/// Molloy-Reed criterion Lambda = sum_k k (k-2) p_k. A giant component exists
/// iff Lambda > 0.
double molloy_reed_lambda(const PowerSeries& pmf);
inline double molloy_reed_lambda(const DegreeDistribution& dist) {
    return molloy_reed_lambda(dist.pmf);
}

/// Erdos-Gallai realizability test: true iff the total degree is even and all
/// N inequalities hold. Sorts a copy internally; entries must be nonnegative.
bool erdos_gallai(std::vector<int> degrees);

/// Realizable degree sequence, kept sorted in descending order.
struct DegreeSequence {
    std::vector<int> degrees;
    long long total_degree = 0;
    int max_degree = 0;

    int size() const { return static_cast<int>(degrees.size()); }

    /// Validates even total degree and the Erdos-Gallai inequalities; sorts.
    static DegreeSequence checked(std::vector<int> degrees);
};

/// Draws an i.i.d. sequence from the distribution, redraws a uniformly chosen
/// entry until the total degree is even, sorts, and accepts only if the
/// Erdos-Gallai test passes; otherwise restarts from scratch. Throws
/// std::runtime_error once the restart budget is exhausted.
DegreeSequence sample_sequence(const DegreeDistribution& dist, int n, Rng& rng,
                               int restart_budget = 1000);

}  // namespace netperc
