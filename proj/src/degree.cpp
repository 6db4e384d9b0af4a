#include "netperc/degree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace netperc {

std::string family_name(DegreeFamily family) {
    switch (family) {
        case DegreeFamily::constant: return "constant";
        case DegreeFamily::poisson: return "poisson";
        case DegreeFamily::geometric: return "geometric";
        case DegreeFamily::powerlaw: return "powerlaw";
        case DegreeFamily::custom: return "custom";
    }
    throw std::logic_error("family_name: unknown family");
}

DegreeFamily family_from_name(const std::string& name) {
    if (name == "constant") return DegreeFamily::constant;
    if (name == "poisson") return DegreeFamily::poisson;
    if (name == "geometric") return DegreeFamily::geometric;
    if (name == "powerlaw") return DegreeFamily::powerlaw;
    if (name == "custom") return DegreeFamily::custom;
    throw std::invalid_argument("unknown degree family: " + name);
}

namespace {

double family_weight(DegreeFamily family, double param, int k) {
    switch (family) {
        case DegreeFamily::poisson:
            return std::exp(k * std::log(param) - param - std::lgamma(k + 1.0));
        case DegreeFamily::geometric:
            return k >= 1 ? -std::expm1(-param) * std::exp(-param * (k - 1)) : 0.0;
        case DegreeFamily::powerlaw:
            return k >= 1 ? std::pow(static_cast<double>(k), -param) : 0.0;
        default:
            throw std::logic_error("family_weight: tabulated family expected");
    }
}

void validate_family_params(DegreeFamily family, double param, int delta, int k_min) {
    if (k_min != 0 && k_min != 1)
        throw std::invalid_argument("build_distribution: k_min must be 0 or 1");
    if (delta < std::max(k_min, 1))
        throw std::invalid_argument("build_distribution: delta too small for the support");
    switch (family) {
        case DegreeFamily::constant:
            if (param < 1.0 || param != std::floor(param))
                throw std::invalid_argument("constant family: k must be a positive integer");
            if (param > delta)
                throw std::invalid_argument("constant family: k exceeds the truncation degree");
            break;
        case DegreeFamily::poisson:
            if (!(param > 0.0)) throw std::invalid_argument("poisson family: lambda must be > 0");
            break;
        case DegreeFamily::geometric:
            if (!(param > 0.0)) throw std::invalid_argument("geometric family: alpha must be > 0");
            break;
        case DegreeFamily::powerlaw:
            if (!(param > 1.0)) throw std::invalid_argument("powerlaw family: gamma must be > 1");
            break;
        case DegreeFamily::custom:
            throw std::invalid_argument("build_distribution: custom pmfs use custom_distribution");
    }
}

// Mass the family formula leaves above `delta`. The power-law is defined on
// its truncated support, so it never drops mass.
double dropped_tail_mass(DegreeFamily family, double param, int delta) {
    switch (family) {
        case DegreeFamily::constant:
        case DegreeFamily::powerlaw:
            return 0.0;
        case DegreeFamily::geometric:
            return std::exp(-param * delta);
        case DegreeFamily::poisson: {
            double tail = 0.0;
            double w = family_weight(DegreeFamily::poisson, param, delta + 1);
            for (int k = delta + 1; w > 0.0 || k <= param; ++k) {
                tail += w;
                w *= param / (k + 1);
                if (k > param && w < 1e-300) break;
            }
            return tail;
        }
        default:
            throw std::logic_error("dropped_tail_mass: unexpected family");
    }
}

int suggest_delta(DegreeFamily family, double param, int delta) {
    int candidate = delta;
    while (candidate < delta + 100000 &&
           dropped_tail_mass(family, param, candidate) >= kTailMassLimit)
        candidate += std::max(1, candidate / 8);
    return candidate;
}

DegreeDistribution finalize(DegreeFamily family, double param, int delta, int k_min,
                            Eigen::ArrayXd weights, double tail_mass) {
    const double in_support = weights.sum();
    if (!(in_support > 0.0))
        throw std::invalid_argument("build_distribution: no probability mass on the support");
    weights /= in_support;
    PowerSeries pmf(std::move(weights));
    const double mu = mean(pmf);
    if (!(mu > 0.0)) throw std::invalid_argument("build_distribution: mean degree must be > 0");
    return DegreeDistribution{family, param, delta, k_min, std::move(pmf), mu, tail_mass};
}

}  // namespace

DegreeDistribution build_distribution(DegreeFamily family, double param, int delta, int k_min) {
    validate_family_params(family, param, delta, k_min);

    if (family == DegreeFamily::constant) {
        const int k = static_cast<int>(param);
        Eigen::ArrayXd weights = Eigen::ArrayXd::Zero(delta + 1);
        weights[k] = 1.0;
        return finalize(family, param, delta, k_min, std::move(weights), 0.0);
    }

    const double tail = dropped_tail_mass(family, param, delta);
    if (tail >= kTailMassLimit)
        throw std::invalid_argument(
            "build_distribution: truncation drops tail mass " + std::to_string(tail) +
            " (limit " + std::to_string(kTailMassLimit) +
            "); increase delta to about " + std::to_string(suggest_delta(family, param, delta)));

    Eigen::ArrayXd weights = Eigen::ArrayXd::Zero(delta + 1);
    const int lo = family == DegreeFamily::poisson ? k_min : std::max(k_min, 1);
    for (int k = lo; k <= delta; ++k) weights[k] = family_weight(family, param, k);
    return finalize(family, param, delta, k_min, std::move(weights), tail);
}

DegreeDistribution custom_distribution(PowerSeries pmf) {
    if (!(pmf.coeffs() >= 0.0).all())
        throw std::invalid_argument("custom_distribution: negative probability");
    const double total = pmf.sum();
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("custom_distribution: pmf must sum to 1");
    Eigen::ArrayXd weights = pmf.coeffs() / total;
    const int delta = static_cast<int>(pmf.max_degree());
    const int k_min = weights[0] > 0.0 ? 0 : 1;
    return finalize(DegreeFamily::custom, 0.0, delta, k_min, std::move(weights), 0.0);
}

double solve_param_for_mean(DegreeFamily family, double target_mean, int delta, int k_min,
                            double tol) {
    if (family == DegreeFamily::constant) {
        if (target_mean < 1.0 || target_mean != std::floor(target_mean))
            throw std::domain_error("constant family: mean must be a positive integer");
        return target_mean;
    }
    if (family == DegreeFamily::custom)
        throw std::domain_error("solve_param_for_mean: custom family has no parameter");

    const auto truncated_mean = [&](double param) {
        const int lo = family == DegreeFamily::poisson ? k_min : std::max(k_min, 1);
        double mass = 0.0, first = 0.0;
        for (int k = lo; k <= delta; ++k) {
            const double w = family_weight(family, param, k);
            mass += w;
            first += k * w;
        }
        return first / mass;
    };

    // Mean is increasing in lambda, decreasing in alpha and gamma.
    const bool increasing = family == DegreeFamily::poisson;
    double lo = family == DegreeFamily::powerlaw ? 1.0 + 1e-9 : 1e-9;
    double hi = family == DegreeFamily::poisson ? 4.0 * target_mean + 50.0 : 60.0;
    const double mean_lo = truncated_mean(lo);
    const double mean_hi = truncated_mean(hi);
    const double reach_max = increasing ? mean_hi : mean_lo;
    const double reach_min = increasing ? mean_lo : mean_hi;
    if (target_mean > reach_max || target_mean < reach_min)
        throw std::domain_error("solve_param_for_mean: mean " + std::to_string(target_mean) +
                                " unreachable for " + family_name(family) + " with delta " +
                                std::to_string(delta));
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const bool below = truncated_mean(mid) < target_mean;
        if (below == increasing)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double molloy_reed_lambda(const PowerSeries& pmf) {
    double acc = 0.0;
    for (Eigen::Index k = 1; k <= pmf.max_degree(); ++k)
        acc += static_cast<double>(k) * static_cast<double>(k - 2) * pmf.coeff(k);
    return acc;
}

bool erdos_gallai(std::vector<int> degrees) {
    const auto n = static_cast<long long>(degrees.size());
    if (n == 0) return true;
    for (int d : degrees)
        if (d < 0) throw std::invalid_argument("erdos_gallai: negative degree");
    std::sort(degrees.begin(), degrees.end(), std::greater<>());

    long long total = 0;
    for (int d : degrees) total += d;
    if (total % 2 != 0) return false;

    // suffix[i] = sum of degrees[i..n-1]
    std::vector<long long> suffix(degrees.size() + 1, 0);
    for (long long i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + degrees[i];

    long long prefix = 0;
    for (long long k = 1; k <= n; ++k) {
        prefix += degrees[k - 1];
        // first index in [k, n) whose degree is < k; entries are descending
        const auto it = std::upper_bound(degrees.begin() + k, degrees.end(), k,
                                         [](long long value, int d) { return d < value; });
        const long long m = it - degrees.begin();
        const long long rhs = k * (k - 1) + k * (m - k) + suffix[m];
        if (prefix > rhs) return false;
    }
    return true;
}

DegreeSequence DegreeSequence::checked(std::vector<int> degrees) {
    if (degrees.size() < 1) throw std::invalid_argument("DegreeSequence: empty");
    if (!erdos_gallai(degrees))
        throw std::invalid_argument("DegreeSequence: sequence is not realizable");
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    DegreeSequence seq;
    seq.total_degree = std::accumulate(degrees.begin(), degrees.end(), 0LL);
    seq.max_degree = degrees.front();
    seq.degrees = std::move(degrees);
    return seq;
}

DegreeSequence sample_sequence(const DegreeDistribution& dist, int n, Rng& rng,
                               int restart_budget) {
    if (n < 2) throw std::invalid_argument("sample_sequence: need at least two vertices");
    if (restart_budget < 1) throw std::invalid_argument("sample_sequence: empty restart budget");

    // Inverse-CDF sampler over the support.
    const auto& p = dist.pmf.coeffs();
    std::vector<double> cumulative(p.size());
    double acc = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) cumulative[k] = (acc += p[k]);
    cumulative.back() = 1.0;
    const auto draw = [&]() -> int {
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), rng.uniform());
        return static_cast<int>(it - cumulative.begin());
    };

    constexpr int kParityRedraws = 64;
    std::vector<int> degrees(static_cast<std::size_t>(n));
    for (int attempt = 0; attempt < restart_budget; ++attempt) {
        long long total = 0;
        for (auto& d : degrees) total += (d = draw());
        int redraws = 0;
        while (total % 2 != 0 && redraws++ < kParityRedraws) {
            auto& entry = degrees[rng.uniform_below(static_cast<std::uint64_t>(n))];
            total -= entry;
            total += (entry = draw());
        }
        if (total % 2 != 0) continue;
        std::sort(degrees.begin(), degrees.end(), std::greater<>());
        if (!erdos_gallai(degrees)) continue;
        DegreeSequence seq;
        seq.degrees = degrees;
        seq.total_degree = total;
        seq.max_degree = degrees.front();
        return seq;
    }
    throw std::runtime_error(
        "sample_sequence: restart budget exhausted; the distribution cannot produce a "
        "realizable sequence at this size (e.g. forced odd total or max degree close to n)");
}

}  // namespace netperc
