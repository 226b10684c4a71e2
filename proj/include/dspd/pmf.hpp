#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dspd {

/// Default two-sided tail mass discarded when truncating a pmf.
inline constexpr double kDefaultTailEps = 1e-12;

/**
 * Finite probability mass function on non-negative integers.
 *
 * Stored densely as probs[i] = P(K = min_degree + i). Every value handed out
 * is normalized, non-negative and has a tight support: the first and last
 * stored entries are strictly positive.
 */
class Pmf {
public:
    /// Point mass at zero.
    Pmf() = default;

    /// Normalizes `weights` and trims zero entries at both ends. Throws
    /// ParameterError on negative or non-finite weights, a zero total, or a
    /// negative min_degree.
    static Pmf from_weights(std::int64_t min_degree, std::vector<double> weights);

    static Pmf point_mass(std::int64_t degree);

    std::int64_t min_degree() const { return min_degree_; }
    std::int64_t max_degree() const { return min_degree_ + static_cast<std::int64_t>(probs_.size()) - 1; }
    std::size_t size() const { return probs_.size(); }
    std::span<const double> probs() const { return probs_; }
    bool is_point_mass() const { return probs_.size() == 1; }

    /// P(K = k); zero outside the support.
    double operator()(std::int64_t k) const;

    /// Evaluates sum_k p(k) t^(k + exponent_offset) by Horner's rule. The
    /// smallest exponent min_degree + exponent_offset must be non-negative.
    double generating(double t, std::int64_t exponent_offset = 0) const;

private:
    Pmf(std::int64_t min_degree, std::vector<double> probs) : min_degree_(min_degree), probs_(std::move(probs)) {}

    std::int64_t min_degree_ = 0;
    std::vector<double> probs_{1.0};
};

/// Binomial(n, p), truncated so that the discarded tail mass is below
/// tail_eps and renormalized. Cost is proportional to the retained support,
/// not to n. n = 0 is rejected; use Pmf::point_mass(0) for an empty law.
Pmf binomial_pmf(std::int64_t n, double p, double tail_eps = kDefaultTailEps);

/// p(k) proportional to k^-gamma on [k_min, k_max].
Pmf power_law_pmf(double gamma, std::int64_t k_min, std::int64_t k_max);

/// Size-biased law k p(k) / c: the degree of a node reached along an edge.
Pmf degree_weighted(const Pmf& p);

/// Drops up to tail_eps/2 of mass from each end of the support, then renormalizes.
Pmf trim_tails(const Pmf& p, double tail_eps);

/// Law of the sum of independent draws from a and b (dense product), trimmed.
Pmf convolve(const Pmf& a, const Pmf& b, double tail_eps = kDefaultTailEps);

/// Law of the sum of s iid draws from p, by repeated squaring with trimming
/// after every product.
Pmf convolution_power(const Pmf& p, std::int64_t s, double tail_eps = kDefaultTailEps);

/// Relabels the support: result(k) = p(k - delta). Throws DomainError if any
/// mass would land on a negative degree.
Pmf shift(const Pmf& p, std::int64_t delta);

/// Like shift, but mass that would land below zero is moved to degree 0.
/// The moved mass is returned through `clamped_mass` when non-null.
Pmf shift_clamped(const Pmf& p, std::int64_t delta, double* clamped_mass = nullptr);

/// w p1 + (1 - w) p2.
Pmf mixture(const Pmf& p1, const Pmf& p2, double w);

double mean(const Pmf& p);
double variance(const Pmf& p);

/// CDF evaluated at k.
double cdf(const Pmf& p, std::int64_t k);

} // namespace dspd
