#include "dspd/estimator.hpp"

#include <cmath>
#include <optional>
#include <utility>

#include "shell_driver.hpp"

namespace dspd {

namespace {

// Neighbor-side conditional probabilities for arrival along a within-block
// and an across-block edge.
struct EdgeTypePair {
    double within = 1.0;
    double across = 1.0;
};

double base_ratio(std::int64_t n) { return 1.0 - 1.0 / static_cast<double>(n - 1); }

// Generating functions with the summand factored into a k_w part and a k_a
// part. The bounds k_w + k_a < n - 1 are dropped: the supports are far below n.
class FactoredSums {
public:
    FactoredSums(const Pmf& p_w, const Pmf& p_a, const Pmf& p_sw, const Pmf& p_sa)
        : p_w_(p_w), p_a_(p_a), p_sw_(p_sw), p_sa_(p_sa) {
        if (p_w.max_degree() > 0) {
            weighted_w_ = degree_weighted(p_w);
        }
        if (p_a.max_degree() > 0) {
            weighted_a_ = degree_weighted(p_a);
        }
    }

    EdgeTypePair neighbor(double tw, double ta) const {
        EdgeTypePair out;
        if (weighted_w_) {
            out.within = weighted_w_->generating(tw, -1) * p_a_.generating(ta);
        }
        if (weighted_a_) {
            out.across = p_w_.generating(tw) * weighted_a_->generating(ta, -1);
        }
        return out;
    }

    double outer(double tw, double ta) const { return p_sw_.generating(tw) * p_sa_.generating(ta); }

private:
    const Pmf& p_w_;
    const Pmf& p_a_;
    const Pmf& p_sw_;
    const Pmf& p_sa_;
    std::optional<Pmf> weighted_w_;
    std::optional<Pmf> weighted_a_;
};

// Direct double sums with the printed bounds (k_w + k_a < bound). Used as an
// oracle for the factored form.
class LiteralSums {
public:
    LiteralSums(const Pmf& p_w, const Pmf& p_a, const Pmf& p_sw, const Pmf& p_sa)
        : p_w_(p_w), p_a_(p_a), p_sw_(p_sw), p_sa_(p_sa) {}

    EdgeTypePair neighbor(double tw, double ta, std::int64_t bound, std::int64_t n) const {
        const double c_w = normalizer(p_w_, n);
        const double c_a = normalizer(p_a_, n);
        EdgeTypePair out;
        double within = 0.0;
        double across = 0.0;
        for (std::int64_t kw = p_w_.min_degree(); kw <= p_w_.max_degree(); ++kw) {
            for (std::int64_t ka = p_a_.min_degree(); ka <= p_a_.max_degree(); ++ka) {
                if (kw + ka >= bound) {
                    continue;
                }
                const double joint = p_w_(kw) * p_a_(ka);
                if (kw > 0) {
                    within += kw * joint / c_w * std::pow(tw, static_cast<double>(kw - 1)) *
                              std::pow(ta, static_cast<double>(ka));
                }
                if (ka > 0) {
                    across += ka * joint / c_a * std::pow(tw, static_cast<double>(kw)) *
                              std::pow(ta, static_cast<double>(ka - 1));
                }
            }
        }
        if (c_w > 0.0) {
            out.within = within;
        }
        if (c_a > 0.0) {
            out.across = across;
        }
        return out;
    }

    double outer(double tw, double ta, std::int64_t bound) const {
        double acc = 0.0;
        for (std::int64_t kw = p_sw_.min_degree(); kw <= p_sw_.max_degree(); ++kw) {
            for (std::int64_t ka = p_sa_.min_degree(); ka <= p_sa_.max_degree(); ++ka) {
                if (kw + ka < bound) {
                    acc += p_sw_(kw) * p_sa_(ka) * std::pow(tw, static_cast<double>(kw)) *
                           std::pow(ta, static_cast<double>(ka));
                }
            }
        }
        return acc;
    }

private:
    // sum over 0 < k < n - 1 of k p(k)
    static double normalizer(const Pmf& p, std::int64_t n) {
        double c = 0.0;
        for (std::int64_t k = std::max<std::int64_t>(1, p.min_degree()); k <= p.max_degree() && k < n - 1; ++k) {
            c += static_cast<double>(k) * p(k);
        }
        return c;
    }

    const Pmf& p_w_;
    const Pmf& p_a_;
    const Pmf& p_sw_;
    const Pmf& p_sa_;
};

} // namespace

SbmShellRecursion trace_dspd_sbm(const Pmf& p_w, const Pmf& p_a, const Pmf& p_sample_w, const Pmf& p_sample_a,
                                 std::int64_t n_contracted, const EstimatorOptions& options, SbmSummation summation) {
    SbmShellRecursion trace;
    trace.n_contracted = n_contracted;
    trace.c_within = mean(p_w);
    trace.c_across = mean(p_a);
    auto keep = [&](std::vector<EdgeTypePair> chain) {
        std::vector<double> within;
        std::vector<double> across;
        for (const auto& e : chain) {
            within.push_back(e.within);
            across.push_back(e.across);
        }
        trace.m_tilde_within.push_back(std::move(within));
        trace.m_tilde_across.push_back(std::move(across));
    };

    // Every base case uses (1 - 1/(n-1)); the supernode base case is read
    // with the same denominator as its two siblings.
    if (summation == SbmSummation::factored) {
        const FactoredSums sums(p_w, p_a, p_sample_w, p_sample_a);
        trace.distribution = detail::run_shells<EdgeTypePair>(
            n_contracted, options, trace.m,
            [&](std::int64_t n) {
                const double x = base_ratio(n);
                return sums.neighbor(x, x);
            },
            [&](const EdgeTypePair& t, std::int64_t) { return sums.neighbor(t.within, t.across); },
            [&](const EdgeTypePair& t, std::int64_t) { return sums.outer(t.within, t.across); },
            [&](std::int64_t n) {
                const double x = base_ratio(n);
                return sums.outer(x, x);
            },
            keep);
    } else {
        const LiteralSums sums(p_w, p_a, p_sample_w, p_sample_a);
        // Base cases sum over k_w + k_a < n, recursive levels over k_w + k_a < n - 1.
        trace.distribution = detail::run_shells<EdgeTypePair>(
            n_contracted, options, trace.m,
            [&](std::int64_t n) {
                const double x = base_ratio(n);
                return sums.neighbor(x, x, n, n);
            },
            [&](const EdgeTypePair& t, std::int64_t n) { return sums.neighbor(t.within, t.across, n - 1, n); },
            [&](const EdgeTypePair& t, std::int64_t n) { return sums.outer(t.within, t.across, n - 1); },
            [&](std::int64_t n) {
                const double x = base_ratio(n);
                return sums.outer(x, x, n);
            },
            keep);
    }
    return trace;
}

DistanceDistribution estimate_dspd_sbm(const Pmf& p_w, const Pmf& p_a, const Pmf& p_sample_w, const Pmf& p_sample_a,
                                       std::int64_t n_contracted, const EstimatorOptions& options,
                                       SbmSummation summation) {
    return trace_dspd_sbm(p_w, p_a, p_sample_w, p_sample_a, n_contracted, options, summation).distribution;
}

} // namespace dspd
