#include "dspd/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dspd/error.hpp"

namespace dspd {

namespace {

void check_tail_eps(double tail_eps) {
    if (!(tail_eps >= 0.0 && tail_eps <= 1e-6)) {
        throw ParameterError("tail_eps must lie in [0, 1e-6], got " + std::to_string(tail_eps));
    }
}

} // namespace

Pmf Pmf::from_weights(std::int64_t min_degree, std::vector<double> weights) {
    if (min_degree < 0) {
        throw ParameterError("pmf support must be non-negative, min_degree = " + std::to_string(min_degree));
    }
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw ParameterError("pmf weights must be finite and non-negative");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw ParameterError("pmf weights sum to zero");
    }
    auto first = std::find_if(weights.begin(), weights.end(), [](double w) { return w > 0.0; });
    auto last = std::find_if(weights.rbegin(), weights.rend(), [](double w) { return w > 0.0; }).base();
    min_degree += first - weights.begin();
    std::vector<double> probs(first, last);
    for (double& w : probs) {
        w /= total;
    }
    return Pmf(min_degree, std::move(probs));
}

Pmf Pmf::point_mass(std::int64_t degree) {
    if (degree < 0) {
        throw ParameterError("point mass at negative degree " + std::to_string(degree));
    }
    return Pmf(degree, {1.0});
}

double Pmf::operator()(std::int64_t k) const {
    if (k < min_degree_ || k > max_degree()) {
        return 0.0;
    }
    return probs_[static_cast<std::size_t>(k - min_degree_)];
}

double Pmf::generating(double t, std::int64_t exponent_offset) const {
    const std::int64_t lowest = min_degree_ + exponent_offset;
    if (lowest < 0) {
        throw DomainError("generating function evaluated with a negative exponent");
    }
    double acc = 0.0;
    for (auto it = probs_.rbegin(); it != probs_.rend(); ++it) {
        acc = acc * t + *it;
    }
    return lowest == 0 ? acc : acc * std::pow(t, static_cast<double>(lowest));
}

Pmf binomial_pmf(std::int64_t n, double p, double tail_eps) {
    if (n <= 0) {
        throw ParameterError("binomial_pmf requires n >= 1, got " + std::to_string(n));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError("binomial_pmf requires 0 <= p <= 1, got " + std::to_string(p));
    }
    if (!(tail_eps > 0.0 && tail_eps <= 1e-6)) {
        throw ParameterError("binomial_pmf requires tail_eps in (0, 1e-6]");
    }
    if (p == 0.0) {
        return Pmf::point_mass(0);
    }
    if (p == 1.0) {
        return Pmf::point_mass(n);
    }

    const double q = 1.0 - p;
    const double nd = static_cast<double>(n);
    const std::int64_t mode = std::min<std::int64_t>(n, static_cast<std::int64_t>(std::floor((nd + 1.0) * p)));
    const double log_mode = std::lgamma(nd + 1.0) - std::lgamma(mode + 1.0) - std::lgamma(nd - mode + 1.0) +
                            mode * std::log(p) + (nd - mode) * std::log1p(-p);
    const double p_mode = std::exp(log_mode);
    const double half_eps = 0.5 * tail_eps;

    // Terms relative to the mode. Successive ratios are monotone on each side
    // of the mode, so term * r / (1 - r) bounds the remaining tail.
    std::vector<double> right{1.0};
    for (std::int64_t k = mode; k < n;) {
        const double r = (nd - k) / (k + 1.0) * (p / q);
        const double term = right.back();
        if (r < 1.0 && p_mode * term * r / (1.0 - r) < half_eps) {
            break;
        }
        right.push_back(term * r);
        ++k;
    }
    std::vector<double> left;
    double term = 1.0;
    for (std::int64_t k = mode; k > 0;) {
        const double r = k / (nd - k + 1.0) * (q / p);
        if (r < 1.0 && p_mode * term * r / (1.0 - r) < half_eps) {
            break;
        }
        term *= r;
        left.push_back(term);
        --k;
    }

    std::vector<double> weights(left.rbegin(), left.rend());
    weights.insert(weights.end(), right.begin(), right.end());
    return Pmf::from_weights(mode - static_cast<std::int64_t>(left.size()), std::move(weights));
}

Pmf power_law_pmf(double gamma, std::int64_t k_min, std::int64_t k_max) {
    if (!(std::isfinite(gamma) && gamma >= 0.0)) {
        throw ParameterError("power_law_pmf requires a finite gamma >= 0");
    }
    if (k_min < 1) {
        throw ParameterError("power_law_pmf requires k_min >= 1");
    }
    if (k_min > k_max) {
        throw ParameterError("power_law_pmf requires k_min <= k_max");
    }
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        weights.push_back(std::pow(static_cast<double>(k), -gamma));
    }
    return Pmf::from_weights(k_min, std::move(weights));
}

Pmf degree_weighted(const Pmf& p) {
    if (p.max_degree() == 0) {
        throw DegenerateInputError("degree_weighted: point mass at degree 0 has no size-biased law");
    }
    const std::int64_t lo = std::max<std::int64_t>(p.min_degree(), 1);
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(p.max_degree() - lo + 1));
    for (std::int64_t k = lo; k <= p.max_degree(); ++k) {
        weights.push_back(static_cast<double>(k) * p(k));
    }
    return Pmf::from_weights(lo, std::move(weights));
}

Pmf trim_tails(const Pmf& p, double tail_eps) {
    check_tail_eps(tail_eps);
    const auto probs = p.probs();
    const double half = 0.5 * tail_eps;
    std::size_t lo = 0;
    std::size_t hi = probs.size();
    double dropped = 0.0;
    while (hi - lo > 1 && dropped + probs[lo] < half) {
        dropped += probs[lo++];
    }
    dropped = 0.0;
    while (hi - lo > 1 && dropped + probs[hi - 1] < half) {
        dropped += probs[--hi];
    }
    if (lo == 0 && hi == probs.size()) {
        return p;
    }
    return Pmf::from_weights(p.min_degree() + static_cast<std::int64_t>(lo),
                             std::vector<double>(probs.begin() + lo, probs.begin() + hi));
}

Pmf convolve(const Pmf& a, const Pmf& b, double tail_eps) {
    check_tail_eps(tail_eps);
    const auto pa = a.probs();
    const auto pb = b.probs();
    std::vector<double> out(pa.size() + pb.size() - 1, 0.0);
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const double ai = pa[i];
        double* dst = out.data() + i;
        for (std::size_t j = 0; j < pb.size(); ++j) {
            dst[j] += ai * pb[j];
        }
    }
    Pmf result = Pmf::from_weights(a.min_degree() + b.min_degree(), std::move(out));
    return tail_eps > 0.0 ? trim_tails(result, tail_eps) : result;
}

Pmf convolution_power(const Pmf& p, std::int64_t s, double tail_eps) {
    if (s < 1) {
        throw ParameterError("convolution_power requires s >= 1, got " + std::to_string(s));
    }
    check_tail_eps(tail_eps);
    Pmf base = p;
    Pmf result;
    bool have_result = false;
    while (true) {
        if (s & 1) {
            result = have_result ? convolve(result, base, tail_eps) : base;
            have_result = true;
        }
        s >>= 1;
        if (s == 0) {
            break;
        }
        base = convolve(base, base, tail_eps);
    }
    return result;
}

Pmf shift(const Pmf& p, std::int64_t delta) {
    if (p.min_degree() + delta < 0) {
        throw DomainError("shift by " + std::to_string(delta) + " puts mass on negative degrees");
    }
    return Pmf::from_weights(p.min_degree() + delta, std::vector<double>(p.probs().begin(), p.probs().end()));
}

Pmf shift_clamped(const Pmf& p, std::int64_t delta, double* clamped_mass) {
    if (clamped_mass != nullptr) {
        *clamped_mass = 0.0;
    }
    const std::int64_t new_min = p.min_degree() + delta;
    if (new_min >= 0) {
        return shift(p, delta);
    }
    if (p.max_degree() + delta < 0) {
        throw DegenerateInputError("shift by " + std::to_string(delta) + " leaves no mass on non-negative degrees");
    }
    const auto probs = p.probs();
    const auto below = static_cast<std::size_t>(-new_min);
    double moved = 0.0;
    for (std::size_t i = 0; i < below; ++i) {
        moved += probs[i];
    }
    std::vector<double> weights(probs.begin() + below, probs.end());
    weights.front() += moved;
    if (clamped_mass != nullptr) {
        *clamped_mass = moved;
    }
    return Pmf::from_weights(0, std::move(weights));
}

Pmf mixture(const Pmf& p1, const Pmf& p2, double w) {
    if (!(w >= 0.0 && w <= 1.0)) {
        throw ParameterError("mixture weight must lie in [0, 1]");
    }
    const std::int64_t lo = std::min(p1.min_degree(), p2.min_degree());
    const std::int64_t hi = std::max(p1.max_degree(), p2.max_degree());
    std::vector<double> weights(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::int64_t k = p1.min_degree(); k <= p1.max_degree(); ++k) {
        weights[static_cast<std::size_t>(k - lo)] += w * p1(k);
    }
    for (std::int64_t k = p2.min_degree(); k <= p2.max_degree(); ++k) {
        weights[static_cast<std::size_t>(k - lo)] += (1.0 - w) * p2(k);
    }
    return Pmf::from_weights(lo, std::move(weights));
}

double mean(const Pmf& p) {
    double acc = 0.0;
    std::int64_t k = p.min_degree();
    for (double v : p.probs()) {
        acc += static_cast<double>(k++) * v;
    }
    return acc;
}

double variance(const Pmf& p) {
    const double mu = mean(p);
    double acc = 0.0;
    std::int64_t k = p.min_degree();
    for (double v : p.probs()) {
        const double d = static_cast<double>(k++) - mu;
        acc += d * d * v;
    }
    return acc;
}

double cdf(const Pmf& p, std::int64_t k) {
    if (k < p.min_degree()) {
        return 0.0;
    }
    if (k >= p.max_degree()) {
        return 1.0;
    }
    double acc = 0.0;
    for (std::int64_t j = p.min_degree(); j <= k; ++j) {
        acc += p(j);
    }
    return acc;
}

} // namespace dspd
