// Test-only oracles, kept independent of the library's computation paths:
// plain-double enumeration over all 2^n outcomes, textbook incomplete-gamma
// tail probabilities, and simple goodness-of-fit helpers.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace oracle {

// Exhaustive enumeration of the constrained Bernoulli law. Configurations
// are bitmasks with bit i = Y_{i+1}.
struct Enumeration {
    double p_constraint = 0.0;
    std::map<std::uint32_t, double> conditional; // P(y | constraint)
    std::vector<double> marginals;               // P(Y_i = 1 | constraint)
};

inline Enumeration enumerate_conditional(const std::vector<double>& pi, int n1) {
    const int n = static_cast<int>(pi.size());
    if (n > 24) throw std::invalid_argument("enumeration oracle limited to n <= 24");
    Enumeration result;
    result.marginals.assign(pi.size(), 0.0);
    for (std::uint32_t config = 0; config < (1u << n); ++config) {
        if (__builtin_popcount(config) != n1) continue;
        double w = 1.0;
        for (int i = 0; i < n; ++i)
            w *= (config >> i & 1u) ? pi[static_cast<std::size_t>(i)]
                                    : 1.0 - pi[static_cast<std::size_t>(i)];
        result.p_constraint += w;
        result.conditional[config] = w;
    }
    for (auto& [config, w] : result.conditional) {
        w /= result.p_constraint;
        for (int i = 0; i < n; ++i)
            if (config >> i & 1u) result.marginals[static_cast<std::size_t>(i)] += w;
    }
    return result;
}

// Regularized incomplete gamma functions (series for x < a+1, continued
// fraction otherwise); upper tail Q(a, x).
inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
    if (x == 0.0) return 1.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // lower series
        double ap = a, sum = 1.0 / a, del = sum;
        for (int it = 0; it < 500; ++it) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    // upper continued fraction (modified Lentz)
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

inline double chi_square_upper_tail(double x, int dof) {
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * x);
}

struct GofResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

// Pearson goodness of fit of observed counts against expected cell
// probabilities (cells with expected probability 0 must have 0 observed).
inline GofResult chi_square_gof(const std::map<std::uint32_t, long>& observed,
                                const std::map<std::uint32_t, double>& expected_probs,
                                long n_draws) {
    GofResult result;
    for (const auto& [config, prob] : expected_probs) {
        const auto it = observed.find(config);
        const double obs = it == observed.end() ? 0.0 : static_cast<double>(it->second);
        const double exp = prob * static_cast<double>(n_draws);
        if (exp <= 0.0) {
            if (obs > 0) throw std::runtime_error("draw observed in a zero-probability cell");
            continue;
        }
        result.statistic += (obs - exp) * (obs - exp) / exp;
        ++result.dof;
    }
    for (const auto& [config, count] : observed) {
        (void)count;
        if (expected_probs.find(config) == expected_probs.end())
            throw std::runtime_error("draw observed outside the expected support");
    }
    result.dof -= 1;
    result.p_value = chi_square_upper_tail(result.statistic, result.dof);
    return result;
}

// Two-sample chi-square homogeneity test over a shared support.
inline GofResult chi_square_two_sample(const std::map<std::uint32_t, long>& a,
                                       const std::map<std::uint32_t, long>& b) {
    std::map<std::uint32_t, std::pair<long, long>> cells;
    long total_a = 0, total_b = 0;
    for (const auto& [k, v] : a) {
        cells[k].first += v;
        total_a += v;
    }
    for (const auto& [k, v] : b) {
        cells[k].second += v;
        total_b += v;
    }
    GofResult result;
    const double grand = static_cast<double>(total_a + total_b);
    for (const auto& [k, counts] : cells) {
        (void)k;
        const double pooled = static_cast<double>(counts.first + counts.second) / grand;
        const double ea = pooled * static_cast<double>(total_a);
        const double eb = pooled * static_cast<double>(total_b);
        if (ea <= 0.0 || eb <= 0.0) continue;
        const double da = static_cast<double>(counts.first) - ea;
        const double db = static_cast<double>(counts.second) - eb;
        result.statistic += da * da / ea + db * db / eb;
        ++result.dof;
    }
    result.dof -= 1;
    result.p_value = chi_square_upper_tail(result.statistic, result.dof);
    return result;
}

// Kolmogorov-Smirnov distance of a sample against Uniform(0, 1).
inline double ks_distance_uniform(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double hi = static_cast<double>(i + 1) / n - sample[i];
        const double lo = sample[i] - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

// Cochran-Armitage trend test computed directly from the 2x3 table in long
// double, coded apart from the library implementation.
struct TrendOracle {
    long double statistic = 0.0L;
    long double p_value = 1.0L;
};

inline TrendOracle trend_from_table(const double c[3], const double d[3]) {
    TrendOracle out;
    const long double w[3] = {0.0L, 1.0L, 2.0L};
    long double r = 0, s = 0, swm = 0, sw2m = 0, swc = 0;
    for (int g = 0; g < 3; ++g) {
        r += c[g];
        s += d[g];
        swm += w[g] * (c[g] + d[g]);
        sw2m += w[g] * w[g] * (c[g] + d[g]);
        swc += w[g] * c[g];
    }
    const long double n = r + s;
    const long double t = swc - (r / n) * swm;
    const long double var = (r * s / (n * n * (n - 1.0L))) * (n * sw2m - swm * swm);
    if (var <= 0.0L) return out;
    out.statistic = t * t / var;
    out.p_value = static_cast<long double>(
        std::erfc(std::sqrt(static_cast<double>(out.statistic) / 2.0)));
    return out;
}

// Mann-Whitney AUC by full pair enumeration with half-weight ties.
inline double auc_pair_count(const std::vector<double>& h1, const std::vector<double>& h0) {
    double acc = 0.0;
    for (const double a : h1)
        for (const double b : h0) acc += a > b ? 1.0 : (a == b ? 0.5 : 0.0);
    return acc / (static_cast<double>(h1.size()) * static_cast<double>(h0.size()));
}

} // namespace oracle
