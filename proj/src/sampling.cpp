#include "phenosim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "phenosim/errors.hpp"

namespace phenosim {

void check_probabilities(const ProbabilityVector& pi) {
    if (pi.size() < 1)
        throw InvalidProbability("probability vector must have length >= 1");
    for (Eigen::Index i = 0; i < pi.size(); ++i) {
        const double p = pi[i];
        if (!(p >= 0.0 && p <= 1.0)) {
            std::ostringstream msg;
            msg << "pi[" << i << "] = " << p << " is not in [0, 1]";
            throw InvalidProbability(msg.str());
        }
    }
}

void check_case_count(Eigen::Index n, Eigen::Index n1) {
    if (n1 < 0 || n1 > n) {
        std::ostringstream msg;
        msg << "case count n1 = " << n1 << " must satisfy 0 <= n1 <= n = " << n;
        throw ConstraintInfeasible(msg.str());
    }
}

ForwardTable forward_table(const ProbabilityVector& pi, Eigen::Index n1) {
    check_probabilities(pi);
    const Eigen::Index n = pi.size();
    check_case_count(n, n1);

    LogTable logf(n + 1, n1 + 1);
    logf.setConstant(kLogZero);
    logf(0, 0) = 0.0;
    for (Eigen::Index i = 1; i <= n; ++i) {
        const double lp = safe_log(pi[i - 1]);
        const double lq = safe_log1m(pi[i - 1]);
        const Eigen::Index m_hi = std::min(i, n1);
        const double* prev = logf.row(i - 1).data();
        double* cur = logf.row(i).data();
        cur[0] = prev[0] + lq;
        for (Eigen::Index m = 1; m <= m_hi; ++m)
            cur[m] = log_add(prev[m] + lq, prev[m - 1] + lp);
    }
    return ForwardTable{std::move(logf)};
}

BackwardTable backward_table(const ProbabilityVector& pi, Eigen::Index n1) {
    check_probabilities(pi);
    const Eigen::Index n = pi.size();
    check_case_count(n, n1);

    LogTable logb(n + 1, n1 + 1);
    logb.row(n).setConstant(kLogZero);
    logb(n, n1) = 0.0;
    for (Eigen::Index i = n; i >= 1; --i) {
        const double lp = safe_log(pi[i - 1]);
        const double lq = safe_log1m(pi[i - 1]);
        const double* next = logb.row(i).data();
        double* cur = logb.row(i - 1).data();
        for (Eigen::Index m = 0; m < n1; ++m)
            cur[m] = log_add(next[m + 1] + lp, next[m] + lq);
        cur[n1] = next[n1] + lq;
    }
    return BackwardTable{std::move(logb)};
}

PhenotypeVector sample_backward(const BackwardTable& table,
                                const ProbabilityVector& pi,
                                RandomStream& rng) {
    const Eigen::Index n = table.n();
    const Eigen::Index n1 = table.n1();
    if (pi.size() != n)
        throw DimensionMismatch("probability vector length does not match table");
    if (!table.feasible())
        throw ConstraintInfeasible(
            "constraint has probability zero: no configuration with the requested "
            "case count is reachable under these probabilities");

    PhenotypeVector y = PhenotypeVector::Zero(n);
    Eigen::Index m = 0;
    for (Eigen::Index i = 1; i <= n; ++i) {
        // P(Y_i = 1 | m cases so far, constraint) = pi_i B_i(m+1) / B_{i-1}(m).
        // When one branch is infeasible the log-space ratio is exactly 0 or 1,
        // so the walk can never leave the feasible band.
        double p1 = 0.0;
        if (m < n1)
            p1 = std::exp(safe_log(pi[i - 1]) + table.logb(i, m + 1) - table.logb(i - 1, m));
        if (rng.next_double() < p1) {
            y[i - 1] = 1;
            ++m;
        }
    }
    if (m != n1)
        throw ConstraintInfeasible("backward walk ended off the constraint; table is inconsistent");
    return y;
}

std::int64_t default_rejection_budget(double p_constraint) {
    double budget = 1e6;
    if (p_constraint > 0.0)
        budget = std::max(budget, 1000.0 / p_constraint);
    else
        budget = 1e8;
    return std::llround(std::min(budget, 1e8));
}

PhenotypeVector sample_rejection(const ProbabilityVector& pi, Eigen::Index n1,
                                 std::int64_t max_attempts, RandomStream& rng) {
    check_probabilities(pi);
    const Eigen::Index n = pi.size();
    check_case_count(n, n1);
    if (max_attempts < 1)
        throw InvalidProbability("max_attempts must be >= 1");

    PhenotypeVector y(n);
    for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
        Eigen::Index count = 0;
        bool viable = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            const int b = rng.bernoulli(pi[i]) ? 1 : 0;
            y[i] = b;
            count += b;
            // Abandon draws that can no longer hit the target count; rejected
            // either way, so the accepted-sample law is unchanged.
            if (count > n1 || count + (n - 1 - i) < n1) {
                viable = false;
                break;
            }
        }
        if (viable && count == n1) return y;
    }

    const double pc = std::exp(forward_table(pi, n1).log_constraint_prob());
    std::ostringstream msg;
    msg << "no accepted configuration after " << max_attempts
        << " attempts; P(constraint) = " << pc << " (expected attempts per sample ~ "
        << (pc > 0 ? 1.0 / pc : std::numeric_limits<double>::infinity()) << ")";
    throw RejectionBudgetExceeded(msg.str());
}

PhenotypeVector sample_rejection(const ProbabilityVector& pi, Eigen::Index n1,
                                 RandomStream& rng) {
    const double pc = std::exp(forward_table(pi, n1).log_constraint_prob());
    return sample_rejection(pi, n1, default_rejection_budget(pc), rng);
}

McmcSettings McmcSettings::defaults(Eigen::Index n) {
    McmcSettings s;
    s.burn_in = 100000 * static_cast<std::int64_t>(n);
    s.thinning = static_cast<std::int64_t>(n);
    return s;
}

McmcResult sample_mcmc(const ProbabilityVector& pi, Eigen::Index n1,
                       const McmcSettings& settings, std::int64_t n_samples,
                       RandomStream& rng,
                       const std::optional<PhenotypeVector>& init) {
    check_probabilities(pi);
    const Eigen::Index n = pi.size();
    check_case_count(n, n1);
    if (settings.burn_in < 1 || settings.thinning < 1)
        throw InvalidProbability("burn_in and thinning must be >= 1");
    if (n_samples < 1)
        throw InvalidProbability("n_samples must be >= 1");

    // Pin individuals with degenerate probabilities; the chain proposes
    // swaps only among the rest.
    std::vector<Eigen::Index> free_idx;
    Eigen::Index forced_ones = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (pi[i] == 1.0)
            ++forced_ones;
        else if (pi[i] > 0.0)
            free_idx.push_back(i);
    }
    const Eigen::Index free_n1 = n1 - forced_ones;
    if (free_n1 < 0 || free_n1 > static_cast<Eigen::Index>(free_idx.size()))
        throw ConstraintInfeasible(
            "no valid initial configuration: degenerate probabilities force more or "
            "fewer cases than the requested count");

    PhenotypeVector base = PhenotypeVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (pi[i] == 1.0) base[i] = 1;

    std::vector<Eigen::Index> ones, zeros;
    if (init.has_value()) {
        const PhenotypeVector& y0 = *init;
        if (y0.size() != n || y0.sum() != n1)
            throw ConstraintInfeasible("supplied init does not satisfy the case-count constraint");
        for (Eigen::Index i = 0; i < n; ++i) {
            if (pi[i] == 1.0 && y0[i] != 1)
                throw ConstraintInfeasible("supplied init contradicts pi_i = 1");
            if (pi[i] == 0.0 && y0[i] != 0)
                throw ConstraintInfeasible("supplied init contradicts pi_i = 0");
        }
        for (Eigen::Index i : free_idx)
            (y0[i] ? ones : zeros).push_back(i);
    } else {
        for (std::size_t k = 0; k < free_idx.size(); ++k)
            (static_cast<Eigen::Index>(k) < free_n1 ? ones : zeros).push_back(free_idx[k]);
    }

    McmcResult result;
    if (ones.empty() || zeros.empty()) {
        // Single reachable configuration: nothing to mix.
        result.degenerate = true;
        PhenotypeVector y = base;
        for (Eigen::Index i : ones) y[i] = 1;
        result.samples.assign(static_cast<std::size_t>(n_samples), y);
        return result;
    }

    const auto step = [&]() {
        const auto a = static_cast<std::size_t>(rng.next_below(ones.size()));
        const auto b = static_cast<std::size_t>(rng.next_below(zeros.size()));
        const Eigen::Index i = ones[a];
        const Eigen::Index j = zeros[b];
        const double alpha = ((1.0 - pi[i]) * pi[j]) / (pi[i] * (1.0 - pi[j]));
        if (rng.next_double() < alpha) {
            ones[a] = j;
            zeros[b] = i;
        }
    };

    for (std::int64_t t = 0; t < settings.burn_in; ++t) step();
    result.samples.reserve(static_cast<std::size_t>(n_samples));
    for (std::int64_t s = 0; s < n_samples; ++s) {
        for (std::int64_t t = 0; t < settings.thinning; ++t) step();
        PhenotypeVector y = base;
        for (Eigen::Index i : ones) y[i] = 1;
        result.samples.push_back(std::move(y));
    }
    return result;
}

PhenotypeVector sample_permutation(Eigen::Index n, Eigen::Index n1, RandomStream& rng) {
    if (n < 1) throw InvalidProbability("n must be >= 1");
    check_case_count(n, n1);

    // Partial Fisher-Yates: the first n1 slots end up a uniform n1-subset.
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    PhenotypeVector y = PhenotypeVector::Zero(n);
    for (Eigen::Index t = 0; t < n1; ++t) {
        const auto j = t + static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n - t)));
        std::swap(idx[static_cast<std::size_t>(t)], idx[static_cast<std::size_t>(j)]);
        y[idx[static_cast<std::size_t>(t)]] = 1;
    }
    return y;
}

Eigen::ArrayXd conditional_marginals(const ForwardTable& fwd, const BackwardTable& bwd,
                                     const ProbabilityVector& pi) {
    const Eigen::Index n = fwd.n();
    const Eigen::Index n1 = fwd.n1();
    if (bwd.n() != n || bwd.n1() != n1 || pi.size() != n)
        throw DimensionMismatch("forward/backward tables and pi disagree on dimensions");
    const double log_pc = bwd.log_constraint_prob();
    if (log_pc == kLogZero)
        throw ConstraintInfeasible("constraint has probability zero; marginals undefined");

    // P(Y_i = 1 | C) = sum_m F_{i-1}(m) pi_i B_i(m+1) / P(C).
    Eigen::ArrayXd marg(n);
    for (Eigen::Index i = 1; i <= n; ++i) {
        if (pi[i - 1] == 0.0) {
            marg[i - 1] = 0.0;
            continue;
        }
        double acc = kLogZero;
        for (Eigen::Index m = 0; m < n1; ++m)
            acc = log_add(acc, fwd.logf(i - 1, m) + bwd.logb(i, m + 1));
        marg[i - 1] = std::exp(safe_log(pi[i - 1]) + acc - log_pc);
    }
    return marg;
}

Eigen::ArrayXd conditional_marginals(const ProbabilityVector& pi, Eigen::Index n1) {
    const ForwardTable fwd = forward_table(pi, n1);
    const BackwardTable bwd = backward_table(pi, n1);
    return conditional_marginals(fwd, bwd, pi);
}

Eigen::ArrayXi sample_multiclass(const MultiClassConstraint& mc, RandomStream& rng) {
    const Eigen::Index n = mc.prob_matrix.rows();
    const Eigen::Index k_classes = mc.prob_matrix.cols();
    if (mc.counts.size() != k_classes)
        throw DimensionMismatch("counts length does not match the number of classes");
    if (k_classes < 2)
        throw InvalidProbability("need at least two classes");
    if (mc.counts.minCoeff() < 0 || mc.counts.sum() != n)
        throw ConstraintInfeasible("class counts must be non-negative and sum to n");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (mc.prob_matrix.row(i).minCoeff() < 0.0)
            throw InvalidProbability("class probabilities must be non-negative");
        if (std::abs(mc.prob_matrix.row(i).sum() - 1.0) > 1e-12)
            throw InvalidProbability("every row of prob_matrix must sum to 1 within 1e-12");
    }

    Eigen::ArrayXi labels = Eigen::ArrayXi::Constant(n, static_cast<int>(k_classes - 1));
    std::vector<Eigen::Index> remaining(static_cast<std::size_t>(n));
    std::iota(remaining.begin(), remaining.end(), Eigen::Index{0});
    // tail[i] = sum of class probabilities not yet consumed by earlier stages.
    Eigen::ArrayXd tail = Eigen::ArrayXd::Ones(n);

    for (Eigen::Index k = 0; k + 1 < k_classes; ++k) {
        const auto m = static_cast<Eigen::Index>(remaining.size());
        ProbabilityVector stage_pi(m);
        for (Eigen::Index r = 0; r < m; ++r) {
            const Eigen::Index i = remaining[static_cast<std::size_t>(r)];
            if (tail[i] <= 0.0)
                throw ConstraintInfeasible("individual has zero probability over the remaining classes");
            stage_pi[r] = std::min(1.0, mc.prob_matrix(i, k) / tail[i]);
        }
        const BackwardTable table = backward_table(stage_pi, mc.counts[k]);
        const PhenotypeVector y = sample_backward(table, stage_pi, rng);

        std::vector<Eigen::Index> still;
        still.reserve(remaining.size());
        for (Eigen::Index r = 0; r < m; ++r) {
            const Eigen::Index i = remaining[static_cast<std::size_t>(r)];
            if (y[r]) {
                labels[i] = static_cast<int>(k);
            } else {
                tail[i] -= mc.prob_matrix(i, k);
                still.push_back(i);
            }
        }
        remaining.swap(still);
    }
    if (static_cast<Eigen::Index>(remaining.size()) != mc.counts[k_classes - 1])
        throw ConstraintInfeasible("multi-class recursion left an inconsistent remainder");
    return labels;
}

} // namespace phenosim
