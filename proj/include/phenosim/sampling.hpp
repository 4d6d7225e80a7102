#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "phenosim/logspace.hpp"
#include "phenosim/random.hpp"

namespace phenosim {

// Per-individual case probabilities pi_i, each in [0, 1], length n >= 1.
using ProbabilityVector = Eigen::ArrayXd;

// Binary phenotype vector; every constrained sampler returns a vector whose
// entries sum to the requested case count.
using PhenotypeVector = Eigen::ArrayXi;

// Log-probability table, (n+1) x (n1+1), row-major so the recursions walk
// contiguous memory. Entries for impossible states hold kLogZero.
using LogTable = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Throws InvalidProbability / ConstraintInfeasible on malformed inputs.
void check_probabilities(const ProbabilityVector& pi);
void check_case_count(Eigen::Index n, Eigen::Index n1);

// Forward quantities F_i(m) = P(sum of the first i phenotypes equals m),
// truncated to m <= n1. F_n(n1) is the probability of the case-count
// constraint.
struct ForwardTable {
    LogTable logf;

    Eigen::Index n() const { return logf.rows() - 1; }
    Eigen::Index n1() const { return logf.cols() - 1; }
    double log_constraint_prob() const { return logf(n(), n1()); }
};

// Backward quantities B_i(m) = P(constraint | sum of first i phenotypes
// equals m). B_0(0) is the constraint probability; the table is immutable
// after construction and shareable across any number of concurrent
// sampling calls.
struct BackwardTable {
    LogTable logb;

    Eigen::Index n() const { return logb.rows() - 1; }
    Eigen::Index n1() const { return logb.cols() - 1; }
    double log_constraint_prob() const { return logb(0, 0); }
    bool feasible() const { return logb(0, 0) > kLogZero; }
};

ForwardTable forward_table(const ProbabilityVector& pi, Eigen::Index n1);
BackwardTable backward_table(const ProbabilityVector& pi, Eigen::Index n1);

// One exact draw from the Bernoulli(pi) product law conditioned on the case
// count; O(n) per draw once the table is built. Throws ConstraintInfeasible
// if the table has zero constraint probability.
PhenotypeVector sample_backward(const BackwardTable& table,
                                const ProbabilityVector& pi,
                                RandomStream& rng);

// Draw independent Bernoulli(pi) vectors until one hits the case count.
// Throws RejectionBudgetExceeded after max_attempts failures; the message
// reports the constraint probability so the caller sees why. The overload
// without a budget uses default_rejection_budget().
PhenotypeVector sample_rejection(const ProbabilityVector& pi, Eigen::Index n1,
                                 std::int64_t max_attempts, RandomStream& rng);
PhenotypeVector sample_rejection(const ProbabilityVector& pi, Eigen::Index n1,
                                 RandomStream& rng);

// max(1e6, 1000 / p_constraint), capped at 1e8 attempts.
std::int64_t default_rejection_budget(double p_constraint);

struct McmcSettings {
    std::int64_t burn_in = 1;
    std::int64_t thinning = 1;

    // burn_in = 1e5 * n, thinning = n (one sweep length between retained
    // samples).
    static McmcSettings defaults(Eigen::Index n);
};

struct McmcResult {
    std::vector<PhenotypeVector> samples;
    // Set when the constrained chain has a single reachable configuration
    // (n1 = 0, n1 = n, or everything pinned by degenerate probabilities);
    // the forced configuration is returned n_samples times.
    bool degenerate = false;
};

// Metropolis-Hastings swap chain targeting the constrained distribution.
// Individuals with pi in {0, 1} are pinned to their forced value and
// excluded from proposals. Acceptance probability is
// min(1, (1-pi_i) pi_j / (pi_i (1-pi_j))) for a case i / control j swap.
McmcResult sample_mcmc(const ProbabilityVector& pi, Eigen::Index n1,
                       const McmcSettings& settings, std::int64_t n_samples,
                       RandomStream& rng,
                       const std::optional<PhenotypeVector>& init = std::nullopt);

// Uniform draw over all C(n, n1) binary vectors with n1 ones; identical in
// law to backward sampling with any constant pi.
PhenotypeVector sample_permutation(Eigen::Index n, Eigen::Index n1, RandomStream& rng);

// P(Y_i = 1 | constraint) for every i; entries sum to n1.
Eigen::ArrayXd conditional_marginals(const ProbabilityVector& pi, Eigen::Index n1);
Eigen::ArrayXd conditional_marginals(const ForwardTable& fwd, const BackwardTable& bwd,
                                     const ProbabilityVector& pi);

// K-class affectation with fixed per-class counts. Row i of prob_matrix
// holds the class probabilities of individual i (rows sum to 1 within
// 1e-12); counts sum to n.
struct MultiClassConstraint {
    Eigen::VectorXi counts;     // K entries
    Eigen::ArrayXXd prob_matrix; // n x K
};

// One-vs-rest recursion: stage k assigns counts[k] individuals to class k
// among those still unassigned, with probabilities renormalized over the
// remaining classes, via backward sampling. Cost O(n * (K-1)) draws.
Eigen::ArrayXi sample_multiclass(const MultiClassConstraint& mc, RandomStream& rng);

} // namespace phenosim
