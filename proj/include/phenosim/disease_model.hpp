#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phenosim/genotype.hpp"
#include "phenosim/sampling.hpp"

namespace phenosim {

// pi_i = f0 * (1, rr1, rr2)[X_i] at one SNP.
struct SingleSnpModel {
    Eigen::Index snp_index = 0;
    double f0 = 0.0;
    double rr1 = 1.0;
    double rr2 = 1.0;
};

// Two susceptibility SNPs with an additive effect beta and an epistatic
// effect eta that kicks in when both loci carry at least one rare allele:
//   pi = f0 * (1 + beta*x1)                 if x2 = 0
//   pi = f0 * (1 + beta*x2)                 if x1 = 0
//   pi = f0 * (1 + eta + beta*(x1 + x2))    if x1*x2 != 0
struct TwoLocusEpistaticModel {
    Eigen::Index snp1 = 0;
    Eigen::Index snp2 = 0;
    double f0 = 0.0;
    double beta = 0.0;
    double eta = 0.0;
};

// Explicit genotype-tuple -> pi lookup over a declared SNP subset, with
// optional per-individual covariate adjustment:
//   linear:   pi_i = table(tuple_i) + coef . cov_i
//   logistic: pi_i = sigmoid(logit(table(tuple_i)) + coef . cov_i)
struct TabularModel {
    std::vector<Eigen::Index> snp_indices;
    std::map<std::vector<std::int8_t>, double> table;
    std::optional<double> default_pi; // used when a tuple is absent from the table

    enum class Link { linear, logistic };
    Eigen::MatrixXd covariates;   // n x c, may be empty
    Eigen::VectorXd covariate_coef; // c
    Link link = Link::linear;
};

using DiseaseModel = std::variant<SingleSnpModel, TwoLocusEpistaticModel, TabularModel>;

// Parameter-level invariants (penetrances stay probabilities for every
// genotype combination). evaluate_pi re-checks the realized values anyway.
void validate(const SingleSnpModel& model);
void validate(const TwoLocusEpistaticModel& model);
void validate(const TabularModel& model);

enum class MissingGenotypePolicy {
    error_out,     // missing genotype at a model SNP is a hard error
    treat_as_zero, // count missing as 0 copies (explicit opt-in)
};

// Maps genotypes to per-individual case probabilities. Throws PiOutOfRange
// (with the offending genotype tuple) if any computed pi leaves [0, 1];
// values are never clamped.
ProbabilityVector evaluate_pi(const DiseaseModel& model, const GenotypeMatrix& genotypes,
                              MissingGenotypePolicy policy = MissingGenotypePolicy::error_out);

// Constant vector: the no-association null. Constrained sampling under it
// is equivalent in law to a phenotype permutation for any p0 in (0, 1).
ProbabilityVector null_model(Eigen::Index n, double p0);

} // namespace phenosim
