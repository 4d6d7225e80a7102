#include "phenosim/disease_model.hpp"

#include <cmath>
#include <sstream>

#include "phenosim/errors.hpp"

namespace phenosim {

namespace {

void check_snp_index(Eigen::Index idx, const GenotypeMatrix& gm) {
    if (idx < 0 || idx >= gm.n_snps()) {
        std::ostringstream msg;
        msg << "model SNP index " << idx << " out of range (matrix has " << gm.n_snps()
            << " SNPs)";
        throw DimensionMismatch(msg.str());
    }
}

std::int8_t model_genotype(const GenotypeMatrix& gm, Eigen::Index i, Eigen::Index j,
                           MissingGenotypePolicy policy) {
    const std::int8_t g = gm.values(i, j);
    if (g != kMissingGenotype) return g;
    if (policy == MissingGenotypePolicy::treat_as_zero) return 0;
    std::ostringstream msg;
    msg << "missing genotype at model SNP " << gm.snps[static_cast<std::size_t>(j)].id
        << " for individual " << gm.individual_ids[static_cast<std::size_t>(i)];
    throw MissingModelGenotype(msg.str());
}

[[noreturn]] void throw_pi_out_of_range(double pi, const std::string& tuple) {
    std::ostringstream msg;
    msg << "computed case probability " << pi << " is outside [0, 1] for genotype " << tuple;
    throw PiOutOfRange(msg.str());
}

void check_pi(double pi, const std::string& tuple) {
    if (!(pi >= 0.0 && pi <= 1.0)) throw_pi_out_of_range(pi, tuple);
}

double apply_covariates(const TabularModel& model, double base, Eigen::Index i) {
    if (model.covariates.cols() == 0) return base;
    const double shift = model.covariates.row(i).dot(model.covariate_coef);
    if (model.link == TabularModel::Link::linear) return base + shift;
    // logistic link on the logit scale
    const double z = std::log(base / (1.0 - base)) + shift;
    return 1.0 / (1.0 + std::exp(-z));
}

} // namespace

void validate(const SingleSnpModel& model) {
    if (!(model.f0 > 0.0 && model.f0 <= 1.0))
        throw PiOutOfRange("baseline penetrance f0 must be in (0, 1]");
    if (model.rr1 < 0.0 || model.rr2 < 0.0)
        throw PiOutOfRange("relative risks must be >= 0");
    const double worst = model.f0 * std::max({1.0, model.rr1, model.rr2});
    if (worst > 1.0)
        throw PiOutOfRange("f0 * max(1, rr1, rr2) exceeds 1; penetrances are not probabilities");
}

void validate(const TwoLocusEpistaticModel& model) {
    if (!(model.f0 > 0.0 && model.f0 <= 1.0))
        throw PiOutOfRange("baseline penetrance f0 must be in (0, 1]");
    if (model.beta < 0.0)
        throw PiOutOfRange("additive effect beta must be >= 0");
    if (model.f0 * (1.0 + model.eta + 4.0 * model.beta) > 1.0)
        throw PiOutOfRange("f0 * (1 + eta + 4*beta) exceeds 1");
    if (model.f0 * (1.0 + model.eta) < 0.0)
        throw PiOutOfRange("f0 * (1 + eta) is negative");
}

void validate(const TabularModel& model) {
    if (model.snp_indices.empty())
        throw DimensionMismatch("tabular model must declare at least one SNP");
    for (const auto& [tuple, pi] : model.table) {
        if (tuple.size() != model.snp_indices.size())
            throw DimensionMismatch("tabular model entry arity does not match declared SNPs");
        if (!(pi >= 0.0 && pi <= 1.0))
            throw PiOutOfRange("tabular model pi values must be in [0, 1]");
    }
    if (model.default_pi && !(*model.default_pi >= 0.0 && *model.default_pi <= 1.0))
        throw PiOutOfRange("tabular model default pi must be in [0, 1]");
    if (model.covariates.cols() != model.covariate_coef.size())
        throw DimensionMismatch("covariate matrix and coefficient vector disagree");
}

ProbabilityVector evaluate_pi(const DiseaseModel& model, const GenotypeMatrix& gm,
                              MissingGenotypePolicy policy) {
    const Eigen::Index n = gm.n_individuals();
    ProbabilityVector pi(n);

    if (const auto* single = std::get_if<SingleSnpModel>(&model)) {
        check_snp_index(single->snp_index, gm);
        const double by_genotype[3] = {single->f0, single->f0 * single->rr1,
                                       single->f0 * single->rr2};
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::int8_t g = model_genotype(gm, i, single->snp_index, policy);
            const double v = by_genotype[g];
            check_pi(v, "(" + std::to_string(g) + ")");
            pi[i] = v;
        }
        return pi;
    }

    if (const auto* two = std::get_if<TwoLocusEpistaticModel>(&model)) {
        check_snp_index(two->snp1, gm);
        check_snp_index(two->snp2, gm);
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::int8_t x1 = model_genotype(gm, i, two->snp1, policy);
            const std::int8_t x2 = model_genotype(gm, i, two->snp2, policy);
            double v;
            if (x2 == 0)
                v = two->f0 * (1.0 + two->beta * x1);
            else if (x1 == 0)
                v = two->f0 * (1.0 + two->beta * x2);
            else
                v = two->f0 * (1.0 + two->eta + two->beta * (x1 + x2));
            check_pi(v, "(" + std::to_string(x1) + "," + std::to_string(x2) + ")");
            pi[i] = v;
        }
        return pi;
    }

    const auto& tab = std::get<TabularModel>(model);
    for (Eigen::Index j : tab.snp_indices) check_snp_index(j, gm);
    if (tab.covariates.cols() > 0 && tab.covariates.rows() != n)
        throw DimensionMismatch("covariate matrix rows do not match the number of individuals");
    if (tab.covariates.cols() != tab.covariate_coef.size())
        throw DimensionMismatch("covariate matrix and coefficient vector disagree");

    std::vector<std::int8_t> tuple(tab.snp_indices.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        std::string printed = "(";
        for (std::size_t k = 0; k < tab.snp_indices.size(); ++k) {
            tuple[k] = model_genotype(gm, i, tab.snp_indices[k], policy);
            printed += (k ? "," : "") + std::to_string(tuple[k]);
        }
        printed += ")";
        const auto it = tab.table.find(tuple);
        double base;
        if (it != tab.table.end())
            base = it->second;
        else if (tab.default_pi)
            base = *tab.default_pi;
        else
            throw MissingModelGenotype("tabular model has no entry (and no default) for genotype " +
                                       printed);
        const double v = apply_covariates(tab, base, i);
        check_pi(v, printed);
        pi[i] = v;
    }
    return pi;
}

ProbabilityVector null_model(Eigen::Index n, double p0) {
    if (n < 1) throw InvalidProbability("n must be >= 1");
    if (!(p0 > 0.0 && p0 < 1.0))
        throw InvalidProbability("null-model probability must be in (0, 1)");
    return ProbabilityVector::Constant(n, p0);
}

} // namespace phenosim
