#include "phenosim/association.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "phenosim/errors.hpp"

namespace phenosim {

double chi_square_1df_upper_tail(double statistic) {
    if (statistic <= 0.0) return 1.0;
    // For 1 df, P(X > s) = erfc(sqrt(s/2)).
    return std::erfc(std::sqrt(statistic / 2.0));
}

namespace {

// Shared by trend_test and the battery: statistic from the case counts
// c_g, genotype totals m_g, case total R, over n non-missing individuals.
// Scores are w = (0, 1, 2).
void trend_from_counts(double c1, double c2, double m1, double m2, double n, double r,
                       double& statistic, double& p_value, bool& degenerate) {
    statistic = 0.0;
    p_value = 1.0;
    degenerate = true;
    const double s = n - r;
    if (n < 2 || r <= 0 || s <= 0) return;

    const double sum_w_m = m1 + 2.0 * m2;
    const double sum_w2_m = m1 + 4.0 * m2;
    const double var = r * s / (n * n * (n - 1.0)) * (n * sum_w2_m - sum_w_m * sum_w_m);
    if (var <= 0.0) return;

    const double t = (c1 + 2.0 * c2) - (r / n) * sum_w_m;
    statistic = t * t / var;
    p_value = chi_square_1df_upper_tail(statistic);
    degenerate = false;
}

} // namespace

TrendTestResult trend_test(const Eigen::Ref<const GenotypeColumn>& genotypes,
                           const PhenotypeVector& phenotypes, const std::string& snp_id) {
    if (genotypes.size() != phenotypes.size())
        throw DimensionMismatch("genotype column and phenotype vector lengths differ");

    double c1 = 0, c2 = 0, m1 = 0, m2 = 0, n = 0, r = 0;
    for (Eigen::Index i = 0; i < genotypes.size(); ++i) {
        const std::int8_t g = genotypes[i];
        if (g == kMissingGenotype) continue;
        n += 1;
        const bool is_case = phenotypes[i] != 0;
        if (is_case) r += 1;
        if (g == 1) {
            m1 += 1;
            if (is_case) c1 += 1;
        } else if (g == 2) {
            m2 += 1;
            if (is_case) c2 += 1;
        }
    }

    TrendTestResult result;
    result.snp_id = snp_id;
    trend_from_counts(c1, c2, m1, m2, n, r, result.statistic, result.p_value, result.degenerate);
    return result;
}

TrendTestBattery::TrendTestBattery(const GenotypeMatrix& gm) : n_individuals_(gm.n_individuals()) {
    snps_.resize(static_cast<std::size_t>(gm.n_snps()));
    for (Eigen::Index j = 0; j < gm.n_snps(); ++j) {
        SnpCounts& sc = snps_[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < gm.n_individuals(); ++i) {
            const std::int8_t g = gm.values(i, j);
            if (g == 1)
                sc.hets.push_back(i);
            else if (g == 2)
                sc.homs.push_back(i);
            else if (g == kMissingGenotype)
                sc.missing.push_back(i);
        }
        sc.m1 = static_cast<double>(sc.hets.size());
        sc.m2 = static_cast<double>(sc.homs.size());
        sc.n = static_cast<double>(gm.n_individuals() - static_cast<Eigen::Index>(sc.missing.size()));
    }
}

void TrendTestBattery::run(const PhenotypeVector& phenotypes, std::vector<double>& p_values) const {
    if (phenotypes.size() != n_individuals_)
        throw DimensionMismatch("phenotype vector length does not match the battery");
    const double total_cases = static_cast<double>(phenotypes.sum());

    p_values.resize(snps_.size());
    for (std::size_t j = 0; j < snps_.size(); ++j) {
        const SnpCounts& sc = snps_[j];
        double c1 = 0, c2 = 0, r_miss = 0;
        for (const Eigen::Index i : sc.hets) c1 += phenotypes[i];
        for (const Eigen::Index i : sc.homs) c2 += phenotypes[i];
        for (const Eigen::Index i : sc.missing) r_miss += phenotypes[i];

        double statistic, p;
        bool degenerate;
        trend_from_counts(c1, c2, sc.m1, sc.m2, sc.n, total_cases - r_miss, statistic, p,
                          degenerate);
        p_values[j] = p;
    }
}

std::vector<bool> radius_mask(const std::vector<SnpInfo>& snps,
                              const std::vector<Locus>& disease_loci, double rho) {
    std::vector<bool> mask(snps.size(), false);
    if (std::isinf(rho)) {
        mask.assign(snps.size(), true);
        return mask;
    }
    for (std::size_t j = 0; j < snps.size(); ++j) {
        for (const Locus& locus : disease_loci) {
            if (snps[j].chromosome != locus.chromosome) continue;
            const double dist = std::abs(static_cast<double>(snps[j].position_bp - locus.position_bp));
            if (dist < rho) {
                mask[j] = true;
                break;
            }
        }
    }
    return mask;
}

double s_rho_from_pvalues(const std::vector<double>& p_values, const std::vector<bool>& mask) {
    if (p_values.size() != mask.size())
        throw DimensionMismatch("p-value vector and radius mask lengths differ");
    bool any = false;
    double best = std::numeric_limits<double>::infinity(); // smallest selected p
    for (std::size_t j = 0; j < p_values.size(); ++j) {
        if (!mask[j]) continue;
        any = true;
        best = std::min(best, p_values[j]);
    }
    if (!any)
        throw EmptyRadius("no SNP lies within the requested radius of a disease locus");
    return -std::log10(best);
}

RadiusStatistic s_rho(const std::vector<TrendTestResult>& results,
                      const std::vector<SnpInfo>& snps,
                      const std::vector<Locus>& disease_loci, double rho) {
    if (results.size() != snps.size())
        throw DimensionMismatch("result list and SNP list lengths differ");
    std::vector<double> p_values(results.size());
    for (std::size_t j = 0; j < results.size(); ++j) p_values[j] = results[j].p_value;
    return RadiusStatistic{rho, s_rho_from_pvalues(p_values, radius_mask(snps, disease_loci, rho))};
}

} // namespace phenosim
