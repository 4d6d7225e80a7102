#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "phenosim/genotype.hpp"
#include "phenosim/sampling.hpp"

namespace phenosim {

struct TrendTestResult {
    std::string snp_id;
    double statistic = 0.0; // chi-square, 1 df
    double p_value = 1.0;
    // Monomorphic column, zero variance, or no case/control contrast:
    // statistic 0, p 1, and this flag set.
    bool degenerate = false;
};

// Upper-tail chi-square probability with 1 degree of freedom.
double chi_square_1df_upper_tail(double statistic);

// Cochran-Armitage trend test with additive scores (0, 1, 2). Missing
// genotypes are dropped for this SNP (complete-case per marker).
TrendTestResult trend_test(const Eigen::Ref<const GenotypeColumn>& genotypes,
                           const PhenotypeVector& phenotypes,
                           const std::string& snp_id = "");

// Precomputed per-SNP index structure so a whole matrix of trend tests
// costs one pass over the non-zero/missing entries per replicate. Results
// are identical to calling trend_test column by column.
class TrendTestBattery {
public:
    explicit TrendTestBattery(const GenotypeMatrix& gm);

    // p-values for every SNP under the given phenotypes, in SNP order.
    void run(const PhenotypeVector& phenotypes, std::vector<double>& p_values) const;

    Eigen::Index n_snps() const { return static_cast<Eigen::Index>(snps_.size()); }

private:
    struct SnpCounts {
        std::vector<Eigen::Index> hets;     // genotype 1
        std::vector<Eigen::Index> homs;     // genotype 2
        std::vector<Eigen::Index> missing;  // NA
        double m1 = 0, m2 = 0, n = 0;       // non-missing genotype totals
    };
    std::vector<SnpCounts> snps_;
    Eigen::Index n_individuals_ = 0;
};

// A disease locus, for radius statistics.
struct Locus {
    std::string chromosome;
    std::int64_t position_bp = 0;
};

struct RadiusStatistic {
    double rho = 0.0;  // base pairs; +infinity selects every SNP
    double value = 0.0; // max of -log10 p over the selected SNPs
};

// Mask of SNPs whose distance to the nearest disease locus (same
// chromosome) is strictly less than rho.
std::vector<bool> radius_mask(const std::vector<SnpInfo>& snps,
                              const std::vector<Locus>& disease_loci, double rho);

RadiusStatistic s_rho(const std::vector<TrendTestResult>& results,
                      const std::vector<SnpInfo>& snps,
                      const std::vector<Locus>& disease_loci, double rho);

// Same statistic from a plain p-value vector (harness fast path).
double s_rho_from_pvalues(const std::vector<double>& p_values, const std::vector<bool>& mask);

} // namespace phenosim
