#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace phenosim {

// Genotypes are rare-allele counts in {0, 1, 2}; kMissingGenotype marks NA.
inline constexpr std::int8_t kMissingGenotype = -1;

using GenotypeValues = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;
using GenotypeColumn = Eigen::Matrix<std::int8_t, Eigen::Dynamic, 1>;

struct SnpInfo {
    std::string id;
    std::string chromosome;
    std::int64_t position_bp = 0;
    double maf = 0.0; // computed on load, cached
};

struct GenotypeMatrix {
    GenotypeValues values; // n individuals x p SNPs
    std::vector<std::string> individual_ids;
    std::vector<SnpInfo> snps;

    Eigen::Index n_individuals() const { return values.rows(); }
    Eigen::Index n_snps() const { return values.cols(); }
};

enum class GenotypeFormat { dense_csv, plink_raw };

// Minor allele frequency of one column: counted-allele frequency with
// missing entries excluded from the denominator, folded to [0, 0.5].
double compute_maf(const Eigen::Ref<const GenotypeColumn>& column);

// Loads and validates a genotype matrix. For dense-csv, SNP metadata comes
// from `metadata` (header "snp_id,chromosome,position_bp"); when absent, a
// sidecar "<stem>.meta.csv" next to the file is used if it exists, else
// chromosome "0" and positions 1..p are assumed (with a warning). SNPs are
// sorted by (chromosome, position) after load; duplicate positions warn.
GenotypeMatrix load_matrix(const std::filesystem::path& path, GenotypeFormat format,
                           const std::optional<std::filesystem::path>& metadata = std::nullopt,
                           std::vector<std::string>* warnings = nullptr);

// Canonical dense-csv writer (atomic: temp file + rename). Writes the
// metadata sidecar when a path is given.
void write_dense_csv(const GenotypeMatrix& gm, const std::filesystem::path& path,
                     const std::optional<std::filesystem::path>& metadata = std::nullopt);

// Retains SNPs whose MAF is strictly greater than the threshold.
GenotypeMatrix filter_maf(const GenotypeMatrix& gm, double threshold,
                          bool empty_is_error = false);

// Single-SNP validation dataset: 80% genotype 0, 15% genotype 1, 5%
// genotype 2, in that deterministic order. n must be a multiple of 20 so
// the counts are integers.
GenotypeMatrix make_toy_dataset(Eigen::Index n);

// Stacks k copies of the rows (copy-major), suffixing duplicated
// individual ids; SNP metadata is unchanged.
GenotypeMatrix replicate_individuals(const GenotypeMatrix& gm, int k);

// Deterministic synthetic GWA-scale dataset: p independent Hardy-Weinberg
// SNPs on an evenly spaced grid, with designated causal columns forced to
// the given MAFs. Used by the power-study examples.
struct SyntheticDatasetSpec {
    Eigen::Index n = 629;
    Eigen::Index p = 8000;
    std::uint64_t seed = 11;
    std::int64_t spacing_bp = 2500;
    std::string chromosome = "X";
    double maf_min = 0.05;
    double maf_max = 0.5;
    struct CausalSnp {
        Eigen::Index column;
        double maf;
    };
    std::vector<CausalSnp> causal = {{2000, 0.25}, {6000, 0.22}};
};

GenotypeMatrix make_synthetic_dataset(const SyntheticDatasetSpec& spec);

} // namespace phenosim
