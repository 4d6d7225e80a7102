#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phenosim/association.hpp"
#include "phenosim/disease_model.hpp"
#include "phenosim/genotype.hpp"
#include "phenosim/roc.hpp"
#include "phenosim/sampling.hpp"

namespace phenosim {

enum class Hypothesis { H0, H1 };

// Per-replicate stream seed: avalanche(master XOR (tag * 2^62 + replicate)),
// tag 0 for H0 and 1 for H1. Bit-exact across platforms so experiment
// outputs are reproducible anywhere.
std::uint64_t derive_seed(std::uint64_t master_seed, Hypothesis hypothesis,
                          std::uint64_t replicate_index);

enum class Algorithm { backward, mcmc, rejection };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

struct AlgorithmSettings {
    Algorithm name = Algorithm::backward;
    std::optional<std::int64_t> burn_in;      // mcmc; default 1e5 * n
    std::optional<std::int64_t> thinning;     // mcmc; default n
    std::optional<std::int64_t> max_attempts; // rejection; default budget from P(C)
};

struct GenotypeSourceConfig {
    // Either a file (path + format [+ metadata]) or a generated dataset
    // (toy_n, or a synthetic spec).
    std::optional<std::filesystem::path> path;
    GenotypeFormat format = GenotypeFormat::dense_csv;
    std::optional<std::filesystem::path> metadata;
    std::optional<Eigen::Index> toy_n;
    std::optional<SyntheticDatasetSpec> synthetic;
};

// Disease-model block with SNPs referenced by id; resolved against the
// loaded (filtered, replicated) matrix when the experiment runs.
struct ModelConfig {
    enum class Type { single_snp, two_locus, tabular, null_model };
    Type type = Type::null_model;

    std::string snp, snp1, snp2; // ids
    double f0 = 0.0, rr1 = 1.0, rr2 = 1.0;
    double beta = 0.0, eta = 0.0;
    double p0 = 0.5; // null model

    // tabular
    std::vector<std::string> snps;
    std::vector<std::pair<std::vector<std::int8_t>, double>> entries;
    std::optional<double> default_pi;

    bool missing_as_zero = false;
};

struct StatisticConfig {
    std::vector<double> rho; // base pairs; +infinity allowed
    std::vector<Locus> disease_loci;
};

struct ExperimentConfig {
    GenotypeSourceConfig genotypes;
    ModelConfig model;
    Eigen::Index n1 = 0;
    StatisticConfig statistic;
    int replicates = 1000; // per hypothesis
    AlgorithmSettings algorithm;
    std::uint64_t master_seed = 0;
    int replication_factor = 1;
    std::optional<double> maf_threshold;
    int threads = 0; // 0 = hardware concurrency
    bool keep_going = false;
};

// Strict JSON schema: unknown keys are rejected at every level.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
nlohmann::json experiment_config_to_json(const ExperimentConfig& config);

struct ReplicateRecord {
    Hypothesis hypothesis = Hypothesis::H0;
    int replicate = 0;
    double rho = 0.0;
    double s_rho = 0.0;
};

struct PowerReport {
    struct RhoResult {
        double rho = 0.0;
        RocSummary roc;
    };
    std::vector<RhoResult> per_rho;
    std::vector<ReplicateRecord> table; // ordered: hypothesis, replicate, rho
    struct Timings {
        double load_s = 0.0;
        double model_s = 0.0;
        double table_s = 0.0;
        double replicates_s = 0.0;
        double total_s = 0.0;
    } timings;
    nlohmann::json provenance;
    std::vector<std::string> failures; // populated under keep_going
};

// Builds pi and the backward table once, draws `replicates` constrained H1
// phenotype vectors plus the same number of H0 permutations, computes
// per-replicate trend p-values and S_rho for each radius, and summarises
// each radius with an ROC/AUC. Deterministic given master_seed regardless
// of thread count. The second overload skips loading and uses the given
// matrix (already filtered/replicated as desired).
PowerReport run_experiment(const ExperimentConfig& config);
PowerReport run_experiment(const ExperimentConfig& config, const GenotypeMatrix& genotypes);

// replicates.csv + summary.json (+ roc_<rho>.csv/svg when curves is set),
// all written atomically into out_dir.
void write_report(const PowerReport& report, const std::filesystem::path& out_dir,
                  bool curves = false);

// Sampler timing grid. Each cell times the generation of `replicates`
// phenotype vectors per algorithm on the toy design for (n, f0), n1 = n/2.
// Rejection cells whose expected work exceeds the work limit (in Bernoulli
// draws), or that exhaust the attempt budget, report NA with a note.
struct BenchCell {
    Eigen::Index n = 20;
    double f0 = 0.2;
};

struct BenchRow {
    Eigen::Index n = 0;
    double f0 = 0.0;
    double p_constraint = 0.0;
    std::optional<double> rejection_s;
    std::optional<double> mcmc_s;
    std::optional<double> backward_s;
    std::string rejection_note; // why NA, when NA
};

std::vector<BenchCell> default_bench_grid();

struct BenchOptions {
    int replicates = 100;
    bool run_rejection = true;
    bool run_mcmc = true;
    bool run_backward = true;
    double rejection_work_limit = 2e9; // expected Bernoulli draws
    std::optional<std::int64_t> mcmc_burn_in;
    std::uint64_t seed = 0;
};

std::vector<BenchRow> bench_samplers(const std::vector<BenchCell>& cells,
                                     const BenchOptions& options);

std::string format_bench_table(const std::vector<BenchRow>& rows);

} // namespace phenosim
