#include "phenosim/power.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "phenosim/errors.hpp"

namespace phenosim {

using nlohmann::json;

std::uint64_t derive_seed(std::uint64_t master_seed, Hypothesis hypothesis,
                          std::uint64_t replicate_index) {
    const std::uint64_t tag = hypothesis == Hypothesis::H1 ? 1 : 0;
    return avalanche64(master_seed ^ (tag * (std::uint64_t{1} << 62) + replicate_index));
}

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::backward: return "backward";
        case Algorithm::mcmc: return "mcmc";
        case Algorithm::rejection: return "rejection";
    }
    return "backward";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "backward") return Algorithm::backward;
    if (name == "mcmc") return Algorithm::mcmc;
    if (name == "rejection") return Algorithm::rejection;
    throw ConfigError("unknown algorithm '" + name + "' (expected backward, mcmc or rejection)");
}

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double parse_rho(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinity")
            return std::numeric_limits<double>::infinity();
        throw ConfigError("rho must be a positive number or \"inf\", got '" + s + "'");
    }
    const double rho = j.get<double>();
    if (!(rho > 0))
        throw ConfigError("rho must be positive");
    return rho;
}

json rho_to_json(double rho) {
    if (std::isinf(rho)) return json("inf");
    return json(rho);
}

GenotypeSourceConfig parse_genotype_source(const json& j) {
    reject_unknown_keys(j, {"path", "format", "metadata", "toy_n", "synthetic"}, "genotypes");
    GenotypeSourceConfig src;
    int forms = 0;
    if (j.contains("path")) {
        ++forms;
        src.path = std::filesystem::path(j.at("path").get<std::string>());
        const std::string fmt = j.value("format", std::string("dense-csv"));
        if (fmt == "dense-csv")
            src.format = GenotypeFormat::dense_csv;
        else if (fmt == "plink-raw")
            src.format = GenotypeFormat::plink_raw;
        else
            throw ConfigError("unknown genotype format '" + fmt + "'");
        if (j.contains("metadata"))
            src.metadata = std::filesystem::path(j.at("metadata").get<std::string>());
    }
    if (j.contains("toy_n")) {
        ++forms;
        src.toy_n = j.at("toy_n").get<Eigen::Index>();
    }
    if (j.contains("synthetic")) {
        ++forms;
        const json& sj = j.at("synthetic");
        reject_unknown_keys(sj,
                            {"n", "p", "seed", "spacing_bp", "chromosome", "maf_min", "maf_max",
                             "causal"},
                            "genotypes.synthetic");
        SyntheticDatasetSpec spec;
        spec.n = sj.value("n", spec.n);
        spec.p = sj.value("p", spec.p);
        spec.seed = sj.value("seed", spec.seed);
        spec.spacing_bp = sj.value("spacing_bp", spec.spacing_bp);
        spec.chromosome = sj.value("chromosome", spec.chromosome);
        spec.maf_min = sj.value("maf_min", spec.maf_min);
        spec.maf_max = sj.value("maf_max", spec.maf_max);
        if (sj.contains("causal")) {
            spec.causal.clear();
            for (const json& cj : sj.at("causal")) {
                reject_unknown_keys(cj, {"column", "maf"}, "genotypes.synthetic.causal[]");
                spec.causal.push_back({cj.at("column").get<Eigen::Index>(),
                                       cj.at("maf").get<double>()});
            }
        }
        src.synthetic = spec;
    }
    if (forms != 1)
        throw ConfigError("genotypes must specify exactly one of: path, toy_n, synthetic");
    return src;
}

ModelConfig parse_model(const json& j) {
    ModelConfig m;
    const std::string type = j.at("type").get<std::string>();
    if (type == "single-snp") {
        reject_unknown_keys(j, {"type", "snp", "f0", "rr1", "rr2", "missing_as_zero"}, "model");
        m.type = ModelConfig::Type::single_snp;
        m.snp = j.at("snp").get<std::string>();
        m.f0 = j.at("f0").get<double>();
        m.rr1 = j.at("rr1").get<double>();
        m.rr2 = j.at("rr2").get<double>();
    } else if (type == "two-locus") {
        reject_unknown_keys(j, {"type", "snp1", "snp2", "f0", "beta", "eta", "missing_as_zero"},
                            "model");
        m.type = ModelConfig::Type::two_locus;
        m.snp1 = j.at("snp1").get<std::string>();
        m.snp2 = j.at("snp2").get<std::string>();
        m.f0 = j.at("f0").get<double>();
        m.beta = j.at("beta").get<double>();
        m.eta = j.at("eta").get<double>();
    } else if (type == "tabular") {
        reject_unknown_keys(j, {"type", "snps", "entries", "default_pi", "missing_as_zero"},
                            "model");
        m.type = ModelConfig::Type::tabular;
        m.snps = j.at("snps").get<std::vector<std::string>>();
        for (const json& e : j.at("entries")) {
            reject_unknown_keys(e, {"genotypes", "pi"}, "model.entries[]");
            m.entries.emplace_back(e.at("genotypes").get<std::vector<std::int8_t>>(),
                                   e.at("pi").get<double>());
        }
        if (j.contains("default_pi")) m.default_pi = j.at("default_pi").get<double>();
    } else if (type == "null") {
        reject_unknown_keys(j, {"type", "p0"}, "model");
        m.type = ModelConfig::Type::null_model;
        m.p0 = j.at("p0").get<double>();
    } else {
        throw ConfigError("unknown model type '" + type + "'");
    }
    m.missing_as_zero = j.value("missing_as_zero", false);
    return m;
}

json model_to_json(const ModelConfig& m) {
    json j;
    switch (m.type) {
        case ModelConfig::Type::single_snp:
            j = {{"type", "single-snp"}, {"snp", m.snp}, {"f0", m.f0}, {"rr1", m.rr1},
                 {"rr2", m.rr2}};
            break;
        case ModelConfig::Type::two_locus:
            j = {{"type", "two-locus"}, {"snp1", m.snp1}, {"snp2", m.snp2}, {"f0", m.f0},
                 {"beta", m.beta}, {"eta", m.eta}};
            break;
        case ModelConfig::Type::tabular: {
            j = {{"type", "tabular"}, {"snps", m.snps}};
            json entries = json::array();
            for (const auto& [tuple, pi] : m.entries)
                entries.push_back({{"genotypes", tuple}, {"pi", pi}});
            j["entries"] = entries;
            if (m.default_pi) j["default_pi"] = *m.default_pi;
            break;
        }
        case ModelConfig::Type::null_model:
            j = {{"type", "null"}, {"p0", m.p0}};
            break;
    }
    if (m.missing_as_zero) j["missing_as_zero"] = true;
    return j;
}

} // namespace

ExperimentConfig parse_experiment_config(const json& j) {
    reject_unknown_keys(j,
                        {"genotypes", "model", "n1", "statistic", "replicates", "algorithm",
                         "master_seed", "replication_factor", "maf_threshold", "threads",
                         "keep_going"},
                        "config");
    ExperimentConfig config;
    config.genotypes = parse_genotype_source(j.at("genotypes"));
    config.model = parse_model(j.at("model"));
    config.n1 = j.at("n1").get<Eigen::Index>();

    const json& st = j.at("statistic");
    reject_unknown_keys(st, {"rho", "disease_loci"}, "statistic");
    for (const json& r : st.at("rho")) config.statistic.rho.push_back(parse_rho(r));
    if (config.statistic.rho.empty()) throw ConfigError("statistic.rho must be non-empty");
    for (const json& lj : st.at("disease_loci")) {
        reject_unknown_keys(lj, {"chromosome", "position_bp"}, "statistic.disease_loci[]");
        config.statistic.disease_loci.push_back(
            {lj.at("chromosome").get<std::string>(), lj.at("position_bp").get<std::int64_t>()});
    }
    if (config.statistic.disease_loci.empty())
        throw ConfigError("statistic.disease_loci must be non-empty");

    config.replicates = j.value("replicates", 1000);
    if (config.replicates < 2) throw ConfigError("replicates must be >= 2");

    if (j.contains("algorithm")) {
        const json& aj = j.at("algorithm");
        reject_unknown_keys(aj, {"name", "burn_in", "thinning", "max_attempts"}, "algorithm");
        config.algorithm.name = algorithm_from_string(aj.at("name").get<std::string>());
        if (aj.contains("burn_in")) config.algorithm.burn_in = aj.at("burn_in").get<std::int64_t>();
        if (aj.contains("thinning"))
            config.algorithm.thinning = aj.at("thinning").get<std::int64_t>();
        if (aj.contains("max_attempts"))
            config.algorithm.max_attempts = aj.at("max_attempts").get<std::int64_t>();
    }

    config.master_seed = j.value("master_seed", std::uint64_t{0});
    config.replication_factor = j.value("replication_factor", 1);
    if (config.replication_factor < 1) throw ConfigError("replication_factor must be >= 1");
    if (j.contains("maf_threshold")) config.maf_threshold = j.at("maf_threshold").get<double>();
    config.threads = j.value("threads", 0);
    config.keep_going = j.value("keep_going", false);
    return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_experiment_config(j);
}

json experiment_config_to_json(const ExperimentConfig& config) {
    json j;
    json src;
    if (config.genotypes.path) {
        src["path"] = config.genotypes.path->string();
        src["format"] =
            config.genotypes.format == GenotypeFormat::dense_csv ? "dense-csv" : "plink-raw";
        if (config.genotypes.metadata) src["metadata"] = config.genotypes.metadata->string();
    } else if (config.genotypes.toy_n) {
        src["toy_n"] = *config.genotypes.toy_n;
    } else if (config.genotypes.synthetic) {
        const SyntheticDatasetSpec& s = *config.genotypes.synthetic;
        json causal = json::array();
        for (const auto& c : s.causal) causal.push_back({{"column", c.column}, {"maf", c.maf}});
        src["synthetic"] = {{"n", s.n},
                            {"p", s.p},
                            {"seed", s.seed},
                            {"spacing_bp", s.spacing_bp},
                            {"chromosome", s.chromosome},
                            {"maf_min", s.maf_min},
                            {"maf_max", s.maf_max},
                            {"causal", causal}};
    }
    j["genotypes"] = src;
    j["model"] = model_to_json(config.model);
    j["n1"] = config.n1;
    json rhos = json::array();
    for (const double r : config.statistic.rho) rhos.push_back(rho_to_json(r));
    json loci = json::array();
    for (const Locus& l : config.statistic.disease_loci)
        loci.push_back({{"chromosome", l.chromosome}, {"position_bp", l.position_bp}});
    j["statistic"] = {{"rho", rhos}, {"disease_loci", loci}};
    j["replicates"] = config.replicates;
    json aj = {{"name", to_string(config.algorithm.name)}};
    if (config.algorithm.burn_in) aj["burn_in"] = *config.algorithm.burn_in;
    if (config.algorithm.thinning) aj["thinning"] = *config.algorithm.thinning;
    if (config.algorithm.max_attempts) aj["max_attempts"] = *config.algorithm.max_attempts;
    j["algorithm"] = aj;
    j["master_seed"] = config.master_seed;
    j["replication_factor"] = config.replication_factor;
    if (config.maf_threshold) j["maf_threshold"] = *config.maf_threshold;
    j["threads"] = config.threads;
    j["keep_going"] = config.keep_going;
    return j;
}

namespace {

Eigen::Index resolve_snp(const GenotypeMatrix& gm, const std::string& id) {
    for (Eigen::Index j = 0; j < gm.n_snps(); ++j)
        if (gm.snps[static_cast<std::size_t>(j)].id == id) return j;
    throw ConfigError("model references SNP '" + id + "' which is not in the (filtered) matrix");
}

DiseaseModel build_model(const ModelConfig& mc, const GenotypeMatrix& gm) {
    switch (mc.type) {
        case ModelConfig::Type::single_snp: {
            SingleSnpModel m;
            m.snp_index = resolve_snp(gm, mc.snp);
            m.f0 = mc.f0;
            m.rr1 = mc.rr1;
            m.rr2 = mc.rr2;
            validate(m);
            return m;
        }
        case ModelConfig::Type::two_locus: {
            TwoLocusEpistaticModel m;
            m.snp1 = resolve_snp(gm, mc.snp1);
            m.snp2 = resolve_snp(gm, mc.snp2);
            m.f0 = mc.f0;
            m.beta = mc.beta;
            m.eta = mc.eta;
            validate(m);
            return m;
        }
        case ModelConfig::Type::tabular: {
            TabularModel m;
            for (const std::string& id : mc.snps) m.snp_indices.push_back(resolve_snp(gm, id));
            for (const auto& [tuple, pi] : mc.entries) m.table[tuple] = pi;
            m.default_pi = mc.default_pi;
            validate(m);
            return m;
        }
        case ModelConfig::Type::null_model:
        default:
            // handled by the caller (no SNP resolution needed)
            throw ConfigError("null model should not reach build_model");
    }
}

GenotypeMatrix load_source(const GenotypeSourceConfig& src, std::vector<std::string>* warnings) {
    if (src.path) return load_matrix(*src.path, src.format, src.metadata, warnings);
    if (src.toy_n) return make_toy_dataset(*src.toy_n);
    if (src.synthetic) return make_synthetic_dataset(*src.synthetic);
    throw ConfigError("genotype source is empty");
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", s);
    return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string rho_label(double rho) {
    if (std::isinf(rho)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", rho);
    return buf;
}

} // namespace

PowerReport run_experiment(const ExperimentConfig& config) {
    std::vector<std::string> warnings;
    GenotypeMatrix gm = load_source(config.genotypes, &warnings);
    return run_experiment(config, gm);
}

PowerReport run_experiment(const ExperimentConfig& config, const GenotypeMatrix& genotypes) {
    PowerReport report;
    const double t_start = now_seconds();

    // Prepare the matrix: MAF filter, then replication.
    const GenotypeMatrix* gm = &genotypes;
    GenotypeMatrix filtered, replicated;
    if (config.maf_threshold) {
        filtered = filter_maf(*gm, *config.maf_threshold, true);
        gm = &filtered;
    }
    if (config.replication_factor > 1) {
        replicated = replicate_individuals(*gm, config.replication_factor);
        gm = &replicated;
    }
    const Eigen::Index n = gm->n_individuals();
    const Eigen::Index n1 = config.n1;
    if (n1 < 0 || n1 > n)
        throw ConstraintInfeasible("n1 = " + std::to_string(n1) + " exceeds n = " +
                                   std::to_string(n) + " after replication");
    report.timings.load_s = now_seconds() - t_start;

    // Case probabilities, once per experiment.
    const double t_model = now_seconds();
    const MissingGenotypePolicy policy = config.model.missing_as_zero
                                             ? MissingGenotypePolicy::treat_as_zero
                                             : MissingGenotypePolicy::error_out;
    ProbabilityVector pi;
    if (config.model.type == ModelConfig::Type::null_model)
        pi = null_model(n, config.model.p0);
    else
        pi = evaluate_pi(build_model(config.model, *gm), *gm, policy);
    report.timings.model_s = now_seconds() - t_model;

    // Backward table, once per experiment, shared by every replicate.
    const double t_table = now_seconds();
    BackwardTable table;
    if (config.algorithm.name != Algorithm::mcmc) {
        table = backward_table(pi, n1);
        if (!table.feasible())
            throw ConstraintInfeasible(
                "the disease model admits no configuration with the requested case count");
    }
    McmcSettings mcmc_settings = McmcSettings::defaults(n);
    if (config.algorithm.burn_in) mcmc_settings.burn_in = *config.algorithm.burn_in;
    if (config.algorithm.thinning) mcmc_settings.thinning = *config.algorithm.thinning;
    std::int64_t rejection_budget = 0;
    if (config.algorithm.name == Algorithm::rejection)
        rejection_budget = config.algorithm.max_attempts.value_or(
            default_rejection_budget(std::exp(table.log_constraint_prob())));
    report.timings.table_s = now_seconds() - t_table;

    // Radius masks and the per-SNP testing battery.
    const TrendTestBattery battery(*gm);
    std::vector<std::vector<bool>> masks;
    for (const double rho : config.statistic.rho)
        masks.push_back(radius_mask(gm->snps, config.statistic.disease_loci, rho));

    const double t_rep = now_seconds();
    const int n_rep = config.replicates;
    const std::size_t n_rho = config.statistic.rho.size();
    // s_values[h][r * n_rho + k]
    std::vector<std::vector<double>> s_values(2);
    s_values[0].assign(static_cast<std::size_t>(n_rep) * n_rho, 0.0);
    s_values[1].assign(static_cast<std::size_t>(n_rep) * n_rho, 0.0);
    std::vector<std::string> failures(static_cast<std::size_t>(n_rep) * 2);
    std::atomic<int> next_task{0};

    const auto worker = [&]() {
        std::vector<double> p_values;
        for (;;) {
            const int task = next_task.fetch_add(1);
            if (task >= 2 * n_rep) break;
            const Hypothesis hyp = task < n_rep ? Hypothesis::H1 : Hypothesis::H0;
            const int rep = task < n_rep ? task : task - n_rep;
            const std::size_t h = hyp == Hypothesis::H0 ? 0 : 1;
            try {
                RandomStream rng(derive_seed(config.master_seed, hyp,
                                             static_cast<std::uint64_t>(rep)));
                PhenotypeVector y;
                if (hyp == Hypothesis::H0) {
                    y = sample_permutation(n, n1, rng);
                } else {
                    switch (config.algorithm.name) {
                        case Algorithm::backward:
                            y = sample_backward(table, pi, rng);
                            break;
                        case Algorithm::rejection:
                            y = sample_rejection(pi, n1, rejection_budget, rng);
                            break;
                        case Algorithm::mcmc:
                            y = sample_mcmc(pi, n1, mcmc_settings, 1, rng).samples.front();
                            break;
                    }
                }
                if (y.sum() != n1)
                    throw ConstraintInfeasible("sampler returned a vector off the constraint");
                battery.run(y, p_values);
                for (std::size_t k = 0; k < n_rho; ++k)
                    s_values[h][static_cast<std::size_t>(rep) * n_rho + k] =
                        s_rho_from_pvalues(p_values, masks[k]);
            } catch (const std::exception& e) {
                failures[h * static_cast<std::size_t>(n_rep) + static_cast<std::size_t>(rep)] =
                    std::string(hyp == Hypothesis::H0 ? "H0" : "H1") + " replicate " +
                    std::to_string(rep) + ": " + e.what();
            }
        }
    };

    int n_threads = config.threads > 0 ? config.threads
                                       : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, 2 * n_rep));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    report.timings.replicates_s = now_seconds() - t_rep;

    for (const std::string& f : failures)
        if (!f.empty()) report.failures.push_back(f);
    if (!report.failures.empty() && !config.keep_going)
        throw PartialFailure("replicate failures (first: " + report.failures.front() + "); " +
                             std::to_string(report.failures.size()) +
                             " total; rerun with keep_going to collect the rest");

    const auto failed = [&](Hypothesis hyp, int rep) {
        const std::size_t h = hyp == Hypothesis::H0 ? 0 : 1;
        return !failures[h * static_cast<std::size_t>(n_rep) + static_cast<std::size_t>(rep)]
                    .empty();
    };

    // Replicate table, ordered by hypothesis, replicate, rho.
    for (const Hypothesis hyp : {Hypothesis::H0, Hypothesis::H1}) {
        const std::size_t h = hyp == Hypothesis::H0 ? 0 : 1;
        for (int rep = 0; rep < n_rep; ++rep) {
            if (failed(hyp, rep)) continue;
            for (std::size_t k = 0; k < n_rho; ++k)
                report.table.push_back({hyp, rep, config.statistic.rho[k],
                                        s_values[h][static_cast<std::size_t>(rep) * n_rho + k]});
        }
    }

    for (std::size_t k = 0; k < n_rho; ++k) {
        std::vector<double> h1, h0;
        for (int rep = 0; rep < n_rep; ++rep) {
            if (!failed(Hypothesis::H1, rep))
                h1.push_back(s_values[1][static_cast<std::size_t>(rep) * n_rho + k]);
            if (!failed(Hypothesis::H0, rep))
                h0.push_back(s_values[0][static_cast<std::size_t>(rep) * n_rho + k]);
        }
        // Under keep_going a fully failed arm leaves this rho without a
        // summary; the failure list explains why.
        if (config.keep_going && (h1.empty() || h0.empty())) continue;
        report.per_rho.push_back({config.statistic.rho[k], roc_auc(h1, h0)});
    }

    report.timings.total_s = now_seconds() - t_start;
    report.provenance = {{"config", experiment_config_to_json(config)},
                         {"master_seed", config.master_seed},
                         {"algorithm", to_string(config.algorithm.name)},
                         {"n", n},
                         {"p", gm->n_snps()},
                         {"n1", n1},
                         {"log10_p_constraint",
                          config.algorithm.name != Algorithm::mcmc
                              ? json(table.log_constraint_prob() / std::log(10.0))
                              : json()}};
    return report;
}

void write_report(const PowerReport& report, const std::filesystem::path& out_dir, bool curves) {
    std::filesystem::create_directories(out_dir);

    std::ostringstream csv;
    csv << "hypothesis,replicate,rho,s_rho\n";
    for (const ReplicateRecord& rec : report.table) {
        char value[40];
        std::snprintf(value, sizeof(value), "%.17g", rec.s_rho);
        csv << (rec.hypothesis == Hypothesis::H0 ? "H0" : "H1") << ',' << rec.replicate << ','
            << rho_label(rec.rho) << ',' << value << '\n';
    }
    atomic_write(out_dir / "replicates.csv", csv.str());

    json results = json::array();
    for (const auto& rr : report.per_rho) {
        results.push_back({{"rho", rho_to_json(rr.rho)},
                           {"auc", rr.roc.auc},
                           {"ci_low", rr.roc.ci_low},
                           {"ci_high", rr.roc.ci_high},
                           {"se", rr.roc.se},
                           {"band", rr.roc.band}});
    }
    json summary = {{"results", results},
                    {"timings",
                     {{"load_s", report.timings.load_s},
                      {"model_s", report.timings.model_s},
                      {"table_s", report.timings.table_s},
                      {"replicates_s", report.timings.replicates_s},
                      {"total_s", report.timings.total_s}}},
                    {"provenance", report.provenance},
                    {"failures", report.failures}};
    atomic_write(out_dir / "summary.json", summary.dump(2) + "\n");

    if (curves) {
        for (const auto& rr : report.per_rho) {
            const std::string label = rho_label(rr.rho);
            write_roc_csv(rr.roc, out_dir / ("roc_" + label + ".csv"));
            write_roc_svg(rr.roc, out_dir / ("roc_" + label + ".svg"), "rho = " + label);
        }
    }
}

std::vector<BenchCell> default_bench_grid() {
    return {{20, 0.2}, {20, 0.1}, {20, 0.07}, {20, 0.05},
            {40, 0.2}, {100, 0.2}, {100, 0.1}, {100, 0.01}};
}

std::vector<BenchRow> bench_samplers(const std::vector<BenchCell>& cells,
                                     const BenchOptions& options) {
    std::vector<BenchRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const BenchCell& cell = cells[c];
        const GenotypeMatrix gm = make_toy_dataset(cell.n);
        SingleSnpModel model;
        model.snp_index = 0;
        model.f0 = cell.f0;
        model.rr1 = 1.5;
        model.rr2 = 2.0;
        const ProbabilityVector pi = evaluate_pi(model, gm);
        const Eigen::Index n1 = cell.n / 2;

        BenchRow row;
        row.n = cell.n;
        row.f0 = cell.f0;

        const BackwardTable table = backward_table(pi, n1);
        row.p_constraint = std::exp(table.log_constraint_prob());

        if (options.run_backward) {
            RandomStream rng(avalanche64(options.seed ^ (3 * 1000 + c)));
            const double t0 = now_seconds();
            const BackwardTable timed_table = backward_table(pi, n1);
            for (int r = 0; r < options.replicates; ++r) sample_backward(timed_table, pi, rng);
            row.backward_s = now_seconds() - t0;
        }
        if (options.run_mcmc) {
            RandomStream rng(avalanche64(options.seed ^ (2 * 1000 + c)));
            McmcSettings settings = McmcSettings::defaults(cell.n);
            if (options.mcmc_burn_in) settings.burn_in = *options.mcmc_burn_in;
            const double t0 = now_seconds();
            sample_mcmc(pi, n1, settings, options.replicates, rng);
            row.mcmc_s = now_seconds() - t0;
        }
        if (options.run_rejection) {
            // Expected Bernoulli draws for the whole batch; skip cells that
            // cannot finish within the work limit (the paper's NA cells).
            const double expected_work = row.p_constraint > 0
                                             ? static_cast<double>(options.replicates) /
                                                   row.p_constraint *
                                                   static_cast<double>(cell.n)
                                             : std::numeric_limits<double>::infinity();
            if (expected_work > options.rejection_work_limit) {
                row.rejection_note = "NA: expected work exceeds budget";
            } else {
                RandomStream rng(avalanche64(options.seed ^ (1 * 1000 + c)));
                const std::int64_t budget = default_rejection_budget(row.p_constraint);
                const double t0 = now_seconds();
                try {
                    for (int r = 0; r < options.replicates; ++r)
                        sample_rejection(pi, n1, budget, rng);
                    row.rejection_s = now_seconds() - t0;
                } catch (const RejectionBudgetExceeded&) {
                    row.rejection_note = "NA: attempt budget exhausted";
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "     n      f0          P(C)   rejection        mcmc    backward\n";
    for (const BenchRow& row : rows) {
        char line[160];
        const std::string rej = row.rejection_s ? format_seconds(*row.rejection_s) + " s" : "NA";
        const std::string mcmc = row.mcmc_s ? format_seconds(*row.mcmc_s) + " s" : "NA";
        const std::string bwd = row.backward_s ? format_seconds(*row.backward_s) + " s" : "NA";
        std::snprintf(line, sizeof(line), "%6lld  %6g  %12.4g  %10s  %10s  %10s\n",
                      static_cast<long long>(row.n), row.f0, row.p_constraint, rej.c_str(),
                      mcmc.c_str(), bwd.c_str());
        out << line;
    }
    return out.str();
}

} // namespace phenosim
