// Command-line front end: sample | prob | marginals | power | bench | toygen.
// Exit codes: 0 success, 1 data error (error name on stderr), 2 usage error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "phenosim/association.hpp"
#include "phenosim/disease_model.hpp"
#include "phenosim/errors.hpp"
#include "phenosim/genotype.hpp"
#include "phenosim/power.hpp"
#include "phenosim/roc.hpp"
#include "phenosim/sampling.hpp"

namespace {

using phenosim::ProbabilityVector;

// Inline pi syntax "v1xk1,v2xk2,..." (e.g. 0.2x16,0.3x3,0.4x1), or a file
// with one probability per line.
ProbabilityVector parse_pi_spec(const std::string& spec) {
    std::vector<double> values;
    if (std::filesystem::exists(spec)) {
        std::ifstream in(spec);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            try {
                values.push_back(std::stod(line));
            } catch (const std::exception&) {
                throw phenosim::ParseError("bad probability '" + line + "' at line " +
                                           std::to_string(line_no) + " of " + spec);
            }
        }
    } else {
        std::istringstream ss(spec);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (token.empty()) continue;
            const auto xpos = token.find('x');
            std::size_t count = 1;
            std::string value_str = token;
            try {
                if (xpos != std::string::npos) {
                    value_str = token.substr(0, xpos);
                    count = std::stoul(token.substr(xpos + 1));
                }
                const double v = std::stod(value_str);
                for (std::size_t k = 0; k < count; ++k) values.push_back(v);
            } catch (const std::exception&) {
                throw phenosim::ParseError("bad pi token '" + token +
                                           "' (expected value or valuexcount)");
            }
        }
    }
    if (values.empty())
        throw phenosim::ParseError("pi specification '" + spec + "' yields no probabilities");
    ProbabilityVector pi(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) pi[static_cast<Eigen::Index>(i)] = values[i];
    return pi;
}

void write_text(const std::optional<std::string>& out_path, const std::string& content) {
    if (!out_path) {
        std::cout << content;
        return;
    }
    std::filesystem::path tmp = *out_path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw phenosim::IoError("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, *out_path);
}

struct SampleArgs {
    std::string pi_spec;
    long long n1 = 0;
    std::string algorithm = "backward";
    int n_samples = 1;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> burn_in, thinning, max_attempts;
    std::string format = "bits";
    std::optional<std::string> out;
};

int run_sample(const SampleArgs& args) {
    const ProbabilityVector pi = parse_pi_spec(args.pi_spec);
    const auto n1 = static_cast<Eigen::Index>(args.n1);
    phenosim::RandomStream rng(args.seed);

    std::vector<phenosim::PhenotypeVector> draws;
    const phenosim::Algorithm algo = phenosim::algorithm_from_string(args.algorithm);
    if (algo == phenosim::Algorithm::backward) {
        const phenosim::BackwardTable table = phenosim::backward_table(pi, n1);
        for (int s = 0; s < args.n_samples; ++s)
            draws.push_back(phenosim::sample_backward(table, pi, rng));
    } else if (algo == phenosim::Algorithm::rejection) {
        for (int s = 0; s < args.n_samples; ++s) {
            if (args.max_attempts)
                draws.push_back(phenosim::sample_rejection(pi, n1, *args.max_attempts, rng));
            else
                draws.push_back(phenosim::sample_rejection(pi, n1, rng));
        }
    } else {
        phenosim::McmcSettings settings = phenosim::McmcSettings::defaults(pi.size());
        if (args.burn_in) settings.burn_in = *args.burn_in;
        if (args.thinning) settings.thinning = *args.thinning;
        auto result = phenosim::sample_mcmc(pi, n1, settings, args.n_samples, rng);
        if (result.degenerate)
            std::cerr << "warning: constrained chain is degenerate; returning the forced "
                         "configuration\n";
        draws = std::move(result.samples);
    }

    std::ostringstream out;
    for (const auto& y : draws) {
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            if (args.format == "csv" && i) out << ',';
            out << y[i];
        }
        out << '\n';
    }
    write_text(args.out, out.str());
    return 0;
}

int run_prob(const std::string& pi_spec, long long n1_in) {
    const ProbabilityVector pi = parse_pi_spec(pi_spec);
    const auto n1 = static_cast<Eigen::Index>(n1_in);
    const phenosim::BackwardTable table = phenosim::backward_table(pi, n1);
    const double log_pc = table.log_constraint_prob();
    char line[96];
    std::snprintf(line, sizeof(line), "P(C)=%.6e\n", std::exp(log_pc));
    std::cout << line;
    std::snprintf(line, sizeof(line), "log10(P(C))=%.6f\n", log_pc / std::log(10.0));
    std::cout << line;
    return 0;
}

int run_marginals(const std::string& pi_spec, long long n1_in,
                  const std::optional<std::string>& out_path) {
    const ProbabilityVector pi = parse_pi_spec(pi_spec);
    const Eigen::ArrayXd marg =
        phenosim::conditional_marginals(pi, static_cast<Eigen::Index>(n1_in));
    std::ostringstream out;
    out << "index,pi,marginal\n";
    for (Eigen::Index i = 0; i < marg.size(); ++i) {
        char line[96];
        std::snprintf(line, sizeof(line), "%lld,%.17g,%.17g\n", static_cast<long long>(i), pi[i],
                      marg[i]);
        out << line;
    }
    write_text(out_path, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constrained case/control phenotype simulation and power studies"};
    app.require_subcommand(1);

    // sample
    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "Draw constrained phenotype vectors");
    sample->add_option("--pi", sample_args.pi_spec,
                       "Case probabilities: file (one per line) or inline v1xk1,v2xk2,...")
        ->required();
    sample->add_option("--n1", sample_args.n1, "Number of cases")->required();
    sample->add_option("--algorithm", sample_args.algorithm, "backward | mcmc | rejection")
        ->check(CLI::IsMember({"backward", "mcmc", "rejection"}));
    sample->add_option("--n-samples", sample_args.n_samples, "Number of vectors to draw")
        ->check(CLI::PositiveNumber);
    sample->add_option("--seed", sample_args.seed, "Random seed");
    sample->add_option("--burn-in", sample_args.burn_in, "MCMC burn-in (default 1e5 * n)");
    sample->add_option("--thinning", sample_args.thinning, "MCMC thinning (default n)");
    sample->add_option("--max-attempts", sample_args.max_attempts, "Rejection attempt budget");
    sample->add_option("--format", sample_args.format, "bits | csv")
        ->check(CLI::IsMember({"bits", "csv"}));
    sample->add_option("--out", sample_args.out, "Output file (default stdout)");

    // prob
    std::string prob_pi;
    long long prob_n1 = 0;
    CLI::App* prob = app.add_subcommand("prob", "Print the constraint probability P(C)");
    prob->add_option("--pi", prob_pi, "Case probabilities (file or inline)")->required();
    prob->add_option("--n1", prob_n1, "Number of cases")->required();

    // marginals
    std::string marg_pi;
    long long marg_n1 = 0;
    std::optional<std::string> marg_out;
    CLI::App* marg = app.add_subcommand("marginals", "Print P(Y_i=1 | constraint) per individual");
    marg->add_option("--pi", marg_pi, "Case probabilities (file or inline)")->required();
    marg->add_option("--n1", marg_n1, "Number of cases")->required();
    marg->add_option("--out", marg_out, "Output file (default stdout)");

    // power
    std::string power_config;
    std::string power_out;
    bool power_plot = false;
    bool power_keep_going = false;
    std::optional<int> power_threads;
    std::optional<std::uint64_t> power_seed;
    CLI::App* power = app.add_subcommand("power", "Run a power study from a JSON config");
    power->add_option("--config", power_config, "Experiment config (JSON)")->required();
    power->add_option("--out", power_out, "Output directory")->required();
    power->add_flag("--plot", power_plot, "Also write roc_<rho>.csv and roc_<rho>.svg");
    power->add_flag("--keep-going", power_keep_going, "Collect replicate failures instead of aborting");
    power->add_option("--threads", power_threads, "Worker thread cap (default: hardware)");
    power->add_option("--seed", power_seed, "Override the config master_seed");

    // bench
    int bench_replicates = 100;
    std::string bench_algorithms = "rejection,mcmc,backward";
    std::uint64_t bench_seed = 0;
    double bench_work_limit = 2e9;
    std::optional<std::int64_t> bench_burn_in;
    std::string bench_cells;
    CLI::App* bench = app.add_subcommand("bench", "Time the samplers on the toy grid");
    bench->add_option("--replicates", bench_replicates, "Replicates per cell")
        ->check(CLI::PositiveNumber);
    bench->add_option("--algorithms", bench_algorithms, "Comma list of algorithms to run");
    bench->add_option("--seed", bench_seed, "Random seed");
    bench->add_option("--rejection-work-limit", bench_work_limit,
                      "Skip rejection cells whose expected Bernoulli draws exceed this");
    bench->add_option("--mcmc-burn-in", bench_burn_in, "Override the MCMC burn-in");
    bench->add_option("--cells", bench_cells, "Grid as n:f0,n:f0,... (default: the toy grid)");

    // toygen
    long long toy_n = 0;
    std::string toy_out;
    bool toy_synth = false;
    long long synth_p = 8000;
    std::uint64_t toy_seed = 11;
    CLI::App* toygen = app.add_subcommand("toygen", "Write a generated dense-csv dataset");
    toygen->add_option("--n", toy_n, "Individuals (toy: multiple of 20)")->required();
    toygen->add_option("--out", toy_out, "Output genotype CSV path")->required();
    toygen->add_flag("--synth", toy_synth, "Generate the synthetic GWA-scale dataset instead");
    toygen->add_option("--p", synth_p, "SNP count (synthetic only)");
    toygen->add_option("--seed", toy_seed, "Generator seed (synthetic only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sample->parsed()) return run_sample(sample_args);
        if (prob->parsed()) return run_prob(prob_pi, prob_n1);
        if (marg->parsed()) return run_marginals(marg_pi, marg_n1, marg_out);

        if (power->parsed()) {
            phenosim::ExperimentConfig config = phenosim::load_experiment_config(power_config);
            if (power_seed) config.master_seed = *power_seed;
            if (power_threads) config.threads = *power_threads;
            if (power_keep_going) config.keep_going = true;
            const phenosim::PowerReport report = phenosim::run_experiment(config);
            phenosim::write_report(report, power_out, power_plot);
            for (const auto& rr : report.per_rho) {
                char line[160];
                const std::string label = std::isinf(rr.rho) ? "inf" : std::to_string(rr.rho);
                std::snprintf(line, sizeof(line), "rho=%s auc=%.4f ci=[%.4f,%.4f] band=%s\n",
                              label.c_str(), rr.roc.auc, rr.roc.ci_low, rr.roc.ci_high,
                              rr.roc.band.c_str());
                std::cout << line;
            }
            if (!report.failures.empty())
                std::cerr << report.failures.size() << " replicate(s) failed; see summary.json\n";
            return 0;
        }

        if (bench->parsed()) {
            std::vector<phenosim::BenchCell> cells;
            if (bench_cells.empty()) {
                cells = phenosim::default_bench_grid();
            } else {
                std::istringstream ss(bench_cells);
                std::string token;
                while (std::getline(ss, token, ',')) {
                    const auto colon = token.find(':');
                    if (colon == std::string::npos)
                        throw phenosim::ConfigError("bad cell '" + token + "' (expected n:f0)");
                    cells.push_back({static_cast<Eigen::Index>(std::stoll(token.substr(0, colon))),
                                     std::stod(token.substr(colon + 1))});
                }
            }
            phenosim::BenchOptions options;
            options.replicates = bench_replicates;
            options.seed = bench_seed;
            options.rejection_work_limit = bench_work_limit;
            options.mcmc_burn_in = bench_burn_in;
            options.run_rejection = bench_algorithms.find("rejection") != std::string::npos;
            options.run_mcmc = bench_algorithms.find("mcmc") != std::string::npos;
            options.run_backward = bench_algorithms.find("backward") != std::string::npos;
            const auto rows = phenosim::bench_samplers(cells, options);
            std::cout << phenosim::format_bench_table(rows);
            return 0;
        }

        if (toygen->parsed()) {
            phenosim::GenotypeMatrix gm;
            if (toy_synth) {
                phenosim::SyntheticDatasetSpec spec;
                spec.n = static_cast<Eigen::Index>(toy_n);
                spec.p = static_cast<Eigen::Index>(synth_p);
                spec.seed = toy_seed;
                gm = phenosim::make_synthetic_dataset(spec);
            } else {
                gm = phenosim::make_toy_dataset(static_cast<Eigen::Index>(toy_n));
            }
            std::filesystem::path out_path(toy_out);
            std::filesystem::path meta_path = out_path;
            meta_path.replace_extension(".meta.csv");
            phenosim::write_dense_csv(gm, out_path, meta_path);
            std::cout << "wrote " << out_path.string() << " (" << gm.n_individuals() << " x "
                      << gm.n_snps() << ") and " << meta_path.string() << "\n";
            return 0;
        }
    } catch (const phenosim::Error& e) {
        std::cerr << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
