#include "phenosim/genotype.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "phenosim/errors.hpp"
#include "phenosim/random.hpp"

namespace phenosim {

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(field);
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

std::int8_t parse_genotype(const std::string& cell, std::size_t line_no, std::size_t col_no) {
    if (cell == "0") return 0;
    if (cell == "1") return 1;
    if (cell == "2") return 2;
    if (cell == "NA") return kMissingGenotype;
    std::ostringstream msg;
    msg << "unknown genotype value '" << cell << "' at line " << line_no
        << ", column " << col_no << " (expected 0, 1, 2 or NA)";
    throw UnknownValue(msg.str());
}

void compute_all_mafs(GenotypeMatrix& gm) {
    for (Eigen::Index j = 0; j < gm.n_snps(); ++j)
        gm.snps[static_cast<std::size_t>(j)].maf = compute_maf(gm.values.col(j));
}

void warn(std::vector<std::string>* warnings, const std::string& msg) {
    if (warnings) warnings->push_back(msg);
}

// Sort SNPs by (chromosome, position), stably, reordering columns to match.
void sort_snps(GenotypeMatrix& gm, std::vector<std::string>* warnings) {
    const auto p = static_cast<std::size_t>(gm.n_snps());
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const SnpInfo& sa = gm.snps[a];
        const SnpInfo& sb = gm.snps[b];
        if (sa.chromosome != sb.chromosome) return sa.chromosome < sb.chromosome;
        return sa.position_bp < sb.position_bp;
    });

    bool already_sorted = true;
    for (std::size_t j = 0; j < p; ++j)
        if (order[j] != j) already_sorted = false;
    if (!already_sorted) {
        GenotypeValues sorted(gm.values.rows(), gm.values.cols());
        std::vector<SnpInfo> snps;
        snps.reserve(p);
        for (std::size_t j = 0; j < p; ++j) {
            sorted.col(static_cast<Eigen::Index>(j)) = gm.values.col(static_cast<Eigen::Index>(order[j]));
            snps.push_back(gm.snps[order[j]]);
        }
        gm.values = std::move(sorted);
        gm.snps = std::move(snps);
        warn(warnings, "SNPs were not sorted by (chromosome, position); reordered on load");
    }
    for (std::size_t j = 1; j < p; ++j) {
        const SnpInfo& a = gm.snps[j - 1];
        const SnpInfo& b = gm.snps[j];
        if (a.chromosome == b.chromosome && a.position_bp == b.position_bp)
            warn(warnings, "duplicate position " + std::to_string(b.position_bp) +
                               " on chromosome " + b.chromosome + " (SNPs " + a.id + ", " + b.id + ")");
    }
}

void attach_metadata(GenotypeMatrix& gm, const std::filesystem::path& meta_path) {
    std::ifstream in(meta_path);
    if (!in) throw IoError("cannot open metadata file " + meta_path.string());
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty metadata file " + meta_path.string());
    if (strip_cr(line) != "snp_id,chromosome,position_bp")
        throw ParseError("metadata header must be 'snp_id,chromosome,position_bp' in " +
                         meta_path.string());

    std::map<std::string, std::pair<std::string, std::int64_t>> meta;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 3)
            throw ParseError("expected 3 fields at line " + std::to_string(line_no) + " of " +
                             meta_path.string());
        std::int64_t pos = 0;
        try {
            pos = std::stoll(fields[2]);
        } catch (const std::exception&) {
            throw ParseError("bad position '" + fields[2] + "' at line " + std::to_string(line_no) +
                             " of " + meta_path.string());
        }
        if (pos < 0)
            throw ParseError("negative position at line " + std::to_string(line_no) + " of " +
                             meta_path.string());
        meta[fields[0]] = {fields[1], pos};
    }
    for (SnpInfo& snp : gm.snps) {
        const auto it = meta.find(snp.id);
        if (it == meta.end())
            throw ParseError("metadata file " + meta_path.string() + " has no entry for SNP " + snp.id);
        snp.chromosome = it->second.first;
        snp.position_bp = it->second.second;
    }
}

GenotypeMatrix load_dense_csv(const std::filesystem::path& path,
                              const std::optional<std::filesystem::path>& metadata,
                              std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open genotype file " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty genotype file " + path.string());
    auto header = split(strip_cr(line), ',');
    if (header.size() < 2)
        throw ParseError("header must have at least one SNP column in " + path.string());

    GenotypeMatrix gm;
    const std::size_t p = header.size() - 1;
    for (std::size_t j = 0; j < p; ++j) {
        SnpInfo snp;
        snp.id = header[j + 1];
        snp.chromosome = "0";
        snp.position_bp = static_cast<std::int64_t>(j) + 1;
        gm.snps.push_back(std::move(snp));
    }

    std::vector<std::vector<std::int8_t>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != p + 1) {
            std::ostringstream msg;
            msg << "row at line " << line_no << " has " << fields.size() << " fields, expected "
                << (p + 1);
            throw DimensionMismatch(msg.str());
        }
        gm.individual_ids.push_back(fields[0]);
        std::vector<std::int8_t> row(p);
        for (std::size_t j = 0; j < p; ++j)
            row[j] = parse_genotype(fields[j + 1], line_no, j + 2);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("genotype file " + path.string() + " has no data rows");

    gm.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < p; ++j)
            gm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];

    std::optional<std::filesystem::path> meta = metadata;
    if (!meta) {
        std::filesystem::path sidecar = path;
        sidecar.replace_extension(".meta.csv");
        if (std::filesystem::exists(sidecar))
            meta = sidecar;
    }
    if (meta)
        attach_metadata(gm, *meta);
    else
        warn(warnings, "no SNP metadata for " + path.string() +
                           "; assuming chromosome 0 and positions 1..p");
    return gm;
}

GenotypeMatrix load_plink_raw(const std::filesystem::path& path,
                              std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open genotype file " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty genotype file " + path.string());
    std::istringstream hs(strip_cr(line));
    std::vector<std::string> header;
    for (std::string tok; hs >> tok;) header.push_back(tok);
    static const char* expected[6] = {"FID", "IID", "PAT", "MAT", "SEX", "PHENOTYPE"};
    if (header.size() < 6)
        throw ParseError("plink-raw header must start with the 6 standard columns in " + path.string());
    for (int j = 0; j < 6; ++j)
        if (header[static_cast<std::size_t>(j)] != expected[j])
            throw ParseError(std::string("plink-raw header column ") + std::to_string(j + 1) +
                             " must be " + expected[j]);

    GenotypeMatrix gm;
    const std::size_t p = header.size() - 6;
    for (std::size_t j = 0; j < p; ++j) {
        SnpInfo snp;
        const std::string& tok = header[j + 6];
        const auto cut = tok.rfind('_');
        snp.id = (cut == std::string::npos || cut == 0) ? tok : tok.substr(0, cut);
        snp.chromosome = "0";
        snp.position_bp = static_cast<std::int64_t>(j) + 1;
        gm.snps.push_back(std::move(snp));
    }

    std::vector<std::vector<std::int8_t>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(strip_cr(line));
        std::vector<std::string> fields;
        for (std::string tok; ls >> tok;) fields.push_back(tok);
        if (fields.empty()) continue;
        if (fields.size() != p + 6) {
            std::ostringstream msg;
            msg << "row at line " << line_no << " has " << fields.size() << " fields, expected "
                << (p + 6);
            throw DimensionMismatch(msg.str());
        }
        gm.individual_ids.push_back(fields[1]); // IID; phenotype column ignored
        std::vector<std::int8_t> row(p);
        for (std::size_t j = 0; j < p; ++j)
            row[j] = parse_genotype(fields[j + 6], line_no, j + 7);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("genotype file " + path.string() + " has no data rows");

    gm.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < p; ++j)
            gm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    warn(warnings, "plink-raw carries no positions; assuming chromosome 0 and positions 1..p");
    return gm;
}

} // namespace

double compute_maf(const Eigen::Ref<const GenotypeColumn>& column) {
    std::int64_t alleles = 0;
    std::int64_t observed = 0;
    for (Eigen::Index i = 0; i < column.size(); ++i) {
        if (column[i] == kMissingGenotype) continue;
        alleles += column[i];
        observed += 2;
    }
    if (observed == 0) return 0.0;
    const double freq = static_cast<double>(alleles) / static_cast<double>(observed);
    return std::min(freq, 1.0 - freq);
}

GenotypeMatrix load_matrix(const std::filesystem::path& path, GenotypeFormat format,
                           const std::optional<std::filesystem::path>& metadata,
                           std::vector<std::string>* warnings) {
    GenotypeMatrix gm = format == GenotypeFormat::dense_csv
                            ? load_dense_csv(path, metadata, warnings)
                            : load_plink_raw(path, warnings);
    if (gm.n_individuals() < 1 || gm.n_snps() < 1)
        throw DimensionMismatch("genotype matrix must be at least 1 x 1");
    sort_snps(gm, warnings);
    compute_all_mafs(gm);
    return gm;
}

namespace {

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

} // namespace

void write_dense_csv(const GenotypeMatrix& gm, const std::filesystem::path& path,
                     const std::optional<std::filesystem::path>& metadata) {
    std::ostringstream out;
    out << "id";
    for (const SnpInfo& snp : gm.snps) out << ',' << snp.id;
    out << '\n';
    for (Eigen::Index i = 0; i < gm.n_individuals(); ++i) {
        out << gm.individual_ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < gm.n_snps(); ++j) {
            const std::int8_t v = gm.values(i, j);
            if (v == kMissingGenotype)
                out << ",NA";
            else
                out << ',' << static_cast<int>(v);
        }
        out << '\n';
    }
    atomic_write(path, out.str());

    if (metadata) {
        std::ostringstream meta;
        meta << "snp_id,chromosome,position_bp\n";
        for (const SnpInfo& snp : gm.snps)
            meta << snp.id << ',' << snp.chromosome << ',' << snp.position_bp << '\n';
        atomic_write(*metadata, meta.str());
    }
}

GenotypeMatrix filter_maf(const GenotypeMatrix& gm, double threshold, bool empty_is_error) {
    if (threshold < 0.0 || threshold > 0.5)
        throw InvalidProbability("MAF threshold must be in [0, 0.5]");

    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < gm.n_snps(); ++j)
        if (gm.snps[static_cast<std::size_t>(j)].maf > threshold) keep.push_back(j);

    if (keep.empty() && empty_is_error)
        throw EmptyAfterFilter("no SNP has MAF > " + std::to_string(threshold));

    GenotypeMatrix out;
    out.individual_ids = gm.individual_ids;
    out.values.resize(gm.n_individuals(), static_cast<Eigen::Index>(keep.size()));
    out.snps.reserve(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
        out.values.col(static_cast<Eigen::Index>(j)) = gm.values.col(keep[j]);
        out.snps.push_back(gm.snps[static_cast<std::size_t>(keep[j])]);
    }
    return out;
}

GenotypeMatrix make_toy_dataset(Eigen::Index n) {
    if (n < 20 || n % 20 != 0)
        throw NotMultipleOf20("toy dataset size must be a positive multiple of 20, got " +
                              std::to_string(n));
    const Eigen::Index zeros = 4 * n / 5;
    const Eigen::Index ones = 3 * n / 20;

    GenotypeMatrix gm;
    gm.values.resize(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        gm.values(i, 0) = i < zeros ? std::int8_t{0} : (i < zeros + ones ? std::int8_t{1} : std::int8_t{2});
        gm.individual_ids.push_back("ind" + std::to_string(i + 1));
    }
    SnpInfo snp;
    snp.id = "snp1";
    snp.chromosome = "1";
    snp.position_bp = 1000000;
    gm.snps.push_back(std::move(snp));
    compute_all_mafs(gm);
    return gm;
}

GenotypeMatrix replicate_individuals(const GenotypeMatrix& gm, int k) {
    if (k < 1) throw InvalidProbability("replication factor must be >= 1");
    if (k == 1) return gm;

    const Eigen::Index n = gm.n_individuals();
    GenotypeMatrix out;
    out.snps = gm.snps;
    out.values.resize(n * k, gm.n_snps());
    out.individual_ids.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        out.values.middleRows(static_cast<Eigen::Index>(c) * n, n) = gm.values;
        for (Eigen::Index i = 0; i < n; ++i) {
            std::string id = gm.individual_ids[static_cast<std::size_t>(i)];
            if (c > 0) id += "_" + std::to_string(c + 1);
            out.individual_ids.push_back(std::move(id));
        }
    }
    return out;
}

GenotypeMatrix make_synthetic_dataset(const SyntheticDatasetSpec& spec) {
    if (spec.n < 1 || spec.p < 1)
        throw DimensionMismatch("synthetic dataset needs n >= 1 and p >= 1");
    if (!(spec.maf_min >= 0.0 && spec.maf_min <= spec.maf_max && spec.maf_max <= 0.5))
        throw InvalidProbability("synthetic MAF range must satisfy 0 <= min <= max <= 0.5");

    RandomStream rng(spec.seed);
    std::vector<double> mafs(static_cast<std::size_t>(spec.p));
    for (auto& m : mafs)
        m = spec.maf_min + (spec.maf_max - spec.maf_min) * rng.next_double();
    for (const auto& causal : spec.causal) {
        if (causal.column < 0 || causal.column >= spec.p)
            throw DimensionMismatch("causal column index out of range");
        mafs[static_cast<std::size_t>(causal.column)] = causal.maf;
    }

    GenotypeMatrix gm;
    gm.values.resize(spec.n, spec.p);
    // Hardy-Weinberg: two independent allele draws per cell. Column-major
    // fill so column j is fully determined by (seed, j, n).
    for (Eigen::Index j = 0; j < spec.p; ++j) {
        const double maf = mafs[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < spec.n; ++i) {
            const std::int8_t g = static_cast<std::int8_t>((rng.next_double() < maf ? 1 : 0) +
                                                           (rng.next_double() < maf ? 1 : 0));
            gm.values(i, j) = g;
        }
        SnpInfo snp;
        snp.id = "snp" + std::to_string(j + 1);
        snp.chromosome = spec.chromosome;
        snp.position_bp = spec.spacing_bp * (j + 1);
        gm.snps.push_back(std::move(snp));
    }
    for (Eigen::Index i = 0; i < spec.n; ++i)
        gm.individual_ids.push_back("ind" + std::to_string(i + 1));
    compute_all_mafs(gm);
    return gm;
}

} // namespace phenosim
