#include "phenosim/roc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "phenosim/errors.hpp"

namespace phenosim {

namespace {

// Midranks (1-based, ties averaged) of a sorted copy, reported in the
// original order.
std::vector<double> midranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
        i = j + 1;
    }
    return rank;
}

double sample_variance(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double acc = 0.0;
    for (const double x : v) acc += (x - mean) * (x - mean);
    return acc / (static_cast<double>(v.size()) - 1.0);
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

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string auc_band(double auc) {
    if (auc <= 0.6) return "fail";
    if (auc <= 0.7) return "poor";
    if (auc <= 0.8) return "fair";
    if (auc <= 0.9) return "good";
    return "excellent";
}

RocSummary roc_auc(const std::vector<double>& h1_stats, const std::vector<double>& h0_stats) {
    if (h1_stats.empty() || h0_stats.empty())
        throw EmptySample("both the H1 and H0 statistic samples must be non-empty");
    const auto n1 = static_cast<double>(h1_stats.size());
    const auto n0 = static_cast<double>(h0_stats.size());

    // DeLong placements via midranks: pooled rank minus within-sample rank,
    // normalised by the other sample's size.
    std::vector<double> pooled;
    pooled.reserve(h1_stats.size() + h0_stats.size());
    pooled.insert(pooled.end(), h1_stats.begin(), h1_stats.end());
    pooled.insert(pooled.end(), h0_stats.begin(), h0_stats.end());
    const std::vector<double> rank_all = midranks(pooled);
    const std::vector<double> rank_h1 = midranks(h1_stats);
    const std::vector<double> rank_h0 = midranks(h0_stats);

    std::vector<double> v10(h1_stats.size()), v01(h0_stats.size());
    double rank_sum_h1 = 0.0;
    for (std::size_t i = 0; i < h1_stats.size(); ++i) {
        rank_sum_h1 += rank_all[i];
        v10[i] = (rank_all[i] - rank_h1[i]) / n0;
    }
    for (std::size_t j = 0; j < h0_stats.size(); ++j)
        v01[j] = 1.0 - (rank_all[h1_stats.size() + j] - rank_h0[j]) / n1;

    RocSummary summary;
    summary.auc = (rank_sum_h1 - n1 * (n1 + 1.0) / 2.0) / (n1 * n0);
    const double s10 = sample_variance(v10, summary.auc);
    const double s01 = sample_variance(v01, summary.auc);
    summary.se = std::sqrt(s10 / n1 + s01 / n0);
    summary.ci_low = std::max(0.0, summary.auc - 1.96 * summary.se);
    summary.ci_high = std::min(1.0, summary.auc + 1.96 * summary.se);
    summary.band = auc_band(summary.auc);

    // Sweep the classification threshold over the pooled unique values,
    // highest first; ties produce diagonal segments so the trapezoidal area
    // under this curve equals the half-weight Mann-Whitney estimate.
    std::vector<double> thresholds = pooled;
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    summary.curve.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    double tp = 0.0, fp = 0.0;
    for (auto it = thresholds.rbegin(); it != thresholds.rend(); ++it) {
        const double t = *it;
        for (const double s : h1_stats)
            if (s == t) tp += 1.0;
        for (const double s : h0_stats)
            if (s == t) fp += 1.0;
        summary.curve.push_back({fp / n0, tp / n1, t});
    }
    return summary;
}

void write_roc_csv(const RocSummary& summary, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "fpr,tpr,threshold\n";
    for (const RocPoint& pt : summary.curve)
        out << format_double(pt.fpr) << ',' << format_double(pt.tpr) << ','
            << format_double(pt.threshold) << '\n';
    atomic_write(path, out.str());
}

void write_roc_svg(const RocSummary& summary, const std::filesystem::path& path,
                   const std::string& title) {
    constexpr double size = 420.0, margin = 50.0;
    const double span = size - 2.0 * margin;
    const auto px = [&](double fpr) { return margin + fpr * span; };
    const auto py = [&](double tpr) { return size - margin - tpr * span; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
        << py(0) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\""
        << py(1) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
        << py(1) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
    for (const RocPoint& pt : summary.curve) out << px(pt.fpr) << ',' << py(pt.tpr) << ' ';
    out << "\"/>\n";
    char note[160];
    std::snprintf(note, sizeof(note), "AUC = %.3f [%.3f, %.3f] (%s)", summary.auc, summary.ci_low,
                  summary.ci_high, summary.band.c_str());
    out << "<text x=\"" << px(0.35) << "\" y=\"" << py(0.08) << "\" font-family=\"sans-serif\" "
        << "font-size=\"13\">" << note << "</text>\n";
    if (!title.empty())
        out << "<text x=\"" << px(0.0) << "\" y=\"" << (margin - 14.0)
            << "\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    out << "<text x=\"" << px(0.45) << "\" y=\"" << (size - 12.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\">FPR</text>\n"
        << "<text x=\"12\" y=\"" << py(0.5) << "\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 12 " << py(0.5) << ")\">TPR</text>\n</svg>\n";
    atomic_write(path, out.str());
}

} // namespace phenosim
