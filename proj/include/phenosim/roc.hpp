#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace phenosim {

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0; // classify positive when statistic >= threshold
};

struct RocSummary {
    double auc = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double se = 0.0; // DeLong standard error
    std::vector<RocPoint> curve; // from (0,0) to (1,1), both coordinates non-decreasing
    std::string band;
};

// Mann-Whitney AUC with half-weight ties, curve over the pooled unique
// thresholds, and a DeLong structural-components 95% CI (auc +- 1.96*SE,
// clipped to [0, 1]). Throws EmptySample if either sample is empty.
RocSummary roc_auc(const std::vector<double>& h1_stats, const std::vector<double>& h0_stats);

// Qualitative label: <=0.6 fail, (0.6,0.7] poor, (0.7,0.8] fair,
// (0.8,0.9] good, (0.9,1.0] excellent.
std::string auc_band(double auc);

// CSV with header "fpr,tpr,threshold"; atomic write.
void write_roc_csv(const RocSummary& summary, const std::filesystem::path& path);

// Minimal standalone SVG: axes, diagonal, the curve, and an AUC annotation.
void write_roc_svg(const RocSummary& summary, const std::filesystem::path& path,
                   const std::string& title = "");

} // namespace phenosim
