// File-driven entry points behind the C API and CLI: each one loads inputs
// per a manifest or directory layout, fans out per image, and writes
// deterministic reports.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "rankmetrics.hpp"
#include "types.hpp"

namespace salrank {

struct GenerateSummary {
    int accepted = 0;
    int rejected = 0;
    int errors = 0;
};

// Runs the synthesis pipeline over every manifest entry. Accepted images
// produce <id>.png, <id>.rank.json and <id>.slice1..5.png in out_dir;
// report.json lists every entry in manifest order. An empty root falls back
// to the manifest's directory.
GenerateSummary run_generate(const GenConfig& config,
                             const std::string& manifest_path,
                             const std::string& root,
                             const std::string& out_dir, int threads);

// Scores predictions in pred_dir against ranked ground truth in gt_dir over
// the instance maps in instances_dir; image ids come from gt_dir sidecars.
RankingResult run_eval_rank(const std::string& pred_dir,
                            const std::string& gt_dir,
                            const std::string& instances_dir, RankMode mode,
                            double alpha, const std::string& report_path,
                            int threads);

// Detection metrics per image against <id>.obs<k>.png observer masks;
// curves_dir (optional) receives the PR/ROC table at the best-AUC level.
void run_eval_detect(const std::string& pred_dir,
                     const std::string& observers_dir, double beta_sq,
                     const std::string& report_path,
                     const std::string& curves_dir, int threads);

std::vector<SweepRow> run_sweep(const GenConfig& base,
                                const std::string& manifest_path,
                                const std::string& root,
                                SweepAxis axis,
                                const std::vector<double>& values,
                                const std::string& csv_path, int threads);

// csv_path may be empty to skip the per-trial table.
double run_ablate(const std::string& manifest_path, const std::string& root,
                  int remove_count, int trials, std::uint64_t seed,
                  const std::string& csv_path, int threads);

void run_stats(const std::string& corpus_dir, const std::string& csv_path);

// Throws on any format or nesting problem; returns the slice count.
int run_validate(const std::string& stem);

}  // namespace salrank
