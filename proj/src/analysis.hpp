// Dataset analysis: scoring-parameter sweeps against reference rankings,
// observer ablation, and corpus rank/size statistics.
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace salrank {

enum class SweepAxis { ExponentAlpha, Sigma };

SweepAxis sweep_axis_from_name(const std::string& name);
const char* sweep_axis_name(SweepAxis axis);

struct SweepRow {
    std::string param;
    double value = 0.0;
    double mean_sor = 0.0;
    int defined = 0;
    int undefined = 0;
};

struct SweepImage {
    std::string id;
    InstanceMap instances;
    FixationInput fixations;
    std::vector<std::uint32_t> reference_order;  // most salient first
};

// Re-scores every image at each axis value (blur + rank scores only, no
// pruning or acceptance) and averages SOR against the reference orders.
// The sigma axis also sets mu = round(7 * sigma).
std::vector<SweepRow> param_sweep(const std::vector<SweepImage>& corpus,
                                  const GenConfig& base, SweepAxis axis,
                                  const std::vector<double>& values,
                                  int threads = 0);

struct AblationImage {
    std::string id;
    InstanceMap instances;
    ObserverMaskSet observers;
};

// Ranks instances by summed observer agreement, drops remove_count observers
// per image per trial (seeded), and averages SOR of the reduced ranking
// against the full one. per_trial, when given, receives one mean per trial.
double annotator_ablation(const std::vector<AblationImage>& corpus,
                          int remove_count, int trials, std::uint64_t seed,
                          std::vector<double>* per_trial = nullptr,
                          int threads = 0);

struct SizeRankStats {
    // images_with[k-1] = number of images carrying exactly k ranked instances
    std::array<std::int64_t, 5> images_with{};
    // fractions[r-1] = (image id, instance size / image pixels) at rank r
    std::array<std::vector<std::pair<std::string, double>>, 5> fractions;
};

SizeRankStats size_rank_stats(
    const std::vector<std::pair<std::string, RankedGroundTruth>>& corpus);

// Unbiased integer in [0, n) by rejection sampling; unlike
// std::uniform_int_distribution the draw sequence is identical on every
// platform.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n);

}  // namespace salrank
