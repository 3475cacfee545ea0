// Saliency-order metrics: per-instance rank extraction from predicted maps
// and Spearman-based SOR scoring.
#pragma once

#include <optional>
#include <string>

#include "types.hpp"

namespace salrank {

enum class RankMode { Avg, Pow, Max };

const char* rank_mode_name(RankMode mode);
RankMode rank_mode_from_name(const std::string& name);

// Per-instance saliency score. Avg: mean over the instance. Pow: sum divided
// by size^alpha. Max: peak value. Normalized and masked fields are filled so
// the result composes with order_by_score.
RankScores instance_rank_from_saliency(const SaliencyMap& saliency,
                                       const InstanceMap& instances,
                                       RankMode mode, double alpha);

// Spearman correlation of two aligned ordinal lists, ties handled by average
// ranks. Empty result when either rank vector has zero variance. Exact +1/-1
// on identical and reversed strict rankings.
std::optional<double> spearman_rho(const std::vector<double>& a,
                                   const std::vector<double>& b);

// (rho+1)/2 between a ground-truth order (most salient first) and predicted
// scores, over their common labels. Empty when fewer than two labels are
// shared or the correlation is undefined.
std::optional<double> sor(const std::vector<std::uint32_t>& gt_order,
                          const std::map<std::uint32_t, double>& pred_scores);

// Same, for two strict orders over a shared label set.
std::optional<double> sor_from_orders(const std::vector<std::uint32_t>& gt_order,
                                      const std::vector<std::uint32_t>& pred_order);

struct ImageRanking {
    std::string id;
    std::optional<double> spearman;
    std::optional<double> sor_value;
    int matched_instances = 0;
};

struct RankingResult {
    std::vector<ImageRanking> per_image;
    std::optional<double> dataset_sor;  // mean over defined images
    int defined_count = 0;
    int undefined_count = 0;
};

// Scores one prediction against one ground-truth order; the id field of the
// result is left empty for the caller to fill.
ImageRanking evaluate_ranking(const std::vector<std::uint32_t>& gt_order,
                              const SaliencyMap& prediction,
                              const InstanceMap& instances, RankMode mode,
                              double alpha);

struct RankedPair {
    std::string id;
    std::vector<std::uint32_t> gt_order;
    SaliencyMap prediction;
    InstanceMap instances;
};

RankingResult dataset_sor(const std::vector<RankedPair>& pairs, RankMode mode,
                          double alpha);

}  // namespace salrank
