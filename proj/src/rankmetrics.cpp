#include "rankmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace salrank {

const char* rank_mode_name(RankMode mode) {
    switch (mode) {
        case RankMode::Avg: return "avg";
        case RankMode::Pow: return "pow";
        case RankMode::Max: return "max";
    }
    return "unknown";
}

RankMode rank_mode_from_name(const std::string& name) {
    if (name == "avg") return RankMode::Avg;
    if (name == "pow") return RankMode::Pow;
    if (name == "max") return RankMode::Max;
    fail(ErrorKind::InvalidArgument,
         "unknown rank mode '" + name + "', expected avg, pow or max");
}

RankScores instance_rank_from_saliency(const SaliencyMap& saliency,
                                       const InstanceMap& instances,
                                       RankMode mode, double alpha) {
    if (!saliency.grid.same_dims(instances.grid))
        fail(ErrorKind::InvalidArgument,
             "saliency and instance map dimensions differ");
    if (instances.empty())
        fail(ErrorKind::InvalidArgument, "instance map has no instances");
    if (mode == RankMode::Pow && !(alpha > 0.0 && alpha <= 1.0))
        fail(ErrorKind::InvalidArgument, "pow mode needs alpha in (0,1]");
    std::map<std::uint32_t, double> mass;
    std::map<std::uint32_t, double> peak;
    std::map<std::uint32_t, std::int64_t> size;
    for (std::uint32_t label : instances.labels) {
        mass[label] = 0.0;
        peak[label] = 0.0;
        size[label] = 0;
    }
    for (std::size_t i = 0; i < instances.grid.values.size(); ++i) {
        auto label = std::uint32_t(instances.grid.values[i]);
        if (label == 0) continue;
        double v = saliency.grid.values[i];
        mass[label] += v;
        peak[label] = std::max(peak[label], v);
        size[label] += 1;
    }
    RankScores s;
    double max_score = 0.0;
    for (std::uint32_t label : instances.labels) {
        double score = 0.0;
        switch (mode) {
            case RankMode::Avg: score = mass[label] / double(size[label]); break;
            case RankMode::Pow:
                score = mass[label] / std::pow(double(size[label]), alpha);
                break;
            case RankMode::Max: score = peak[label]; break;
        }
        s.entries[label] = score;
        s.masked[label] = mass[label];
        max_score = std::max(max_score, score);
    }
    for (auto& [label, score] : s.entries)
        s.normalized[label] = max_score > 0.0 ? score / max_score : 0.0;
    return s;
}

namespace {

// Twice the average rank of each element, which is always an integer: a tie
// run occupying 1-based positions lo..hi averages to (lo+hi)/2, so doubled
// ranks stay in int64 and the Pearson sums below are exact.
std::vector<std::int64_t> twice_ranks(const std::vector<double>& v) {
    std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<std::int64_t> r2(n, 0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        auto lo = std::int64_t(i + 1), hi = std::int64_t(j + 1);
        for (std::size_t k = i; k <= j; ++k) r2[idx[k]] = lo + hi;
        i = j + 1;
    }
    return r2;
}

}  // namespace

std::optional<double> spearman_rho(const std::vector<double>& a,
                                   const std::vector<double>& b) {
    if (a.size() != b.size())
        fail(ErrorKind::InvalidArgument,
             "rank lists differ in length: " + std::to_string(a.size()) +
                 " vs " + std::to_string(b.size()));
    auto n = std::int64_t(a.size());
    if (n < 2) return std::nullopt;
    std::vector<std::int64_t> ra = twice_ranks(a), rb = twice_ranks(b);
    // Doubled ranks sum to n(n+1), so the doubled mean is exactly n+1.
    std::int64_t saa = 0, sbb = 0, sab = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t ea = ra[i] - (n + 1);
        std::int64_t eb = rb[i] - (n + 1);
        saa += ea * ea;
        sbb += eb * eb;
        sab += ea * eb;
    }
    if (saa == 0 || sbb == 0) return std::nullopt;
    if (saa == sbb && (sab == saa || sab == -saa))
        return sab > 0 ? 1.0 : -1.0;  // exact endpoints
    return double(sab) / std::sqrt(double(saa) * double(sbb));
}

std::optional<double> sor(const std::vector<std::uint32_t>& gt_order,
                          const std::map<std::uint32_t, double>& pred_scores) {
    std::vector<double> gt_ranks, pred_vals;
    int pos = 0;
    for (std::uint32_t label : gt_order) {
        ++pos;
        auto it = pred_scores.find(label);
        if (it == pred_scores.end()) continue;
        gt_ranks.push_back(double(pos));
        // Negated so that a higher predicted score means a better (smaller)
        // rank, matching the ground-truth ordinal direction.
        pred_vals.push_back(-it->second);
    }
    if (gt_ranks.size() < 2) return std::nullopt;
    std::optional<double> rho = spearman_rho(gt_ranks, pred_vals);
    if (!rho) return std::nullopt;
    return (*rho + 1.0) / 2.0;
}

std::optional<double> sor_from_orders(
    const std::vector<std::uint32_t>& gt_order,
    const std::vector<std::uint32_t>& pred_order) {
    std::map<std::uint32_t, double> scores;
    int pos = 0;
    for (std::uint32_t label : pred_order)
        scores[label] = -double(++pos);  // earlier position = higher score
    return sor(gt_order, scores);
}

ImageRanking evaluate_ranking(const std::vector<std::uint32_t>& gt_order,
                              const SaliencyMap& prediction,
                              const InstanceMap& instances, RankMode mode,
                              double alpha) {
    ImageRanking row;
    RankScores scores =
        instance_rank_from_saliency(prediction, instances, mode, alpha);
    std::vector<double> gt_ranks, pred_vals;
    int pos = 0;
    for (std::uint32_t label : gt_order) {
        ++pos;
        auto it = scores.entries.find(label);
        if (it == scores.entries.end()) continue;
        gt_ranks.push_back(double(pos));
        pred_vals.push_back(-it->second);
    }
    row.matched_instances = int(gt_ranks.size());
    if (gt_ranks.size() >= 2) {
        row.spearman = spearman_rho(gt_ranks, pred_vals);
        if (row.spearman) row.sor_value = (*row.spearman + 1.0) / 2.0;
    }
    return row;
}

RankingResult dataset_sor(const std::vector<RankedPair>& pairs, RankMode mode,
                          double alpha) {
    RankingResult result;
    double total = 0.0;
    for (const RankedPair& pair : pairs) {
        ImageRanking row = evaluate_ranking(pair.gt_order, pair.prediction,
                                            pair.instances, mode, alpha);
        row.id = pair.id;
        if (row.sor_value) {
            total += *row.sor_value;
            ++result.defined_count;
        } else {
            ++result.undefined_count;
        }
        result.per_image.push_back(std::move(row));
    }
    if (result.defined_count > 0)
        result.dataset_sor = total / result.defined_count;
    return result;
}

}  // namespace salrank
