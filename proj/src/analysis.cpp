#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fixation.hpp"
#include "parallel.hpp"
#include "rankgen.hpp"
#include "rankmetrics.hpp"

namespace salrank {

SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "alpha") return SweepAxis::ExponentAlpha;
    if (name == "sigma") return SweepAxis::Sigma;
    fail(ErrorKind::InvalidArgument,
         "unknown sweep axis '" + name + "', expected alpha or sigma");
}

const char* sweep_axis_name(SweepAxis axis) {
    return axis == SweepAxis::ExponentAlpha ? "alpha" : "sigma";
}

std::vector<SweepRow> param_sweep(const std::vector<SweepImage>& corpus,
                                  const GenConfig& base, SweepAxis axis,
                                  const std::vector<double>& values,
                                  int threads) {
    base.validate();
    if (values.empty())
        fail(ErrorKind::InvalidArgument, "sweep needs at least one value");
    for (const SweepImage& img : corpus)
        if (img.reference_order.empty())
            fail(ErrorKind::InvalidArgument,
                 "image '" + img.id + "' has no reference ranking");
    std::vector<SweepRow> rows;
    for (double value : values) {
        GenConfig cfg = base;
        if (axis == SweepAxis::ExponentAlpha) {
            cfg.exponent_alpha = value;
        } else {
            cfg.sigma = value;
            cfg.mu = int(std::lround(7.0 * value));
        }
        cfg.validate();
        GaussianKernel kernel = gaussian_kernel(cfg.sigma, cfg.mu);
        std::vector<std::optional<double>> sors(corpus.size());
        parallel_for(corpus.size(), threads, [&](std::size_t i) {
            const SweepImage& img = corpus[i];
            FixationDensity density =
                blur_fixations(img.fixations, img.instances.grid.width,
                               img.instances.grid.height, kernel);
            RankScores scores =
                rank_scores(density, img.instances, cfg.exponent_alpha);
            sors[i] = sor(img.reference_order, scores.entries);
        });
        SweepRow row;
        row.param = sweep_axis_name(axis);
        row.value = value;
        double total = 0.0;
        for (const auto& s : sors) {
            if (s) {
                total += *s;
                ++row.defined;
            } else {
                ++row.undefined;
            }
        }
        if (row.defined == 0)
            fail(ErrorKind::InvalidArgument,
                 "no image yields a defined SOR at " + row.param + " = " +
                     std::to_string(value));
        row.mean_sor = total / row.defined;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) fail(ErrorKind::Internal, "bounded_uniform needs n > 0");
    // Reject draws from the tail that does not divide evenly into n buckets.
    std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
    for (;;) {
        std::uint64_t r = rng();
        if (rem == 0 || r <= limit) return r % n;
    }
}

namespace {

// Strict salience order by summed agreement mass over each instance.
std::vector<std::uint32_t> agreement_order(const InstanceMap& instances,
                                           const std::vector<const ImageGrid*>& masks) {
    RankScores scores;
    for (std::uint32_t label : instances.labels) {
        scores.entries[label] = 0.0;
        scores.masked[label] = 0.0;
    }
    for (const ImageGrid* m : masks)
        for (std::size_t p = 0; p < m->values.size(); ++p) {
            auto label = std::uint32_t(instances.grid.values[p]);
            if (label == 0 || m->values[p] == 0.0) continue;
            scores.entries[label] += 1.0;
            scores.masked[label] += 1.0;
        }
    return order_by_score(scores);
}

}  // namespace

double annotator_ablation(const std::vector<AblationImage>& corpus,
                          int remove_count, int trials, std::uint64_t seed,
                          std::vector<double>* per_trial, int threads) {
    if (trials < 1)
        fail(ErrorKind::InvalidArgument, "need at least one trial");
    if (remove_count < 0)
        fail(ErrorKind::InvalidArgument, "remove count cannot be negative");
    if (corpus.empty())
        fail(ErrorKind::InvalidArgument, "ablation corpus is empty");
    for (const AblationImage& img : corpus) {
        if (remove_count >= img.observers.count())
            fail(ErrorKind::InvalidArgument,
                 "image '" + img.id + "' has " +
                     std::to_string(img.observers.count()) +
                     " observers, cannot remove " +
                     std::to_string(remove_count));
        if (!img.observers.masks[0].same_dims(img.instances.grid))
            fail(ErrorKind::InvalidArgument,
                 "image '" + img.id +
                     "': observer masks do not match the instance map");
    }

    // Full-agreement reference orders, computed once.
    std::vector<std::vector<std::uint32_t>> full_orders(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        std::vector<const ImageGrid*> all;
        for (const ImageGrid& m : corpus[i].observers.masks) all.push_back(&m);
        full_orders[i] = agreement_order(corpus[i].instances, all);
    }

    // One pre-drawn seed per (trial, image) keeps the draw sequence
    // independent of scheduling.
    std::mt19937_64 master(seed);
    std::size_t items = std::size_t(trials) * corpus.size();
    std::vector<std::uint64_t> seeds(items);
    for (std::uint64_t& s : seeds) s = master();

    std::vector<std::optional<double>> sors(items);
    parallel_for(items, threads, [&](std::size_t item) {
        std::size_t i = item % corpus.size();
        const AblationImage& img = corpus[i];
        int n = img.observers.count();
        std::mt19937_64 rng(seeds[item]);
        // Partial Fisher-Yates: the first remove_count slots are dropped.
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        for (int k = 0; k < remove_count; ++k) {
            auto j = k + int(bounded_uniform(rng, std::uint64_t(n - k)));
            std::swap(idx[k], idx[std::size_t(j)]);
        }
        std::vector<const ImageGrid*> kept;
        for (int k = remove_count; k < n; ++k)
            kept.push_back(&img.observers.masks[std::size_t(idx[k])]);
        std::vector<std::uint32_t> reduced =
            agreement_order(img.instances, kept);
        sors[item] = sor_from_orders(full_orders[i], reduced);
    });

    if (per_trial) per_trial->clear();
    double grand = 0.0;
    for (int t = 0; t < trials; ++t) {
        double total = 0.0;
        int defined = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const auto& s = sors[std::size_t(t) * corpus.size() + i];
            if (s) {
                total += *s;
                ++defined;
            }
        }
        if (defined == 0)
            fail(ErrorKind::InvalidArgument,
                 "no image yields a defined SOR in trial " +
                     std::to_string(t + 1));
        double trial_mean = total / defined;
        if (per_trial) per_trial->push_back(trial_mean);
        grand += trial_mean;
    }
    return grand / trials;
}

SizeRankStats size_rank_stats(
    const std::vector<std::pair<std::string, RankedGroundTruth>>& corpus) {
    SizeRankStats stats;
    for (const auto& [id, gt] : corpus) {
        std::size_t tau = gt.order.size();
        if (tau < 1 || tau > 5)
            fail(ErrorKind::Integrity,
                 "image '" + id + "' carries " + std::to_string(tau) +
                     " ranks, expected 1..5");
        stats.images_with[tau - 1] += 1;
        double total_pixels = double(gt.map.size());
        for (std::size_t r = 0; r < tau; ++r) {
            std::uint32_t label = gt.order[r];
            stats.fractions[r].emplace_back(
                id, double(gt.sizes.at(label)) / total_pixels);
        }
    }
    return stats;
}

}  // namespace salrank
