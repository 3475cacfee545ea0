#include "rankgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace salrank {

const char* reject_kind_name(RejectKind kind) {
    switch (kind) {
        case RejectKind::TooManyInstances: return "TooManyInstances";
        case RejectKind::LowFixationCoverage: return "LowFixationCoverage";
        case RejectKind::SalientAreaTooLarge: return "SalientAreaTooLarge";
        case RejectKind::NoInstancesLeft: return "NoInstancesLeft";
    }
    return "Unknown";
}

double masked_density(const FixationDensity& density,
                      const InstanceMap& instances, std::uint32_t label) {
    if (!density.grid.same_dims(instances.grid))
        fail(ErrorKind::InvalidArgument,
             "density and instance map dimensions differ");
    if (!std::binary_search(instances.labels.begin(), instances.labels.end(),
                            label))
        fail(ErrorKind::InvalidArgument,
             "label " + std::to_string(label) + " not present in instance map");
    double total = 0.0;
    for (std::size_t i = 0; i < density.grid.values.size(); ++i)
        if (std::uint32_t(instances.grid.values[i]) == label)
            total += density.grid.values[i];
    return total;
}

RankScores rank_scores(const FixationDensity& density,
                       const InstanceMap& instances, double exponent_alpha) {
    if (instances.empty())
        fail(ErrorKind::InvalidArgument, "instance map has no instances");
    if (!(exponent_alpha > 0.0 && exponent_alpha <= 1.0))
        fail(ErrorKind::InvalidArgument, "exponent alpha must lie in (0,1]");
    if (!density.grid.same_dims(instances.grid))
        fail(ErrorKind::InvalidArgument,
             "density and instance map dimensions differ");
    // One pass accumulates mass and size per label.
    std::map<std::uint32_t, double> mass;
    std::map<std::uint32_t, std::int64_t> size;
    for (std::uint32_t label : instances.labels) {
        mass[label] = 0.0;
        size[label] = 0;
    }
    for (std::size_t i = 0; i < instances.grid.values.size(); ++i) {
        auto label = std::uint32_t(instances.grid.values[i]);
        if (label == 0) continue;
        mass[label] += density.grid.values[i];
        size[label] += 1;
    }
    RankScores s;
    double max_score = 0.0;
    for (std::uint32_t label : instances.labels) {
        double score =
            mass[label] / std::pow(double(size[label]), exponent_alpha);
        s.entries[label] = score;
        s.masked[label] = mass[label];
        max_score = std::max(max_score, score);
    }
    for (auto& [label, score] : s.entries)
        s.normalized[label] = max_score > 0.0 ? score / max_score : 0.0;
    return s;
}

InstanceMap prune(const InstanceMap& instances, const RankScores& scores,
                  double alpha1, double alpha2) {
    std::set<std::uint32_t> drop;
    double total_pixels = double(instances.grid.size());
    std::map<std::uint32_t, std::int64_t> size;
    for (double v : instances.grid.values) {
        auto label = std::uint32_t(v);
        if (label != 0) size[label] += 1;
    }
    for (std::uint32_t label : instances.labels) {
        auto norm = scores.normalized.find(label);
        if (norm == scores.normalized.end())
            fail(ErrorKind::InvalidArgument,
                 "scores missing label " + std::to_string(label));
        if (double(size[label]) / total_pixels > alpha1) drop.insert(label);
        if (norm->second < alpha2) drop.insert(label);
    }
    ImageGrid pruned = instances.grid;
    for (double& v : pruned.values)
        if (drop.count(std::uint32_t(v))) v = 0.0;
    return InstanceMap::from_grid(std::move(pruned));
}

AcceptDecision accept_image(const InstanceMap& pruned,
                            const FixationDensity& density, int xi, double ell,
                            double gamma) {
    if (!pruned.grid.same_dims(density.grid))
        fail(ErrorKind::InvalidArgument,
             "density and instance map dimensions differ");
    AcceptDecision d;
    int count = int(pruned.labels.size());
    if (count > xi) {
        d.rejection = RejectionReason{RejectKind::TooManyInstances,
                                      double(count), double(xi)};
        return d;
    }
    double total = 0.0, captured = 0.0;
    std::int64_t salient_pixels = 0;
    for (std::size_t i = 0; i < density.grid.values.size(); ++i) {
        total += density.grid.values[i];
        if (pruned.grid.values[i] != 0.0) {
            captured += density.grid.values[i];
            ++salient_pixels;
        }
    }
    double coverage = total > 0.0 ? captured / total : 0.0;
    if (coverage < ell) {
        d.rejection =
            RejectionReason{RejectKind::LowFixationCoverage, coverage, ell};
        return d;
    }
    double fraction = double(salient_pixels) / double(pruned.grid.size());
    if (fraction > gamma) {
        d.rejection =
            RejectionReason{RejectKind::SalientAreaTooLarge, fraction, gamma};
        return d;
    }
    if (count == 0) {
        d.rejection = RejectionReason{RejectKind::NoInstancesLeft, 0.0, 1.0};
        return d;
    }
    return d;
}

std::vector<std::uint32_t> order_by_score(const RankScores& scores) {
    std::vector<std::uint32_t> order;
    order.reserve(scores.entries.size());
    for (const auto& [label, score] : scores.entries) order.push_back(label);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                  double sa = scores.entries.at(a), sb = scores.entries.at(b);
                  if (sa != sb) return sa > sb;
                  double ma = scores.masked.count(a) ? scores.masked.at(a) : 0.0;
                  double mb = scores.masked.count(b) ? scores.masked.at(b) : 0.0;
                  if (ma != mb) return ma > mb;
                  return a < b;
              });
    return order;
}

namespace {

ImageGrid paint(const InstanceMap& pruned,
                const std::map<std::uint32_t, int>& gray_values) {
    ImageGrid out(pruned.grid.width, pruned.grid.height);
    for (std::size_t i = 0; i < pruned.grid.values.size(); ++i) {
        auto label = std::uint32_t(pruned.grid.values[i]);
        if (label == 0) continue;
        out.values[i] = double(gray_values.at(label));
    }
    return out;
}

std::map<std::uint32_t, std::int64_t> label_sizes(const InstanceMap& m) {
    std::map<std::uint32_t, std::int64_t> size;
    for (std::uint32_t label : m.labels) size[label] = 0;
    for (double v : m.grid.values) {
        auto label = std::uint32_t(v);
        if (label != 0) size[label] += 1;
    }
    return size;
}

std::map<std::uint32_t, double> scores_for(const RankScores& scores,
                                           const InstanceMap& pruned) {
    std::map<std::uint32_t, double> out;
    for (std::uint32_t label : pruned.labels) {
        auto it = scores.entries.find(label);
        if (it == scores.entries.end())
            fail(ErrorKind::InvalidArgument,
                 "scores missing label " + std::to_string(label));
        out[label] = it->second;
    }
    return out;
}

RankScores restrict(const RankScores& scores, const InstanceMap& pruned) {
    RankScores out;
    for (std::uint32_t label : pruned.labels) {
        out.entries[label] = scores.entries.at(label);
        if (scores.masked.count(label)) out.masked[label] = scores.masked.at(label);
        if (scores.normalized.count(label))
            out.normalized[label] = scores.normalized.at(label);
    }
    return out;
}

}  // namespace

RankedGroundTruth assign_relative(const RankScores& scores,
                                  const InstanceMap& pruned) {
    if (pruned.empty())
        fail(ErrorKind::InvalidArgument, "cannot rank an empty instance map");
    int tau = int(pruned.labels.size());
    if (tau > 5)
        fail(ErrorKind::InvalidArgument,
             "relative setting supports at most 5 instances, got " +
                 std::to_string(tau));
    std::vector<std::uint32_t> order = order_by_score(restrict(scores, pruned));
    std::map<std::uint32_t, int> gray;
    for (int r = 1; r <= tau; ++r)
        gray[order[r - 1]] = int(std::lround(255.0 * (tau - r + 1) / tau));
    return RankedGroundTruth::create(Setting::Relative, order, gray,
                                     scores_for(scores, pruned),
                                     label_sizes(pruned),
                                     paint(pruned, gray));
}

RankedGroundTruth assign_absolute(const RankScores& scores,
                                  const InstanceMap& pruned) {
    if (pruned.empty())
        fail(ErrorKind::InvalidArgument, "cannot rank an empty instance map");
    std::vector<std::uint32_t> order = order_by_score(restrict(scores, pruned));
    double total = 0.0;
    for (std::uint32_t label : order) total += scores.entries.at(label);
    if (!(total > 0.0))
        fail(ErrorKind::InvalidArgument,
             "absolute setting needs positive total score");
    // Cumulative share counted from the bottom of the order, so the most
    // salient instance always lands in the top bin.
    std::map<std::uint32_t, int> gray;
    double suffix = 0.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        suffix += scores.entries.at(*it) / total;
        int bin = int(std::ceil(5.0 * suffix - 1e-9));
        bin = std::clamp(bin, 1, 5);
        gray[*it] = int(std::lround(255.0 * bin / 5.0));
    }
    return RankedGroundTruth::create(Setting::Absolute, order, gray,
                                     scores_for(scores, pruned),
                                     label_sizes(pruned),
                                     paint(pruned, gray));
}

namespace {

ImageGrid union_of(const RankedGroundTruth& gt,
                   const std::vector<std::uint32_t>& labels) {
    ImageGrid out(gt.map.width, gt.map.height);
    std::set<int> grays;
    for (std::uint32_t label : labels) grays.insert(gt.gray_values.at(label));
    // The painted map only keeps gray values, so recover membership by gray.
    for (std::size_t i = 0; i < gt.map.values.size(); ++i)
        if (gt.map.values[i] != 0.0 && grays.count(int(gt.map.values[i])))
            out.values[i] = 1.0;
    return out;
}

}  // namespace

NestedStack build_nested_stack(const RankedGroundTruth& gt) {
    std::vector<ImageGrid> slices;
    if (gt.setting == Setting::Relative) {
        int tau = int(gt.order.size());
        for (int j = 1; j <= 5; ++j) {
            int take = std::min(j, tau);
            std::vector<std::uint32_t> top(gt.order.begin(),
                                           gt.order.begin() + take);
            slices.push_back(union_of(gt, top));
        }
    } else {
        // Accumulate instances whose gray value clears each bin floor.
        for (int j = 1; j <= 5; ++j) {
            int floor_gray = int(std::lround(255.0 * (6 - j) / 5.0));
            std::vector<std::uint32_t> members;
            for (std::uint32_t label : gt.order)
                if (gt.gray_values.at(label) >= floor_gray)
                    members.push_back(label);
            slices.push_back(union_of(gt, members));
        }
        // Leading slices may be empty only if no instance reached the top
        // bin, which assign_absolute rules out; duplicate forward anyway so
        // the stack never carries an all-zero slice before a nonzero one.
        int first_nonzero = -1;
        for (int j = 0; j < 5; ++j)
            if (slices[j].sum() > 0.0) { first_nonzero = j; break; }
        for (int j = 0; j < first_nonzero; ++j) slices[j] = slices[first_nonzero];
    }
    return NestedStack::from_slices(std::move(slices));
}

NestedStack agreement_counts_to_stack(const ImageGrid& counts,
                                      int n_observers) {
    if (n_observers < 1)
        fail(ErrorKind::InvalidArgument, "need at least one observer");
    for (double v : counts.values)
        if (!(v >= 0.0) || v != std::floor(v) || v > double(n_observers))
            fail(ErrorKind::InvalidArgument,
                 "agreement counts must be integers in 0.." +
                     std::to_string(n_observers));
    std::vector<ImageGrid> slices;
    for (int i = 1; i <= n_observers; ++i) {
        int level = n_observers - i + 1;  // slice 1 = full agreement
        ImageGrid slice(counts.width, counts.height);
        for (std::size_t p = 0; p < counts.values.size(); ++p)
            slice.values[p] = counts.values[p] >= double(level) ? 1.0 : 0.0;
        slices.push_back(std::move(slice));
    }
    return NestedStack::from_slices(std::move(slices));
}

NestedStack observers_to_stack(const ObserverMaskSet& masks) {
    ImageGrid counts(masks.masks[0].width, masks.masks[0].height);
    for (const ImageGrid& m : masks.masks)
        for (std::size_t p = 0; p < m.values.size(); ++p)
            counts.values[p] += m.values[p];
    return agreement_counts_to_stack(counts, masks.count());
}

ProcessResult process_image(const InstanceMap& instances,
                            const FixationInput& fixations,
                            const GenConfig& config) {
    config.validate();
    ProcessResult r;
    r.measured.instances_total = int(instances.labels.size());
    GaussianKernel kernel = gaussian_kernel(config.sigma, config.mu);
    FixationDensity density = blur_fixations(
        fixations, instances.grid.width, instances.grid.height, kernel);
    InstanceMap pruned;
    RankScores scores;
    if (instances.empty()) {
        // Nothing to rank; run the acceptance tests on an empty survivor set
        // so the rejection reason follows the usual check order.
        pruned = InstanceMap::from_grid(
            ImageGrid(instances.grid.width, instances.grid.height));
    } else {
        scores = rank_scores(density, instances, config.exponent_alpha);
        pruned = prune(instances, scores, config.alpha1, config.alpha2);
    }
    r.measured.instances_kept = int(pruned.labels.size());

    double total = 0.0, captured = 0.0;
    std::int64_t salient = 0;
    for (std::size_t i = 0; i < density.grid.values.size(); ++i) {
        total += density.grid.values[i];
        if (pruned.grid.values[i] != 0.0) {
            captured += density.grid.values[i];
            ++salient;
        }
    }
    r.measured.coverage = total > 0.0 ? captured / total : 0.0;
    r.measured.salient_fraction = double(salient) / double(pruned.grid.size());

    AcceptDecision decision =
        accept_image(pruned, density, config.xi, config.ell, config.gamma);
    if (!decision.accepted()) {
        r.rejection = decision.rejection;
        return r;
    }
    RankedGroundTruth gt = config.setting == Setting::Relative
                               ? assign_relative(scores, pruned)
                               : assign_absolute(scores, pruned);
    r.stack = build_nested_stack(gt);
    r.gt = std::move(gt);
    return r;
}

}  // namespace salrank
