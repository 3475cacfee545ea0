// Ground-truth synthesis: instance scoring, pruning, image acceptance,
// salience assignment and nested-stack construction.
#pragma once

#include <optional>

#include "fixation.hpp"
#include "types.hpp"

namespace salrank {

enum class RejectKind {
    TooManyInstances,
    LowFixationCoverage,
    SalientAreaTooLarge,
    NoInstancesLeft
};

const char* reject_kind_name(RejectKind kind);

struct RejectionReason {
    RejectKind kind;
    double measured = 0.0;
    double threshold = 0.0;
};

struct AcceptDecision {
    std::optional<RejectionReason> rejection;  // empty means accepted
    bool accepted() const { return !rejection.has_value(); }
};

// Total blurred density over the pixels of one instance.
double masked_density(const FixationDensity& density,
                      const InstanceMap& instances, std::uint32_t label);

// score(label) = masked_density / |label|^exponent_alpha. Normalized scores
// divide by the per-image maximum (all zero when the maximum is zero).
RankScores rank_scores(const FixationDensity& density,
                       const InstanceMap& instances, double exponent_alpha);

// Drops instances larger than alpha1 of the image or with normalized score
// below alpha2. May return an empty map.
InstanceMap prune(const InstanceMap& instances, const RankScores& scores,
                  double alpha1, double alpha2);

// Acceptance tests, applied in order: instance count vs xi, fixation
// coverage vs ell, salient-area fraction vs gamma, emptiness.
AcceptDecision accept_image(const InstanceMap& pruned,
                            const FixationDensity& density, int xi, double ell,
                            double gamma);

// Strict salience order: descending score, then descending masked density,
// then ascending label.
std::vector<std::uint32_t> order_by_score(const RankScores& scores);

// Relative setting: rank r of tau instances gets gray round(255*(tau-r+1)/tau).
// Requires 1 <= tau <= 5.
RankedGroundTruth assign_relative(const RankScores& scores,
                                  const InstanceMap& pruned);

// Absolute setting: instances binned by cumulative score share counted from
// the bottom of the order (an instance's share plus everything ranked below
// it); bin b in 1..5 gets gray round(255*b/5). Requires positive total score.
RankedGroundTruth assign_absolute(const RankScores& scores,
                                  const InstanceMap& pruned);

// Five binary slices. Relative: slice j = union of the top-j instances,
// trailing slices repeat once instances run out. Absolute: slice j = all
// instances with gray >= round(255*(6-j)/5), accumulating downward; empty
// leading slices duplicate the first nonempty one.
NestedStack build_nested_stack(const RankedGroundTruth& gt);

// Per-pixel observer agreement converted to N slices, most exclusive first:
// slice i holds pixels marked by at least N-i+1 observers.
NestedStack observers_to_stack(const ObserverMaskSet& masks);

// Agreement-count grid (values 0..N) to an N-slice stack, same convention.
NestedStack agreement_counts_to_stack(const ImageGrid& counts, int n_observers);

struct ImageMeasurements {
    int instances_total = 0;
    int instances_kept = 0;
    double coverage = 0.0;
    double salient_fraction = 0.0;
};

// Outcome of the full per-image pipeline. gt and stack are set only when
// the image is accepted.
struct ProcessResult {
    ImageMeasurements measured;
    std::optional<RejectionReason> rejection;
    std::optional<RankedGroundTruth> gt;
    std::optional<NestedStack> stack;

    bool accepted() const { return !rejection.has_value(); }
};

// blur -> score -> prune -> accept -> assign -> stack for one image.
ProcessResult process_image(const InstanceMap& instances,
                            const FixationInput& fixations,
                            const GenConfig& config);

}  // namespace salrank
