// File formats: manifests, instance maps, fixations, ranked ground truth
// with JSON sidecars, stacks, observer masks and CSV/JSON report helpers.
#pragma once

#include <string>
#include <vector>

#include "detectmetrics.hpp"
#include "types.hpp"

namespace salrank {

struct ManifestEntry {
    std::string id;
    std::string instance_map_path;
    std::string fixation_path;
    std::string reference_rank_path;               // optional
    std::vector<std::string> observer_mask_paths;  // optional
    std::string split = "train";
};

struct Manifest {
    std::vector<ManifestEntry> entries;
};

Manifest read_manifest(const std::string& path);
void write_manifest(const Manifest& manifest, const std::string& path);

// Joins a manifest-relative path against the resolved root directory.
std::string resolve_path(const std::string& root, const std::string& rel);

// 8/16-bit grayscale PNG; pixel value = instance label, 0 = background.
InstanceMap read_instance_map(const std::string& path);
void write_instance_map(const InstanceMap& map, const std::string& path);

// ".csv" with an "x,y" header reads as fixation points; a PNG reads as a
// density map scaled to [0,1] by its bit depth.
FixationInput read_fixations(const std::string& path);
void write_fixation_points(const std::vector<FixationPoint>& points,
                           const std::string& path);

// PNG scaled to [0,1] by bit depth.
SaliencyMap read_saliency(const std::string& path);
void write_saliency(const SaliencyMap& map, const std::string& path);

// Strictly bilevel PNG: 0 and full scale only.
ImageGrid read_binary_mask(const std::string& path);
void write_binary_mask(const ImageGrid& mask, const std::string& path);

// The gray map goes to `png_path`, the ordering metadata to a JSON sidecar
// next to it (<stem>.rank.json). Reading requires both and cross-checks the
// pixels against the sidecar.
void write_ranked_gt(const RankedGroundTruth& gt, const std::string& png_path);
RankedGroundTruth read_ranked_gt(const std::string& png_path);

// Order only, from either a sidecar (.json) or a ranked map (.png).
std::vector<std::uint32_t> read_rank_order(const std::string& path);

// Slices stored as <stem>.slice1.png .. <stem>.sliceK.png. Reading validates
// bilevel content and the nesting invariant.
void write_stack(const NestedStack& stack, const std::string& stem);
NestedStack read_stack(const std::string& stem);

// Round toward 9 significant digits; report serialization uses this so
// reruns are byte-identical.
double sig9(double v);
std::string format_sig9(double v);

void write_text_file(const std::string& path, const std::string& content);

void write_curve_csv(const std::string& path,
                     const std::vector<CurvePoint>& points);

// Filenames directly under `dir` with the given suffix, sorted, suffix
// stripped.
std::vector<std::string> list_stems(const std::string& dir,
                                    const std::string& suffix);

}  // namespace salrank
