// Core value types: errors, instance maps, fixation inputs, ranked ground
// truth, nested stacks and the generation config with its two presets.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "grid.hpp"

namespace salrank {

enum class ErrorKind { InvalidArgument, Io, Format, Integrity, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

// Integer-labelled instance segmentation. Label 0 is background; the grid
// stores labels as doubles but every value must be a nonnegative integer.
struct InstanceMap {
    ImageGrid grid;
    std::vector<std::uint32_t> labels;  // distinct nonzero labels, ascending

    static InstanceMap from_grid(ImageGrid grid);

    bool empty() const { return labels.empty(); }
    std::int64_t label_size(std::uint32_t label) const;
};

struct FixationPoint {
    int x = 0;
    int y = 0;
};

// Raw eye-tracking data: either discrete fixation points or an already
// accumulated nonnegative density grid.
struct FixationInput {
    std::variant<std::vector<FixationPoint>, ImageGrid> data;

    static FixationInput from_points(std::vector<FixationPoint> points);
    static FixationInput from_density(ImageGrid density);

    bool is_points() const { return data.index() == 0; }
    const std::vector<FixationPoint>& points() const {
        return std::get<0>(data);
    }
    const ImageGrid& density() const { return std::get<1>(data); }
};

// Blurred fixation density, nonnegative everywhere.
struct FixationDensity {
    ImageGrid grid;
};

// Raw and normalized per-instance rank scores. `masked` keeps the total
// masked density per instance for deterministic tie-breaking downstream.
struct RankScores {
    std::map<std::uint32_t, double> entries;
    std::map<std::uint32_t, double> normalized;
    std::map<std::uint32_t, double> masked;
};

enum class Setting { Relative, Absolute };

const char* setting_name(Setting s);
Setting setting_from_name(const std::string& name);

// Final per-image ground truth: a strict salience order over surviving
// instances and the gray level each one is painted with.
struct RankedGroundTruth {
    Setting setting = Setting::Relative;
    std::vector<std::uint32_t> order;           // most salient first
    std::map<std::uint32_t, int> gray_values;   // label -> 1..255
    std::map<std::uint32_t, double> scores;     // label -> raw rank score
    std::map<std::uint32_t, std::int64_t> sizes;  // label -> pixel count
    ImageGrid map;                              // painted gray, 0 background

    static RankedGroundTruth create(Setting setting,
                                    std::vector<std::uint32_t> order,
                                    std::map<std::uint32_t, int> gray_values,
                                    std::map<std::uint32_t, double> scores,
                                    std::map<std::uint32_t, std::int64_t> sizes,
                                    ImageGrid map);
};

// Binary masks ordered from most exclusive to most inclusive; every pixel
// set in slice i is set in slice i+1.
struct NestedStack {
    std::vector<ImageGrid> slices;

    static NestedStack from_slices(std::vector<ImageGrid> slices);
    int n_slices() const { return int(slices.size()); }
};

// Per-observer binary annotation masks for one image.
struct ObserverMaskSet {
    std::vector<ImageGrid> masks;

    static ObserverMaskSet from_masks(std::vector<ImageGrid> masks);
    int count() const { return int(masks.size()); }
};

// Continuous saliency prediction with values in [0, 1].
struct SaliencyMap {
    ImageGrid grid;

    static SaliencyMap from_grid(ImageGrid grid);
};

// Knobs of the synthesis pipeline. v1 and v2 are the published presets;
// v2 tightens the acceptance thresholds to keep only unambiguous images.
struct GenConfig {
    double sigma = 10.5;  // blur bandwidth
    int mu = 80;          // blur kernel size in pixels
    int xi = 5;           // max surviving instances
    double ell = 0.4;     // min fixation coverage by surviving instances
    double gamma = 0.65;  // max salient-area fraction of the image
    double alpha1 = 0.4;  // prune: instance size fraction above this
    double alpha2 = 0.7;  // prune: normalized score below this
    double exponent_alpha = 0.3;  // size-normalization exponent
    Setting setting = Setting::Relative;

    static GenConfig preset_v1();
    static GenConfig preset_v2();
    void validate() const;
};

bool is_binary_grid(const ImageGrid& g);

}  // namespace salrank
