#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace salrank {

ImageGrid::ImageGrid(int w, int h, double fill) {
    if (w < 1 || h < 1)
        fail(ErrorKind::InvalidArgument,
             "grid dimensions must be positive, got " + std::to_string(w) +
                 "x" + std::to_string(h));
    width = w;
    height = h;
    values.assign(std::size_t(w) * h, fill);
}

ImageGrid ImageGrid::from_values(int w, int h, std::vector<double> vals) {
    if (w < 1 || h < 1)
        fail(ErrorKind::InvalidArgument,
             "grid dimensions must be positive, got " + std::to_string(w) +
                 "x" + std::to_string(h));
    if (vals.size() != std::size_t(w) * h)
        fail(ErrorKind::InvalidArgument,
             "grid value count " + std::to_string(vals.size()) +
                 " does not match " + std::to_string(w) + "x" +
                 std::to_string(h));
    ImageGrid g;
    g.width = w;
    g.height = h;
    g.values = std::move(vals);
    return g;
}

double ImageGrid::sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

bool is_binary_grid(const ImageGrid& g) {
    for (double v : g.values)
        if (v != 0.0 && v != 1.0) return false;
    return true;
}

InstanceMap InstanceMap::from_grid(ImageGrid grid) {
    std::set<std::uint32_t> seen;
    for (double v : grid.values) {
        if (!(v >= 0.0) || v != std::floor(v) || v > 4294967295.0)
            fail(ErrorKind::Format,
                 "instance map entries must be nonnegative integer labels");
        auto label = std::uint32_t(v);
        if (label != 0) seen.insert(label);
    }
    InstanceMap m;
    m.grid = std::move(grid);
    m.labels.assign(seen.begin(), seen.end());
    return m;
}

std::int64_t InstanceMap::label_size(std::uint32_t label) const {
    std::int64_t n = 0;
    for (double v : grid.values)
        if (std::uint32_t(v) == label) ++n;
    return n;
}

FixationInput FixationInput::from_points(std::vector<FixationPoint> points) {
    FixationInput f;
    f.data = std::move(points);
    return f;
}

FixationInput FixationInput::from_density(ImageGrid density) {
    for (double v : density.values)
        if (!(v >= 0.0))
            fail(ErrorKind::Format, "fixation density must be nonnegative");
    FixationInput f;
    f.data = std::move(density);
    return f;
}

const char* setting_name(Setting s) {
    return s == Setting::Relative ? "relative" : "absolute";
}

Setting setting_from_name(const std::string& name) {
    if (name == "relative") return Setting::Relative;
    if (name == "absolute") return Setting::Absolute;
    fail(ErrorKind::InvalidArgument,
         "unknown setting '" + name + "', expected relative or absolute");
}

RankedGroundTruth RankedGroundTruth::create(
    Setting setting, std::vector<std::uint32_t> order,
    std::map<std::uint32_t, int> gray_values,
    std::map<std::uint32_t, double> scores,
    std::map<std::uint32_t, std::int64_t> sizes, ImageGrid map) {
    std::set<std::uint32_t> distinct(order.begin(), order.end());
    if (distinct.size() != order.size())
        fail(ErrorKind::Integrity, "rank order repeats an instance label");
    for (std::uint32_t label : order) {
        auto it = gray_values.find(label);
        if (it == gray_values.end())
            fail(ErrorKind::Integrity,
                 "no gray value for ranked label " + std::to_string(label));
        if (it->second < 1 || it->second > 255)
            fail(ErrorKind::Integrity,
                 "gray value out of range for label " + std::to_string(label));
    }
    if (gray_values.size() != order.size())
        fail(ErrorKind::Integrity, "gray values listed for unranked labels");
    // Gray must be nonincreasing along the order: equal gray is legal in the
    // absolute setting when instances share a bin, never increasing.
    for (std::size_t i = 1; i < order.size(); ++i)
        if (gray_values.at(order[i]) > gray_values.at(order[i - 1]))
            fail(ErrorKind::Integrity,
                 "gray values increase along the salience order");
    RankedGroundTruth gt;
    gt.setting = setting;
    gt.order = std::move(order);
    gt.gray_values = std::move(gray_values);
    gt.scores = std::move(scores);
    gt.sizes = std::move(sizes);
    gt.map = std::move(map);
    return gt;
}

NestedStack NestedStack::from_slices(std::vector<ImageGrid> slices) {
    if (slices.empty())
        fail(ErrorKind::InvalidArgument, "stack needs at least one slice");
    for (std::size_t i = 0; i < slices.size(); ++i) {
        if (!is_binary_grid(slices[i]))
            fail(ErrorKind::Integrity,
                 "stack slice " + std::to_string(i + 1) + " is not binary");
        if (!slices[i].same_dims(slices[0]))
            fail(ErrorKind::Integrity,
                 "stack slice " + std::to_string(i + 1) +
                     " has mismatched dimensions");
    }
    for (std::size_t i = 0; i + 1 < slices.size(); ++i)
        for (std::size_t p = 0; p < slices[i].values.size(); ++p)
            if (slices[i].values[p] != 0.0 && slices[i + 1].values[p] == 0.0)
                fail(ErrorKind::Integrity,
                     "nesting violated: slice " + std::to_string(i + 1) +
                         " is not contained in slice " + std::to_string(i + 2));
    NestedStack s;
    s.slices = std::move(slices);
    return s;
}

ObserverMaskSet ObserverMaskSet::from_masks(std::vector<ImageGrid> masks) {
    if (masks.empty())
        fail(ErrorKind::InvalidArgument, "observer set needs at least one mask");
    for (std::size_t i = 0; i < masks.size(); ++i) {
        if (!is_binary_grid(masks[i]))
            fail(ErrorKind::Format,
                 "observer mask " + std::to_string(i + 1) + " is not binary");
        if (!masks[i].same_dims(masks[0]))
            fail(ErrorKind::Format,
                 "observer mask " + std::to_string(i + 1) +
                     " has mismatched dimensions");
    }
    ObserverMaskSet s;
    s.masks = std::move(masks);
    return s;
}

SaliencyMap SaliencyMap::from_grid(ImageGrid grid) {
    for (double v : grid.values)
        if (!(v >= 0.0 && v <= 1.0))
            fail(ErrorKind::Format, "saliency values must lie in [0,1]");
    SaliencyMap m;
    m.grid = std::move(grid);
    return m;
}

GenConfig GenConfig::preset_v1() { return GenConfig{}; }

GenConfig GenConfig::preset_v2() {
    GenConfig c;
    c.ell = 0.7;
    c.alpha2 = 0.9;
    return c;
}

void GenConfig::validate() const {
    if (!(sigma > 0.0))
        fail(ErrorKind::InvalidArgument, "sigma must be positive");
    if (mu < 1)
        fail(ErrorKind::InvalidArgument, "mu must be a positive kernel size");
    if (xi < 1)
        fail(ErrorKind::InvalidArgument, "xi must allow at least one instance");
    if (!(ell >= 0.0 && ell <= 1.0))
        fail(ErrorKind::InvalidArgument, "ell must lie in [0,1]");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        fail(ErrorKind::InvalidArgument, "gamma must lie in [0,1]");
    if (!(alpha1 >= 0.0 && alpha1 <= 1.0))
        fail(ErrorKind::InvalidArgument, "alpha1 must lie in [0,1]");
    if (!(alpha2 >= 0.0 && alpha2 <= 1.0))
        fail(ErrorKind::InvalidArgument, "alpha2 must lie in [0,1]");
    if (!(exponent_alpha > 0.0 && exponent_alpha <= 1.0))
        fail(ErrorKind::InvalidArgument, "alpha exponent must lie in (0,1]");
}

}  // namespace salrank
