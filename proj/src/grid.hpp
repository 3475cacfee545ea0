// Dense row-major 2D grid of doubles, the common pixel container.
#pragma once

#include <cstddef>
#include <vector>

namespace salrank {

struct ImageGrid {
    int width = 0;
    int height = 0;
    std::vector<double> values;  // row-major, index y*width + x

    ImageGrid() = default;
    ImageGrid(int w, int h, double fill = 0.0);

    static ImageGrid from_values(int w, int h, std::vector<double> vals);

    std::size_t size() const { return values.size(); }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    double at(int x, int y) const { return values[std::size_t(y) * width + x]; }
    double& at(int x, int y) { return values[std::size_t(y) * width + x]; }
    bool same_dims(const ImageGrid& o) const {
        return width == o.width && height == o.height;
    }
    double sum() const;
};

}  // namespace salrank
