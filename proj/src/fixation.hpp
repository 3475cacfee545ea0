// Gaussian blur of raw fixation data into a smooth density map.
#pragma once

#include <vector>

#include "types.hpp"

namespace salrank {

// Separable truncated Gaussian. The offset range is [lo, hi] with
// hi = lo + size - 1; for even sizes the window sits one pixel heavier on
// the negative side (lo = -size/2), for odd sizes it is centered.
struct GaussianKernel {
    int size = 0;
    double sigma = 0.0;
    int lo = 0;
    int hi = 0;
    std::vector<double> row;      // normalized 1D weights, row.size() == size
    std::vector<double> weights;  // 2D taps, weights[(dy-lo)*size + (dx-lo)]

    double weight(int dx, int dy) const {
        return weights[std::size_t(dy - lo) * size + (dx - lo)];
    }
};

GaussianKernel gaussian_kernel(double sigma, int mu);

// out(q) = sum_d w(d) * in(q - d) with zero padding outside the image.
// Point inputs are treated as unit impulses; density inputs are convolved
// separably. Point coordinates must lie inside the image.
FixationDensity blur_fixations(const FixationInput& fixations, int width,
                               int height, const GaussianKernel& kernel);

}  // namespace salrank
