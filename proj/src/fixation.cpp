#include "fixation.hpp"

#include <cmath>

namespace salrank {

GaussianKernel gaussian_kernel(double sigma, int mu) {
    if (!(sigma > 0.0))
        fail(ErrorKind::InvalidArgument, "sigma must be positive");
    if (mu < 1)
        fail(ErrorKind::InvalidArgument, "kernel size must be positive");
    GaussianKernel k;
    k.size = mu;
    k.sigma = sigma;
    k.lo = (mu % 2 == 0) ? -mu / 2 : -(mu - 1) / 2;
    k.hi = k.lo + mu - 1;
    k.row.resize(mu);
    double norm = 0.0;
    for (int i = 0; i < mu; ++i) {
        double d = double(k.lo + i);
        k.row[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
        norm += k.row[i];
    }
    for (double& w : k.row) w /= norm;
    k.weights.resize(std::size_t(mu) * mu);
    for (int j = 0; j < mu; ++j)
        for (int i = 0; i < mu; ++i)
            k.weights[std::size_t(j) * mu + i] = k.row[j] * k.row[i];
    return k;
}

namespace {

ImageGrid blur_points(const std::vector<FixationPoint>& points, int width,
                      int height, const GaussianKernel& k) {
    ImageGrid out(width, height);
    for (const FixationPoint& p : points) {
        if (!out.in_bounds(p.x, p.y))
            fail(ErrorKind::InvalidArgument,
                 "fixation point (" + std::to_string(p.x) + "," +
                     std::to_string(p.y) + ") outside " +
                     std::to_string(width) + "x" + std::to_string(height));
        for (int dy = k.lo; dy <= k.hi; ++dy) {
            int y = p.y + dy;
            if (y < 0 || y >= height) continue;
            for (int dx = k.lo; dx <= k.hi; ++dx) {
                int x = p.x + dx;
                if (x < 0 || x >= width) continue;
                out.at(x, y) += k.weight(dx, dy);
            }
        }
    }
    return out;
}

ImageGrid blur_density(const ImageGrid& in, const GaussianKernel& k) {
    // Separable pass: horizontal then vertical, zero padding.
    ImageGrid mid(in.width, in.height);
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x) {
            double acc = 0.0;
            for (int i = 0; i < k.size; ++i) {
                int sx = x - (k.lo + i);
                if (sx < 0 || sx >= in.width) continue;
                acc += k.row[i] * in.at(sx, y);
            }
            mid.at(x, y) = acc;
        }
    ImageGrid out(in.width, in.height);
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x) {
            double acc = 0.0;
            for (int i = 0; i < k.size; ++i) {
                int sy = y - (k.lo + i);
                if (sy < 0 || sy >= in.height) continue;
                acc += k.row[i] * mid.at(x, sy);
            }
            out.at(x, y) = acc;
        }
    return out;
}

}  // namespace

FixationDensity blur_fixations(const FixationInput& fixations, int width,
                               int height, const GaussianKernel& kernel) {
    if (width < 1 || height < 1)
        fail(ErrorKind::InvalidArgument, "image dimensions must be positive");
    FixationDensity d;
    if (fixations.is_points()) {
        d.grid = blur_points(fixations.points(), width, height, kernel);
    } else {
        const ImageGrid& in = fixations.density();
        if (in.width != width || in.height != height)
            fail(ErrorKind::InvalidArgument,
                 "fixation density dimensions do not match the image");
        d.grid = blur_density(in, kernel);
    }
    return d;
}

}  // namespace salrank
