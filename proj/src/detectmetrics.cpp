#include "detectmetrics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace salrank {

std::vector<double> default_threshold_grid() {
    std::vector<double> t(255);
    for (int k = 1; k <= 255; ++k) t[k - 1] = k / 255.0;
    return t;
}

ImageGrid binarize_gt(const NestedStack& agreement, int level) {
    int n = agreement.n_slices();
    if (level < 1 || level > n)
        fail(ErrorKind::InvalidArgument,
             "agreement level " + std::to_string(level) + " outside 1.." +
                 std::to_string(n));
    // Slice i holds pixels with count >= n-i+1, so level k lives at index n-k.
    return agreement.slices[std::size_t(n - level)];
}

ImageGrid binarize_gt(const ObserverMaskSet& masks, int level) {
    int n = masks.count();
    if (level < 1 || level > n)
        fail(ErrorKind::InvalidArgument,
             "agreement level " + std::to_string(level) + " outside 1.." +
                 std::to_string(n));
    ImageGrid out(masks.masks[0].width, masks.masks[0].height);
    for (std::size_t p = 0; p < out.values.size(); ++p) {
        int count = 0;
        for (const ImageGrid& m : masks.masks) count += m.values[p] != 0.0;
        out.values[p] = count >= level ? 1.0 : 0.0;
    }
    return out;
}

std::vector<CurvePoint> confusion_curve(const SaliencyMap& saliency,
                                        const ImageGrid& gt,
                                        const std::vector<double>& thresholds) {
    if (!saliency.grid.same_dims(gt))
        fail(ErrorKind::InvalidArgument,
             "saliency and ground-truth dimensions differ");
    // Sort the saliency values of each class once; every threshold then
    // reduces to two binary searches.
    std::vector<double> pos_vals, neg_vals;
    for (std::size_t i = 0; i < gt.values.size(); ++i)
        (gt.values[i] != 0.0 ? pos_vals : neg_vals)
            .push_back(saliency.grid.values[i]);
    std::sort(pos_vals.begin(), pos_vals.end());
    std::sort(neg_vals.begin(), neg_vals.end());
    auto count_at_least = [](const std::vector<double>& sorted, double t) {
        return double(sorted.end() -
                      std::lower_bound(sorted.begin(), sorted.end(), t));
    };
    double pos = double(pos_vals.size()), neg = double(neg_vals.size());
    std::vector<CurvePoint> points;
    points.reserve(thresholds.size());
    for (double t : thresholds) {
        double tp = count_at_least(pos_vals, t);
        double fp = count_at_least(neg_vals, t);
        CurvePoint p;
        p.threshold = t;
        p.tpr = pos > 0.0 ? tp / pos : 0.0;
        p.recall = p.tpr;
        p.fpr = neg > 0.0 ? fp / neg : 0.0;
        p.precision = (tp + fp) > 0.0 ? tp / (tp + fp) : 1.0;
        points.push_back(p);
    }
    return points;
}

std::vector<CurvePoint> roc_points(const SaliencyMap& saliency,
                                   const ImageGrid& gt,
                                   const std::vector<double>& thresholds) {
    bool has_pos = false, has_neg = false;
    for (double v : gt.values) (v != 0.0 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        fail(ErrorKind::InvalidArgument,
             "ROC needs both classes present in the ground truth");
    return confusion_curve(saliency, gt, thresholds);
}

double auc(const std::vector<CurvePoint>& points) {
    if (points.empty())
        fail(ErrorKind::InvalidArgument, "AUC needs at least one curve point");
    std::vector<std::pair<double, double>> xy;
    xy.reserve(points.size() + 2);
    xy.emplace_back(0.0, 0.0);
    for (const CurvePoint& p : points) xy.emplace_back(p.fpr, p.tpr);
    xy.emplace_back(1.0, 1.0);
    std::sort(xy.begin(), xy.end());
    double area = 0.0;
    for (std::size_t i = 1; i < xy.size(); ++i)
        area += (xy[i].first - xy[i - 1].first) *
                (xy[i].second + xy[i - 1].second) / 2.0;
    return area;
}

double f_score(double precision, double recall, double beta_sq) {
    double denom = beta_sq * precision + recall;
    if (denom == 0.0) return 0.0;
    return (1.0 + beta_sq) * precision * recall / denom;
}

std::pair<double, double> f_measures(const std::vector<CurvePoint>& points,
                                     double beta_sq) {
    if (points.empty())
        fail(ErrorKind::InvalidArgument, "F-measure needs curve points");
    if (!(beta_sq > 0.0))
        fail(ErrorKind::InvalidArgument, "beta squared must be positive");
    double best = 0.0, total = 0.0;
    for (const CurvePoint& p : points) {
        double f = f_score(p.precision, p.recall, beta_sq);
        best = std::max(best, f);
        total += f;
    }
    return {best, total / double(points.size())};
}

double mae(const SaliencyMap& saliency, const ImageGrid& gt) {
    if (!saliency.grid.same_dims(gt))
        fail(ErrorKind::InvalidArgument,
             "saliency and ground-truth dimensions differ");
    double total = 0.0;
    for (std::size_t i = 0; i < gt.values.size(); ++i)
        total += std::abs(saliency.grid.values[i] -
                          (gt.values[i] != 0.0 ? 1.0 : 0.0));
    return total / double(gt.values.size());
}

namespace {

constexpr double kEps = DBL_EPSILON;

// 2x/(x^2+1+sigma+eps) over the masked region.
double object_term(const ImageGrid& pred, const ImageGrid& gt, bool fg) {
    double n = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < gt.values.size(); ++i) {
        bool in = (gt.values[i] != 0.0) == fg;
        if (!in) continue;
        double v = fg ? pred.values[i] : 1.0 - pred.values[i];
        sum += v;
        n += 1.0;
    }
    if (n == 0.0) return 0.0;
    double x = sum / n;
    double var = 0.0;
    for (std::size_t i = 0; i < gt.values.size(); ++i) {
        bool in = (gt.values[i] != 0.0) == fg;
        if (!in) continue;
        double v = fg ? pred.values[i] : 1.0 - pred.values[i];
        var += (v - x) * (v - x);
    }
    double sigma = n > 1.0 ? std::sqrt(var / (n - 1.0)) : 0.0;
    return 2.0 * x / (x * x + 1.0 + sigma + kEps);
}

double s_object(const ImageGrid& pred, const ImageGrid& gt) {
    double u = 0.0;
    for (double v : gt.values) u += v != 0.0 ? 1.0 : 0.0;
    u /= double(gt.values.size());
    return u * object_term(pred, gt, true) +
           (1.0 - u) * object_term(pred, gt, false);
}

// Similarity of one quadrant, the variance-based form with sample
// normalization N-1+eps. Empty quadrants score 1 and carry zero weight.
double region_quadrant(const ImageGrid& pred, const ImageGrid& gt, int x0,
                       int x1, int y0, int y1) {
    double n = double(x1 - x0) * double(y1 - y0);
    if (n <= 0.0) return 1.0;
    double mx = 0.0, my = 0.0;
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
            mx += pred.at(x, y);
            my += gt.at(x, y) != 0.0 ? 1.0 : 0.0;
        }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
            double dx = pred.at(x, y) - mx;
            double dy = (gt.at(x, y) != 0.0 ? 1.0 : 0.0) - my;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
    sxx /= n - 1.0 + kEps;
    syy /= n - 1.0 + kEps;
    sxy /= n - 1.0 + kEps;
    double a = 4.0 * mx * my * sxy;
    double b = (mx * mx + my * my) * (sxx + syy);
    if (a != 0.0) return a / (b + kEps);
    return b == 0.0 ? 1.0 : 0.0;
}

double s_region(const ImageGrid& pred, const ImageGrid& gt) {
    int w = gt.width, h = gt.height;
    double total = 0.0, cx = 0.0, cy = 0.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (gt.at(x, y) != 0.0) {
                total += 1.0;
                cx += double(x + 1);  // 1-based pixel coordinates
                cy += double(y + 1);
            }
    int X, Y;
    if (total == 0.0) {
        X = int(std::lround(w / 2.0));
        Y = int(std::lround(h / 2.0));
    } else {
        X = int(std::lround(cx / total));
        Y = int(std::lround(cy / total));
    }
    double area = double(w) * double(h);
    double w1 = double(X) * double(Y) / area;
    double w2 = double(w - X) * double(Y) / area;
    double w3 = double(X) * double(h - Y) / area;
    double w4 = 1.0 - w1 - w2 - w3;
    double q1 = region_quadrant(pred, gt, 0, X, 0, Y);
    double q2 = region_quadrant(pred, gt, X, w, 0, Y);
    double q3 = region_quadrant(pred, gt, 0, X, Y, h);
    double q4 = region_quadrant(pred, gt, X, w, Y, h);
    return w1 * q1 + w2 * q2 + w3 * q3 + w4 * q4;
}

}  // namespace

double s_measure(const SaliencyMap& saliency, const ImageGrid& gt,
                 double mix_alpha) {
    if (!saliency.grid.same_dims(gt))
        fail(ErrorKind::InvalidArgument,
             "saliency and ground-truth dimensions differ");
    if (!(mix_alpha >= 0.0 && mix_alpha <= 1.0))
        fail(ErrorKind::InvalidArgument, "mix alpha must lie in [0,1]");
    double mean_gt = 0.0;
    for (double v : gt.values) mean_gt += v != 0.0 ? 1.0 : 0.0;
    mean_gt /= double(gt.values.size());
    double mean_pred = saliency.grid.sum() / double(gt.values.size());
    if (mean_gt == 0.0) return 1.0 - mean_pred;
    if (mean_gt == 1.0) return mean_pred;
    double q = mix_alpha * s_object(saliency.grid, gt) +
               (1.0 - mix_alpha) * s_region(saliency.grid, gt);
    return q < 0.0 ? 0.0 : q;
}

DetectReport best_over_observers(const SaliencyMap& saliency,
                                 const NestedStack& agreement, double beta_sq,
                                 const std::vector<double>& thresholds) {
    if (!(beta_sq > 0.0))
        fail(ErrorKind::InvalidArgument, "beta squared must be positive");
    if (thresholds.empty())
        fail(ErrorKind::InvalidArgument, "threshold grid is empty");
    DetectReport report;
    report.levels = agreement.n_slices();
    for (int k = 1; k <= report.levels; ++k) {
        ImageGrid gt = binarize_gt(agreement, k);
        double pos = gt.sum();
        bool has_pos = pos > 0.0;
        bool has_neg = pos < double(gt.values.size());

        double m = mae(saliency, gt);
        if (!report.mae_best.value || m < *report.mae_best.value)
            report.mae_best = {m, k};

        double s = s_measure(saliency, gt);
        if (!report.s_best.value || s > *report.s_best.value)
            report.s_best = {s, k};

        if (!has_pos) continue;  // precision/recall undefined without positives
        std::vector<CurvePoint> curve = confusion_curve(saliency, gt, thresholds);
        auto [fmax, favg] = f_measures(curve, beta_sq);
        if (!report.max_f.value || fmax > *report.max_f.value)
            report.max_f = {fmax, k};
        if (!report.avg_f.value || favg > *report.avg_f.value)
            report.avg_f = {favg, k};

        if (!has_neg) continue;  // ROC needs both classes
        double a = auc(curve);
        if (!report.auc_best.value || a > *report.auc_best.value) {
            report.auc_best = {a, k};
            report.auc_curve = std::move(curve);
        }
    }
    return report;
}

}  // namespace salrank
