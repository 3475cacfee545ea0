// Binary salient-object detection metrics under multi-observer ground truth.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "types.hpp"

namespace salrank {

struct CurvePoint {
    double threshold = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

// 255 uniform thresholds k/255, k = 1..255, matching 8-bit quantization.
std::vector<double> default_threshold_grid();

// Ground truth at observer-agreement level k: pixels marked by >= k observers.
ImageGrid binarize_gt(const NestedStack& agreement, int level);
ImageGrid binarize_gt(const ObserverMaskSet& masks, int level);

// Confusion counts per threshold with predicted positive = {saliency >= t}.
// Total over any ground truth; precision is 1 where nothing is predicted,
// rates over an absent class are reported as 0.
std::vector<CurvePoint> confusion_curve(const SaliencyMap& saliency,
                                        const ImageGrid& gt,
                                        const std::vector<double>& thresholds);

// Same, but requires at least one positive and one negative pixel.
std::vector<CurvePoint> roc_points(const SaliencyMap& saliency,
                                   const ImageGrid& gt,
                                   const std::vector<double>& thresholds);

// Trapezoidal area under the FPR-sorted curve augmented with (0,0) and (1,1).
double auc(const std::vector<CurvePoint>& points);

double f_score(double precision, double recall, double beta_sq);

// (max F, threshold-averaged F) over the curve.
std::pair<double, double> f_measures(const std::vector<CurvePoint>& points,
                                     double beta_sq);

double mae(const SaliencyMap& saliency, const ImageGrid& gt);

// Structure measure: mix_alpha * object term + (1 - mix_alpha) * region term,
// with the usual conventions for all-empty or all-full ground truth.
double s_measure(const SaliencyMap& saliency, const ImageGrid& gt,
                 double mix_alpha = 0.5);

struct MetricBest {
    std::optional<double> value;
    int level = 0;  // observer level the value was achieved at
};

struct DetectReport {
    int levels = 0;
    MetricBest auc_best;   // max over levels
    MetricBest max_f;      // max over levels
    MetricBest avg_f;      // max over levels
    MetricBest mae_best;   // min over levels
    MetricBest s_best;     // max over levels
    std::vector<CurvePoint> auc_curve;  // curve at auc_best.level, if defined
};

// Evaluates every agreement level; AUC skips levels whose ground truth has
// only one class, F skips levels with no positive pixels, MAE and S-measure
// use all levels. Ties keep the lowest level.
DetectReport best_over_observers(const SaliencyMap& saliency,
                                 const NestedStack& agreement, double beta_sq,
                                 const std::vector<double>& thresholds);

}  // namespace salrank
