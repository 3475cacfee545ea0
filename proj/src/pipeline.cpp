#include "pipeline.hpp"

#include <filesystem>

#include "detectmetrics.hpp"
#include "io.hpp"
#include "json.hpp"
#include "parallel.hpp"
#include "rankgen.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace salrank {

namespace {

std::string effective_root(const std::string& root,
                           const std::string& manifest_path) {
    if (!root.empty()) return root;
    fs::path parent = fs::path(manifest_path).parent_path();
    return parent.empty() ? std::string(".") : parent.string();
}

ordered_json config_json(const GenConfig& c) {
    ordered_json j;
    j["sigma"] = sig9(c.sigma);
    j["mu"] = c.mu;
    j["xi"] = c.xi;
    j["ell"] = sig9(c.ell);
    j["gamma"] = sig9(c.gamma);
    j["alpha1"] = sig9(c.alpha1);
    j["alpha2"] = sig9(c.alpha2);
    j["alpha"] = sig9(c.exponent_alpha);
    j["setting"] = setting_name(c.setting);
    return j;
}

}  // namespace

GenerateSummary run_generate(const GenConfig& config,
                             const std::string& manifest_path,
                             const std::string& root,
                             const std::string& out_dir, int threads) {
    config.validate();
    Manifest manifest = read_manifest(manifest_path);
    std::string base = effective_root(root, manifest_path);
    fs::create_directories(out_dir);

    struct Row {
        std::string status;  // accepted | rejected | error
        ImageMeasurements measured;
        std::optional<RejectionReason> rejection;
        int ranks = 0;
        std::string message;
    };
    std::vector<Row> rows(manifest.entries.size());

    parallel_for(manifest.entries.size(), threads, [&](std::size_t i) {
        const ManifestEntry& entry = manifest.entries[i];
        Row& row = rows[i];
        try {
            InstanceMap instances = read_instance_map(
                resolve_path(base, entry.instance_map_path));
            FixationInput fixations =
                read_fixations(resolve_path(base, entry.fixation_path));
            ProcessResult result = process_image(instances, fixations, config);
            row.measured = result.measured;
            if (result.accepted()) {
                row.status = "accepted";
                row.ranks = int(result.gt->order.size());
                std::string stem = (fs::path(out_dir) / entry.id).string();
                write_ranked_gt(*result.gt, stem + ".png");
                write_stack(*result.stack, stem);
            } else {
                row.status = "rejected";
                row.rejection = result.rejection;
            }
        } catch (const Error& e) {
            row.status = "error";
            row.message = e.what();
        }
    });

    GenerateSummary summary;
    ordered_json images = ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        ordered_json j;
        j["id"] = manifest.entries[i].id;
        j["status"] = row.status;
        if (row.status == "error") {
            j["message"] = row.message;
            ++summary.errors;
        } else {
            j["instances_total"] = row.measured.instances_total;
            j["instances_kept"] = row.measured.instances_kept;
            j["coverage"] = sig9(row.measured.coverage);
            j["salient_fraction"] = sig9(row.measured.salient_fraction);
            if (row.status == "accepted") {
                j["ranks"] = row.ranks;
                ++summary.accepted;
            } else {
                j["reason"] = reject_kind_name(row.rejection->kind);
                j["measured"] = sig9(row.rejection->measured);
                j["threshold"] = sig9(row.rejection->threshold);
                ++summary.rejected;
            }
        }
        images.push_back(std::move(j));
    }
    ordered_json report;
    report["config"] = config_json(config);
    report["images"] = std::move(images);
    report["accepted"] = summary.accepted;
    report["rejected"] = summary.rejected;
    report["errors"] = summary.errors;
    write_text_file((fs::path(out_dir) / "report.json").string(),
                    report.dump(2) + "\n");
    return summary;
}

RankingResult run_eval_rank(const std::string& pred_dir,
                            const std::string& gt_dir,
                            const std::string& instances_dir, RankMode mode,
                            double alpha, const std::string& report_path,
                            int threads) {
    std::vector<std::string> ids = list_stems(gt_dir, ".rank.json");
    std::vector<ImageRanking> rankings(ids.size());
    parallel_for(ids.size(), threads, [&](std::size_t i) {
        const std::string& id = ids[i];
        RankedGroundTruth gt =
            read_ranked_gt((fs::path(gt_dir) / (id + ".png")).string());
        InstanceMap instances = read_instance_map(
            (fs::path(instances_dir) / (id + ".png")).string());
        SaliencyMap prediction =
            read_saliency((fs::path(pred_dir) / (id + ".png")).string());
        rankings[i] =
            evaluate_ranking(gt.order, prediction, instances, mode, alpha);
        rankings[i].id = id;
    });

    RankingResult result;
    double total = 0.0;
    for (ImageRanking& row : rankings) {
        if (row.sor_value) {
            total += *row.sor_value;
            ++result.defined_count;
        } else {
            ++result.undefined_count;
        }
        result.per_image.push_back(std::move(row));
    }
    if (result.defined_count > 0)
        result.dataset_sor = total / result.defined_count;

    ordered_json images = ordered_json::array();
    for (const ImageRanking& row : result.per_image) {
        ordered_json j;
        j["id"] = row.id;
        j["instances"] = row.matched_instances;
        j["spearman"] =
            row.spearman ? ordered_json(sig9(*row.spearman)) : nullptr;
        j["sor"] = row.sor_value ? ordered_json(sig9(*row.sor_value)) : nullptr;
        images.push_back(std::move(j));
    }
    ordered_json report;
    report["mode"] = rank_mode_name(mode);
    report["alpha"] = sig9(alpha);
    report["images"] = std::move(images);
    report["dataset_sor"] = result.dataset_sor
                                ? ordered_json(sig9(*result.dataset_sor))
                                : nullptr;
    report["defined"] = result.defined_count;
    report["undefined"] = result.undefined_count;
    write_text_file(report_path, report.dump(2) + "\n");
    return result;
}

void run_eval_detect(const std::string& pred_dir,
                     const std::string& observers_dir, double beta_sq,
                     const std::string& report_path,
                     const std::string& curves_dir, int threads) {
    std::vector<std::string> ids = list_stems(pred_dir, ".png");
    if (!curves_dir.empty()) fs::create_directories(curves_dir);
    std::vector<double> grid = default_threshold_grid();

    std::vector<DetectReport> reports(ids.size());
    parallel_for(ids.size(), threads, [&](std::size_t i) {
        const std::string& id = ids[i];
        SaliencyMap prediction =
            read_saliency((fs::path(pred_dir) / (id + ".png")).string());
        std::vector<ImageGrid> masks;
        for (int k = 1;; ++k) {
            fs::path p = fs::path(observers_dir) /
                         (id + ".obs" + std::to_string(k) + ".png");
            if (!fs::exists(p)) break;
            masks.push_back(read_binary_mask(p.string()));
        }
        if (masks.empty())
            fail(ErrorKind::Io, "no observer masks found for image '" + id +
                                    "' in '" + observers_dir + "'");
        NestedStack agreement =
            observers_to_stack(ObserverMaskSet::from_masks(std::move(masks)));
        reports[i] = best_over_observers(prediction, agreement, beta_sq, grid);
        if (!curves_dir.empty() && reports[i].auc_best.value)
            write_curve_csv((fs::path(curves_dir) / (id + ".csv")).string(),
                            reports[i].auc_curve);
    });

    auto metric_json = [](const MetricBest& m) {
        ordered_json j;
        j["value"] = m.value ? ordered_json(sig9(*m.value)) : nullptr;
        j["level"] = m.value ? ordered_json(m.level) : nullptr;
        return j;
    };
    struct Mean {
        double total = 0.0;
        int defined = 0;
    };
    Mean mean_auc, mean_max_f, mean_avg_f, mean_mae, mean_s;
    auto add = [](Mean& m, const MetricBest& b) {
        if (b.value) {
            m.total += *b.value;
            ++m.defined;
        }
    };
    ordered_json images = ordered_json::array();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const DetectReport& r = reports[i];
        ordered_json j;
        j["id"] = ids[i];
        j["levels"] = r.levels;
        j["auc"] = metric_json(r.auc_best);
        j["max_f"] = metric_json(r.max_f);
        j["avg_f"] = metric_json(r.avg_f);
        j["mae"] = metric_json(r.mae_best);
        j["s_measure"] = metric_json(r.s_best);
        images.push_back(std::move(j));
        add(mean_auc, r.auc_best);
        add(mean_max_f, r.max_f);
        add(mean_avg_f, r.avg_f);
        add(mean_mae, r.mae_best);
        add(mean_s, r.s_best);
    }
    auto mean_json = [](const Mean& m) {
        ordered_json j;
        j["mean"] = m.defined > 0 ? ordered_json(sig9(m.total / m.defined))
                                  : nullptr;
        j["defined"] = m.defined;
        return j;
    };
    ordered_json report;
    report["beta_sq"] = sig9(beta_sq);
    report["images"] = std::move(images);
    ordered_json means;
    means["auc"] = mean_json(mean_auc);
    means["max_f"] = mean_json(mean_max_f);
    means["avg_f"] = mean_json(mean_avg_f);
    means["mae"] = mean_json(mean_mae);
    means["s_measure"] = mean_json(mean_s);
    report["dataset"] = std::move(means);
    write_text_file(report_path, report.dump(2) + "\n");
}

std::vector<SweepRow> run_sweep(const GenConfig& base,
                                const std::string& manifest_path,
                                const std::string& root, SweepAxis axis,
                                const std::vector<double>& values,
                                const std::string& csv_path, int threads) {
    Manifest manifest = read_manifest(manifest_path);
    std::string base_dir = effective_root(root, manifest_path);
    std::vector<SweepImage> corpus;
    for (const ManifestEntry& entry : manifest.entries) {
        if (entry.reference_rank_path.empty())
            fail(ErrorKind::InvalidArgument,
                 "manifest entry '" + entry.id +
                     "' lacks the reference ranking a sweep compares against");
        SweepImage img;
        img.id = entry.id;
        img.instances =
            read_instance_map(resolve_path(base_dir, entry.instance_map_path));
        img.fixations =
            read_fixations(resolve_path(base_dir, entry.fixation_path));
        img.reference_order =
            read_rank_order(resolve_path(base_dir, entry.reference_rank_path));
        corpus.push_back(std::move(img));
    }
    std::vector<SweepRow> rows = param_sweep(corpus, base, axis, values, threads);
    std::string csv = "param,value,mean_sor,defined,undefined\n";
    for (const SweepRow& row : rows) {
        csv += row.param;
        csv += ',';
        csv += format_sig9(row.value);
        csv += ',';
        csv += format_sig9(row.mean_sor);
        csv += ',';
        csv += std::to_string(row.defined);
        csv += ',';
        csv += std::to_string(row.undefined);
        csv += '\n';
    }
    write_text_file(csv_path, csv);
    return rows;
}

double run_ablate(const std::string& manifest_path, const std::string& root,
                  int remove_count, int trials, std::uint64_t seed,
                  const std::string& csv_path, int threads) {
    Manifest manifest = read_manifest(manifest_path);
    std::string base_dir = effective_root(root, manifest_path);
    std::vector<AblationImage> corpus;
    for (const ManifestEntry& entry : manifest.entries) {
        if (entry.observer_mask_paths.empty())
            fail(ErrorKind::InvalidArgument,
                 "manifest entry '" + entry.id + "' lists no observer masks");
        AblationImage img;
        img.id = entry.id;
        img.instances =
            read_instance_map(resolve_path(base_dir, entry.instance_map_path));
        std::vector<ImageGrid> masks;
        for (const std::string& p : entry.observer_mask_paths)
            masks.push_back(read_binary_mask(resolve_path(base_dir, p)));
        img.observers = ObserverMaskSet::from_masks(std::move(masks));
        corpus.push_back(std::move(img));
    }
    std::vector<double> per_trial;
    double mean = annotator_ablation(corpus, remove_count, trials, seed,
                                     &per_trial, threads);
    if (!csv_path.empty()) {
        std::string csv = "trial,mean_sor\n";
        for (std::size_t t = 0; t < per_trial.size(); ++t)
            csv += std::to_string(t + 1) + "," + format_sig9(per_trial[t]) +
                   "\n";
        write_text_file(csv_path, csv);
    }
    return mean;
}

void run_stats(const std::string& corpus_dir, const std::string& csv_path) {
    std::vector<std::string> ids = list_stems(corpus_dir, ".rank.json");
    std::vector<std::pair<std::string, RankedGroundTruth>> corpus;
    for (const std::string& id : ids)
        corpus.emplace_back(
            id, read_ranked_gt((fs::path(corpus_dir) / (id + ".png")).string()));
    SizeRankStats stats = size_rank_stats(corpus);
    std::string csv = "kind,id,rank,value\n";
    for (int r = 1; r <= 5; ++r)
        for (const auto& [id, fraction] : stats.fractions[r - 1])
            csv += "size_fraction," + id + "," + std::to_string(r) + "," +
                   format_sig9(fraction) + "\n";
    for (int k = 1; k <= 5; ++k)
        csv += "image_count,," + std::to_string(k) + "," +
               std::to_string(stats.images_with[k - 1]) + "\n";
    write_text_file(csv_path, csv);
}

int run_validate(const std::string& stem) {
    return read_stack(stem).n_slices();
}

}  // namespace salrank
