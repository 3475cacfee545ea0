// C binding over the pipeline entry points. Errors never cross the boundary
// as exceptions; they are stored per thread and mapped to status codes.
#include "salrank.h"

#include <cstring>
#include <string>

#include "pipeline.hpp"
#include "types.hpp"

struct salrank_config {
    salrank::GenConfig cfg;
};

namespace {

thread_local std::string t_last_error;

salrank_status status_of(salrank::ErrorKind kind) {
    using salrank::ErrorKind;
    switch (kind) {
        case ErrorKind::InvalidArgument: return SALRANK_ERR_INVALID_ARGUMENT;
        case ErrorKind::Io: return SALRANK_ERR_IO;
        case ErrorKind::Format: return SALRANK_ERR_FORMAT;
        case ErrorKind::Integrity: return SALRANK_ERR_INTEGRITY;
        case ErrorKind::Internal: return SALRANK_ERR_INTERNAL;
    }
    return SALRANK_ERR_INTERNAL;
}

template <typename Fn>
salrank_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return SALRANK_OK;
    } catch (const salrank::Error& e) {
        t_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return SALRANK_ERR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown error";
        return SALRANK_ERR_INTERNAL;
    }
}

salrank_status invalid(const std::string& message) {
    t_last_error = message;
    return SALRANK_ERR_INVALID_ARGUMENT;
}

std::string str_or_empty(const char* s) { return s ? std::string(s) : ""; }

}  // namespace

extern "C" {

const char* salrank_version(void) { return "1.0.0"; }

const char* salrank_last_error(void) { return t_last_error.c_str(); }

salrank_config* salrank_config_new(const char* preset) {
    if (!preset) return nullptr;
    if (std::strcmp(preset, "v1") == 0)
        return new salrank_config{salrank::GenConfig::preset_v1()};
    if (std::strcmp(preset, "v2") == 0)
        return new salrank_config{salrank::GenConfig::preset_v2()};
    t_last_error = std::string("unknown preset '") + preset + "'";
    return nullptr;
}

void salrank_config_free(salrank_config* cfg) { delete cfg; }

salrank_status salrank_config_set(salrank_config* cfg, const char* key,
                                  double value) {
    if (!cfg || !key) return invalid("config and key must not be null");
    std::string k = key;
    if (k == "sigma") cfg->cfg.sigma = value;
    else if (k == "mu") cfg->cfg.mu = int(value);
    else if (k == "xi") cfg->cfg.xi = int(value);
    else if (k == "ell") cfg->cfg.ell = value;
    else if (k == "gamma") cfg->cfg.gamma = value;
    else if (k == "alpha1") cfg->cfg.alpha1 = value;
    else if (k == "alpha2") cfg->cfg.alpha2 = value;
    else if (k == "alpha") cfg->cfg.exponent_alpha = value;
    else return invalid("unknown config key '" + k + "'");
    return guarded([&] { cfg->cfg.validate(); });
}

salrank_status salrank_config_set_setting(salrank_config* cfg,
                                          const char* setting) {
    if (!cfg || !setting) return invalid("config and setting must not be null");
    return guarded(
        [&] { cfg->cfg.setting = salrank::setting_from_name(setting); });
}

salrank_status salrank_generate(const salrank_config* cfg,
                                const char* manifest_path, const char* root,
                                const char* out_dir, int threads) {
    if (!cfg || !manifest_path || !out_dir)
        return invalid("config, manifest path and output dir are required");
    return guarded([&] {
        salrank::run_generate(cfg->cfg, manifest_path, str_or_empty(root),
                              out_dir, threads);
    });
}

salrank_status salrank_eval_rank(const char* pred_dir, const char* gt_dir,
                                 const char* instances_dir, const char* mode,
                                 double alpha, const char* report_path,
                                 int threads) {
    if (!pred_dir || !gt_dir || !instances_dir || !mode || !report_path)
        return invalid("all eval-rank paths and the mode are required");
    return guarded([&] {
        salrank::run_eval_rank(pred_dir, gt_dir, instances_dir,
                               salrank::rank_mode_from_name(mode), alpha,
                               report_path, threads);
    });
}

salrank_status salrank_eval_detect(const char* pred_dir,
                                   const char* observers_dir, double beta_sq,
                                   const char* report_path,
                                   const char* curves_dir, int threads) {
    if (!pred_dir || !observers_dir || !report_path)
        return invalid("prediction dir, observers dir and report path are required");
    return guarded([&] {
        salrank::run_eval_detect(pred_dir, observers_dir, beta_sq, report_path,
                                 str_or_empty(curves_dir), threads);
    });
}

salrank_status salrank_sweep(const salrank_config* cfg,
                             const char* manifest_path, const char* root,
                             const char* axis, const double* values,
                             size_t n_values, const char* csv_path,
                             int threads) {
    if (!cfg || !manifest_path || !axis || !values || !csv_path)
        return invalid("config, manifest, axis, values and csv path are required");
    if (n_values == 0) return invalid("sweep needs at least one value");
    return guarded([&] {
        salrank::run_sweep(cfg->cfg, manifest_path, str_or_empty(root),
                           salrank::sweep_axis_from_name(axis),
                           std::vector<double>(values, values + n_values),
                           csv_path, threads);
    });
}

salrank_status salrank_ablate(const char* manifest_path, const char* root,
                              int remove_count, int trials, uint64_t seed,
                              const char* csv_path, double* mean_sor_out,
                              int threads) {
    if (!manifest_path) return invalid("manifest path is required");
    return guarded([&] {
        double mean = salrank::run_ablate(manifest_path, str_or_empty(root),
                                          remove_count, trials, seed,
                                          str_or_empty(csv_path), threads);
        if (mean_sor_out) *mean_sor_out = mean;
    });
}

salrank_status salrank_stats(const char* corpus_dir, const char* csv_path) {
    if (!corpus_dir || !csv_path)
        return invalid("corpus dir and csv path are required");
    return guarded([&] { salrank::run_stats(corpus_dir, csv_path); });
}

salrank_status salrank_validate_stack(const char* stem) {
    if (!stem) return invalid("stack stem is required");
    return guarded([&] { salrank::run_validate(stem); });
}

}  // extern "C"
