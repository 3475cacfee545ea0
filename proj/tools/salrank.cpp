// Command-line front end. Talks to the library exclusively through the
// public C interface; all heavy lifting happens behind salrank.h.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "salrank.h"

namespace {

int exit_code_for(salrank_status status) {
    if (status == SALRANK_OK) return 0;
    if (status == SALRANK_ERR_INTERNAL) return 2;
    return 1;
}

int finish(salrank_status status) {
    if (status != SALRANK_OK)
        std::fprintf(stderr, "error: %s\n", salrank_last_error());
    return exit_code_for(status);
}

struct ConfigFlags {
    std::string preset = "v1";
    std::string setting = "relative";
    double sigma = 0, mu = 0, xi = 0, ell = 0, gamma = 0;
    double alpha1 = 0, alpha2 = 0, alpha = 0;

    void attach(CLI::App* cmd, bool with_setting) {
        cmd->add_option("--preset", preset, "Parameter preset, v1 or v2")
            ->check(CLI::IsMember({"v1", "v2"}));
        if (with_setting)
            cmd->add_option("--setting", setting,
                            "Salience assignment, relative or absolute")
                ->check(CLI::IsMember({"relative", "absolute"}));
        cmd->add_option("--sigma", sigma, "Blur bandwidth");
        cmd->add_option("--mu", mu, "Blur kernel size in pixels");
        cmd->add_option("--xi", xi, "Max surviving instances");
        cmd->add_option("--ell", ell, "Min fixation coverage");
        cmd->add_option("--gamma", gamma, "Max salient-area fraction");
        cmd->add_option("--alpha1", alpha1, "Prune size-fraction threshold");
        cmd->add_option("--alpha2", alpha2, "Prune normalized-score threshold");
        cmd->add_option("--alpha", alpha, "Size-normalization exponent");
    }

    // Builds a config from the preset plus whichever flags were given.
    salrank_config* build(CLI::App* cmd, bool with_setting) const {
        salrank_config* cfg = salrank_config_new(preset.c_str());
        if (!cfg) return nullptr;
        salrank_status st = SALRANK_OK;
        auto apply = [&](const char* flag, const char* key, double value) {
            if (st == SALRANK_OK && cmd->count(flag))
                st = salrank_config_set(cfg, key, value);
        };
        apply("--sigma", "sigma", sigma);
        apply("--mu", "mu", mu);
        apply("--xi", "xi", xi);
        apply("--ell", "ell", ell);
        apply("--gamma", "gamma", gamma);
        apply("--alpha1", "alpha1", alpha1);
        apply("--alpha2", "alpha2", alpha2);
        apply("--alpha", "alpha", alpha);
        if (st == SALRANK_OK && with_setting)
            st = salrank_config_set_setting(cfg, setting.c_str());
        if (st != SALRANK_OK) {
            salrank_config_free(cfg);
            return nullptr;
        }
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Salient-object ranking: dataset synthesis and evaluation"};
    app.set_version_flag("--version", salrank_version());
    app.require_subcommand(1);

    int threads = 0;

    // generate
    auto* gen = app.add_subcommand(
        "generate", "Synthesize ranked ground truth from a manifest");
    std::string gen_manifest, gen_out, gen_root;
    ConfigFlags gen_cfg;
    gen->add_option("--manifest", gen_manifest, "Input manifest JSON")
        ->required();
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--root", gen_root,
                    "Directory manifest paths resolve against")
        ->envname("SALRANK_ROOT");
    gen_cfg.attach(gen, true);
    gen->add_option("--threads", threads, "Worker threads (0 = auto)");

    // eval-rank
    auto* erank = app.add_subcommand(
        "eval-rank", "Score predicted saliency against ranked ground truth");
    std::string er_pred, er_gt, er_inst, er_out, er_mode = "avg";
    double er_alpha = 0.3;
    erank->add_option("--pred", er_pred, "Directory of predicted maps")
        ->required();
    erank->add_option("--gt", er_gt, "Directory of ranked ground truth")
        ->required();
    erank->add_option("--instances", er_inst, "Directory of instance maps")
        ->required();
    erank->add_option("--mode", er_mode, "Instance score: avg, pow or max")
        ->check(CLI::IsMember({"avg", "pow", "max"}));
    erank->add_option("--alpha", er_alpha, "Exponent for pow mode");
    erank->add_option("--out", er_out, "Report JSON path")->required();
    erank->add_option("--threads", threads, "Worker threads (0 = auto)");

    // eval-detect
    auto* edet = app.add_subcommand(
        "eval-detect", "Detection metrics against observer mask sets");
    std::string ed_pred, ed_obs, ed_out, ed_curves;
    double ed_beta_sq = 0.3;
    edet->add_option("--pred", ed_pred, "Directory of predicted maps")
        ->required();
    edet->add_option("--observers", ed_obs,
                     "Directory of <id>.obs<k>.png masks")
        ->required();
    edet->add_option("--beta-sq", ed_beta_sq, "Beta squared for F-measure");
    edet->add_option("--out", ed_out, "Report JSON path")->required();
    edet->add_option("--curves", ed_curves,
                     "Directory for per-image curve CSVs");
    edet->add_option("--threads", threads, "Worker threads (0 = auto)");

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "Mean SOR across values of one scoring parameter");
    std::string sw_manifest, sw_axis, sw_out, sw_root;
    std::vector<double> sw_values;
    ConfigFlags sw_cfg;
    sweep->add_option("--corpus", sw_manifest, "Manifest with reference ranks")
        ->required();
    sweep->add_option("--axis", sw_axis, "Swept parameter: alpha or sigma")
        ->required()
        ->check(CLI::IsMember({"alpha", "sigma"}));
    sweep->add_option("--values", sw_values, "Comma-separated axis values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out", sw_out, "Output CSV path")->required();
    sweep->add_option("--root", sw_root,
                      "Directory manifest paths resolve against")
        ->envname("SALRANK_ROOT");
    sw_cfg.attach(sweep, false);
    sweep->add_option("--threads", threads, "Worker threads (0 = auto)");

    // ablate
    auto* ablate = app.add_subcommand(
        "ablate", "Ranking stability under random observer removal");
    std::string ab_manifest, ab_out, ab_root;
    int ab_remove = 0, ab_trials = 5;
    std::uint64_t ab_seed = 0;
    ablate->add_option("--corpus", ab_manifest, "Manifest with observer masks")
        ->required();
    ablate->add_option("--remove", ab_remove, "Observers to drop per image")
        ->required();
    ablate->add_option("--trials", ab_trials, "Number of random trials");
    ablate->add_option("--seed", ab_seed, "RNG seed");
    ablate->add_option("--out", ab_out, "Optional per-trial CSV path");
    ablate->add_option("--root", ab_root,
                       "Directory manifest paths resolve against")
        ->envname("SALRANK_ROOT");
    ablate->add_option("--threads", threads, "Worker threads (0 = auto)");

    // stats
    auto* stats = app.add_subcommand(
        "stats", "Rank and size statistics of a generated corpus");
    std::string st_corpus, st_out;
    stats->add_option("--corpus", st_corpus, "Generated corpus directory")
        ->required();
    stats->add_option("--out", st_out, "Output CSV path")->required();

    // validate
    auto* validate = app.add_subcommand(
        "validate", "Check a stored stack for format and nesting");
    std::string va_stem;
    validate->add_option("--stack", va_stem, "Stack stem (path without .sliceK.png)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the error and usage to stderr
        return 1;
    }

    if (gen->parsed()) {
        salrank_config* cfg = gen_cfg.build(gen, true);
        if (!cfg) return finish(SALRANK_ERR_INVALID_ARGUMENT);
        salrank_status st = salrank_generate(
            cfg, gen_manifest.c_str(),
            gen_root.empty() ? nullptr : gen_root.c_str(), gen_out.c_str(),
            threads);
        salrank_config_free(cfg);
        return finish(st);
    }
    if (erank->parsed()) {
        return finish(salrank_eval_rank(er_pred.c_str(), er_gt.c_str(),
                                        er_inst.c_str(), er_mode.c_str(),
                                        er_alpha, er_out.c_str(), threads));
    }
    if (edet->parsed()) {
        return finish(salrank_eval_detect(
            ed_pred.c_str(), ed_obs.c_str(), ed_beta_sq, ed_out.c_str(),
            ed_curves.empty() ? nullptr : ed_curves.c_str(), threads));
    }
    if (sweep->parsed()) {
        salrank_config* cfg = sw_cfg.build(sweep, false);
        if (!cfg) return finish(SALRANK_ERR_INVALID_ARGUMENT);
        salrank_status st = salrank_sweep(
            cfg, sw_manifest.c_str(),
            sw_root.empty() ? nullptr : sw_root.c_str(), sw_axis.c_str(),
            sw_values.data(), sw_values.size(), sw_out.c_str(), threads);
        salrank_config_free(cfg);
        return finish(st);
    }
    if (ablate->parsed()) {
        double mean = 0.0;
        salrank_status st = salrank_ablate(
            ab_manifest.c_str(), ab_root.empty() ? nullptr : ab_root.c_str(),
            ab_remove, ab_trials, ab_seed,
            ab_out.empty() ? nullptr : ab_out.c_str(), &mean, threads);
        if (st == SALRANK_OK) std::printf("%.9g\n", mean);
        return finish(st);
    }
    if (stats->parsed()) {
        return finish(salrank_stats(st_corpus.c_str(), st_out.c_str()));
    }
    if (validate->parsed()) {
        salrank_status st = salrank_validate_stack(va_stem.c_str());
        if (st == SALRANK_OK) std::printf("ok\n");
        return finish(st);
    }
    return 1;
}
