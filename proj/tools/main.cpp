#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ptraj/errors.hpp"
#include "ptraj/pipeline.hpp"

namespace {

bool parse_size(const std::string& text, int& width, int& height) {
    int w = 0, h = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%dx%d%c", &w, &h, &extra) != 2) return false;
    width = w;
    height = h;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trajectory extraction from forward-facing camera frames via "
                 "phase correlation and a dynamic chain code"};
    app.require_subcommand(1);

    ptraj::PipelineConfig run_config;
    std::string window_name = "none";
    CLI::App* run = app.add_subcommand("run", "Run the ingest->correlate->chain pipeline");
    run->add_option("--frames", run_config.frames, "Input frame directory or glob")->required();
    run->add_option("--threshold", run_config.threshold, "Turn threshold in pixels")
        ->check(CLI::PositiveNumber);
    run->add_option("--window", window_name, "Pre-transform window: none|hann")
        ->check(CLI::IsMember({"none", "hann"}));
    run->add_option("--downscale", run_config.downscale, "Integer downscale factor")
        ->check(CLI::PositiveNumber);
    run->add_flag("--invert-turn-sign", run_config.invert_turn_sign,
                  "Swap the left/right reading of x-shifts");
    run->add_option("--eps", run_config.eps, "Cross-power normalization guard")
        ->check(CLI::PositiveNumber);
    run->add_option("--out", run_config.out_dir, "Output directory")->required();

    ptraj::SynthOptions synth_options;
    std::string size_text = "256x256";
    CLI::App* synth = app.add_subcommand("synth", "Generate a scripted synthetic sequence");
    synth->add_option("--script", synth_options.script, "Drive script, e.g. \"F L(3) F\"")
        ->required();
    synth->add_option("--size", size_text, "Frame size WxH (default 256x256)");
    synth->add_option("--seed", synth_options.seed, "Generator seed");
    synth->add_option("--noise-sigma", synth_options.noise_sigma,
                      "Clipped Gaussian luminance noise std-dev")
        ->check(CLI::Range(0.0, 0.5));
    synth->add_option("--out", synth_options.out_dir, "Output directory")->required();

    std::string predicted_dir, truth_dir, eval_out;
    CLI::App* eval = app.add_subcommand("eval", "Score a predicted chain against truth");
    eval->add_option("--predicted", predicted_dir, "Directory with chain.csv/trajectory.json")
        ->required();
    eval->add_option("--truth", truth_dir, "Directory with truth_chain.csv (or chain.csv)")
        ->required();
    eval->add_option("--out", eval_out, "Output directory for metrics.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            run_config.window = ptraj::parse_window_kind(window_name);
            ptraj::run_pipeline(run_config);
        } else if (synth->parsed()) {
            if (!parse_size(size_text, synth_options.width, synth_options.height) ||
                synth_options.width < 32 || synth_options.height < 32) {
                std::cerr << "error: --size must be WxH with both dimensions >= 32\n";
                return 1;
            }
            ptraj::run_synth(synth_options);
        } else if (eval->parsed()) {
            ptraj::run_eval(predicted_dir, truth_dir, eval_out);
        }
    } catch (const ptraj::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
