#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptraj/chain_code.hpp"
#include "ptraj/frame_ingest.hpp"
#include "ptraj/trajectory.hpp"

namespace ptraj {

// Everything a run needs; the serialized form is the run manifest and
// round-trips losslessly.
struct PipelineConfig {
    std::string frames;  // input directory or glob
    int threshold = 30;
    WindowKind window = WindowKind::None;
    int downscale = 1;
    bool invert_turn_sign = false;
    double eps = 1e-12;
    std::string out_dir;

    bool operator==(const PipelineConfig&) const = default;
};

struct SynthOptions {
    std::string script;
    int width = 256;
    int height = 256;
    std::uint64_t seed = 1;
    double noise_sigma = 0.0;
    std::string out_dir;
};

std::string config_to_json(const PipelineConfig& config);
PipelineConfig config_from_json(const std::string& text);

// CSV codecs for the wire formats shared with the truth files.
std::string shifts_to_csv(const std::vector<ShiftEstimate>& shifts);
std::string chain_to_csv(const std::vector<ChainRecord>& records);
std::vector<ChainRecord> chain_from_csv(const std::string& text);
std::vector<ChainRecord> chain_from_csv_named(const std::string& text, const std::string& path);

std::string trajectory_to_json(const Polyline& normalized, const std::vector<ChainRecord>& records);
Polyline trajectory_from_json(const std::string& text);

// Temp-and-rename write; no partially written file is ever visible.
void atomic_write(const std::string& path, const std::string& bytes);

// ingest -> correlate -> chain -> trajectory; writes shifts.csv, chain.csv,
// trajectory.json, trajectory.svg and manifest.json under out_dir.
void run_pipeline(const PipelineConfig& config);

// Generates a scripted frame directory plus truth_shifts.csv / truth_chain.csv.
void run_synth(const SynthOptions& options);

// Compares predicted vs truth chain/trajectory directories and writes
// metrics.json under out_dir. Reporting only: poor scores still succeed.
TrajectoryMetrics run_eval(const std::string& predicted_dir, const std::string& truth_dir,
                           const std::string& out_dir);

}  // namespace ptraj
