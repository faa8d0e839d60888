#include "ptraj/pipeline.hpp"

#include <unistd.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "ptraj/errors.hpp"
#include "ptraj/image_io.hpp"
#include "ptraj/phase_correlation.hpp"
#include "ptraj/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace ptraj {

namespace {

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCategory::Data, "format-error", path + ": cannot open");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int parse_int_field(const std::string& field, const std::string& path, std::size_t line_no) {
    int value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw Error(ErrorCategory::Data, "format-error",
                    path + ": line " + std::to_string(line_no) + ": bad integer '" + field + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string config_to_json(const PipelineConfig& config) {
    json j;
    j["frames"] = config.frames;
    j["threshold"] = config.threshold;
    j["window"] = window_kind_name(config.window);
    j["downscale"] = config.downscale;
    j["invert_turn_sign"] = config.invert_turn_sign;
    j["eps"] = config.eps;
    j["out_dir"] = config.out_dir;
    return j.dump(2) + "\n";
}

PipelineConfig config_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        PipelineConfig config;
        config.frames = j.at("frames").get<std::string>();
        config.threshold = j.at("threshold").get<int>();
        config.window = parse_window_kind(j.at("window").get<std::string>());
        config.downscale = j.at("downscale").get<int>();
        config.invert_turn_sign = j.at("invert_turn_sign").get<bool>();
        config.eps = j.at("eps").get<double>();
        config.out_dir = j.at("out_dir").get<std::string>();
        return config;
    } catch (const json::exception& e) {
        throw Error(ErrorCategory::Data, "format-error", std::string("manifest: ") + e.what());
    }
}

std::string shifts_to_csv(const std::vector<ShiftEstimate>& shifts) {
    std::string out = "pair_index,dx,dy,peak_response\n";
    for (const ShiftEstimate& s : shifts) {
        out += std::to_string(s.pair_index) + "," + std::to_string(s.dx) + "," +
               std::to_string(s.dy) + "," + fmt_double(s.peak_response) + "\n";
    }
    return out;
}

std::string chain_to_csv(const std::vector<ChainRecord>& records) {
    std::string out = "pair_index,mscc,iscc,dx\n";
    for (const ChainRecord& r : records) {
        out += std::to_string(r.pair_index) + "," + std::to_string(r.mscc) + "," +
               std::to_string(r.iscc) + "," + std::to_string(r.dx) + "\n";
    }
    return out;
}

std::vector<ChainRecord> chain_from_csv(const std::string& text) {
    return chain_from_csv_named(text, "chain.csv");
}

std::vector<ChainRecord> chain_from_csv_named(const std::string& text, const std::string& path) {
    std::vector<std::string> lines = split(text, '\n');
    for (std::string& line : lines) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
    }
    if (lines.empty() || lines.front() != "pair_index,mscc,iscc,dx") {
        throw Error(ErrorCategory::Data, "format-error",
                    path + ": line 1: expected header 'pair_index,mscc,iscc,dx'");
    }
    std::vector<ChainRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split(lines[i], ',');
        if (fields.size() != 4) {
            throw Error(ErrorCategory::Data, "format-error",
                        path + ": line " + std::to_string(i + 1) + ": expected 4 fields");
        }
        ChainRecord r;
        r.pair_index = parse_int_field(fields[0], path, i + 1);
        r.mscc = parse_int_field(fields[1], path, i + 1);
        r.iscc = parse_int_field(fields[2], path, i + 1);
        r.dx = parse_int_field(fields[3], path, i + 1);
        if (r.mscc < 0 || r.mscc > 3 || r.iscc < 0 || r.iscc > 3) {
            throw Error(ErrorCategory::Data, "format-error",
                        path + ": line " + std::to_string(i + 1) + ": code out of range");
        }
        records.push_back(r);
    }
    return records;
}

std::string trajectory_to_json(const Polyline& normalized, const std::vector<ChainRecord>& records) {
    json j;
    j["chain"] = heading_string(records);
    json points = json::array();
    for (const auto& p : normalized.points) {
        points.push_back(json::array({p[0], p[1]}));
    }
    j["points"] = points;
    return j.dump(2) + "\n";
}

Polyline trajectory_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        Polyline poly;
        for (const auto& p : j.at("points")) {
            poly.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        }
        return poly;
    } catch (const json::exception& e) {
        throw Error(ErrorCategory::Data, "format-error", std::string("trajectory: ") + e.what());
    }
}

void atomic_write(const std::string& path, const std::string& bytes) {
    const fs::path target(path);
    const fs::path tmp = target.parent_path() /
                         (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCategory::Data, "write-failure", tmp.string() + ": cannot open");
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error(ErrorCategory::Data, "write-failure", tmp.string() + ": write failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCategory::Data, "write-failure", path + ": rename failed");
    }
}

void run_pipeline(const PipelineConfig& config) {
    if (config.threshold < 1) {
        throw Error(ErrorCategory::Usage, "invalid-threshold", "threshold must be >= 1");
    }
    if (config.threshold < 12 || config.threshold > 60) {
        std::cerr << "warning: threshold " << config.threshold
                  << " is outside the recommended operating band [12, 60]\n";
    }

    IngestOptions ingest;
    ingest.downscale_factor = config.downscale;
    const std::vector<Frame> frames = load_sequence(config.frames, ingest);
    if (2 * config.threshold >= frames.front().width) {
        throw Error(ErrorCategory::Usage, "invalid-threshold",
                    "threshold " + std::to_string(config.threshold) +
                        " must stay below half the frame width " +
                        std::to_string(frames.front().width));
    }

    CorrelationConfig correlation;
    correlation.window = config.window;
    correlation.eps = config.eps;
    std::vector<ShiftEstimate> shifts;
    shifts.reserve(frames.size() - 1);
    for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
        shifts.push_back(estimate_shift(frames[i], frames[i + 1], correlation));
    }

    ChainConfig chain_config;
    chain_config.threshold = config.threshold;
    chain_config.invert_turn_sign = config.invert_turn_sign;
    const std::vector<ChainRecord> records = fold_chain(shifts, chain_config);

    const Polyline normalized = normalize(chain_to_points(records));
    const std::string svg = render_svg(normalized);

    fs::create_directories(config.out_dir);
    const fs::path out(config.out_dir);
    atomic_write((out / "shifts.csv").string(), shifts_to_csv(shifts));
    atomic_write((out / "chain.csv").string(), chain_to_csv(records));
    atomic_write((out / "trajectory.json").string(), trajectory_to_json(normalized, records));
    atomic_write((out / "trajectory.svg").string(), svg);
    atomic_write((out / "manifest.json").string(), config_to_json(config));

    std::cout << "processed " << frames.size() << " frames (" << shifts.size()
              << " pairs) -> " << config.out_dir << "\n";
}

void run_synth(const SynthOptions& options) {
    DriveScript script;
    script.moves = parse_script(options.script);
    script.noise_sigma = options.noise_sigma;
    script.seed = options.seed;

    const Frame base = textured_base(options.width, options.height, options.seed);
    const ScriptTruth truth = script_to_frames(script, base);

    fs::create_directories(options.out_dir);
    const fs::path out(options.out_dir);
    for (const Frame& frame : truth.frames) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%05d.pgm", frame.index);
        write_pgm16((out / name).string(), frame);
    }

    std::string shifts_csv = "pair_index,dx,dy,peak_response\n";
    for (std::size_t i = 0; i < truth.shifts.size(); ++i) {
        shifts_csv += std::to_string(i) + "," + std::to_string(truth.shifts[i].first) + "," +
                      std::to_string(truth.shifts[i].second) + ",1\n";
    }
    atomic_write((out / "truth_shifts.csv").string(), shifts_csv);
    atomic_write((out / "truth_chain.csv").string(), chain_to_csv(truth.chain));

    std::cout << "script: " << format_script(script.moves) << "\n";
    std::cout << "wrote " << truth.frames.size() << " frames -> " << options.out_dir << "\n";
}

namespace {

struct EvalSide {
    std::vector<ChainRecord> records;
    Polyline poly;
};

EvalSide load_eval_side(const std::string& dir) {
    EvalSide side;
    const fs::path base(dir);
    fs::path chain_path = base / "chain.csv";
    if (!fs::exists(chain_path)) chain_path = base / "truth_chain.csv";
    if (!fs::exists(chain_path)) {
        throw Error(ErrorCategory::Data, "format-error",
                    dir + ": no chain.csv or truth_chain.csv");
    }
    side.records = chain_from_csv_named(read_text(chain_path.string()), chain_path.string());

    const fs::path traj_path = base / "trajectory.json";
    if (fs::exists(traj_path)) {
        side.poly = trajectory_from_json(read_text(traj_path.string()));
    } else {
        side.poly = normalize(chain_to_points(side.records));
    }
    return side;
}

}  // namespace

TrajectoryMetrics run_eval(const std::string& predicted_dir, const std::string& truth_dir,
                           const std::string& out_dir) {
    const EvalSide predicted = load_eval_side(predicted_dir);
    const EvalSide truth = load_eval_side(truth_dir);
    const TrajectoryMetrics metrics =
        compare(predicted.records, predicted.poly, truth.records, truth.poly);

    json j;
    j["chain_accuracy"] = metrics.chain_accuracy;
    j["endpoint_error"] = metrics.endpoint_error;
    j["heading_edit_distance"] = metrics.heading_edit_distance;
    j["length_mismatch"] = metrics.length_mismatch;

    fs::create_directories(out_dir);
    atomic_write((fs::path(out_dir) / "metrics.json").string(), j.dump(2) + "\n");

    std::cout << "chain_accuracy: " << fmt_double(metrics.chain_accuracy) << "\n"
              << "endpoint_error: " << fmt_double(metrics.endpoint_error) << "\n"
              << "heading_edit_distance: " << metrics.heading_edit_distance << "\n";
    if (metrics.length_mismatch) {
        std::cout << "note: chain lengths differ (" << predicted.records.size() << " predicted vs "
                  << truth.records.size() << " truth); metrics cover the overlap\n";
    }
    return metrics;
}

}  // namespace ptraj
