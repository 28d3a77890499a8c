#pragma once

#include "wpt/coupling.hpp"
#include "wpt/dynamics.hpp"
#include "wpt/experiments.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace wpt {

/// Drive schedule block: Landau-Zener parameters or a sampled table.
struct ScheduleConfig {
    ScheduleKind kind = ScheduleKind::LandauZener;
    ScheduleParams lz;
    std::vector<double> times;
    std::vector<double> delta;
    std::vector<double> kappa;

    friend bool operator==(const ScheduleConfig&, const ScheduleConfig&) = default;

    DriveSchedule build() const;
};

struct SweepConfig {
    std::vector<SweepAxis> axes{SweepAxis{"kappa0", 4e3, 4e4, 5, AxisScale::Linear}};
    std::vector<Protocol> protocols{Protocol::Adiabatic, Protocol::TQD};
    SweepOutputs outputs;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct FiguresConfig {
    Figure4Config figure4;
    Figure5Config figure5;
    Figure6Config figure6;

    friend bool operator==(const FiguresConfig&, const FiguresConfig&) = default;
};

/// Fully resolved run configuration. All quantities SI, frequencies as
/// angular rates (rad/s).
struct RunConfig {
    CoilPair coils{4e3, 4e3, 0.0, 1e6, 1.2e6, 1e-4, 1e-4};
    ScheduleConfig schedule;
    IntegratorConfig integrator;
    DistanceModel distance;
    SweepConfig sweep;
    Protocol simulate_protocol = Protocol::TQD;
    FiguresConfig figures;

    std::string output_dir = "out";
    bool deterministic = false;  ///< forces the fixed-step integrator
    PhiDotMode phi_dot_mode = PhiDotMode::Exact;
    bool ramp_enabled = false;
    double ramp_fraction = 0.01;
    LossConvention loss_convention = LossConvention::Amplitude;
    int threads = 0;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;

    PhysicsOptions physics() const;
    IntegratorConfig effective_integrator() const;
    SweepSpec sweep_spec() const;
};

/// Validates and converts a JSON document. Unknown keys and violated
/// invariants raise ConfigError naming the field path.
RunConfig parse_config(const nlohmann::json& doc);

/// Parses JSON text; syntax errors report line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& origin = "<config>");

/// Applies "dotted.key=value" overrides to a document. The value is read as
/// JSON when it parses as JSON, otherwise as a string.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& overrides);

/// Reads `path` (empty path means "{}"), applies overrides, parses.
RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// Inverse of parse_config; every field is emitted with its resolved value.
nlohmann::json emit_config(const RunConfig& cfg);

} // namespace wpt
