#pragma once

#include "wpt/coupling.hpp"
#include "wpt/dynamics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wpt {

/// Landau-Zener parameters: κ₀ [rad/s], δ [rad/s], β [rad/s²], t₀ [s].
struct ScheduleParams {
    double kappa0 = 4e4;
    double delta_offset = 2e5;
    double beta = 3e9;
    double t0 = 1e-4;

    friend bool operator==(const ScheduleParams&, const ScheduleParams&) = default;

    DriveSchedule build() const { return DriveSchedule::landau_zener(kappa0, delta_offset, beta, t0); }
};

enum class AxisScale { Linear, Log };

std::string_view to_string(AxisScale s);
AxisScale axis_scale_from_string(std::string_view s);

/// Parameters a sweep axis may drive. GammaSD moves Γs and Γd together;
/// Distance sets κ₀ through the sweep's DistanceModel.
enum class SweepParam { Kappa0, Delta, Beta, T0, GammaS, GammaD, GammaW, GammaSD, Distance };

std::string_view to_string(SweepParam p);
std::optional<SweepParam> sweep_param_from_string(std::string_view s);

struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    AxisScale scale = AxisScale::Linear;

    friend bool operator==(const SweepAxis&, const SweepAxis&) = default;

    std::vector<double> values() const;
};

struct SweepOutputs {
    bool eta = true;
    bool fidelity = true;
    bool trajectories = false;

    friend bool operator==(const SweepOutputs&, const SweepOutputs&) = default;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  ///< one or two
    CoilPair coils;
    ScheduleParams schedule;
    DistanceModel distance;
    std::vector<Protocol> protocols{Protocol::Adiabatic, Protocol::TQD};
    SweepOutputs outputs;
    IntegratorConfig integrator;
    PhysicsOptions physics;

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;

    void validate() const;
};

/// Row-major grid: index = i·cols + j with i along axes[0], j along axes[1].
struct ProtocolGrid {
    Protocol protocol = Protocol::Adiabatic;
    std::vector<double> eta;
    std::vector<double> fidelity;
    std::vector<double> audit;  ///< doublecheck_integrals residuals
};

struct Provenance {
    std::string config_hash;
    ode::Stats stats;
    double wall_seconds = 0.0;
    int threads = 1;
};

struct SweepResult {
    std::vector<std::string> axis_names;
    std::vector<std::vector<double>> axis_values;
    std::size_t rows = 0;
    std::size_t cols = 1;
    std::vector<ProtocolGrid> grids;
    std::vector<std::uint8_t> error_mask;  ///< 1 where the point failed
    std::vector<std::string> errors;       ///< message per failed point, "" otherwise
    std::vector<Trajectory> trajectories;  ///< point-major, protocol-minor; only if requested
    Provenance provenance;

    std::size_t size() const { return rows * cols; }
    std::size_t masked_count() const;
    const ProtocolGrid* grid(Protocol p) const;
};

/// Evaluates the spec on its grid with an OpenMP worker pool. Results are
/// assembled by index, so the output does not depend on completion order.
/// A failing point is masked (NaN values) and never aborts the sweep.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

/// Single-threaded reference for run_sweep.
SweepResult run_sweep_serial(const SweepSpec& spec);

/// FNV-1a 64-bit, hex encoded.
std::string fnv1a_hex(std::string_view data);

// Figure scenarios.

struct Figure2Setup {
    Protocol protocol = Protocol::Adiabatic;
    ScheduleParams schedule;
    CoilPair coils;
};

/// Reference parameters for the figure 2 runs, variant 'a'..'d'. Γw = 0 throughout.
Figure2Setup figure2_setup(char variant);

Trajectory run_figure2(char variant, const IntegratorConfig& cfg = {}, const PhysicsOptions& physics = {});

struct Figure4Config {
    double kappa0 = 4e4;
    std::vector<double> ratios{10.0, 50.0, 100.0};  ///< κ₀/Γ with Γ = Γs = Γd
    double delta_min = 0.0;
    double delta_max = 1e6;
    int delta_count = 21;
    double gamma_w = 1e4;
    double beta_t0 = 3e5;  ///< β·t₀, rad/s

    friend bool operator==(const Figure4Config&, const Figure4Config&) = default;
};

enum class Figure4Window { Long200us, Short2us };

std::string_view to_string(Figure4Window w);
Figure4Window figure4_window_from_string(std::string_view s);
double figure4_t0(Figure4Window w);

struct Figure4Result {
    Figure4Window window = Figure4Window::Long200us;
    std::vector<double> ratios;
    std::vector<SweepResult> curves;  ///< one δ sweep per ratio
};

Figure4Result run_figure4(Figure4Window window, const Figure4Config& fig = {}, const IntegratorConfig& cfg = {},
                          const PhysicsOptions& physics = {}, int threads = 0);

struct Figure5Config {
    DistanceModel model;
    double d_min = 1.0;
    double d_max = 2.5;
    int d_count = 16;
    ScheduleParams schedule{4e4, 2e5, 3e9, 1e-4};  ///< κ₀ is replaced by κ(d)
    CoilPair coils{4e3, 4e3, 1e4};

    friend bool operator==(const Figure5Config&, const Figure5Config&) = default;

    std::vector<double> grid() const;
};

std::vector<DistanceRow> run_figure5(const Figure5Config& fig = {}, const IntegratorConfig& cfg = {},
                                     const PhysicsOptions& physics = {}, int threads = 0);

struct Figure6Config {
    double kappa_min = 4e3;
    double kappa_max = 4e4;
    int kappa_count = 25;
    double gamma_min = 4e2;  ///< Γs = Γd
    double gamma_max = 4e3;
    int gamma_count = 25;
    double delta = 2e5;
    double beta_t0 = 3e5;
    double gamma_w = 1e4;

    friend bool operator==(const Figure6Config&, const Figure6Config&) = default;
};

/// The sweep spec run_figure6 evaluates (κ₀ × Γs=Γd at fixed t₀).
SweepSpec figure6_spec(double t0, const Figure6Config& fig = {}, const IntegratorConfig& cfg = {},
                       const PhysicsOptions& physics = {});

SweepResult run_figure6(double t0, const Figure6Config& fig = {}, const IntegratorConfig& cfg = {},
                        const PhysicsOptions& physics = {}, int threads = 0);

} // namespace wpt
