#pragma once

#include <string_view>
#include <vector>

namespace wpt {

enum class ScheduleKind { LandauZener, Sampled };

/// Δ(t), κ(t) and their first two time derivatives at one instant.
struct ScheduleSample {
    double delta = 0.0;       ///< rad/s
    double kappa = 0.0;       ///< rad/s
    double delta_dot = 0.0;   ///< rad/s²
    double kappa_dot = 0.0;   ///< rad/s²
    double delta_ddot = 0.0;  ///< rad/s³
    double kappa_ddot = 0.0;  ///< rad/s³
};

/// Drive protocol over the window [0, T].
///
/// The Landau-Zener family holds κ(t) = κ₀ and Δ(t) = δ + β(t − t₀) with
/// T = 2t₀. A sampled schedule interpolates user-supplied (t, Δ, κ) tables
/// with natural cubic splines, so derivatives are continuous up to second
/// order. Instances are immutable.
class DriveSchedule {
public:
    /// κ₀ > 0 and t₀ > 0, otherwise InvalidParameter.
    static DriveSchedule landau_zener(double kappa0, double delta_offset, double beta, double t0);

    /// Tables must have ≥ 3 strictly increasing times starting at 0, and
    /// κ ≥ 0 everywhere.
    static DriveSchedule sampled(std::vector<double> times, std::vector<double> delta,
                                 std::vector<double> kappa);

    ScheduleKind kind() const { return kind_; }
    double kappa0() const { return kappa0_; }
    double delta_offset() const { return delta_offset_; }
    double beta() const { return beta_; }
    double t0() const { return t0_; }
    /// Total window T.
    double window() const { return window_; }

    ScheduleSample at(double t) const;
    double delta(double t) const { return at(t).delta; }
    double kappa(double t) const { return at(t).kappa; }

    /// Δ(0) and Δ(T) have opposite signs.
    bool crosses_resonance() const;

    /// Time in [0, T] where |Δ| is smallest (the resonance crossing for LZ).
    double closest_approach() const;

    /// Same family with κ₀ replaced. Only valid for LandauZener.
    DriveSchedule with_kappa0(double kappa0) const;

    const std::vector<double>& sample_times() const { return times_; }
    const std::vector<double>& sample_delta() const { return delta_.values; }
    const std::vector<double>& sample_kappa() const { return kappa_.values; }

private:
    struct Spline {
        std::vector<double> values;
        std::vector<double> second;  // second derivatives at the knots
    };

    DriveSchedule() = default;
    static Spline natural_spline(const std::vector<double>& t, std::vector<double> y);
    void eval_spline(const Spline& s, double t, double& y, double& dy, double& ddy) const;

    ScheduleKind kind_ = ScheduleKind::LandauZener;
    double kappa0_ = 0.0;
    double delta_offset_ = 0.0;
    double beta_ = 0.0;
    double t0_ = 0.0;
    double window_ = 0.0;
    std::vector<double> times_;
    Spline delta_;
    Spline kappa_;
};

/// Convention for the φ̇ detuning correction in the transitionless Hamiltonian.
enum class PhiDotMode {
    /// Time derivative of the phase of the complex coupling −κ + jΘ̇/2.
    Exact,
    /// 2ΔΔ̇²/(Δ² + 4κ² + Δ̇²), the literal textbook form (dimensionally inhomogeneous).
    Verbatim,
    /// φ̇ ≡ 0.
    Off,
};

std::string_view to_string(PhiDotMode mode);
PhiDotMode phi_dot_mode_from_string(std::string_view s);

struct CdOptions {
    PhiDotMode phi_dot = PhiDotMode::Exact;
    /// Length of the sine² on/off ramp applied to κ_a, as a fraction of T.
    /// Zero disables the ramp.
    double ramp_fraction = 0.0;

    friend bool operator==(const CdOptions&, const CdOptions&) = default;
};

/// Counterdiabatic quantities at one instant.
struct CDTerms {
    double kappa_a = 0.0;    ///< |Θ̇|/2 (after the optional ramp), ≥ 0
    double phi_dot = 0.0;    ///< detuning correction, rad/s
    double kappa_eff = 0.0;  ///< √(κ² + κ_a²)
    double delta_eff = 0.0;  ///< Δ − φ̇
    /// Phase φ = arg(κ + jΘ̇/2) of the rotation b' = diag(e^{jφ/2}, e^{−jφ/2}) b
    /// that makes the augmented coupling real. In Exact mode phi_dot = dφ/dt.
    double frame_phase = 0.0;
};

/// Θ = atan2(2κ, Δ) ∈ [0, π] for κ ≥ 0. Throws UndefinedAngle at κ = Δ = 0.
double mixing_angle(double kappa, double delta);

CDTerms counterdiabatic_terms(const DriveSchedule& schedule, double t, const CdOptions& opts = {});

/// κ_a / √(4κ² + Δ²); small values mean the bare sweep is adiabatic at t.
double adiabaticity_margin(const DriveSchedule& schedule, double t);

/// exp(−2πκ₀²/|β|). Throws InvalidParameter for β = 0.
double lz_probability(double kappa0, double beta);

/// κ_a/κ_eff at both ends of the window. Transitionless driving wants both ≈ 0.
struct BoundaryDiagnostic {
    double start_ratio = 0.0;
    double end_ratio = 0.0;
};

BoundaryDiagnostic boundary_diagnostic(const DriveSchedule& schedule, const CdOptions& opts = {});

} // namespace wpt
