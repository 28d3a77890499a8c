#include "wpt/schedules.hpp"

#include "wpt/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wpt {

DriveSchedule DriveSchedule::landau_zener(double kappa0, double delta_offset, double beta, double t0)
{
    if (!(kappa0 > 0.0) || !std::isfinite(kappa0))
        throw InvalidParameter("kappa0 must be positive, got " + std::to_string(kappa0));
    if (!(t0 > 0.0) || !std::isfinite(t0))
        throw InvalidParameter("t0 must be positive, got " + std::to_string(t0));
    if (!std::isfinite(delta_offset) || !std::isfinite(beta))
        throw InvalidParameter("delta_offset and beta must be finite");
    DriveSchedule s;
    s.kind_ = ScheduleKind::LandauZener;
    s.kappa0_ = kappa0;
    s.delta_offset_ = delta_offset;
    s.beta_ = beta;
    s.t0_ = t0;
    s.window_ = 2.0 * t0;
    return s;
}

DriveSchedule DriveSchedule::sampled(std::vector<double> times, std::vector<double> delta,
                                     std::vector<double> kappa)
{
    if (times.size() < 3)
        throw InvalidParameter("sampled schedule needs at least 3 samples");
    if (delta.size() != times.size() || kappa.size() != times.size())
        throw InvalidParameter("sampled schedule tables differ in length");
    if (times.front() != 0.0)
        throw InvalidParameter("sampled schedule must start at t = 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw InvalidParameter("sampled schedule times must be strictly increasing");
    for (double k : kappa)
        if (!(k >= 0.0))
            throw InvalidParameter("sampled schedule kappa must be non-negative");

    DriveSchedule s;
    s.kind_ = ScheduleKind::Sampled;
    s.window_ = times.back();
    s.t0_ = 0.5 * s.window_;
    s.kappa0_ = *std::max_element(kappa.begin(), kappa.end());
    s.delta_ = natural_spline(times, std::move(delta));
    s.kappa_ = natural_spline(times, std::move(kappa));
    s.times_ = std::move(times);
    return s;
}

DriveSchedule::Spline DriveSchedule::natural_spline(const std::vector<double>& t, std::vector<double> y)
{
    const std::size_t n = t.size();
    Spline s;
    s.second.assign(n, 0.0);
    // Thomas algorithm on the interior knots; natural ends have M = 0.
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t[i] - t[i - 1];
        const double h1 = t[i + 1] - t[i];
        const double diag = 2.0 * (h0 + h1);
        const double rhs = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        const double denom = diag - h0 * c[i - 1];
        c[i] = h1 / denom;
        d[i] = (rhs - h0 * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        s.second[i] = d[i] - c[i] * s.second[i + 1];
        if (i == 1)
            break;
    }
    s.values = std::move(y);
    return s;
}

void DriveSchedule::eval_spline(const Spline& s, double t, double& y, double& dy, double& ddy) const
{
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t hi = static_cast<std::size_t>(std::distance(times_.begin(), it));
    hi = std::clamp<std::size_t>(hi, 1, times_.size() - 1);
    const std::size_t lo = hi - 1;
    const double h = times_[hi] - times_[lo];
    const double a = (times_[hi] - t) / h;
    const double b = 1.0 - a;
    const double m0 = s.second[lo];
    const double m1 = s.second[hi];
    y = a * s.values[lo] + b * s.values[hi] + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
    dy = (s.values[hi] - s.values[lo]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m0 +
         (3.0 * b * b - 1.0) / 6.0 * h * m1;
    ddy = a * m0 + b * m1;
}

ScheduleSample DriveSchedule::at(double t) const
{
    const double slack = 1e-9 * window_;
    if (t < -slack || t > window_ + slack)
        throw DomainError("schedule evaluated at t = " + std::to_string(t) + " outside [0, " +
                          std::to_string(window_) + "]");
    ScheduleSample out;
    if (kind_ == ScheduleKind::LandauZener) {
        out.delta = delta_offset_ + beta_ * (t - t0_);
        out.kappa = kappa0_;
        out.delta_dot = beta_;
        return out;
    }
    eval_spline(delta_, t, out.delta, out.delta_dot, out.delta_ddot);
    eval_spline(kappa_, t, out.kappa, out.kappa_dot, out.kappa_ddot);
    return out;
}

bool DriveSchedule::crosses_resonance() const
{
    return delta(0.0) * delta(window_) < 0.0;
}

double DriveSchedule::closest_approach() const
{
    if (kind_ == ScheduleKind::LandauZener) {
        if (beta_ == 0.0)
            return t0_;
        return std::clamp(t0_ - delta_offset_ / beta_, 0.0, window_);
    }
    constexpr int grid = 4096;
    double best_t = 0.0;
    double best = std::abs(delta(0.0));
    for (int i = 1; i <= grid; ++i) {
        const double t = window_ * i / grid;
        const double v = std::abs(delta(t));
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    return best_t;
}

DriveSchedule DriveSchedule::with_kappa0(double kappa0) const
{
    if (kind_ != ScheduleKind::LandauZener)
        throw InvalidParameter("with_kappa0 requires a Landau-Zener schedule");
    return landau_zener(kappa0, delta_offset_, beta_, t0_);
}

std::string_view to_string(PhiDotMode mode)
{
    switch (mode) {
    case PhiDotMode::Exact: return "exact";
    case PhiDotMode::Verbatim: return "verbatim";
    case PhiDotMode::Off: return "off";
    }
    return "exact";
}

PhiDotMode phi_dot_mode_from_string(std::string_view s)
{
    if (s == "exact")
        return PhiDotMode::Exact;
    if (s == "verbatim")
        return PhiDotMode::Verbatim;
    if (s == "off")
        return PhiDotMode::Off;
    throw InvalidParameter("unknown phi-dot mode '" + std::string(s) + "' (exact|verbatim|off)");
}

double mixing_angle(double kappa, double delta)
{
    if (kappa == 0.0 && delta == 0.0)
        throw UndefinedAngle("mixing angle undefined at kappa = delta = 0");
    return std::atan2(2.0 * kappa, delta);
}

namespace {

struct Ramp {
    double weight = 1.0;
    double rate = 0.0;
};

// sine² ramp of length fraction·T at both ends of the window
Ramp ramp_at(double t, double window, double fraction)
{
    if (fraction <= 0.0)
        return {};
    const double tau = fraction * window;
    const double w = std::numbers::pi / (2.0 * tau);
    if (t < tau) {
        const double s = std::sin(w * t);
        return {s * s, w * std::sin(2.0 * w * t)};
    }
    if (t > window - tau) {
        const double u = window - t;
        const double s = std::sin(w * u);
        return {s * s, -w * std::sin(2.0 * w * u)};
    }
    return {};
}

} // namespace

CDTerms counterdiabatic_terms(const DriveSchedule& schedule, double t, const CdOptions& opts)
{
    const ScheduleSample s = schedule.at(t);
    const double gap2 = s.delta * s.delta + 4.0 * s.kappa * s.kappa;
    if (gap2 == 0.0)
        throw SingularSchedule("delta^2 + 4 kappa^2 = 0 at t = " + std::to_string(t));

    // Signed Θ̇/2 and its derivative.
    const double num = s.kappa_dot * s.delta - s.kappa * s.delta_dot;
    const double half_theta_dot = num / gap2;
    const double gap2_dot = 2.0 * s.delta * s.delta_dot + 8.0 * s.kappa * s.kappa_dot;
    const double num_dot = s.kappa_ddot * s.delta - s.kappa * s.delta_ddot;
    const double half_theta_ddot = (num_dot * gap2 - num * gap2_dot) / (gap2 * gap2);

    const Ramp ramp = ramp_at(t, schedule.window(), opts.ramp_fraction);
    const double k = ramp.weight * half_theta_dot;
    const double k_dot = ramp.rate * half_theta_dot + ramp.weight * half_theta_ddot;

    CDTerms out;
    out.kappa_a = std::abs(k);
    out.kappa_eff = std::hypot(s.kappa, out.kappa_a);
    out.frame_phase = std::atan2(k, s.kappa);

    switch (opts.phi_dot) {
    case PhiDotMode::Exact: {
        const double mag2 = s.kappa * s.kappa + k * k;
        out.phi_dot = mag2 > 0.0 ? (k_dot * s.kappa - k * s.kappa_dot) / mag2 : 0.0;
        break;
    }
    case PhiDotMode::Verbatim: {
        const double d2 = s.delta_dot * s.delta_dot;
        out.phi_dot = 2.0 * s.delta * d2 / (gap2 + d2);
        break;
    }
    case PhiDotMode::Off:
        out.phi_dot = 0.0;
        break;
    }
    out.delta_eff = s.delta - out.phi_dot;
    return out;
}

double adiabaticity_margin(const DriveSchedule& schedule, double t)
{
    const ScheduleSample s = schedule.at(t);
    const CDTerms cd = counterdiabatic_terms(schedule, t);
    return cd.kappa_a / std::sqrt(4.0 * s.kappa * s.kappa + s.delta * s.delta);
}

double lz_probability(double kappa0, double beta)
{
    if (beta == 0.0)
        throw InvalidParameter("Landau-Zener probability undefined for beta = 0");
    return std::exp(-2.0 * std::numbers::pi * kappa0 * kappa0 / std::abs(beta));
}

BoundaryDiagnostic boundary_diagnostic(const DriveSchedule& schedule, const CdOptions& opts)
{
    const CDTerms start = counterdiabatic_terms(schedule, 0.0, opts);
    const CDTerms end = counterdiabatic_terms(schedule, schedule.window(), opts);
    return {start.kappa_a / start.kappa_eff, end.kappa_a / end.kappa_eff};
}

} // namespace wpt
