#include "wpt/metrics.hpp"

#include "wpt/error.hpp"

#include <vector>

namespace wpt {

double trapezoid(std::span<const double> t, std::span<const double> y)
{
    double sum = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
        sum += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    return sum;
}

double simpson_uniform(std::span<const double> y, double step)
{
    const std::size_t n = y.size();
    if (n < 2)
        return 0.0;
    if (n == 2)
        return 0.5 * step * (y[0] + y[1]);
    std::size_t intervals = n - 1;
    double tail = 0.0;
    if (intervals % 2 == 1) {
        // Last three intervals by Simpson's 3/8 rule.
        const std::size_t k = n - 4;
        tail = 3.0 * step / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
        intervals -= 3;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 2 <= intervals; i += 2)
        sum += y[i] + 4.0 * y[i + 1] + y[i + 2];
    return step / 3.0 * sum + tail;
}

EfficiencyReport efficiency(const Trajectory& traj, const CoilPair& coils)
{
    std::vector<double> t, ss, dd;
    t.reserve(traj.samples.size());
    ss.reserve(traj.samples.size());
    dd.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        t.push_back(s.t);
        ss.push_back(s.rho.rho_ss());
        dd.push_back(s.rho.rho_dd());
    }
    EfficiencyReport r;
    r.integral_source = trapezoid(t, ss);
    r.integral_drain = trapezoid(t, dd);
    r.window = traj.window();
    r.protocol = traj.meta.protocol;
    const double denom = coils.gamma_s * r.integral_source + (coils.gamma_d + coils.gamma_w) * r.integral_drain;
    if (!(denom > 0.0))
        throw UndefinedEfficiency("efficiency denominator is zero (no loss or no energy)");
    r.eta = coils.gamma_w * r.integral_drain / denom;
    return r;
}

double transfer_fidelity(const Trajectory& traj)
{
    return traj.samples.back().frac_d;
}

double doublecheck_integrals(const Trajectory& traj, const CoilPair& coils)
{
    const double c = energy_decay_factor(traj.meta.physics.losses);
    const double gd = coils.gamma_d + coils.gamma_w;
    std::vector<double> rate;
    rate.reserve(traj.samples.size());
    for (const auto& s : traj.samples)
        rate.push_back(c * (coils.gamma_s * s.rho.rho_ss() + gd * s.rho.rho_dd()));
    const std::size_t n = traj.samples.size();
    const double step = n > 1 ? traj.window() / double(n - 1) : 0.0;
    const double lost = simpson_uniform(rate, step);
    return std::abs(traj.front().rho.trace() - traj.back().rho.trace() - lost);
}

} // namespace wpt
