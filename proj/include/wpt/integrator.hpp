#pragma once

#include "wpt/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>

namespace wpt::ode {

template <std::size_t N>
using State = std::array<double, N>;

enum class Method { AdaptiveRK45, FixedRK4 };

struct Settings {
    Method method = Method::AdaptiveRK45;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0;  ///< absolute; 0 means unbounded
    long max_steps = 50'000'000;
};

struct Stats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;

    friend bool operator==(const Stats&, const Stats&) = default;
    Stats& operator+=(const Stats& o)
    {
        accepted += o.accepted;
        rejected += o.rejected;
        rhs_evals += o.rhs_evals;
        return *this;
    }
};

namespace detail {

template <std::size_t N>
inline State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms)
{
    State<N> out = y;
    for (const auto& [c, k] : terms) {
        if (c == 0.0)
            continue;
        const double hc = h * c;
        for (std::size_t i = 0; i < N; ++i)
            out[i] += hc * (*k)[i];
    }
    return out;
}

} // namespace detail

/// Integrates y' = rhs(t, y) over [t_start, t_end] and reports the solution
/// at each of `samples` (ascending, inside the interval) through
/// `on_sample(index, t, y)`.
///
/// `after_step(t, y)` runs on every accepted step and may project the state
/// (e.g. re-symmetrize) or throw to abort.
///
/// The adaptive path is Dormand-Prince 5(4) with its 4th-order dense output;
/// samples between steps are interpolated. The fixed path is classic RK4 on a
/// uniform grid that contains every sample time; it requires samples to be
/// the uniform grid t_start + i·(t_end − t_start)/(n − 1).
template <std::size_t N, class Rhs, class AfterStep, class OnSample>
Stats integrate(Rhs&& rhs, State<N> y, double t_start, double t_end, std::span<const double> samples,
                const Settings& cfg, AfterStep&& after_step, OnSample&& on_sample)
{
    Stats stats;
    const double span = t_end - t_start;
    std::size_t next = 0;
    auto emit_exact = [&](double t, const State<N>& state) {
        while (next < samples.size() && samples[next] <= t) {
            on_sample(next, samples[next], state);
            ++next;
        }
    };
    if (!samples.empty() && samples.front() <= t_start)
        emit_exact(t_start, y);

    if (cfg.method == Method::FixedRK4) {
        const std::size_t intervals = samples.size() > 1 ? samples.size() - 1 : 1;
        std::size_t sub = 1;
        if (cfg.max_step > 0.0)
            sub = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / cfg.max_step / intervals)));
        const std::size_t steps = intervals * sub;
        double t = t_start;
        for (std::size_t n = 0; n < steps; ++n) {
            const double t_next = n + 1 == steps ? t_end : t_start + span * double(n + 1) / double(steps);
            const double h = t_next - t;
            const State<N> k1 = rhs(t, y);
            const State<N> k2 = rhs(t + 0.5 * h, detail::axpy<N>(y, h, {{0.5, &k1}}));
            const State<N> k3 = rhs(t + 0.5 * h, detail::axpy<N>(y, h, {{0.5, &k2}}));
            const State<N> k4 = rhs(t + h, detail::axpy<N>(y, h, {{1.0, &k3}}));
            y = detail::axpy<N>(y, h, {{1.0 / 6.0, &k1}, {1.0 / 3.0, &k2}, {1.0 / 3.0, &k3}, {1.0 / 6.0, &k4}});
            stats.rhs_evals += 4;
            ++stats.accepted;
            t = t_next;
            after_step(t, y);
            if ((n + 1) % sub == 0) {
                const std::size_t idx = (n + 1) / sub;
                if (idx < samples.size()) {
                    on_sample(idx, samples[idx], y);
                    next = idx + 1;
                }
            }
        }
        return stats;
    }

    // Dormand-Prince 5(4) tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                     a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                     d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                     d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

    const double max_step = cfg.max_step > 0.0 ? cfg.max_step : span;
    double h = std::min(max_step, 1e-3 * span);
    double t = t_start;
    const double min_step = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t_start), std::abs(t_end));

    State<N> k1 = rhs(t, y);
    ++stats.rhs_evals;
    while (t < t_end) {
        if (stats.accepted + stats.rejected >= cfg.max_steps)
            throw StiffnessError("step budget exhausted at t = " + std::to_string(t), t);
        bool last = false;
        // Stretch onto t_end rather than leave a sliver below min_step.
        if (t + 1.01 * h >= t_end) {
            h = t_end - t;
            last = true;
        }
        if (h < min_step)
            throw StiffnessError("step size underflow at t = " + std::to_string(t), t);

        const State<N> k2 = rhs(t + c2 * h, detail::axpy<N>(y, h, {{a21, &k1}}));
        const State<N> k3 = rhs(t + c3 * h, detail::axpy<N>(y, h, {{a31, &k1}, {a32, &k2}}));
        const State<N> k4 = rhs(t + c4 * h, detail::axpy<N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State<N> k5 =
            rhs(t + c5 * h, detail::axpy<N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State<N> k6 =
            rhs(t + h, detail::axpy<N>(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State<N> y_new =
            detail::axpy<N>(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const State<N> k7 = rhs(t + h, y_new);
        stats.rhs_evals += 6;

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / N);
        if (!std::isfinite(err))
            throw StiffnessError("non-finite error estimate at t = " + std::to_string(t), t);

        if (err <= 1.0) {
            ++stats.accepted;
            const double t_new = last ? t_end : t + h;
            // Dense output over (t, t_new].
            if (next < samples.size() && samples[next] < t_new) {
                State<N> r2, r3, r4, r5;
                for (std::size_t i = 0; i < N; ++i) {
                    const double diff = y_new[i] - y[i];
                    r2[i] = diff;
                    r3[i] = h * k1[i] - diff;
                    r4[i] = diff - h * k7[i] - r3[i];
                    r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
                }
                while (next < samples.size() && samples[next] < t_new) {
                    const double theta = (samples[next] - t) / h;
                    const double theta1 = 1.0 - theta;
                    State<N> ys;
                    for (std::size_t i = 0; i < N; ++i)
                        ys[i] = y[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i])));
                    on_sample(next, samples[next], ys);
                    ++next;
                }
            }
            t = t_new;
            y = y_new;
            after_step(t, y);
            emit_exact(t, y);
            k1 = rhs(t, y);
            ++stats.rhs_evals;
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h = std::min(max_step, h * fac);
        } else {
            ++stats.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    return stats;
}

} // namespace wpt::ode
