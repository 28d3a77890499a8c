#pragma once

#include "wpt/linalg.hpp"

#include <array>

namespace wpt {

/// 2×2 density matrix in the diabatic (source, drain) basis. Entries are
/// fractions of the initial stored energy: ρ_ss = |b_s|², ρ_dd = |b_d|².
struct DensityMatrix2 {
    Mat2 m;

    friend bool operator==(const DensityMatrix2&, const DensityMatrix2&) = default;

    /// All energy in the source coil.
    static DensityMatrix2 source_only() { return {Mat2::diag(1.0, 0.0)}; }
    /// |b⟩⟨b| for an amplitude pair b = (b_s, b_d).
    static DensityMatrix2 pure(const std::array<cplx, 2>& b)
    {
        return {{b[0] * std::conj(b[0]), b[0] * std::conj(b[1]), b[1] * std::conj(b[0]),
                 b[1] * std::conj(b[1])}};
    }

    double rho_ss() const { return m.a11.real(); }
    double rho_dd() const { return m.a22.real(); }
    cplx rho_sd() const { return m.a12; }
    double trace() const { return m.a11.real() + m.a22.real(); }

    bool is_hermitian(double tol = 1e-12) const
    {
        return std::abs(m.a11.imag()) <= tol && std::abs(m.a22.imag()) <= tol &&
               std::abs(m.a12 - std::conj(m.a21)) <= tol;
    }

    double min_eigenvalue() const { return hermitian_eigenvalues(m)[0]; }

    /// ρ ← (ρ + ρ†)/2
    void symmetrize()
    {
        const Mat2 adj = m.adjoint();
        m = 0.5 * (m + adj);
    }

    /// Pulls a slightly negative eigenvalue back to zero at fixed trace by
    /// shrinking the traceless part. No-op for positive semidefinite ρ.
    void clip_to_positive()
    {
        const double mean = 0.5 * trace();
        const auto ev = hermitian_eigenvalues(m);
        if (ev[0] >= 0.0 || mean <= 0.0)
            return;
        const double shrink = mean / (ev[1] - mean);
        const Mat2 shifted = m - Mat2::diag(mean, mean);
        m = Mat2::diag(mean, mean) + shrink * shifted;
    }
};

} // namespace wpt
