#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace wpt {

using cplx = std::complex<double>;

/// Dense 2×2 complex matrix, row-major.
struct Mat2 {
    cplx a11{}, a12{}, a21{}, a22{};

    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

    cplx trace() const { return a11 + a22; }
    Mat2 adjoint() const { return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)}; }

    Mat2& operator+=(const Mat2& o)
    {
        a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
        return *this;
    }
    Mat2& operator-=(const Mat2& o)
    {
        a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
        return *this;
    }
    Mat2& operator*=(cplx s)
    {
        a11 *= s; a12 *= s; a21 *= s; a22 *= s;
        return *this;
    }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator*(Mat2 a, cplx s) { return a *= s; }
inline Mat2 operator*(cplx s, Mat2 a) { return a *= s; }

inline Mat2 operator*(const Mat2& x, const Mat2& y)
{
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

inline std::array<cplx, 2> operator*(const Mat2& m, const std::array<cplx, 2>& v)
{
    return {m.a11 * v[0] + m.a12 * v[1], m.a21 * v[0] + m.a22 * v[1]};
}

/// Largest absolute entry.
inline double max_abs(const Mat2& m)
{
    return std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21), std::abs(m.a22)});
}

/// Eigenvalues of a Hermitian 2×2 matrix, ascending.
inline std::array<double, 2> hermitian_eigenvalues(const Mat2& m)
{
    const double mean = 0.5 * (m.a11.real() + m.a22.real());
    const double half_diff = 0.5 * (m.a11.real() - m.a22.real());
    const double radius = std::hypot(half_diff, std::abs(m.a12));
    return {mean - radius, mean + radius};
}

} // namespace wpt
