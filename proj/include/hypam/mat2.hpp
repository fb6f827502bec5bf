#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace hypam {

using cplx = std::complex<double>;

/// 2x2 complex matrix [[a,b],[c,d]], the coordinate patch for everything:
/// CP^3 points, isometries, Hermitian models of H^3.
struct Mat2 {
    cplx a{0.0}, b{0.0}, c{0.0}, d{0.0};

    Mat2() = default;
    Mat2(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diag(cplx x, cplx y) { return {x, 0.0, 0.0, y}; }

    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
    Mat2 conj() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }
    Mat2 transpose() const { return {a, c, b, d}; }

    double norm2() const { return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d); }
    double norm() const { return std::sqrt(norm2()); }

    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator*(cplx s) const { return {a * s, b * s, c * s, d * s}; }
    friend Mat2 operator*(cplx s, const Mat2& m) { return m * s; }

    Mat2 inverse() const { return adjugate() * (1.0 / det()); }

    cplx entry(int i) const { return i == 0 ? a : i == 1 ? b : i == 2 ? c : d; }
    cplx& entry(int i) { return i == 0 ? a : i == 1 ? b : i == 2 ? c : d; }

    std::array<cplx, 2> apply(const std::array<cplx, 2>& v) const {
        return {a * v[0] + b * v[1], c * v[0] + d * v[1]};
    }
};

inline bool is_hermitian(const Mat2& m, double tol = 1e-9) {
    return std::abs(std::imag(m.a)) < tol && std::abs(std::imag(m.d)) < tol &&
           std::abs(m.b - std::conj(m.c)) < tol;
}

/// Eigenvalues of a Hermitian matrix, mu_max >= mu_min.
void hermitian_eigenvalues(const Mat2& h, double& mu_max, double& mu_min);

/// Unit eigenvector for the larger eigenvalue of a Hermitian matrix.
std::array<cplx, 2> hermitian_top_eigenvector(const Mat2& h);

/// f(H) for Hermitian H via the 2x2 spectral decomposition (exact at this size).
Mat2 hermitian_apply(const Mat2& h, double (*f)(double));

Mat2 hermitian_sqrt(const Mat2& h); // positive-definite input
Mat2 hermitian_log(const Mat2& h);  // positive-definite input
Mat2 hermitian_exp(const Mat2& h);

/// Point of CP^1 as a homogeneous pair (u:v), kept in canonical form:
/// unit norm, largest-modulus entry real positive (ties: u first).
struct CP1Point {
    cplx u{1.0}, v{0.0};

    CP1Point() = default;
    CP1Point(cplx u_, cplx v_); // canonicalizes

    static CP1Point zero() { return CP1Point(0.0, 1.0); }     // z = 0
    static CP1Point infinity() { return CP1Point(1.0, 0.0); } // z = inf

    /// Antipodal point z -> -1/conj(z), i.e. (u:v) -> (-conj(v):conj(u)).
    CP1Point antipode() const { return CP1Point(-std::conj(v), std::conj(u)); }

    /// Unit vector on S^2 under the standard identification of CP^1 with the sphere.
    std::array<double, 3> unit_vec() const;

    /// Rank-1 Hermitian representative w w* (w = (u,v)).
    Mat2 null_hermitian() const;
};

/// Fubini-Study distance scaled to diameter pi (the SO(3)-invariant round metric).
double sphere_dist(const CP1Point& x, const CP1Point& y);

/// Angle in [0, pi/2] between complex lines spanned by unit vectors; computed
/// from the orthogonal component so that angles near 0 keep full precision.
double unit_vec_angle(const cplx* u, const cplx* v, int n);

/// Moebius action of an invertible matrix.
CP1Point moebius(const Mat2& m, const CP1Point& z);

} // namespace hypam
