#pragma once

#include <optional>
#include <vector>

#include "hypam/config.hpp"
#include "hypam/mat2.hpp"

namespace hypam {

/// Point of CP^3 = nonzero 2x2 matrix up to complex scale, stored canonically:
/// Frobenius norm 1, largest-modulus entry real positive (ties broken a,b,c,d).
struct ProjPoint {
    Mat2 m;

    ProjPoint() : m(Mat2::identity() * (1.0 / std::sqrt(2.0))) {}
    explicit ProjPoint(const Mat2& raw); // canonicalizes, rejects ~zero input

    static ProjPoint from_entries(cplx a, cplx b, cplx c, cplx d) { return ProjPoint(Mat2(a, b, c, d)); }
};

/// det of the canonical representative.
cplx det(const ProjPoint& p);

bool on_quadric(const ProjPoint& p);

/// Projective (Fubini-Study style) distance, zero iff same point of CP^3.
double proj_dist(const ProjPoint& p, const ProjPoint& q);
bool same_point(const ProjPoint& p, const ProjPoint& q);

double proj_dist(const CP1Point& p, const CP1Point& q);
bool same_point(const CP1Point& p, const CP1Point& q);

/// Point of the quadric Q = CP^1 x CP^1: alpha spans the kernel, beta the image.
struct QuadricPoint {
    CP1Point alpha, beta;

    /// The rank-1 matrix with this kernel/image (canonical ProjPoint).
    ProjPoint matrix() const;
};

QuadricPoint q_coords(const ProjPoint& p); // errors: NotOnQuadric

enum class LineKind { OnQuadricPlusRuling, OnQuadricMinusRuling, Tangent, Transverse };

/// Cached line/quadric intersection data: pencil roots of det(s P + t D) and
/// the corresponding quadric points.
struct LineQData {
    LineKind kind;
    std::vector<CP1Point> roots;       // pencil parameters (s:t); empty for on-quadric lines
    std::vector<QuadricPoint> qpoints; // one per root
};

struct Line {
    ProjPoint p, d;
    LineQData qdata;

    /// Pencil point s p + t d (canonical).
    ProjPoint at(const CP1Point& st) const;
};

Line line_through(const ProjPoint& p, const ProjPoint& q); // errors: DegenerateSpan

/// Antiholomorphic involution A -> adj(A*) fixing kappa^{-1}(origin).
ProjPoint p_real_involution(const ProjPoint& p);

bool is_p_real(const ProjPoint& p);

/// Real chart in which the involution is coordinatewise conjugation:
/// w = (a+d, i(a-d), i(b+c), b-c); the quadric becomes {sum w_i^2 = 0}.
std::array<cplx, 4> p_real_chart(const Mat2& m);
Mat2 p_real_chart_inverse(const std::array<cplx, 4>& w);

/// Projection to Q along P-real lines, hemisphere chosen by the sign of the
/// imaginary part of the pencil parameter. errors: OnRealLocus
QuadricPoint pi_P(const ProjPoint& p);

/// Smallest singular value of the 2x4 row span of two points (rank test).
double span_smallest_singular(const ProjPoint& p, const ProjPoint& q);

/// Smallest relative singular value of the span of a set of matrices
/// (used for "does x lie on the line through p,q" style tests).
double affine_span_residual(const std::vector<Mat2>& rows);

} // namespace hypam
