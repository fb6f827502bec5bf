#pragma once

#include <optional>
#include <utility>

#include "hypam/core_proj.hpp"

namespace hypam {

/// Point of H^3 in the hyperboloid model: x0 x3 - x1^2 - x2^2 = 1, x0 > 0.
/// Equivalently the positive-definite unimodular Hermitian matrix
/// [[x0, x1 + i x2], [x1 - i x2, x3]].
struct HPoint {
    double x0 = 1.0, x1 = 0.0, x2 = 0.0, x3 = 1.0;

    static HPoint origin() { return {}; }
    static HPoint from_hermitian(const Mat2& h); // renormalizes det to 1
    Mat2 hermitian() const { return {x0, cplx(x1, x2), cplx(x1, -x2), x3}; }
};

/// Point of the absolute (boundary sphere of H^3).
struct AbsPoint {
    CP1Point dir;

    AbsPoint() = default;
    explicit AbsPoint(const CP1Point& d) : dir(d) {}
    static AbsPoint from_unit_vec(const std::array<double, 3>& v);

    std::array<double, 3> unit_vec() const { return dir.unit_vec(); }
};

double sphere_dist(const AbsPoint& x, const AbsPoint& y);

/// Polar coordinates on the compactified space: rho in [0, inf], phi defined
/// for rho > 0.
struct PolarCoord {
    double rho = 0.0;         // ignored when infinite
    bool infinite = false;
    std::optional<AbsPoint> phi; // empty iff rho == 0

    static PolarCoord at_origin() { return {}; }
    static PolarCoord finite(double r, const AbsPoint& p) { return {r, false, p}; }
    static PolarCoord boundary(const AbsPoint& p) { return {0.0, true, p}; }
};

/// Element of SO(3) ~ RP^3 as a unit quaternion up to sign, first nonzero
/// component positive.
struct RotationElt {
    std::array<double, 4> q{1.0, 0.0, 0.0, 0.0};

    static RotationElt from_unitary(const Mat2& u); // u unitary up to scale
    Mat2 su2() const {
        return {cplx(q[0], q[1]), cplx(q[2], q[3]), cplx(-q[2], q[3]), cplx(q[0], -q[1])};
    }
};

double rotation_dist(const RotationElt& a, const RotationElt& b);

/// Point of the closed Poincare ball; |v| == 1 marks boundary points.
struct BallPoint {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    bool boundary = false;
};

// -- the amoeba map and its relatives ---------------------------------------

/// kappa(A) = A A* / |det A|. errors: OnQuadric
HPoint kappa(const ProjPoint& p);

/// Hyperbolic distance; errors: ArgumentBelowOne on invalid input.
double dist(const HPoint& x, const HPoint& y);

/// arccosh(|A|^2 / (2 |det A|)) = dist(origin, kappa(A)). errors: OnQuadric
double rho_of_matrix(const ProjPoint& p);

/// (rotation part, kappa(A)); A ~ sqrt(HPoint) * U ~ U * sqrt(A*A/|det|).
std::pair<RotationElt, HPoint> polar_decompose(const ProjPoint& p);

RotationElt coamoeba(const ProjPoint& p);

/// Rescaled amoeba map (rho / log t, phi). errors: OnQuadric, BadScale
PolarCoord kappa_t(const ProjPoint& p, double t);

/// Polar form of kappa(p): safe also when kappa would overflow at huge rho.
PolarCoord kappa_polar(const ProjPoint& p);

/// Like kappa_polar but with the on-quadric gate at machine scale instead of
/// eps_q, for rescaled-amoeba sampling arbitrarily close to Q.
PolarCoord kappa_polar_deep(const ProjPoint& p);

/// Boundary extension: beta of q_coords. errors: NotOnQuadric
AbsPoint boundary_kappa(const ProjPoint& p);

/// Direction of the geodesic ray from the origin through x. errors: AtOrigin
AbsPoint phi(const HPoint& x);
PolarCoord to_polar(const HPoint& x);
HPoint from_polar(double rho, const AbsPoint& dir);

/// Rescaling homeomorphism on I \ Q: polar factor kept, log distance divided.
/// errors: OnQuadric, BadScale
ProjPoint H_t(const ProjPoint& p, double t);

/// Busemann function normalized to 0 at the origin; decreases toward q.
double busemann(const AbsPoint& q, const HPoint& x);

/// Distance to the geodesic with the given distinct endpoints (closed form).
/// errors: CoincidingEndpoints
double dist_to_geodesic(const HPoint& x, const AbsPoint& e1, const AbsPoint& e2);

/// Parametrized geodesic through two boundary points, unit speed in s.
HPoint geodesic_point(const AbsPoint& e1, const AbsPoint& e2, double s);

/// Geodesic segment between interior points, tau in [0,1].
HPoint geodesic_interpolate(const HPoint& x, const HPoint& y, double tau);

/// Left isometry action on H^3: H -> A H A^* / |det A|.
HPoint act(const ProjPoint& a, const HPoint& x);
AbsPoint act(const ProjPoint& a, const AbsPoint& x);

// -- model conversions -------------------------------------------------------

BallPoint to_ball(const HPoint& x);
HPoint from_ball(const BallPoint& b); // interior points only
BallPoint to_ball(const PolarCoord& pc);
BallPoint boundary_ball(const AbsPoint& a);

} // namespace hypam
