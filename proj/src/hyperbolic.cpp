#include "hypam/hyperbolic.hpp"

#include <cmath>

#include "hypam/error.hpp"

namespace hypam {

namespace {

// Lorentzian pairing associated with x0 x3 - x1^2 - x2^2; B(x,x) = 1 on H^3,
// dist = arccosh(B). Also defined for null (boundary) vectors.
double lorentz(const HPoint& x, const HPoint& y) {
    return 0.5 * (x.x0 * y.x3 + x.x3 * y.x0) - x.x1 * y.x1 - x.x2 * y.x2;
}

HPoint null_rep(const AbsPoint& a) {
    Mat2 n = a.dir.null_hermitian();
    return {std::real(n.a), std::real(n.b), std::imag(n.b), std::real(n.d)};
}

} // namespace

HPoint HPoint::from_hermitian(const Mat2& h) {
    double det = std::real(h.a) * std::real(h.d) - std::norm(h.b);
    if (det <= 0.0 || std::real(h.a) <= 0.0)
        fail(ErrorKind::InputError, "HPoint needs a positive-definite Hermitian matrix");
    double s = std::sqrt(det);
    return {std::real(h.a) / s, std::real(h.b) / s, std::imag(h.b) / s, std::real(h.d) / s};
}

AbsPoint AbsPoint::from_unit_vec(const std::array<double, 3>& v) {
    // invert the S^2 identification: null Hermitian [[1+z, x+iy],[x-iy, 1-z]] / 2
    Mat2 n(1.0 + v[2], cplx(v[0], v[1]), cplx(v[0], -v[1]), 1.0 - v[2]);
    // rank-1 up to normalization; take the larger column
    double c0 = std::norm(n.a) + std::norm(n.c);
    double c1 = std::norm(n.b) + std::norm(n.d);
    return AbsPoint(c0 >= c1 ? CP1Point(n.a, n.c) : CP1Point(n.b, n.d));
}

double sphere_dist(const AbsPoint& x, const AbsPoint& y) { return sphere_dist(x.dir, y.dir); }

RotationElt RotationElt::from_unitary(const Mat2& u) {
    cplx s = std::sqrt(u.det());
    Mat2 su = u * (1.0 / s);
    RotationElt r;
    r.q = {std::real(su.a), std::imag(su.a), std::real(su.b), std::imag(su.b)};
    double n = std::sqrt(r.q[0] * r.q[0] + r.q[1] * r.q[1] + r.q[2] * r.q[2] + r.q[3] * r.q[3]);
    for (auto& c : r.q) c /= n;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(r.q[i]) > 1e-12) {
            if (r.q[i] < 0.0)
                for (auto& c : r.q) c = -c;
            break;
        }
    }
    return r;
}

double rotation_dist(const RotationElt& a, const RotationElt& b) {
    // RP^3 line angle, chordal form: exact for nearby rotations
    double dp = 0.0, dm = 0.0;
    for (int i = 0; i < 4; ++i) {
        dp += (a.q[i] - b.q[i]) * (a.q[i] - b.q[i]);
        dm += (a.q[i] + b.q[i]) * (a.q[i] + b.q[i]);
    }
    double chord = std::sqrt(std::min(dp, dm));
    return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
}

HPoint kappa(const ProjPoint& p) {
    if (on_quadric(p)) fail(ErrorKind::OnQuadric, "kappa undefined on Q");
    Mat2 aa = p.m * p.m.adjoint();
    return HPoint::from_hermitian(aa);
}

double dist(const HPoint& x, const HPoint& y) {
    // cosh d - 1 = -Q(x - y)/2 with Q the hyperboloid form. The difference form
    // d = 2 asinh(sqrt(-Q(x-y))/2) stays exact for nearly equal points where
    // arccosh of the pairing loses half the working precision; for separated
    // points the pairing form wins (the difference form cancels there instead).
    double d0 = x.x0 - y.x0, d1 = x.x1 - y.x1, d2 = x.x2 - y.x2, d3 = x.x3 - y.x3;
    double mq = d1 * d1 + d2 * d2 - d0 * d3; // -Q(x - y) >= 0 for hyperboloid points
    double pairing = lorentz(x, y);
    if (mq < -2e-9 * std::max(1.0, pairing))
        fail(ErrorKind::ArgumentBelowOne, "dist: invalid hyperboloid points");
    if (mq < 1.0) return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, mq)));
    return std::acosh(std::max(1.0, pairing));
}

double rho_of_matrix(const ProjPoint& p) {
    if (on_quadric(p)) fail(ErrorKind::OnQuadric, "rho undefined on Q");
    // arccosh(|A|^2 / (2 |det A|)) with canonical Frobenius norm 1, in the
    // equivalent asinh form (exact near the unitary locus)
    double u = std::max(0.0, (0.5 - std::abs(det(p))) / std::abs(det(p)));
    return 2.0 * std::asinh(std::sqrt(0.5 * u));
}

std::pair<RotationElt, HPoint> polar_decompose(const ProjPoint& p) {
    if (on_quadric(p)) fail(ErrorKind::OnQuadric, "polar decomposition undefined on Q");
    cplx s = std::sqrt(p.m.det());
    Mat2 ahat = p.m * (1.0 / s); // det 1
    Mat2 left = hermitian_sqrt(ahat * ahat.adjoint());
    Mat2 u = left.inverse() * ahat;
    return {RotationElt::from_unitary(u), HPoint::from_hermitian(ahat * ahat.adjoint())};
}

RotationElt coamoeba(const ProjPoint& p) { return polar_decompose(p).first; }

PolarCoord kappa_polar(const ProjPoint& p) {
    if (on_quadric(p)) return PolarCoord::boundary(boundary_kappa(p));
    double rho = rho_of_matrix(p);
    if (rho == 0.0) return PolarCoord::at_origin();
    // direction = top eigenvector of A A^*, stable regardless of |det|
    Mat2 aa = p.m * p.m.adjoint();
    auto w = hermitian_top_eigenvector(aa);
    return PolarCoord::finite(rho, AbsPoint(CP1Point(w[0], w[1])));
}

PolarCoord kappa_polar_deep(const ProjPoint& p) {
    double ad = std::abs(p.m.det());
    if (ad < 1e-250) {
        // numerically exact quadric point: image direction from the larger column
        const Mat2& m = p.m;
        double c0 = std::norm(m.a) + std::norm(m.c);
        double c1 = std::norm(m.b) + std::norm(m.d);
        CP1Point beta = c0 >= c1 ? CP1Point(m.a, m.c) : CP1Point(m.b, m.d);
        return PolarCoord::boundary(AbsPoint(beta));
    }
    double u = std::max(0.0, (0.5 - ad) / ad);
    double rho = 2.0 * std::asinh(std::sqrt(0.5 * u));
    if (rho == 0.0) return PolarCoord::at_origin();
    auto w = hermitian_top_eigenvector(p.m * p.m.adjoint());
    return PolarCoord::finite(rho, AbsPoint(CP1Point(w[0], w[1])));
}

PolarCoord kappa_t(const ProjPoint& p, double t) {
    if (t <= 1.0) fail(ErrorKind::BadScale, "kappa_t needs t > 1");
    PolarCoord pc = kappa_polar(p);
    if (pc.infinite) fail(ErrorKind::OnQuadric, "kappa_t undefined on Q");
    pc.rho /= std::log(t);
    return pc;
}

AbsPoint boundary_kappa(const ProjPoint& p) {
    if (!on_quadric(p)) fail(ErrorKind::NotOnQuadric, "boundary_kappa needs a point of Q");
    return AbsPoint(q_coords(p).beta);
}

AbsPoint phi(const HPoint& x) {
    double rho = dist(HPoint::origin(), x);
    if (rho < 1e-12) fail(ErrorKind::AtOrigin, "phi undefined at the origin");
    auto w = hermitian_top_eigenvector(x.hermitian());
    return AbsPoint(CP1Point(w[0], w[1]));
}

PolarCoord to_polar(const HPoint& x) {
    double rho = dist(HPoint::origin(), x);
    if (rho < 1e-12) return PolarCoord::at_origin();
    return PolarCoord::finite(rho, phi(x));
}

HPoint from_polar(double rho, const AbsPoint& dir) {
    if (rho < 0.0) fail(ErrorKind::InputError, "from_polar needs rho >= 0");
    // exp(rho X) with X = 2 N - I, N the null projector of the direction
    Mat2 n = dir.dir.null_hermitian();
    Mat2 x = n * 2.0 - Mat2::identity();
    Mat2 h = Mat2::identity() * std::cosh(rho) + x * std::sinh(rho);
    return HPoint::from_hermitian(h);
}

ProjPoint H_t(const ProjPoint& p, double t) {
    if (t <= 1.0) fail(ErrorKind::BadScale, "H_t needs t > 1");
    if (on_quadric(p)) fail(ErrorKind::OnQuadric, "H_t undefined on Q");
    cplx s = std::sqrt(p.m.det());
    Mat2 ahat = p.m * (1.0 / s);
    Mat2 aa = ahat * ahat.adjoint();
    Mat2 g = hermitian_log(aa) * 0.5;
    Mat2 u = hermitian_sqrt(aa).inverse() * ahat;
    return ProjPoint(hermitian_exp(g * (1.0 / std::log(t))) * u);
}

double busemann(const AbsPoint& q, const HPoint& x) {
    HPoint n = null_rep(q);
    double num = lorentz(x, n);
    double den = lorentz(HPoint::origin(), n);
    return std::log(num / den);
}

double dist_to_geodesic(const HPoint& x, const AbsPoint& e1, const AbsPoint& e2) {
    HPoint p = null_rep(e1), q = null_rep(e2);
    double bpq = lorentz(p, q);
    if (bpq < 1e-14) fail(ErrorKind::CoincidingEndpoints, "geodesic endpoints coincide");
    double arg2 = 2.0 * lorentz(x, p) * lorentz(x, q) / bpq; // cosh^2(d)
    return std::acosh(std::sqrt(std::max(1.0, arg2)));
}

HPoint geodesic_point(const AbsPoint& e1, const AbsPoint& e2, double s) {
    HPoint p = null_rep(e1), q = null_rep(e2);
    double bpq = lorentz(p, q);
    if (bpq < 1e-14) fail(ErrorKind::CoincidingEndpoints, "geodesic endpoints coincide");
    double scale = std::sqrt(2.0 * bpq);
    HPoint g;
    double cp = std::exp(s) / scale, cq = std::exp(-s) / scale;
    g.x0 = cp * p.x0 + cq * q.x0;
    g.x1 = cp * p.x1 + cq * q.x1;
    g.x2 = cp * p.x2 + cq * q.x2;
    g.x3 = cp * p.x3 + cq * q.x3;
    return g;
}

HPoint geodesic_interpolate(const HPoint& x, const HPoint& y, double tau) {
    double d = dist(x, y);
    if (d < 1e-14) return x;
    double sh = std::sinh(d);
    double cx = std::sinh((1.0 - tau) * d) / sh, cy = std::sinh(tau * d) / sh;
    return {cx * x.x0 + cy * y.x0, cx * x.x1 + cy * y.x1, cx * x.x2 + cy * y.x2,
            cx * x.x3 + cy * y.x3};
}

HPoint act(const ProjPoint& a, const HPoint& x) {
    Mat2 h = a.m * x.hermitian() * a.m.adjoint();
    return HPoint::from_hermitian(h);
}

AbsPoint act(const ProjPoint& a, const AbsPoint& x) { return AbsPoint(moebius(a.m, x.dir)); }

BallPoint to_ball(const HPoint& x) {
    // Minkowski form (X_t, X_1, X_2, X_3) = ((x0+x3)/2, x1, x2, (x0-x3)/2)
    double xt = 0.5 * (x.x0 + x.x3);
    BallPoint b;
    b.v = {x.x1 / (1.0 + xt), x.x2 / (1.0 + xt), 0.5 * (x.x0 - x.x3) / (1.0 + xt)};
    return b;
}

HPoint from_ball(const BallPoint& b) {
    double r2 = b.v[0] * b.v[0] + b.v[1] * b.v[1] + b.v[2] * b.v[2];
    if (r2 >= 1.0) fail(ErrorKind::InputError, "from_ball needs an interior point");
    double s = 1.0 / (1.0 - r2);
    double xt = (1.0 + r2) * s;
    double x1 = 2.0 * b.v[0] * s, x2 = 2.0 * b.v[1] * s, x3m = 2.0 * b.v[2] * s;
    return {xt + x3m, x1, x2, xt - x3m};
}

BallPoint boundary_ball(const AbsPoint& a) {
    BallPoint b;
    b.v = a.unit_vec();
    b.boundary = true;
    return b;
}

BallPoint to_ball(const PolarCoord& pc) {
    if (pc.infinite) return boundary_ball(*pc.phi);
    if (!pc.phi) return BallPoint{};
    double e = std::tanh(0.5 * pc.rho);
    auto u = pc.phi->unit_vec();
    BallPoint b;
    b.v = {e * u[0], e * u[1], e * u[2]};
    return b;
}

} // namespace hypam
