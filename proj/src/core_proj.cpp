#include "hypam/core_proj.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "hypam/error.hpp"

namespace hypam {

Tolerances& tols() {
    static Tolerances t;
    return t;
}

ProjPoint::ProjPoint(const Mat2& raw) {
    double n = raw.norm();
    if (n < 1e-200) fail(ErrorKind::InputError, "projective point from zero matrix");
    Mat2 s = raw * (1.0 / n);
    int lead = 0;
    double best = -1.0;
    for (int i = 0; i < 4; ++i) {
        double ai = std::abs(s.entry(i));
        if (ai > best) { // strict: ties keep the earlier entry
            best = ai;
            lead = i;
        }
    }
    cplx phase = s.entry(lead) / best;
    m = s * std::conj(phase);
    // pin the lead entry exactly real
    m.entry(lead) = std::abs(m.entry(lead));
}

cplx det(const ProjPoint& p) { return p.m.det(); }

bool on_quadric(const ProjPoint& p) { return std::abs(det(p)) < tols().q; }

double proj_dist(const ProjPoint& p, const ProjPoint& q) {
    // Fubini-Study angle between unit representatives
    cplx u[4] = {p.m.a, p.m.b, p.m.c, p.m.d};
    cplx v[4] = {q.m.a, q.m.b, q.m.c, q.m.d};
    return unit_vec_angle(u, v, 4);
}

bool same_point(const ProjPoint& p, const ProjPoint& q) { return proj_dist(p, q) < tols().proj; }

double proj_dist(const CP1Point& p, const CP1Point& q) {
    cplx u[2] = {p.u, p.v}, v[2] = {q.u, q.v};
    return unit_vec_angle(u, v, 2);
}

bool same_point(const CP1Point& p, const CP1Point& q) { return proj_dist(p, q) < tols().proj; }

ProjPoint QuadricPoint::matrix() const {
    // kernel alpha=(au:av), image beta: M = beta_col * (av, -au)
    return ProjPoint(Mat2(beta.u * alpha.v, -beta.u * alpha.u, beta.v * alpha.v, -beta.v * alpha.u));
}

QuadricPoint q_coords(const ProjPoint& p) {
    if (!on_quadric(p)) fail(ErrorKind::NotOnQuadric, "q_coords needs |det| < eps_q");
    const Mat2& m = p.m;
    // rank-1: kernel from the larger row, image from the larger column
    double r0 = std::norm(m.a) + std::norm(m.b);
    double r1 = std::norm(m.c) + std::norm(m.d);
    CP1Point alpha = r0 >= r1 ? CP1Point(-m.b, m.a) : CP1Point(-m.d, m.c);
    double c0 = std::norm(m.a) + std::norm(m.c);
    double c1 = std::norm(m.b) + std::norm(m.d);
    CP1Point beta = c0 >= c1 ? CP1Point(m.a, m.c) : CP1Point(m.b, m.d);
    return {alpha, beta};
}

ProjPoint Line::at(const CP1Point& st) const {
    return ProjPoint(p.m * st.u + d.m * st.v);
}

double span_smallest_singular(const ProjPoint& p, const ProjPoint& q) {
    Eigen::Matrix<cplx, 2, 4> rows;
    for (int i = 0; i < 4; ++i) {
        rows(0, i) = p.m.entry(i);
        rows(1, i) = q.m.entry(i);
    }
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 2, 4>> svd(rows);
    return svd.singularValues()(1);
}

double affine_span_residual(const std::vector<Mat2>& rows) {
    Eigen::MatrixXcd m(rows.size(), 4);
    for (size_t r = 0; r < rows.size(); ++r) {
        double n = rows[r].norm();
        for (int i = 0; i < 4; ++i) m(static_cast<int>(r), i) = rows[r].entry(i) / n;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

namespace {

// Roots of  c20 s^2 + c11 s t + c02 t^2  as points (s:t), numerically stable split.
std::pair<CP1Point, CP1Point> quadratic_roots(cplx c20, cplx c11, cplx c02) {
    cplx disc = c11 * c11 - 4.0 * c20 * c02;
    cplx sq = std::sqrt(disc);
    // pick the sign avoiding cancellation in c11 +/- sq
    cplx qq = std::abs(c11 + sq) >= std::abs(c11 - sq) ? -0.5 * (c11 + sq) : -0.5 * (c11 - sq);
    // roots s/t: qq/c20 and c02/qq
    CP1Point r1 = (std::abs(qq) > 0.0 || std::abs(c20) > 0.0) ? CP1Point(qq, c20) : CP1Point(1.0, 0.0);
    CP1Point r2 = (std::abs(c02) > 0.0 || std::abs(qq) > 0.0) ? CP1Point(c02, qq) : CP1Point(1.0, 0.0);
    return {r1, r2};
}

} // namespace

Line line_through(const ProjPoint& p, const ProjPoint& q) {
    if (span_smallest_singular(p, q) < tols().rank)
        fail(ErrorKind::DegenerateSpan, "line_through needs independent points");

    Line l;
    l.p = p;
    l.d = q;

    cplx c20 = p.m.det();
    cplx c02 = q.m.det();
    cplx c11 = (p.m + q.m).det() - c20 - c02;
    double mag = std::max({std::abs(c20), std::abs(c11), std::abs(c02)});

    if (mag < tols().q) {
        // line inside Q; decide the ruling by which factor is constant
        QuadricPoint s0 = q_coords(l.at(CP1Point(1.0, 0.0)));
        QuadricPoint s1 = q_coords(l.at(CP1Point(0.0, 1.0)));
        QuadricPoint s2 = q_coords(l.at(CP1Point(1.0, 1.0)));
        bool beta_const = proj_dist(s0.beta, s1.beta) < 1e-6 && proj_dist(s0.beta, s2.beta) < 1e-6;
        bool alpha_const = proj_dist(s0.alpha, s1.alpha) < 1e-6 && proj_dist(s0.alpha, s2.alpha) < 1e-6;
        if (beta_const == alpha_const)
            fail(ErrorKind::InconsistentData, "on-quadric line with ambiguous ruling");
        l.qdata.kind = beta_const ? LineKind::OnQuadricPlusRuling : LineKind::OnQuadricMinusRuling;
        return l;
    }

    cplx disc = c11 * c11 - 4.0 * c20 * c02;
    if (std::abs(disc) < tols().disc * mag * mag) {
        // double root; use the better-conditioned expression
        CP1Point root = std::abs(c20) >= std::abs(c02) ? CP1Point(-c11, 2.0 * c20)
                                                       : CP1Point(2.0 * c02, -c11);
        l.qdata.kind = LineKind::Tangent;
        l.qdata.roots = {root};
        l.qdata.qpoints = {q_coords(l.at(root))};
        return l;
    }

    auto [r1, r2] = quadratic_roots(c20, c11, c02);
    l.qdata.kind = LineKind::Transverse;
    l.qdata.roots = {r1, r2};
    l.qdata.qpoints = {q_coords(l.at(r1)), q_coords(l.at(r2))};
    return l;
}

ProjPoint p_real_involution(const ProjPoint& p) {
    return ProjPoint(p.m.adjoint().adjugate());
}

bool is_p_real(const ProjPoint& p) { return same_point(p, p_real_involution(p)); }

std::array<cplx, 4> p_real_chart(const Mat2& m) {
    const cplx i(0.0, 1.0);
    return {m.a + m.d, i * (m.a - m.d), i * (m.b + m.c), m.b - m.c};
}

Mat2 p_real_chart_inverse(const std::array<cplx, 4>& w) {
    const cplx i(0.0, 1.0);
    return {0.5 * (w[0] - i * w[1]), 0.5 * (w[3] - i * w[2]), -0.5 * (w[3] + i * w[2]),
            0.5 * (w[0] + i * w[1])};
}

QuadricPoint pi_P(const ProjPoint& p) {
    if (on_quadric(p)) return q_coords(p); // pi_P restricted to Q is the identity

    Mat2 sigma = p.m.adjoint().adjugate();
    Mat2 u = (p.m + sigma) * 0.5;                   // chart-real part
    Mat2 v = (p.m - sigma) * cplx(0.0, -0.5);       // chart-imaginary part; p = u + i v
    // The P-real line through p is span{u, v}; degenerate span means p is
    // (projectively) fixed by the involution.
    std::vector<Mat2> rows = {u, v};
    double nu = u.norm(), nv = v.norm();
    if (std::min(nu, nv) < tols().rank || affine_span_residual(rows) < tols().rank)
        fail(ErrorKind::OnRealLocus, "pi_P undefined on the P-real locus");

    // det(u + lambda v) has real coefficients in the chart: A + 2B lambda + C lambda^2
    // with A = |w(u)|^2/4 etc.; Cauchy-Schwarz forces conjugate roots.
    auto wu = p_real_chart(u);
    auto wv = p_real_chart(v);
    double A = 0.0, B = 0.0, C = 0.0;
    for (int i = 0; i < 4; ++i) {
        A += std::real(wu[i]) * std::real(wu[i]);
        B += std::real(wu[i]) * std::real(wv[i]);
        C += std::real(wv[i]) * std::real(wv[i]);
    }
    double disc = B * B - A * C;
    double im = std::sqrt(std::max(0.0, -disc)) / C;
    cplx lambda(-B / C, im); // the root with Im > 0, the hemisphere containing p (= u + i v)
    return q_coords(ProjPoint(u + lambda * v));
}

} // namespace hypam
