#include "hypam/surfaces.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>

#include "hypam/error.hpp"
#include "hypam/rng.hpp"

namespace hypam {

int Poly4::degree() const {
    int d = 0;
    for (const auto& [e, c] : monomials) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
    return d;
}

cplx Poly4::eval(const Mat2& m) const {
    cplx vars[4] = {m.a, m.b, m.c, m.d};
    cplx acc = 0.0;
    for (const auto& [e, c] : monomials) {
        cplx term = c;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < e[i]; ++k) term *= vars[i];
        acc += term;
    }
    return acc;
}

Poly4 Poly4::partial(int var) const {
    Poly4 r;
    for (const auto& [e, c] : monomials) {
        if (e[var] == 0) continue;
        auto e2 = e;
        e2[var] -= 1;
        r.add(e2, c * double(e[var]));
    }
    return r;
}

std::array<cplx, 4> Poly4::gradient(const Mat2& m) const {
    cplx vars[4] = {m.a, m.b, m.c, m.d};
    std::array<cplx, 4> g{0.0, 0.0, 0.0, 0.0};
    for (const auto& [e, c] : monomials) {
        cplx pw[4];
        for (int i = 0; i < 4; ++i) {
            pw[i] = 1.0;
            for (int k = 0; k < e[i]; ++k) pw[i] *= vars[i];
        }
        for (int i = 0; i < 4; ++i) {
            if (e[i] == 0) continue;
            cplx term = c * double(e[i]);
            for (int j = 0; j < 4; ++j) {
                if (j == i) {
                    for (int k = 0; k < e[i] - 1; ++k) term *= vars[i];
                } else {
                    term *= pw[j];
                }
            }
            g[i] += term;
        }
    }
    return g;
}

double Poly4::coeff_norm() const {
    double s = 0.0;
    for (const auto& [e, c] : monomials) s += std::norm(c);
    return std::sqrt(s);
}

Poly4& Poly4::add(const std::array<int, 4>& exp, cplx coeff) {
    auto it = monomials.find(exp);
    if (it == monomials.end()) {
        if (std::abs(coeff) > 0.0) monomials[exp] = coeff;
    } else {
        it->second += coeff;
        if (std::abs(it->second) < 1e-300) monomials.erase(it);
    }
    return *this;
}

Poly4 Poly4::operator*(const Poly4& o) const {
    Poly4 r;
    for (const auto& [e1, c1] : monomials)
        for (const auto& [e2, c2] : o.monomials)
            r.add({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]}, c1 * c2);
    return r;
}

Poly4 Poly4::operator+(const Poly4& o) const {
    Poly4 r = *this;
    for (const auto& [e, c] : o.monomials) r.add(e, c);
    return r;
}

Poly4 Poly4::operator*(cplx s) const {
    Poly4 r;
    for (const auto& [e, c] : monomials) r.add(e, c * s);
    return r;
}

Poly4 Poly4::compose_linear(const std::array<std::array<cplx, 4>, 4>& l) const {
    Poly4 result;
    Poly4 lin[4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(l[i][j]) > 0.0) {
                std::array<int, 4> e{0, 0, 0, 0};
                e[j] = 1;
                lin[i].add(e, l[i][j]);
            }
    for (const auto& [e, c] : monomials) {
        Poly4 term;
        term.add({0, 0, 0, 0}, c);
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < e[i]; ++k) term = term * lin[i];
        result = result + term;
    }
    return result;
}

Poly4 Poly4::variable(int var) {
    Poly4 p;
    std::array<int, 4> e{0, 0, 0, 0};
    e[var] = 1;
    p.add(e, 1.0);
    return p;
}

Poly4 Poly4::quadric() {
    Poly4 p;
    p.add({1, 0, 0, 1}, 1.0);
    p.add({0, 1, 1, 0}, -1.0);
    return p;
}

Poly4 Poly4::trace() {
    Poly4 p;
    p.add({1, 0, 0, 0}, 1.0);
    p.add({0, 0, 0, 1}, 1.0);
    return p;
}

Surface Surface::make(const Poly4& p) {
    Surface s;
    s.p = p;
    s.degree = p.degree();
    s.coeff_norm = p.coeff_norm();
    if (s.coeff_norm == 0.0) fail(ErrorKind::InputError, "zero polynomial");
    for (const auto& [e, c] : p.monomials)
        if (e[0] + e[1] + e[2] + e[3] != s.degree)
            fail(ErrorKind::InputError, "surface polynomial must be homogeneous");
    if (s.degree == 2) {
        // reject scalar multiples of ad - bc
        Poly4 q = Poly4::quadric();
        cplx lead = 0.0;
        auto it = p.monomials.find({1, 0, 0, 1});
        if (it != p.monomials.end()) lead = it->second;
        Poly4 diff = p + q * (-lead);
        if (diff.coeff_norm() < 1e-12 * s.coeff_norm)
            fail(ErrorKind::InputError, "surface equals the quadric Q");
    }
    return s;
}

Surface translate_left(const Surface& s, const ProjPoint& b) {
    if (on_quadric(b)) fail(ErrorKind::OnQuadric, "translate by a degenerate matrix");
    const Mat2& m = b.m;
    // entries of B A: a' = B00 a + B01 c, b' = B00 b + B01 d,
    //                 c' = B10 a + B11 c, d' = B10 b + B11 d
    std::array<std::array<cplx, 4>, 4> l{};
    l[0] = {m.a, 0.0, m.b, 0.0};
    l[1] = {0.0, m.a, 0.0, m.b};
    l[2] = {m.c, 0.0, m.d, 0.0};
    l[3] = {0.0, m.c, 0.0, m.d};
    return Surface::make(s.p.compose_linear(l));
}

Surface translate_right(const Surface& s, const ProjPoint& b) {
    if (on_quadric(b)) fail(ErrorKind::OnQuadric, "translate by a degenerate matrix");
    const Mat2& m = b.m;
    // entries of A B: a' = a B00 + b B10, etc.
    std::array<std::array<cplx, 4>, 4> l{};
    l[0] = {m.a, m.c, 0.0, 0.0};
    l[1] = {m.b, m.d, 0.0, 0.0};
    l[2] = {0.0, 0.0, m.a, m.c};
    l[3] = {0.0, 0.0, m.b, m.d};
    return Surface::make(s.p.compose_linear(l));
}

Mat2 su2_of_quaternion(const std::array<double, 4>& q) {
    return {cplx(q[0], q[1]), cplx(q[2], q[3]), cplx(-q[2], q[3]), cplx(q[0], -q[1])};
}

namespace {

// su(2) basis: dU/dq_i for the quaternion parameterization.
const Mat2 kQuatBasis[4] = {
    Mat2(1.0, 0.0, 0.0, 1.0),
    Mat2(cplx(0, 1), 0.0, 0.0, cplx(0, -1)),
    Mat2(0.0, 1.0, -1.0, 0.0),
    Mat2(0.0, cplx(0, 1), cplx(0, 1), 0.0),
};

struct FiberObjective {
    const Poly4& q;
    std::array<Poly4, 4> partials;
    Mat2 b;
    double cn2;

    FiberObjective(const Surface& s, const Mat2& b_) : q(s.p), b(b_) {
        for (int i = 0; i < 4; ++i) partials[i] = s.p.partial(i);
        double cn = s.coeff_norm;
        cn2 = cn * cn;
    }

    double value(const std::array<double, 4>& v, cplx* w_out = nullptr) const {
        Mat2 a = b * su2_of_quaternion(v);
        cplx w = q.eval(a);
        if (w_out) *w_out = w;
        return std::norm(w) / cn2;
    }

    // residual (Re w, Im w)/cn and its 2x4 Jacobian wrt the quaternion
    void residual(const std::array<double, 4>& v, Eigen::Vector2d& r,
                  Eigen::Matrix<double, 2, 4>& jac) const {
        Mat2 u = su2_of_quaternion(v);
        Mat2 a = b * u;
        cplx w = q.eval(a);
        std::array<cplx, 4> grad{0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) grad[i] = partials[i].eval(a);
        double cn = std::sqrt(cn2);
        r << std::real(w) / cn, std::imag(w) / cn;
        for (int i = 0; i < 4; ++i) {
            Mat2 da = b * kQuatBasis[i];
            cplx dw = grad[0] * da.a + grad[1] * da.b + grad[2] * da.c + grad[3] * da.d;
            jac(0, i) = std::real(dw) / cn;
            jac(1, i) = std::imag(dw) / cn;
        }
    }
};

void renormalize(std::array<double, 4>& v) {
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    for (auto& c : v) c /= n;
}

// One multistart descent; returns the local minimum value, v updated in place.
double descend(const FiberObjective& obj, std::array<double, 4>& v, double tau) {
    Eigen::Vector2d r;
    Eigen::Matrix<double, 2, 4> jac;
    double f = obj.value(v);
    double lambda = 1e-8;
    for (int it = 0; it < 120; ++it) {
        if (f < tau * 1e-3) break;
        obj.residual(v, r, jac);
        // Levenberg-Marquardt step on the 2-vector residual
        Eigen::Matrix2d jjt = jac * jac.transpose();
        Eigen::Matrix2d damped = jjt + lambda * Eigen::Matrix2d::Identity();
        Eigen::Vector2d y = damped.ldlt().solve(r);
        Eigen::Vector4d step = -jac.transpose() * y;
        // tangential part only; the radial direction is pure homogeneity
        Eigen::Vector4d vv(v[0], v[1], v[2], v[3]);
        step -= step.dot(vv) * vv;
        if (step.norm() < 1e-15) break;
        std::array<double, 4> cand;
        double scale = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 12; ++ls) {
            for (int i = 0; i < 4; ++i) cand[i] = v[i] + scale * step(i);
            renormalize(cand);
            double fc = obj.value(cand);
            if (fc < f) {
                v = cand;
                f = fc;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (accepted) {
            lambda = std::max(1e-12, lambda * 0.3);
        } else {
            lambda *= 10.0;
            if (lambda > 1e6) break;
        }
    }
    return f;
}

} // namespace

MembershipResult membership(const Surface& s, const HPoint& x, const MembershipOptions& opts) {
    // positive-definite square root of x: (H + I)/sqrt(tr H + 2)
    Mat2 h = x.hermitian();
    Mat2 b = (h + Mat2::identity()) * (1.0 / std::sqrt(std::real(h.trace()) + 2.0));
    Surface q = translate_left(s, ProjPoint(b));
    // translate_left canonicalizes b; use the same matrix it used
    FiberObjective obj(q, Mat2::identity());

    MembershipResult res;
    res.min_value = 1e300;
    res.starts = opts.starts;
    for (int k = 0; k < opts.starts; ++k) {
        Rng rng = Rng::child(opts.seed, k);
        std::array<double, 4> v;
        rng.unit_quaternion(v.data());
        double f = descend(obj, v, opts.tau);
        if (f < res.min_value) {
            res.min_value = f;
            res.witness = v;
        }
        if (res.min_value < opts.tau * 1e-2) break; // already certified
    }
    res.member = res.min_value < opts.tau;
    return res;
}

ConvexityReport convexity_check(const Surface& s, const ConvexityOptions& opts) {
    Rng rng(opts.seed);
    auto sample_nonmember = [&](int budget_share) -> std::optional<HPoint> {
        for (int k = 0; k < budget_share; ++k) {
            double dir[3];
            rng.unit3(dir);
            double rho = opts.r_box * rng.uniform();
            HPoint x = from_polar(rho, AbsPoint::from_unit_vec({dir[0], dir[1], dir[2]}));
            MembershipOptions mo = opts.member;
            mo.seed = rng.bits();
            if (!membership(s, x, mo).member) return x;
        }
        return std::nullopt;
    };

    ConvexityReport report;
    int budget = std::max(1, opts.rejection_budget / std::max(1, 2 * opts.n_pairs));
    for (int pair = 0; pair < opts.n_pairs; ++pair) {
        auto x = sample_nonmember(budget);
        auto y = x ? sample_nonmember(budget) : std::nullopt;
        if (!x || !y) {
            if (report.pairs_tested == 0)
                fail(ErrorKind::NoComplementFound, "rejection sampling found no complement points");
            break;
        }
        ++report.pairs_tested;
        report.pairs.emplace_back(*x, *y);
        for (int k = 1; k <= opts.n_steps; ++k) {
            double tau = double(k) / (opts.n_steps + 1);
            HPoint mid = geodesic_interpolate(*x, *y, tau);
            MembershipOptions mo = opts.member;
            mo.seed = rng.bits();
            MembershipResult mr = membership(s, mid, mo);
            if (mr.member) report.violations.push_back({*x, *y, mid, mr.min_value});
        }
    }
    return report;
}

Surface perturbed_quadric(const AbsPoint& x, double eps) {
    // fiber over x = (u:v): matrices with image x, cut by v a - u c and v b - u d
    const CP1Point& d = x.dir;
    Poly4 l1 = Poly4::variable(0) * d.v + Poly4::variable(2) * (-d.u);
    Poly4 l2 = Poly4::variable(1) * d.v + Poly4::variable(3) * (-d.u);
    return Surface::make(Poly4::quadric() + l1 * l2 * eps);
}

bool ray_disjoint_check(const Surface& s_x, const AbsPoint& x, int n, const MembershipOptions& opts) {
    for (int k = 0; k < n; ++k) {
        HPoint p = from_polar(double(k), x);
        MembershipOptions mo = opts;
        mo.seed = opts.seed + 1000 + k;
        if (membership(s_x, p, mo).member) return false;
    }
    return true;
}

Sym2Point gauss_left(const Surface& s, const ProjPoint& a) {
    cplx val = s.p.eval(a.m);
    if (std::abs(val) >= tols().on_surface * s.coeff_norm)
        fail(ErrorKind::NotOnSurface, "gauss_left needs a point of S");
    auto g = s.p.gradient(a.m);
    double gn = std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]) + std::norm(g[3]));
    if (gn <= tols().smooth * s.coeff_norm) fail(ErrorKind::SingularPoint, "singular point of S");
    if (on_quadric(a)) fail(ErrorKind::OnQuadric, "gauss_left undefined on Q");
    const cplx i(0.0, 1.0);
    const cplx A = a.m.a, B = a.m.b, C = a.m.c, D = a.m.d;
    const cplx pa = g[0], pb = g[1], pc = g[2], pd = g[3];
    return Sym2Point({i * (A * pa - B * pb + C * pc - D * pd),
                      -B * pa + A * pb - D * pc + C * pd,
                      i * (B * pa + A * pb + D * pc + C * pd)});
}

double gauss_left_real_dist(const Surface& s, const ProjPoint& a) {
    Sym2Point g = gauss_left(s, a);
    Sym2Point gc({std::conj(g.e[0]), std::conj(g.e[1]), std::conj(g.e[2])});
    return 0.5 * proj_dist(g, gc);
}

double surface_jacobian_sigma_min(const Surface& s, const ProjPoint& a) {
    //2-complex-dim tangent basis of {grad p . T = 0} orthogonal to a itself
    auto g = s.p.gradient(a.m);
    Eigen::Matrix<cplx, 2, 4> rows;
    for (int i = 0; i < 4; ++i) {
        rows(0, i) = std::conj(g[i]); // so that rows(0) . T = grad . T
        rows(1, i) = a.m.entry(i);
    }
    // null space via full SVD
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 2, 4>> svd(rows, Eigen::ComputeFullV);
    Eigen::Matrix<cplx, 4, 1> t1 = svd.matrixV().col(2);
    Eigen::Matrix<cplx, 4, 1> t2 = svd.matrixV().col(3);
    auto as_mat = [](const Eigen::Matrix<cplx, 4, 1>& v) { return Mat2(v(0), v(1), v(2), v(3)); };
    Mat2 t1m = as_mat(t1.conjugate()), t2m = as_mat(t2.conjugate());

    const double h = 1e-6;
    auto coords = [&](double c1r, double c1i, double c2r, double c2i) {
        Mat2 m = a.m + t1m * cplx(c1r, c1i) + t2m * cplx(c2r, c2i);
        HPoint x = kappa(ProjPoint(m));
        return std::array<double, 4>{x.x0, x.x1, x.x2, x.x3};
    };
    Eigen::MatrixXd j(4, 4);
    for (int col = 0; col < 4; ++col) {
        double d[4] = {0, 0, 0, 0};
        d[col] = h;
        auto fp = coords(d[0], d[1], d[2], d[3]);
        d[col] = -h;
        auto fm = coords(d[0], d[1], d[2], d[3]);
        for (int i = 0; i < 4; ++i) j(i, col) = (fp[i] - fm[i]) / (2 * h);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd2(j);
    double s0 = svd2.singularValues()(0);
    if (s0 < 1e-300) return 0.0;
    return svd2.singularValues()(2) / s0; // third singular value: rank < 3 detector
}

bool critical_test(const Surface& s, const ProjPoint& a, double tol) {
    bool by_gauss = gauss_left_real_dist(s, a) < tol;
    bool by_rank = surface_jacobian_sigma_min(s, a) < std::sqrt(tol);
    if (by_gauss != by_rank)
        fail(ErrorKind::InconsistentData, "criticality detectors disagree");
    return by_gauss;
}

Surface tangent_plane(const QuadricPoint& z) {
    Mat2 m = z.matrix().m;
    Poly4 p;
    p.add({1, 0, 0, 0}, m.d);
    p.add({0, 1, 0, 0}, -m.c);
    p.add({0, 0, 1, 0}, -m.b);
    p.add({0, 0, 0, 1}, m.a);
    return Surface::make(p);
}

namespace {

// A smooth non-quadric point of the plane, away from Q.
ProjPoint plane_sample_point(const Surface& plane, Rng& rng) {
    std::array<cplx, 4> n{};
    for (const auto& [e, c] : plane.p.monomials)
        for (int i = 0; i < 4; ++i)
            if (e[i] == 1) n[i] = c;
    Eigen::Matrix<cplx, 1, 4> row;
    for (int i = 0; i < 4; ++i) row(0, i) = std::conj(n[i]);
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 1, 4>> svd(row, Eigen::ComputeFullV);
    for (int trial = 0; trial < 64; ++trial) {
        Eigen::Matrix<cplx, 4, 1> v = Eigen::Matrix<cplx, 4, 1>::Zero();
        for (int k = 1; k < 4; ++k) v += rng.cnormal() * svd.matrixV().col(k);
        Mat2 m(std::conj(v(0)), std::conj(v(1)), std::conj(v(2)), std::conj(v(3)));
        ProjPoint p(m);
        if (std::abs(plane.p.eval(p.m)) > 1e-9 * plane.coeff_norm) continue;
        if (!on_quadric(p)) return p;
    }
    fail(ErrorKind::IllConditioned, "no off-quadric point found on the plane");
}

} // namespace

std::vector<Sym2Point> c_N_generate(int n) {
    if (n < 6) fail(ErrorKind::InputError, "conic fit needs at least 6 tangent planes");
    std::vector<Sym2Point> out;
    Rng rng(0xc01c);
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    const CP1Point beta(0.37, cplx(0.8, -0.41));
    for (int i = 0; i < n; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / n;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        CP1Point alpha = AbsPoint::from_unit_vec({r * std::cos(ga * i), r * std::sin(ga * i), z}).dir;
        Surface plane = tangent_plane(QuadricPoint{alpha, beta});
        ProjPoint a = plane_sample_point(plane, rng);
        out.push_back(gauss_left(plane, a));
    }
    return out;
}

ConicReport c_N_conic_check(const std::vector<Sym2Point>& points) {
    if (points.size() < 6) fail(ErrorKind::IllConditioned, "under-determined conic fit");
    Eigen::MatrixXcd m(points.size(), 6);
    for (size_t j = 0; j < points.size(); ++j) {
        const auto& e = points[j].e;
        m(static_cast<int>(j), 0) = e[0] * e[0];
        m(static_cast<int>(j), 1) = e[0] * e[1];
        m(static_cast<int>(j), 2) = e[0] * e[2];
        m(static_cast<int>(j), 3) = e[1] * e[1];
        m(static_cast<int>(j), 4) = e[1] * e[2];
        m(static_cast<int>(j), 5) = e[2] * e[2];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    ConicReport rep;
    rep.fit_residual = sv(5) / std::max(1e-300, sv(0));
    Eigen::VectorXcd c = svd.matrixV().col(5);
    for (int i = 0; i < 6; ++i) rep.conic[i] = c(i);

    // symmetric matrix of the conic; rank through the spectrum of M* M
    Eigen::Matrix3cd sym;
    sym << c(0), 0.5 * c(1), 0.5 * c(2), 0.5 * c(1), c(3), 0.5 * c(4), 0.5 * c(2), 0.5 * c(4), c(5);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(sym.adjoint() * sym);
    double smin = std::sqrt(std::max(0.0, es.eigenvalues()(0)));
    double smax = std::sqrt(std::max(0.0, es.eigenvalues()(2)));
    rep.nondegeneracy = smin / std::max(1e-300, smax);

    // conjugation invariance: conj(M) proportional to M
    Eigen::Matrix3cd symc = sym.conjugate();
    cplx num = 0.0;
    double den = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            num += symc(i, j) * std::conj(sym(i, j));
            den += std::norm(sym(i, j));
        }
    cplx lambda = num / den;
    rep.conj_invariance = (symc - lambda * sym).norm() / sym.norm();

    // no P-real points: minimize |x^T M x| over the real unit sphere
    double best = 1e300;
    Rng rng(0xbead);
    for (int start = 0; start < 48; ++start) {
        double v[3];
        rng.unit3(v);
        Eigen::Vector3d x(v[0], v[1], v[2]);
        double fx = std::abs((x.transpose() * sym * x)(0));
        double step = 0.3;
        for (int it = 0; it < 200 && step > 1e-10; ++it) {
            bool improved = false;
            for (int d = 0; d < 6; ++d) {
                Eigen::Vector3d cand = x;
                cand(d / 2) += (d % 2 ? -step : step);
                cand.normalize();
                double fc = std::abs((cand.transpose() * sym * cand)(0));
                if (fc < fx) {
                    fx = fc;
                    x = cand;
                    improved = true;
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::min(best, fx);
    }
    rep.real_point_margin = best / sym.norm();
    return rep;
}

ProjPoint gauss_left_linear_solve(const Surface& plane, const Sym2Point& w) {
    if (plane.degree != 1) fail(ErrorKind::InputError, "linear solve needs a plane");
    std::array<cplx, 4> n{};
    for (const auto& [e, c] : plane.p.monomials)
        for (int i = 0; i < 4; ++i)
            if (e[i] == 1) n[i] = c;
    // gauss_left coordinates as linear forms in A (partials are the constants n)
    const cplx i(0.0, 1.0);
    // L0 = i(a n_a - b n_b + c n_c - d n_d), L1 = -b n_a + a n_b - d n_c + c n_d,
    // L2 = i(b n_a + a n_b + d n_c + c n_d)
    std::array<std::array<cplx, 4>, 3> lf{};
    lf[0] = {i * n[0], -i * n[1], i * n[2], -i * n[3]};
    lf[1] = {n[1], -n[0], n[3], -n[2]};
    lf[2] = {i * n[1], i * n[0], i * n[3], i * n[2]};
    // rows: cross-product equations against w plus the plane itself
    Eigen::Matrix<cplx, 3, 4> m;
    int i0 = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(w.e[k]) > std::abs(w.e[i0])) i0 = k;
    int r = 0;
    for (int k = 0; k < 3 && r < 2; ++k) {
        if (k == i0) continue;
        for (int col = 0; col < 4; ++col) m(r, col) = lf[k][col] * w.e[i0] - lf[i0][col] * w.e[k];
        ++r;
    }
    for (int col = 0; col < 4; ++col) m(2, col) = n[col];
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 3, 4>> svd(m, Eigen::ComputeFullV);
    Eigen::Matrix<cplx, 4, 1> sol = svd.matrixV().col(3);
    return ProjPoint(Mat2(sol(0), sol(1), sol(2), sol(3)));
}

std::vector<QuadricPoint> quadric_trace_points(const Surface& s, const CP1Point& beta) {
    // restrict p to the pi_+ fiber: M(alpha) has entries bilinear in (alpha,beta);
    // p(M(alpha, beta)) is a degree-d binary form in alpha
    int d = s.degree;
    BinaryForm form;
    form.coeffs.assign(d + 1, 0.0);
    // evaluate at d+1 unisolvent alphas and interpolate the coefficients
    Eigen::MatrixXcd vander(d + 1, d + 1);
    Eigen::VectorXcd vals(d + 1);
    for (int k = 0; k <= d; ++k) {
        double th = M_PI * (2.0 * k + 1.0) / (2.0 * (d + 1.0));
        CP1Point alpha(std::cos(th), std::sin(th) * std::exp(cplx(0.0, 0.37 * k + 0.21)));
        vals(k) = s.p.eval(Mat2(beta.u * alpha.v, -beta.u * alpha.u, beta.v * alpha.v,
                                -beta.v * alpha.u));
        for (int j = 0; j <= d; ++j) {
            cplx sp = 1.0, tp = 1.0;
            for (int q = 0; q < d - j; ++q) sp *= alpha.u;
            for (int q = 0; q < j; ++q) tp *= alpha.v;
            vander(k, j) = sp * tp;
        }
    }
    Eigen::VectorXcd coef = vander.fullPivLu().solve(vals);
    for (int j = 0; j <= d; ++j) form.coeffs[j] = coef(j);

    std::vector<QuadricPoint> out;
    if (form.max_coeff() < 1e-10 * s.coeff_norm) {
        // the whole fiber lies in S; any alpha works
        out.push_back({CP1Point(1.0, 0.3), beta});
        return out;
    }
    for (const auto& alpha : form.roots()) out.push_back({alpha, beta});
    return out;
}

} // namespace hypam
