#include "hypam/curves.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>

#include "hypam/error.hpp"
#include "hypam/rng.hpp"

namespace hypam {

cplx BinaryForm::eval(const CP1Point& st) const {
    int k = degree();
    cplx acc = 0.0;
    std::vector<cplx> spow(k + 1), tpow(k + 1);
    spow[0] = tpow[0] = 1.0;
    for (int i = 1; i <= k; ++i) {
        spow[i] = spow[i - 1] * st.u;
        tpow[i] = tpow[i - 1] * st.v;
    }
    for (int j = 0; j <= k; ++j) acc += coeffs[j] * spow[k - j] * tpow[j];
    return acc;
}

BinaryForm BinaryForm::d_s() const {
    int k = degree();
    if (k == 0) return BinaryForm{{0.0}};
    BinaryForm r;
    r.coeffs.resize(k);
    for (int j = 0; j < k; ++j) r.coeffs[j] = coeffs[j] * double(k - j);
    return r;
}

BinaryForm BinaryForm::d_t() const {
    int k = degree();
    if (k == 0) return BinaryForm{{0.0}};
    BinaryForm r;
    r.coeffs.resize(k);
    for (int j = 0; j < k; ++j) r.coeffs[j] = coeffs[j + 1] * double(j + 1);
    return r;
}

double BinaryForm::max_coeff() const {
    double m = 0.0;
    for (const cplx& c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

std::vector<CP1Point> BinaryForm::roots() const {
    // c[j] multiplies s^(k-j) t^j: a vanishing c[0] block gives roots at (1:0),
    // a vanishing c[k] block gives roots at (0:1)
    std::vector<cplx> c = coeffs;
    double scale = max_coeff();
    if (scale == 0.0) fail(ErrorKind::InputError, "roots of the zero form");
    std::vector<CP1Point> out;
    size_t lo = 0, hi = c.size();
    while (lo < hi && std::abs(c[lo]) < 1e-13 * scale) {
        out.emplace_back(1.0, 0.0);
        ++lo;
    }
    while (hi > lo && std::abs(c[hi - 1]) < 1e-13 * scale) {
        out.emplace_back(0.0, 1.0);
        --hi;
    }
    // remaining factor in w = t/s: p(w) = c[lo] + c[lo+1] w + ... + c[hi-1] w^n,
    // roots w_i give (s:t) = (1:w_i)
    int n = static_cast<int>(hi - lo) - 1;
    if (n >= 1) {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[lo + i] / c[hi - 1];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
        for (int i = 0; i < n; ++i) out.emplace_back(1.0, es.eigenvalues()(i));
    }
    return out;
}

BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) {
    BinaryForm r;
    r.coeffs.assign(f.coeffs.size() + g.coeffs.size() - 1, 0.0);
    for (size_t i = 0; i < f.coeffs.size(); ++i)
        for (size_t j = 0; j < g.coeffs.size(); ++j) r.coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
    return r;
}

BinaryForm operator-(const BinaryForm& f, const BinaryForm& g) {
    BinaryForm r = f;
    if (g.coeffs.size() > r.coeffs.size()) r.coeffs.resize(g.coeffs.size(), 0.0);
    for (size_t j = 0; j < g.coeffs.size(); ++j) r.coeffs[j] -= g.coeffs[j];
    return r;
}

ProjPoint RationalCurve::at(const CP1Point& st) const {
    return ProjPoint(Mat2(components[0].eval(st), components[1].eval(st), components[2].eval(st),
                          components[3].eval(st)));
}

BinaryForm RationalCurve::det_form() const {
    return components[0] * components[3] - components[1] * components[2];
}

RationalCurve RationalCurve::make(const std::array<BinaryForm, 4>& comps) {
    RationalCurve c;
    c.components = comps;
    c.degree = comps[0].degree();
    double scale = 0.0;
    for (const auto& f : comps) {
        if (f.degree() != c.degree)
            fail(ErrorKind::InputError, "curve components must share one degree");
        scale = std::max(scale, f.max_coeff());
    }
    if (scale == 0.0) fail(ErrorKind::InputError, "zero curve");

    // common-root check: roots of random combinations must not kill all four
    Rng rng(0xc0ffee);
    for (int trial = 0; trial < 3; ++trial) {
        BinaryForm combo;
        combo.coeffs.assign(c.degree + 1, 0.0);
        for (int i = 0; i < 4; ++i) {
            cplx r = rng.cnormal();
            for (int j = 0; j <= c.degree; ++j) combo.coeffs[j] += r * comps[i].coeffs[j];
        }
        if (combo.max_coeff() < 1e-12 * scale) continue;
        for (const auto& root : combo.roots()) {
            double resid = 0.0;
            for (int i = 0; i < 4; ++i) resid += std::abs(comps[i].eval(root));
            if (resid < 1e-9 * scale)
                fail(ErrorKind::InputError, "curve components share a root (not coprime)");
        }
    }

    BinaryForm detf = c.det_form();
    if (detf.max_coeff() < 1e-10 * scale * scale)
        fail(ErrorKind::InputError, "curve lies in the quadric Q");
    return c;
}

Sym2Point::Sym2Point(const std::array<cplx, 3>& raw) {
    double n = std::sqrt(std::norm(raw[0]) + std::norm(raw[1]) + std::norm(raw[2]));
    if (n < 1e-300) fail(ErrorKind::InputError, "zero Sym2 triple");
    int lead = 0;
    double best = -1.0;
    for (int i = 0; i < 3; ++i)
        if (std::abs(raw[i]) > best) {
            best = std::abs(raw[i]);
            lead = i;
        }
    cplx phase = raw[lead] / std::abs(raw[lead]);
    for (int i = 0; i < 3; ++i) e[i] = raw[i] * std::conj(phase) / n;
    e[lead] = std::abs(e[lead]);
}

Sym2Point Sym2Point::from_pair(const CP1Point& z1, const CP1Point& z2) {
    return Sym2Point({z1.v * z2.v, z1.u * z2.v + z2.u * z1.v, z1.u * z2.u});
}

std::pair<CP1Point, CP1Point> Sym2Point::roots() const {
    // roots of e0 z^2 - e1 z + e2 (z = w/v), homogeneous-stable split
    cplx disc = discriminant();
    cplx sq = std::sqrt(disc);
    cplx b = -e[1];
    cplx qq = std::abs(b + sq) >= std::abs(b - sq) ? -0.5 * (b + sq) : -0.5 * (b - sq);
    CP1Point r1 = (std::abs(qq) > 0.0 || std::abs(e[0]) > 0.0) ? CP1Point(qq, e[0]) : CP1Point(1.0, 0.0);
    CP1Point r2 = (std::abs(e[2]) > 0.0 || std::abs(qq) > 0.0) ? CP1Point(e[2], qq) : CP1Point(1.0, 0.0);
    return {r1, r2};
}

double proj_dist(const Sym2Point& p, const Sym2Point& q) {
    return unit_vec_angle(p.e.data(), q.e.data(), 3);
}

Sym2Point sigma_R(const Sym2Point& p) {
    return Sym2Point({std::conj(p.e[2]), -std::conj(p.e[1]), std::conj(p.e[0])});
}

double dist_to_R(const Sym2Point& p) { return 0.5 * proj_dist(p, sigma_R(p)); }

Line tangent_line(const RationalCurve& c, const CP1Point& param) {
    ProjPoint pos = c.at(param);
    // derivative in the affine chart of the larger coordinate
    bool s_chart = std::abs(param.u) >= std::abs(param.v);
    Mat2 der;
    for (int i = 0; i < 4; ++i) {
        const BinaryForm d = s_chart ? c.components[i].d_t() : c.components[i].d_s();
        der.entry(i) = d.eval(param);
    }
    if (der.norm() < 1e-12) fail(ErrorKind::SingularParameter, "vanishing derivative");
    ProjPoint dir(der);
    if (span_smallest_singular(pos, dir) < tols().rank)
        fail(ErrorKind::SingularParameter, "derivative proportional to position");
    return line_through(pos, dir);
}

Sym2Point gauss(const RationalCurve& c, const CP1Point& param, GaussSide side) {
    Line l = tangent_line(c, param);
    if (l.qdata.kind == LineKind::OnQuadricPlusRuling || l.qdata.kind == LineKind::OnQuadricMinusRuling)
        fail(ErrorKind::OnQuadric, "tangent line lies in Q");
    auto pick = [&](const QuadricPoint& z) { return side == GaussSide::Minus ? z.alpha : z.beta; };
    if (l.qdata.kind == LineKind::Tangent) {
        CP1Point z = pick(l.qdata.qpoints[0]);
        return Sym2Point::from_pair(z, z);
    }
    return Sym2Point::from_pair(pick(l.qdata.qpoints[0]), pick(l.qdata.qpoints[1]));
}

namespace {

// Evaluate the fitted homogeneous triple at a parameter.
std::array<cplx, 3> eval_triple(const Eigen::VectorXcd& coef, int k, const CP1Point& st) {
    std::vector<cplx> spow(k + 1), tpow(k + 1);
    spow[0] = tpow[0] = 1.0;
    for (int i = 1; i <= k; ++i) {
        spow[i] = spow[i - 1] * st.u;
        tpow[i] = tpow[i - 1] * st.v;
    }
    std::array<cplx, 3> out{0.0, 0.0, 0.0};
    for (int comp = 0; comp < 3; ++comp)
        for (int j = 0; j <= k; ++j) out[comp] += coef(comp * (k + 1) + j) * spow[k - j] * tpow[j];
    return out;
}

} // namespace

int gauss_degree_estimate(const RationalCurve& c, GaussSide side) {
    const int kmax = 4 * c.degree;
    const int nsamp = std::max(4 * c.degree + 5, 3 * (kmax + 1) + 9);

    Rng rng(0x9a055);
    std::vector<CP1Point> params;
    std::vector<Sym2Point> values;
    int guard = 0;
    while (static_cast<int>(params.size()) < nsamp && guard++ < 20 * nsamp) {
        CP1Point st(rng.cnormal(), rng.cnormal());
        try {
            values.push_back(gauss(c, st, side));
            params.push_back(st);
        } catch (const Error&) {
            continue; // singular or on-Q parameter, resample
        }
    }
    if (static_cast<int>(params.size()) < nsamp)
        fail(ErrorKind::IllConditioned, "could not sample enough regular parameters");

    for (int k = 0; k <= kmax; ++k) {
        const int ncoef = 3 * (k + 1);
        Eigen::MatrixXcd m(2 * nsamp, ncoef);
        m.setZero();
        for (int j = 0; j < nsamp; ++j) {
            const auto& g = values[j].e;
            // two cross-product rows against the two largest value components
            int i0 = 0;
            for (int i = 1; i < 3; ++i)
                if (std::abs(g[i]) > std::abs(g[i0])) i0 = i;
            int others[2], oi = 0;
            for (int i = 0; i < 3; ++i)
                if (i != i0) others[oi++] = i;
            std::vector<cplx> spow(k + 1), tpow(k + 1);
            spow[0] = tpow[0] = 1.0;
            for (int i = 1; i <= k; ++i) {
                spow[i] = spow[i - 1] * params[j].u;
                tpow[i] = tpow[i - 1] * params[j].v;
            }
            for (int r = 0; r < 2; ++r) {
                int ia = others[r];
                for (int jj = 0; jj <= k; ++jj) {
                    cplx mono = spow[k - jj] * tpow[jj];
                    m(2 * j + r, ia * (k + 1) + jj) += mono * g[i0];
                    m(2 * j + r, i0 * (k + 1) + jj) -= mono * g[ia];
                }
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        double resid = sv(sv.size() - 1) / std::max(1e-300, sv(0));
        if (resid < 1e-6) {
            // confirm on fresh parameters before accepting
            Eigen::VectorXcd coef = svd.matrixV().col(ncoef - 1);
            double check = 0.0;
            int used = 0;
            Rng rng2(0x7e57);
            for (int j = 0; j < 16; ++j) {
                CP1Point st(rng2.cnormal(), rng2.cnormal());
                try {
                    Sym2Point g = gauss(c, st, side);
                    auto fit = eval_triple(coef, k, st);
                    check = std::max(check, proj_dist(Sym2Point(fit), g));
                    ++used;
                } catch (const Error&) {
                }
            }
            if (used >= 8 && check < 1e-5) return k;
        }
    }
    fail(ErrorKind::IllConditioned, "no homogeneous fit up to degree 4d");
}

double kappa_jacobian_sigma_min(const RationalCurve& c, const CP1Point& param) {
    // finite-difference 4x2 real Jacobian of the hyperboloid coordinates
    const double h = 1e-6;
    auto coords = [&](const CP1Point& st) {
        HPoint x = kappa(c.at(st));
        return std::array<double, 4>{x.x0, x.x1, x.x2, x.x3};
    };
    // move the smaller homogeneous coordinate: near (1:0) a u-perturbation
    // barely changes the projective point
    bool move_v = std::abs(param.u) >= std::abs(param.v);
    auto offset = [&](double dre, double dim) {
        return move_v ? CP1Point(param.u, param.v + cplx(dre, dim))
                      : CP1Point(param.u + cplx(dre, dim), param.v);
    };
    auto fp = coords(offset(h, 0)), fm = coords(offset(-h, 0));
    auto gp = coords(offset(0, h)), gm = coords(offset(0, -h));
    Eigen::MatrixXd j(4, 2);
    for (int i = 0; i < 4; ++i) {
        j(i, 0) = (fp[i] - fm[i]) / (2 * h);
        j(i, 1) = (gp[i] - gm[i]) / (2 * h);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
    double s0 = svd.singularValues()(0);
    if (s0 < 1e-300) return 0.0;
    return svd.singularValues()(1) / s0;
}

std::vector<CP1Point> critical_params(const RationalCurve& c, const CriticalSearchOptions& opts) {
    std::vector<CP1Point> found;

    auto value = [&](const CP1Point& st) -> double {
        try {
            return dist_to_R(gauss(c, st, GaussSide::Minus));
        } catch (const Error&) {
            return 1e9;
        }
    };

    // Fibonacci-sphere grid on CP^1
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < opts.grid; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / opts.grid;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double th = ga * i;
        CP1Point st = AbsPoint::from_unit_vec({r * std::cos(th), r * std::sin(th), z}).dir;
        double v = value(st);
        if (v > std::sqrt(opts.tol) * 30.0) continue;

        // local pattern search in the better-conditioned affine chart
        CP1Point best = st;
        double fbest = v;
        double step = 0.5 * M_PI / opts.grid;
        for (int it = 0; it < 80 && step > 1e-14; ++it) {
            bool improved = false;
            bool move_u = std::abs(best.v) >= std::abs(best.u);
            for (int dir = 0; dir < 4; ++dir) {
                cplx delta = step * (dir == 0 ? cplx(1, 0) : dir == 1 ? cplx(-1, 0)
                                      : dir == 2 ? cplx(0, 1) : cplx(0, -1));
                CP1Point cand = move_u ? CP1Point(best.u + delta, best.v)
                                       : CP1Point(best.u, best.v + delta);
                double f = value(cand);
                if (f < fbest) {
                    fbest = f;
                    best = cand;
                    improved = true;
                }
            }
            if (!improved) step *= 0.5;
        }
        if (fbest >= opts.tol) continue;
        if (kappa_jacobian_sigma_min(c, best) >= std::sqrt(opts.tol) * 10.0) continue;

        bool dup = false;
        for (const auto& f : found)
            if (proj_dist(f, best) < 1e-4) dup = true;
        if (!dup) found.push_back(best);
    }
    return found;
}

} // namespace hypam
