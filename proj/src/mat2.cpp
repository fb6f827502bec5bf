#include "hypam/mat2.hpp"

#include "hypam/error.hpp"

namespace hypam {

void hermitian_eigenvalues(const Mat2& h, double& mu_max, double& mu_min) {
    double tr = std::real(h.a) + std::real(h.d);
    double det = std::real(h.a) * std::real(h.d) - std::norm(h.b);
    double gap = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    mu_max = 0.5 * (tr + gap);
    mu_min = 0.5 * (tr - gap);
}

std::array<cplx, 2> hermitian_top_eigenvector(const Mat2& h) {
    double mu_max, mu_min;
    hermitian_eigenvalues(h, mu_max, mu_min);
    // (H - mu_min I) projects onto the top eigenspace; pick its larger column.
    Mat2 p = h - Mat2::identity() * mu_min;
    std::array<cplx, 2> col0 = {p.a, p.c};
    std::array<cplx, 2> col1 = {p.b, p.d};
    double n0 = std::norm(col0[0]) + std::norm(col0[1]);
    double n1 = std::norm(col1[0]) + std::norm(col1[1]);
    std::array<cplx, 2> w = n0 >= n1 ? col0 : col1;
    double n = std::sqrt(std::norm(w[0]) + std::norm(w[1]));
    if (n < 1e-300) return {1.0, 0.0}; // scalar matrix, any direction
    return {w[0] / n, w[1] / n};
}

Mat2 hermitian_apply(const Mat2& h, double (*f)(double)) {
    double mu_max, mu_min;
    hermitian_eigenvalues(h, mu_max, mu_min);
    double scale = std::max(std::abs(mu_max), std::abs(mu_min));
    if (mu_max - mu_min < 1e-12 * std::max(1.0, scale)) {
        // near-scalar: f(H) ~ f(mu) I + f'(mu)(H - mu I); the linear term is below
        // tolerance here, so the scalar part suffices
        double mu = 0.5 * (mu_max + mu_min);
        return Mat2::identity() * f(mu);
    }
    // Lagrange interpolation on the two eigenvalues (exact for 2x2 Hermitian)
    double fp = f(mu_max), fm = f(mu_min);
    Mat2 top = (h - Mat2::identity() * mu_min) * (1.0 / (mu_max - mu_min));
    Mat2 bot = (Mat2::identity() * mu_max - h) * (1.0 / (mu_max - mu_min));
    return top * fp + bot * fm;
}

Mat2 hermitian_sqrt(const Mat2& h) { return hermitian_apply(h, [](double x) { return std::sqrt(std::max(x, 0.0)); }); }
Mat2 hermitian_log(const Mat2& h) { return hermitian_apply(h, [](double x) { return std::log(std::max(x, 1e-300)); }); }
Mat2 hermitian_exp(const Mat2& h) { return hermitian_apply(h, [](double x) { return std::exp(x); }); }

CP1Point::CP1Point(cplx u_, cplx v_) {
    double n = std::sqrt(std::norm(u_) + std::norm(v_));
    if (n < 1e-300) fail(ErrorKind::InputError, "CP1 point from zero vector");
    u_ /= n;
    v_ /= n;
    cplx lead = std::abs(u_) >= std::abs(v_) ? u_ : v_;
    cplx phase = lead / std::abs(lead);
    u = u_ * std::conj(phase);
    v = v_ * std::conj(phase);
}

std::array<double, 3> CP1Point::unit_vec() const {
    double nu = std::norm(u), nv = std::norm(v);
    cplx uvbar = u * std::conj(v);
    double s = nu + nv; // == 1 in canonical form, kept for safety
    return {2.0 * std::real(uvbar) / s, 2.0 * std::imag(uvbar) / s, (nu - nv) / s};
}

Mat2 CP1Point::null_hermitian() const {
    return {std::norm(u), u * std::conj(v), v * std::conj(u), std::norm(v)};
}

double unit_vec_angle(const cplx* u, const cplx* v, int n) {
    cplx inner = 0.0; // <v, u>
    for (int i = 0; i < n; ++i) inner += std::conj(v[i]) * u[i];
    double c = std::abs(inner);
    if (c < 0.7) return std::acos(std::min(1.0, c));
    // orthogonal component of u relative to v; subtraction keeps small angles exact
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) s2 += std::norm(u[i] - inner * v[i]);
    return std::asin(std::min(1.0, std::sqrt(s2)));
}

double sphere_dist(const CP1Point& x, const CP1Point& y) {
    // twice the Fubini-Study angle: the round metric of diameter pi
    cplx u[2] = {x.u, x.v}, v[2] = {y.u, y.v};
    return 2.0 * unit_vec_angle(u, v, 2);
}

CP1Point moebius(const Mat2& m, const CP1Point& z) {
    return CP1Point(m.a * z.u + m.b * z.v, m.c * z.u + m.d * z.v);
}

} // namespace hypam
