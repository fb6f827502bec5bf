#include "hypam/selftest.hpp"

#include <cmath>
#include <functional>

#include "hypam/curves.hpp"
#include "hypam/error.hpp"
#include "hypam/line_amoebas.hpp"
#include "hypam/surfaces.hpp"
#include "hypam/tropical.hpp"

namespace hypam {

namespace {

struct Runner {
    std::vector<SelftestResult> results;

    void check(const std::string& name, const std::function<bool()>& f) {
        bool ok = false;
        try {
            ok = f();
        } catch (const std::exception&) {
            ok = false;
        }
        results.push_back({name, ok});
    }

    void expect_error(const std::string& name, ErrorKind kind, const std::function<void()>& f) {
        bool ok = false;
        try {
            f();
        } catch (const Error& e) {
            ok = e.kind() == kind;
        } catch (const std::exception&) {
        }
        results.push_back({name, ok});
    }
};

void core_tests(Runner& r) {
    r.check("det of canonical identity is 1/2", [] {
        return std::abs(det(ProjPoint::from_entries(1, 0, 0, 1)) - cplx(0.5)) < 1e-12;
    });
    r.check("det of (2,1,1,1) is 1/7", [] {
        return std::abs(det(ProjPoint::from_entries(2, 1, 1, 1)) - cplx(1.0 / 7.0)) < 1e-12;
    });
    r.check("rank-1 matrix lies on Q", [] { return on_quadric(ProjPoint::from_entries(1, 0, 0, 0)); });
    r.check("q_coords of E11", [] {
        QuadricPoint z = q_coords(ProjPoint::from_entries(1, 0, 0, 0));
        return same_point(z.alpha, CP1Point(0.0, 1.0)) && same_point(z.beta, CP1Point(1.0, 0.0));
    });
    r.expect_error("q_coords rejects the identity", ErrorKind::NotOnQuadric,
                   [] { q_coords(ProjPoint::from_entries(1, 0, 0, 1)); });
    r.check("involution fixes the identity", [] {
        return is_p_real(ProjPoint::from_entries(1, 0, 0, 1));
    });
    r.check("involution maps diag(2,1) to diag(1,2)", [] {
        return same_point(p_real_involution(ProjPoint::from_entries(2, 0, 0, 1)),
                          ProjPoint::from_entries(1, 0, 0, 2));
    });
    r.check("pi_P of diag(t,1/t) has beta = infinity", [] {
        QuadricPoint z = pi_P(ProjPoint::from_entries(3.0, 0, 0, 1.0 / 3.0));
        return same_point(z.beta, CP1Point(1.0, 0.0));
    });
}

void hyperbolic_tests(Runner& r) {
    r.check("kappa of a unitary is the origin", [] {
        HPoint x = kappa(ProjPoint::from_entries(0, -1, 1, 0));
        return dist(x, HPoint::origin()) < 1e-12;
    });
    r.check("kappa of diag(t,1/t)", [] {
        double t = 1.7;
        HPoint x = kappa(ProjPoint::from_entries(t, 0, 0, 1.0 / t));
        return std::abs(x.x0 - t * t) < 1e-9 && std::abs(x.x3 - 1.0 / (t * t)) < 1e-9;
    });
    r.check("rho equals 2 log t on the diagonal", [] {
        double t = 2.3;
        return std::abs(rho_of_matrix(ProjPoint::from_entries(t, 0, 0, 1.0 / t)) - 2.0 * std::log(t)) <
               1e-10;
    });
    r.check("kappa_t rho is 2 at matching scale", [] {
        double t = 5.0;
        PolarCoord pc = kappa_t(ProjPoint::from_entries(t, 0, 0, 1.0 / t), t);
        return std::abs(pc.rho - 2.0) < 1e-10;
    });
    r.check("H_t maps diag(t,1/t) to diag(e,1/e)", [] {
        double t = 4.0;
        ProjPoint ht = H_t(ProjPoint::from_entries(t, 0, 0, 1.0 / t), t);
        return same_point(ht, ProjPoint::from_entries(std::exp(1.0), 0, 0, std::exp(-1.0)));
    });
    r.check("busemann vanishes on the l1 horosphere", [] {
        AbsPoint inf(CP1Point(1.0, 0.0));
        double worst = 0.0;
        for (double s : {-2.0, -0.5, 0.0, 1.0, 3.0})
            worst = std::max(worst, std::abs(busemann(inf, HPoint{1 + s * s, s, 0.0, 1.0})));
        return worst < 1e-12;
    });
    r.expect_error("phi rejects the origin", ErrorKind::AtOrigin, [] { phi(HPoint::origin()); });
}

void line_tests(Runner& r) {
    r.check("l2 classifies as the 0-infinity geodesic", [] {
        Line l = line_through(ProjPoint::from_entries(1, 0, 0, 0), ProjPoint::from_entries(0, 0, 0, 1));
        auto c = classify_line(l);
        const auto* g = std::get_if<Geodesic>(&c);
        if (!g) return false;
        bool fwd = same_point(g->end1.dir, CP1Point::infinity()) && same_point(g->end2.dir, CP1Point::zero());
        bool rev = same_point(g->end2.dir, CP1Point::infinity()) && same_point(g->end1.dir, CP1Point::zero());
        return fwd || rev;
    });
    r.check("l1 classifies as a horosphere centered at infinity", [] {
        Line l = line_through(ProjPoint::from_entries(1, 0, 0, 1), ProjPoint::from_entries(0, 1, 0, 0));
        auto c = classify_line(l);
        const auto* h = std::get_if<Horosphere>(&c);
        return h && same_point(h->center.dir, CP1Point::infinity()) &&
               std::abs(busemann(h->center, HPoint::origin()) - busemann(h->center, h->basepoint)) < 1e-9;
    });
    r.check("right-translated l2 is a cylinder of radius arccosh(sqrt 2)", [] {
        Mat2 b(1, 1, 0, 1);
        Line l = line_through(ProjPoint(Mat2(1, 0, 0, 0) * b), ProjPoint(Mat2(0, 0, 0, 1) * b));
        auto c = classify_line(l);
        const auto* cy = std::get_if<Cylinder>(&c);
        return cy && std::abs(cy->radius - std::acosh(std::sqrt(2.0))) < 1e-9;
    });
}

void curve_tests(Runner& r) {
    r.check("tangent line of the conic at (1:1)", [] {
        std::array<BinaryForm, 4> f;
        f[0].coeffs = {1.0, 0.0, 0.0}; // s^2
        f[1].coeffs = {0.0, 1.0, 0.0}; // s t
        f[2].coeffs = {0.0, 0.0, 0.0};
        f[3].coeffs = {0.0, 0.0, 1.0}; // t^2
        RationalCurve c = RationalCurve::make(f);
        Line l = tangent_line(c, CP1Point(1.0, 1.0));
        // the line should contain both (1,1,0,1) and (2,1,0,0)
        double r1 = affine_span_residual({l.p.m, l.d.m, Mat2(1, 1, 0, 1)});
        double r2 = affine_span_residual({l.p.m, l.d.m, Mat2(2, 1, 0, 0)});
        return std::max(r1, r2) < 1e-9;
    });
    r.check("gauss- of l2 is the pair {0,inf} = (0:1:0)", [] {
        std::array<BinaryForm, 4> f;
        f[0].coeffs = {1.0, 0.0};
        f[1].coeffs = {0.0, 0.0};
        f[2].coeffs = {0.0, 0.0};
        f[3].coeffs = {0.0, 1.0};
        RationalCurve c = RationalCurve::make(f);
        Sym2Point g = gauss(c, CP1Point(1.0, 0.7), GaussSide::Minus);
        return proj_dist(g, Sym2Point({0.0, 1.0, 0.0})) < 1e-9 && dist_to_R(g) < 1e-12;
    });
    r.check("sigma_R fixes (1:0:1)", [] {
        Sym2Point p({1.0, 0.0, 1.0});
        return dist_to_R(p) < 1e-12;
    });
    r.check("line Gauss degree is 0", [] {
        std::array<BinaryForm, 4> f;
        f[0].coeffs = {1.0, 0.0};
        f[1].coeffs = {0.0, 1.0};
        f[2].coeffs = {1.0, -1.0};
        f[3].coeffs = {1.0, 2.0};
        return gauss_degree_estimate(RationalCurve::make(f), GaussSide::Minus) == 0;
    });
}

void surface_tests(Runner& r) {
    r.check("left translate of p=a by the swap matrix is p=c", [] {
        Poly4 p = Poly4::variable(0);
        Surface s = Surface::make(p);
        Surface t = translate_left(s, ProjPoint::from_entries(0, 1, 1, 0));
        Poly4 want = Poly4::variable(2);
        Poly4 diff = t.p + want * (-t.p.eval(Mat2(0, 0, 1, 0)) / want.eval(Mat2(0, 0, 1, 0)));
        return diff.coeff_norm() < 1e-12 * t.coeff_norm;
    });
    r.check("4ad - b^2 - c^2 meets the origin fiber", [] {
        Poly4 p;
        p.add({1, 0, 0, 1}, 4.0);
        p.add({0, 2, 0, 0}, -1.0);
        p.add({0, 0, 2, 0}, -1.0);
        MembershipResult m = membership(Surface::make(p), HPoint::origin(), {32, 1e-10, 7});
        return m.member;
    });
    r.check("tr^2 - 8 det misses the origin fiber", [] {
        Poly4 p = Poly4::trace() * Poly4::trace() + Poly4::quadric() * (-8.0);
        MembershipResult m = membership(Surface::make(p), HPoint::origin(), {32, 1e-10, 7});
        return !m.member && m.min_value > 1e-3;
    });
    r.check("planes of odd degree fill H^3", [] {
        Poly4 p = Poly4::variable(2); // the Borel plane
        for (double rho : {0.0, 1.0, 2.5}) {
            HPoint x = from_polar(rho, AbsPoint(CP1Point(0.6, cplx(0.5, -0.3))));
            if (!membership(Surface::make(p), x, {32, 1e-10, 11}).member) return false;
        }
        return true;
    });
    r.check("Borel plane gauss_left is constant (0:1:-i)", [] {
        Surface s = Surface::make(Poly4::variable(2));
        Sym2Point want({0.0, 1.0, cplx(0.0, -1.0)});
        for (cplx a : {cplx(1.0, 0.2), cplx(-0.4, 1.1)}) {
            Sym2Point g = gauss_left(s, ProjPoint(Mat2(a, cplx(0.3, -0.7), 0.0, cplx(0.9, 0.1))));
            if (proj_dist(g, want) > 1e-9) return false;
        }
        return true;
    });
    r.check("perturbed quadric avoids the ray to infinity", [] {
        AbsPoint inf(CP1Point(1.0, 0.0));
        Surface s = perturbed_quadric(inf, 0.1);
        return ray_disjoint_check(s, inf, 5, {32, 1e-10, 13});
    });
}

void tropical_tests(Runner& r) {
    r.check("balanced tripod validates", [] {
        TropicalCurveGraph g;
        g.dim = 2;
        g.vertices.push_back({{0.0, 0.0}, 1});
        g.edges.push_back({0, -1, {1, 0}, 0.0});
        g.edges.push_back({0, -1, {0, 1}, 0.0});
        g.edges.push_back({0, -1, {-1, -1}, 0.0});
        return validate_tropical_curve(g).empty() && tropical_degree(g) == 2;
    });
    r.check("unbalanced tripod rejected", [] {
        TropicalCurveGraph g;
        g.dim = 2;
        g.vertices.push_back({{0.0, 0.0}, 1});
        g.edges.push_back({0, -1, {1, 0}, 0.0});
        g.edges.push_back({0, -1, {0, 1}, 0.0});
        g.edges.push_back({0, -1, {-1, 0}, 0.0});
        return !validate_tropical_curve(g).empty();
    });
    r.check("log_t of (t^3, 1/t) is (3,-1)", [] {
        double t = 17.0;
        auto v = log_t({std::pow(t, 3.0), 1.0 / t}, t);
        return std::abs(v[0] - 3.0) < 1e-12 && std::abs(v[1] + 1.0) < 1e-12;
    });
    r.check("figure diagram validates", [] {
        return validate_floor_diagram(example_figure_diagram()).empty();
    });
    r.check("constant-line diagram validates", [] {
        return validate_floor_diagram(constant_line_diagram(AbsPoint(CP1Point::zero()),
                                                            AbsPoint(CP1Point::infinity())))
            .empty();
    });
    r.check("edge between equal widths rejected", [] {
        FloorDiagram d = example_figure_diagram();
        d.edges.push_back({3, 4, {0, 0, 1}, 1});
        return !validate_floor_diagram(d).empty();
    });
    r.check("hausdorff of identical clouds is 0", [] {
        PointCloud a;
        for (double x : {0.1, 0.4, -0.3}) a.add(BallPoint{{x, 0.0, 0.2}, false});
        return hausdorff(a, a) == 0.0;
    });
}

} // namespace

std::vector<SelftestResult> run_selftests(const std::string& module) {
    Runner r;
    if (module == "core" || module == "all") core_tests(r);
    if (module == "hyperbolic" || module == "all") hyperbolic_tests(r);
    if (module == "lines" || module == "all") line_tests(r);
    if (module == "curves" || module == "all") curve_tests(r);
    if (module == "surfaces" || module == "all") surface_tests(r);
    if (module == "tropical" || module == "all") tropical_tests(r);
    return r.results;
}

} // namespace hypam
