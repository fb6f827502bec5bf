#include <doctest.h>

#include "hypam/curves.hpp"
#include "hypam/error.hpp"
#include "hypam/rng.hpp"

using namespace hypam;

namespace {

BinaryForm form(std::initializer_list<cplx> cs) {
    BinaryForm f;
    f.coeffs = cs;
    return f;
}

RationalCurve line_l2() {
    return RationalCurve::make({form({1.0, 0.0}), form({0.0, 0.0}), form({0.0, 0.0}), form({0.0, 1.0})});
}

// generic line not on Q
RationalCurve generic_line() {
    return RationalCurve::make({form({1.0, 0.0}), form({0.0, 1.0}), form({1.0, -1.0}), form({1.0, 2.0})});
}

// smooth planar conic with four distinct Q-intersections
RationalCurve generic_conic() {
    return RationalCurve::make({form({1.0, 0.0, 0.0}), form({0.0, 1.0, 0.0}), form({0.0, 0.0, 1.0}),
                                form({1.0, 0.0, 1.0})});
}

// generic projective image of the rational normal cubic (the standard one
// (s^3, s^2 t, s t^2, t^3) is rank-1 as a matrix family and lies inside Q)
RationalCurve generic_cubic() {
    return RationalCurve::make({form({1.0, cplx(0.2, 0.1), 0.0, cplx(-0.3, 0.4)}),
                                form({0.0, 1.0, cplx(0.5, -0.2), 0.1}),
                                form({cplx(0.3, 0.3), 0.0, 1.0, cplx(0.2, -0.1)}),
                                form({cplx(-0.1, 0.2), 0.4, 0.0, 1.0})});
}

Rng& shared_rng() {
    static Rng rng(1234);
    return rng;
}

RationalCurve random_conic(Rng& rng) {
    for (int tries = 0; tries < 100; ++tries) {
        std::array<BinaryForm, 4> f;
        for (int i = 0; i < 4; ++i) f[i].coeffs = {rng.cnormal(), rng.cnormal(), rng.cnormal()};
        try {
            return RationalCurve::make(f);
        } catch (const Error&) {
        }
    }
    fail(ErrorKind::InputError, "no random conic");
}

} // namespace

TEST_CASE("binary form roots: companion and boundary cases") {
    // (s - 2t)(s - 3t) = s^2 - 5 s t + 6 t^2
    BinaryForm f = form({1.0, -5.0, 6.0});
    auto rs = f.roots();
    REQUIRE(rs.size() == 2);
    double d2 = 1e9, d3 = 1e9;
    for (const auto& r : rs) {
        d2 = std::min(d2, proj_dist(r, CP1Point(2.0, 1.0)));
        d3 = std::min(d3, proj_dist(r, CP1Point(3.0, 1.0)));
    }
    CHECK(d2 < 1e-9);
    CHECK(d3 < 1e-9);

    // s t^2: one root at (1:0), double at (0:1)... s t^2 vanishes at s=0 once
    BinaryForm g = form({0.0, 1.0, 0.0, 0.0}); // s^2 t
    auto gr = g.roots();
    CHECK(gr.size() == 3);
}

TEST_CASE("curve validation rejects non-coprime and on-quadric input") {
    // common factor s across all components
    CHECK_THROWS_AS(RationalCurve::make({form({1.0, 0.0, 0.0}), form({0.0, 1.0, 0.0}),
                                         form({2.0, 1.0, 0.0}), form({1.0, 1.0, 0.0})}),
                    Error);
    // rank-1 family (s^3, s^2 t, s t^2, t^3) lies in Q
    CHECK_THROWS_AS(RationalCurve::make({form({1.0, 0, 0, 0}), form({0, 1.0, 0, 0}),
                                         form({0, 0, 1.0, 0}), form({0, 0, 0, 1.0})}),
                    Error);
}

TEST_CASE("tangent_line rejects cusp parameters") {
    // derivative vanishes at (1:0)
    RationalCurve cusp = RationalCurve::make({form({1.0, 0.0, 0.0, 0.0}), form({0.0, 0.0, 1.0, 0.0}),
                                              form({0.0, 0.0, 0.0, 1.0}), form({1.0, 0.0, 0.0, 1.0})});
    CHECK_THROWS_AS(tangent_line(cusp, CP1Point(1.0, 0.0)), Error);
    // generic parameters still work
    CHECK_NOTHROW(tangent_line(cusp, CP1Point(1.0, 0.8)));
}

TEST_CASE("tangent_line of a line is the line itself") {
    RationalCurve l = generic_line();
    Line l0 = line_through(l.at(CP1Point(1.0, 0.3)), l.at(CP1Point(0.2, 1.0)));
    for (double th : {0.1, 0.9, 2.2}) {
        Line t = tangent_line(l, CP1Point(std::cos(th), std::sin(th)));
        CHECK(affine_span_residual({l0.p.m, l0.d.m, t.p.m}) < 1e-9);
        CHECK(affine_span_residual({l0.p.m, l0.d.m, t.d.m}) < 1e-9);
    }
}

TEST_CASE("tangent_line of the degenerate conic at (1:1)") {
    RationalCurve c = RationalCurve::make(
        {form({1.0, 0.0, 0.0}), form({0.0, 1.0, 0.0}), form({0.0, 0.0, 0.0}), form({0.0, 0.0, 1.0})});
    Line t = tangent_line(c, CP1Point(1.0, 1.0));
    CHECK(affine_span_residual({t.p.m, t.d.m, Mat2(1, 1, 0, 1)}) < 1e-9);
    CHECK(affine_span_residual({t.p.m, t.d.m, Mat2(2, 1, 0, 0)}) < 1e-9);
}

TEST_CASE("gauss of l2 is constant (0:1:0), inside R") {
    RationalCurve l2 = line_l2();
    for (double th : {0.4, 1.3, 2.8}) {
        Sym2Point g = gauss(l2, CP1Point(std::cos(th), std::sin(th)), GaussSide::Minus);
        CHECK(proj_dist(g, Sym2Point({0.0, 1.0, 0.0})) < 1e-9);
        CHECK(dist_to_R(g) < 1e-9);
    }
}

TEST_CASE("sym2 encoding round-trips and flags double points") {
    Rng& rng = shared_rng();
    for (int k = 0; k < 500; ++k) {
        CP1Point z1(rng.cnormal(), rng.cnormal()), z2(rng.cnormal(), rng.cnormal());
        Sym2Point e = Sym2Point::from_pair(z1, z2);
        auto [r1, r2] = e.roots();
        double direct = std::max(proj_dist(r1, z1), proj_dist(r2, z2));
        double swapped = std::max(proj_dist(r1, z2), proj_dist(r2, z1));
        CHECK(std::min(direct, swapped) < 1e-7);
    }
    // l1-type tangent line: double point encoding has vanishing discriminant
    RationalCurve l1 = RationalCurve::make(
        {form({1.0, 0.0}), form({0.0, 1.0}), form({0.0, 0.0}), form({1.0, 0.0})});
    Line t = tangent_line(l1, CP1Point(1.0, 0.7));
    REQUIRE(t.qdata.kind == LineKind::Tangent);
    Sym2Point g = gauss(l1, CP1Point(1.0, 0.7), GaussSide::Minus);
    CHECK(std::abs(g.discriminant()) < 1e-9);
}

TEST_CASE("sigma_R examples and symmetry") {
    Sym2Point p({0.0, 1.0, 0.0});
    CHECK(proj_dist(sigma_R(p), p) < 1e-12);
    CHECK(dist_to_R(p) < 1e-12);
    Sym2Point q({1.0, 0.0, 1.0});
    CHECK(dist_to_R(q) < 1e-12);
    Rng& rng = shared_rng();
    for (int k = 0; k < 300; ++k) {
        Sym2Point r({rng.cnormal(), rng.cnormal(), rng.cnormal()});
        CHECK(dist_to_R(sigma_R(r)) == doctest::Approx(dist_to_R(r)).epsilon(1e-9));
    }
}

TEST_CASE("sigma_R matches the antipodal involution on pairs") {
    Rng& rng = shared_rng();
    for (int k = 0; k < 200; ++k) {
        CP1Point z1(rng.cnormal(), rng.cnormal()), z2(rng.cnormal(), rng.cnormal());
        Sym2Point direct = sigma_R(Sym2Point::from_pair(z1, z2));
        Sym2Point anti = Sym2Point::from_pair(z1.antipode(), z2.antipode());
        CHECK(proj_dist(direct, anti) < 1e-9);
    }
}

TEST_CASE("gauss degree: 0 for lines, 2 for generic conics, 4 for generic cubics") {
    CHECK(gauss_degree_estimate(generic_line(), GaussSide::Minus) == 0);
    CHECK(gauss_degree_estimate(generic_line(), GaussSide::Plus) == 0);
    CHECK(gauss_degree_estimate(generic_conic(), GaussSide::Minus) == 2);
    CHECK(gauss_degree_estimate(generic_conic(), GaussSide::Plus) == 2);
    CHECK(gauss_degree_estimate(generic_cubic(), GaussSide::Minus) == 4);
    CHECK(gauss_degree_estimate(generic_cubic(), GaussSide::Plus) == 4);
}

TEST_CASE("gauss maps vary continuously at transverse parameters") {
    RationalCurve c = generic_conic();
    CP1Point base(1.0, cplx(0.4, 0.2));
    Sym2Point g0 = gauss(c, base, GaussSide::Minus);
    for (double h : {1e-4, 1e-5, 1e-6}) {
        Sym2Point gh = gauss(c, CP1Point(1.0, cplx(0.4 + h, 0.2)), GaussSide::Minus);
        CHECK(proj_dist(g0, gh) < 50 * h);
    }
}

TEST_CASE("critical parameters: l2 everywhere critical, its cylinder translate nowhere") {
    RationalCurve l2 = line_l2();
    CriticalSearchOptions opts;
    opts.grid = 64;
    auto crit = critical_params(l2, opts);
    CHECK(crit.size() >= 32); // the whole grid is critical (deduplication by distance)

    // right translate by [[1,1],[0,1]]: a positive-radius cylinder, never critical
    RationalCurve cyl = RationalCurve::make({form({1.0, 0.0}), form({1.0, 0.0}), form({0.0, 0.0}),
                                             form({0.0, 1.0})});
    auto none = critical_params(cyl, opts);
    CHECK(none.empty());
}

TEST_CASE("criticality detectors agree with margin filtering") {
    Rng& rng = shared_rng();
    int checked = 0;
    const double tol = 1e-8;
    for (int c = 0; c < 40; ++c) {
        RationalCurve curve = random_conic(rng);
        for (int k = 0; k < 25; ++k) {
            CP1Point st(rng.cnormal(), rng.cnormal());
            double margin_gauss, margin_rank;
            try {
                margin_gauss = dist_to_R(gauss(curve, st, GaussSide::Minus));
                margin_rank = kappa_jacobian_sigma_min(curve, st);
            } catch (const Error&) {
                continue;
            }
            bool clear_reg_gauss = margin_gauss > 10 * tol;
            bool clear_crit_gauss = margin_gauss < 0.1 * tol;
            bool clear_reg_rank = margin_rank > 10 * std::sqrt(tol);
            bool clear_crit_rank = margin_rank < 0.1 * std::sqrt(tol);
            if ((clear_reg_gauss && clear_crit_rank) || (clear_crit_gauss && clear_reg_rank))
                CHECK(false); // contradiction between the detectors
            ++checked;
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("everywhere-critical curves have constant gauss (falsification)") {
    Rng& rng = shared_rng();
    for (int c = 0; c < 100; ++c) {
        RationalCurve curve = random_conic(rng);
        int critical = 0, total = 0;
        bool constant = true;
        Sym2Point first;
        bool have_first = false;
        for (int k = 0; k < 12; ++k) {
            CP1Point st(rng.cnormal(), rng.cnormal());
            try {
                Sym2Point g = gauss(curve, st, GaussSide::Minus);
                ++total;
                if (dist_to_R(g) < 1e-8) ++critical;
                if (!have_first) {
                    first = g;
                    have_first = true;
                } else if (proj_dist(first, g) > 1e-6) {
                    constant = false;
                }
            } catch (const Error&) {
            }
        }
        if (total >= 8 && critical == total) CHECK(constant);
    }
}

TEST_CASE("compactified amoeba meets the boundary in at most 2d points") {
    for (const RationalCurve& c : {generic_conic(), generic_cubic()}) {
        BinaryForm detf = c.det_form();
        auto roots = detf.roots();
        CHECK(static_cast<int>(roots.size()) == 2 * c.degree);
        // count distinct beta values of kappa-bar over the root set
        std::vector<CP1Point> betas;
        for (const auto& r : roots) {
            ProjPoint z = c.at(r);
            if (!on_quadric(z)) continue;
            CP1Point beta = q_coords(z).beta;
            bool dup = false;
            for (const auto& b : betas)
                if (proj_dist(b, beta) < 1e-6) dup = true;
            if (!dup) betas.push_back(beta);
        }
        CHECK(static_cast<int>(betas.size()) <= 2 * c.degree);
        CHECK(betas.size() >= 1);
    }
}
