#include <doctest.h>

#include "hypam/core_proj.hpp"
#include "hypam/error.hpp"
#include "hypam/rng.hpp"

using namespace hypam;

namespace {

ProjPoint random_point(Rng& rng) {
    return ProjPoint(Mat2(rng.cnormal(), rng.cnormal(), rng.cnormal(), rng.cnormal()));
}

ProjPoint random_rank1(Rng& rng) {
    cplx u1 = rng.cnormal(), u2 = rng.cnormal(), v1 = rng.cnormal(), v2 = rng.cnormal();
    return ProjPoint(Mat2(u1 * v1, u1 * v2, u2 * v1, u2 * v2));
}

} // namespace

TEST_CASE("canonical form: unit Frobenius norm, real positive lead") {
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        ProjPoint p = random_point(rng);
        CHECK(p.m.norm() == doctest::Approx(1.0).epsilon(1e-12));
        double best = 0.0;
        int lead = 0;
        for (int i = 0; i < 4; ++i)
            if (std::abs(p.m.entry(i)) > best) {
                best = std::abs(p.m.entry(i));
                lead = i;
            }
        CHECK(std::imag(p.m.entry(lead)) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(std::real(p.m.entry(lead)) > 0.0);
    }
}

TEST_CASE("det examples") {
    CHECK(std::abs(det(ProjPoint::from_entries(1, 0, 0, 1)) - cplx(0.5)) < 1e-15);
    CHECK(std::abs(det(ProjPoint::from_entries(1, 0, 0, 0))) < 1e-15);
    // Frobenius norm^2 of (2,1,1,1) is 7, so det scales to (2-1)/7
    CHECK(std::abs(det(ProjPoint::from_entries(2, 1, 1, 1)) - cplx(1.0 / 7.0)) < 1e-15);
}

TEST_CASE("on_quadric examples, including poor conditioning") {
    CHECK(on_quadric(ProjPoint::from_entries(1, 0, 0, 0)));
    CHECK_FALSE(on_quadric(ProjPoint::from_entries(1, 0, 0, 1)));
    double t = 1e6;
    CHECK(on_quadric(ProjPoint::from_entries(1.0, t, 1.0 / t, 1.0)));
}

TEST_CASE("q_coords examples") {
    QuadricPoint z = q_coords(ProjPoint::from_entries(1, 0, 0, 0));
    CHECK(same_point(z.alpha, CP1Point(0.0, 1.0)));
    CHECK(same_point(z.beta, CP1Point(1.0, 0.0)));

    QuadricPoint z12 = q_coords(ProjPoint::from_entries(0, 1, 0, 0));
    CHECK(same_point(z12.alpha, CP1Point(1.0, 0.0)));
    CHECK(same_point(z12.beta, CP1Point(1.0, 0.0)));

    CHECK_THROWS_AS(q_coords(ProjPoint::from_entries(1, 0, 0, 1)), Error);
}

TEST_CASE("rank-1 reconstruction round-trips") {
    Rng rng(101);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        ProjPoint p = random_rank1(rng);
        QuadricPoint z = q_coords(p);
        worst = std::max(worst, proj_dist(z.matrix(), p));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("line_through: l2 closure is transverse with the expected roots") {
    Line l = line_through(ProjPoint::from_entries(1, 0, 0, 0), ProjPoint::from_entries(0, 0, 0, 1));
    REQUIRE(l.qdata.kind == LineKind::Transverse);
    REQUIRE(l.qdata.qpoints.size() == 2);
    bool has_e11 = false, has_e22 = false;
    for (const auto& z : l.qdata.qpoints) {
        if (same_point(z.matrix(), ProjPoint::from_entries(1, 0, 0, 0))) has_e11 = true;
        if (same_point(z.matrix(), ProjPoint::from_entries(0, 0, 0, 1))) has_e22 = true;
    }
    CHECK(has_e11);
    CHECK(has_e22);
}

TEST_CASE("line_through: l1 closure is tangent at E12") {
    Line l = line_through(ProjPoint::from_entries(1, 0, 0, 1), ProjPoint::from_entries(0, 1, 0, 0));
    REQUIRE(l.qdata.kind == LineKind::Tangent);
    REQUIRE(l.qdata.qpoints.size() == 1);
    CHECK(same_point(l.qdata.qpoints[0].matrix(), ProjPoint::from_entries(0, 1, 0, 0)));
}

TEST_CASE("line_through: span{E11,E12} lies on Q in the plus ruling (image fixed)") {
    Line l = line_through(ProjPoint::from_entries(1, 0, 0, 0), ProjPoint::from_entries(0, 1, 0, 0));
    CHECK(l.qdata.kind == LineKind::OnQuadricPlusRuling);
    // image is (1:0) along the whole pencil
    QuadricPoint z = q_coords(l.at(CP1Point(0.7, cplx(0.2, 0.5))));
    CHECK(same_point(z.beta, CP1Point(1.0, 0.0)));
}

TEST_CASE("line_through rejects dependent points") {
    CHECK_THROWS_AS(line_through(ProjPoint::from_entries(1, 2, 3, 4),
                                 ProjPoint::from_entries(cplx(0, 2), cplx(0, 4), cplx(0, 6), cplx(0, 8))),
                    Error);
}

TEST_CASE("classification invariant under basis changes") {
    Rng rng(202);
    for (int k = 0; k < 1000; ++k) {
        ProjPoint p = random_point(rng), q = random_point(rng);
        Line l1 = line_through(p, q);
        // random invertible recombination of the basis
        cplx a = rng.cnormal(), b = rng.cnormal(), c = rng.cnormal(), d = rng.cnormal();
        if (std::abs(a * d - b * c) < 0.05) continue;
        Line l2 = line_through(ProjPoint(p.m * a + q.m * c), ProjPoint(p.m * b + q.m * d));
        CHECK(l1.qdata.kind == l2.qdata.kind);
        if (l1.qdata.kind == LineKind::Transverse) {
            // same unordered pair of quadric points
            double d11 = proj_dist(l1.qdata.qpoints[0].matrix(), l2.qdata.qpoints[0].matrix());
            double d12 = proj_dist(l1.qdata.qpoints[0].matrix(), l2.qdata.qpoints[1].matrix());
            CHECK(std::min(d11, d12) < 1e-7);
        }
    }
}

TEST_CASE("transverse lines off Q have distinct alphas and betas") {
    Rng rng(303);
    for (int k = 0; k < 500; ++k) {
        Line l = line_through(random_point(rng), random_point(rng));
        if (l.qdata.kind != LineKind::Transverse) continue;
        CHECK(proj_dist(l.qdata.qpoints[0].alpha, l.qdata.qpoints[1].alpha) > 1e-7);
        CHECK(proj_dist(l.qdata.qpoints[0].beta, l.qdata.qpoints[1].beta) > 1e-7);
    }
}

TEST_CASE("left action fixes alpha and acts by Moebius on beta; right acts inversely on alpha") {
    Rng rng(404);
    for (int k = 0; k < 300; ++k) {
        ProjPoint z = random_rank1(rng);
        Mat2 a(rng.cnormal(), rng.cnormal(), rng.cnormal(), rng.cnormal());
        if (std::abs(a.det()) < 0.05) continue;
        QuadricPoint before = q_coords(z);

        QuadricPoint left = q_coords(ProjPoint(a * z.m));
        CHECK(proj_dist(left.alpha, before.alpha) < 1e-9);
        CHECK(proj_dist(left.beta, moebius(a, before.beta)) < 1e-8);

        QuadricPoint right = q_coords(ProjPoint(z.m * a));
        CHECK(proj_dist(right.beta, before.beta) < 1e-9);
        CHECK(proj_dist(right.alpha, moebius(a.inverse(), before.alpha)) < 1e-8);
    }
}

TEST_CASE("p_real_involution examples and involutivity") {
    CHECK(is_p_real(ProjPoint::from_entries(1, 0, 0, 1)));
    CHECK(is_p_real(ProjPoint::from_entries(cplx(0, 1), 0, 0, cplx(0, -1))));
    CHECK(same_point(p_real_involution(ProjPoint::from_entries(2, 0, 0, 1)),
                     ProjPoint::from_entries(1, 0, 0, 2)));
    Rng rng(505);
    for (int k = 0; k < 1000; ++k) {
        ProjPoint p = random_point(rng);
        CHECK(proj_dist(p_real_involution(p_real_involution(p)), p) < 1e-9);
    }
}

TEST_CASE("generic SU(2) elements are fixed by the involution") {
    // the fixed locus must be the whole unitary locus, not just a slice of it
    Rng rng(606);
    for (int k = 0; k < 100; ++k) {
        double q[4];
        rng.unit_quaternion(q);
        ProjPoint u(Mat2(cplx(q[0], q[1]), cplx(q[2], q[3]), cplx(-q[2], q[3]), cplx(q[0], -q[1])));
        CHECK(is_p_real(u));
    }
}

TEST_CASE("pi_P examples") {
    // on Q it reduces to q_coords
    ProjPoint e11 = ProjPoint::from_entries(1, 0, 0, 0);
    QuadricPoint z = pi_P(e11);
    CHECK(same_point(z.matrix(), e11));

    // diag(t, 1/t), t > 1 projects to the infinity end of the 0-infinity geodesic
    QuadricPoint zt = pi_P(ProjPoint::from_entries(2.0, 0, 0, 0.5));
    CHECK(same_point(zt.beta, CP1Point(1.0, 0.0)));
    // and t < 1 lands on the other end
    QuadricPoint zs = pi_P(ProjPoint::from_entries(0.5, 0, 0, 2.0));
    CHECK(same_point(zs.beta, CP1Point(0.0, 1.0)));

    CHECK_THROWS_AS(pi_P(ProjPoint::from_entries(1, 0, 0, 1)), Error);
}

TEST_CASE("pi_P intertwines the boundary map with the polar direction") {
    // beta of pi_P(A) equals the direction of the ray from the origin through
    // kappa(A), wherever both are defined
    Rng rng(717);
    int tested = 0;
    while (tested < 300) {
        ProjPoint p = random_point(rng);
        if (on_quadric(p) || is_p_real(p)) continue;
        Mat2 aa = p.m * p.m.adjoint();
        double mu_max, mu_min;
        hermitian_eigenvalues(aa, mu_max, mu_min);
        if (mu_max - mu_min < 1e-3) continue; // kappa too close to the origin
        ++tested;
        auto w = hermitian_top_eigenvector(aa);
        CHECK(proj_dist(pi_P(p).beta, CP1Point(w[0], w[1])) < 1e-6);
    }
}

TEST_CASE("p and its involution image map to the two Q-points of their line") {
    Rng rng(707);
    for (int k = 0; k < 200; ++k) {
        ProjPoint p = random_point(rng);
        if (on_quadric(p) || is_p_real(p)) continue;
        QuadricPoint z1 = pi_P(p);
        QuadricPoint z2 = pi_P(p_real_involution(p));
        CHECK(proj_dist(z1.matrix(), z2.matrix()) > 1e-6);
        // both lie on the line through p and its image
        ProjPoint ip = p_real_involution(p);
        CHECK(affine_span_residual({p.m, ip.m, z1.matrix().m}) < 1e-6);
        CHECK(affine_span_residual({p.m, ip.m, z2.matrix().m}) < 1e-6);
    }
}
