#include "hypam/line_amoebas.hpp"

#include <algorithm>

#include "hypam/error.hpp"

namespace hypam {

const char* class_name(const LineAmoebaClass& c) {
    struct V {
        const char* operator()(const EmptyPlusRuling&) const { return "empty_plus_ruling"; }
        const char* operator()(const EmptyMinusRuling&) const { return "empty_minus_ruling"; }
        const char* operator()(const Horosphere&) const { return "horosphere"; }
        const char* operator()(const Cylinder&) const { return "cylinder"; }
        const char* operator()(const Geodesic&) const { return "geodesic"; }
    };
    return std::visit(V{}, c);
}

namespace {

// Pencil parameter away from the roots; used to pick a representative affine point.
CP1Point generic_parameter(const Line& l) {
    CP1Point best(1.0, 0.0);
    double best_sep = -1.0;
    // a few fixed candidates; enough since there are at most two roots
    const CP1Point cands[] = {CP1Point(1.0, 0.0), CP1Point(0.0, 1.0), CP1Point(1.0, 1.0),
                              CP1Point(1.0, -1.0), CP1Point(1.0, cplx(0.0, 1.0)),
                              CP1Point(2.0, 1.0), CP1Point(1.0, 2.0)};
    for (const auto& c : cands) {
        double sep = 1e9;
        for (const auto& r : l.qdata.roots) sep = std::min(sep, proj_dist(c, r));
        if (sep > best_sep) {
            best_sep = sep;
            best = c;
        }
    }
    return best;
}

double radius_from_samples(const Line& l, const AbsPoint& e1, const AbsPoint& e2) {
    // one sample fixes the radius; 16 more confirm the level-set property
    CP1Point p0 = generic_parameter(l);
    double r = dist_to_geodesic(kappa(l.at(p0)), e1, e2);
    Rng rng(0x51a7e5u);
    for (int k = 0; k < 16; ++k) {
        CP1Point lam(rng.cnormal(), rng.cnormal());
        double sep = std::min(proj_dist(lam, l.qdata.roots[0]), proj_dist(lam, l.qdata.roots[1]));
        if (sep < 1e-3) continue;
        double rk = dist_to_geodesic(kappa(l.at(lam)), e1, e2);
        if (std::abs(rk - r) > 1e-6 * std::max(1.0, r))
            fail(ErrorKind::InconsistentData, "cylinder radius varies across samples");
    }
    return r;
}

} // namespace

LineAmoebaClass classify_line(const Line& l) {
    switch (l.qdata.kind) {
        case LineKind::OnQuadricPlusRuling: {
            AbsPoint pt(q_coords(l.at(generic_parameter(l))).beta);
            return EmptyPlusRuling{pt};
        }
        case LineKind::OnQuadricMinusRuling:
            return EmptyMinusRuling{};
        case LineKind::Tangent: {
            AbsPoint center(l.qdata.qpoints[0].beta);
            HPoint base = kappa(l.at(generic_parameter(l)));
            return Horosphere{center, base};
        }
        case LineKind::Transverse: {
            const QuadricPoint& z1 = l.qdata.qpoints[0];
            const QuadricPoint& z2 = l.qdata.qpoints[1];
            AbsPoint e1(z1.beta), e2(z2.beta);
            double antipode_gap = sphere_dist(z2.alpha, z1.alpha.antipode());
            if (antipode_gap < tols().antipode) return Geodesic{e1, e2};
            double r = radius_from_samples(l, e1, e2);
            if (r <= tols().geo) return Geodesic{e1, e2};
            return Cylinder{e1, e2, r};
        }
    }
    fail(ErrorKind::InconsistentData, "unclassified line");
}

std::vector<CP1Point> sample_line_params(const Line& l, int n, std::uint64_t seed) {
    if (l.qdata.kind == LineKind::OnQuadricPlusRuling || l.qdata.kind == LineKind::OnQuadricMinusRuling)
        fail(ErrorKind::EmptyAmoeba, "on-quadric lines have empty amoebas");
    std::vector<CP1Point> params;
    params.reserve(n);
    Rng rng(seed);
    const double excl = 1e-4;
    while (static_cast<int>(params.size()) < n) {
        CP1Point lam(rng.cnormal(), rng.cnormal());
        bool ok = true;
        for (const auto& r : l.qdata.roots)
            if (proj_dist(lam, r) < excl) ok = false;
        if (ok) params.push_back(lam);
    }
    return params;
}

PointCloud sample_line_amoeba(const Line& l, int n, std::uint64_t seed) {
    PointCloud cloud;
    cloud.generator = "line-amoeba";
    cloud.seed = seed;
    for (const auto& lam : sample_line_params(l, n, seed)) cloud.add(to_ball(kappa(l.at(lam))));
    return cloud;
}

Line line_from_qpoints(const QuadricPoint& z1, const QuadricPoint& z2) {
    return line_through(z1.matrix(), z2.matrix());
}

std::vector<double> cylinder_radius_curve(const CP1Point& q1, const std::vector<double>& sweep) {
    // rotate away from the antipode of q1 along a fixed great circle
    CP1Point anti = q1.antipode();
    auto n0 = anti.unit_vec();
    // an orthonormal companion direction on S^2
    std::array<double, 3> aux = std::abs(n0[0]) < 0.9 ? std::array<double, 3>{1.0, 0.0, 0.0}
                                                      : std::array<double, 3>{0.0, 1.0, 0.0};
    std::array<double, 3> t{n0[1] * aux[2] - n0[2] * aux[1], n0[2] * aux[0] - n0[0] * aux[2],
                            n0[0] * aux[1] - n0[1] * aux[0]};
    double tn = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]);
    for (auto& c : t) c /= tn;

    const CP1Point beta1(0.3, cplx(1.0, 0.2));
    const CP1Point beta2(1.0, cplx(-0.4, 0.7));
    std::vector<double> radii;
    radii.reserve(sweep.size());
    for (double s : sweep) {
        if (s <= 0.0 || s >= M_PI) fail(ErrorKind::InputError, "sweep distances must lie in (0, pi)");
        std::array<double, 3> dir{};
        for (int i = 0; i < 3; ++i) dir[i] = std::cos(s) * n0[i] + std::sin(s) * t[i];
        CP1Point q2 = AbsPoint::from_unit_vec(dir).dir;
        Line l = line_from_qpoints(QuadricPoint{q1, beta1}, QuadricPoint{q2, beta2});
        LineAmoebaClass c = classify_line(l);
        if (auto* cyl = std::get_if<Cylinder>(&c))
            radii.push_back(cyl->radius);
        else if (std::holds_alternative<Geodesic>(c))
            radii.push_back(0.0);
        else
            fail(ErrorKind::InconsistentData, "radius sweep produced a non-transverse line");
    }
    return radii;
}

bool line_is_p_real(const Line& l) {
    ProjPoint ip = p_real_involution(l.p);
    ProjPoint id = p_real_involution(l.d);
    double r1 = affine_span_residual({l.p.m, l.d.m, ip.m});
    double r2 = affine_span_residual({l.p.m, l.d.m, id.m});
    return std::max(r1, r2) < 1e-7;
}

} // namespace hypam
