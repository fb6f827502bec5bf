#include "hypam/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "hypam/error.hpp"
#include "hypam/line_amoebas.hpp"
#include "hypam/rng.hpp"

namespace hypam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* what, size_t idx, const std::string& detail) {
    std::ostringstream os;
    os << what << " " << idx << ": " << detail;
    return os.str();
}

} // namespace

std::vector<std::string> validate_tropical_curve(const TropicalCurveGraph& g) {
    std::vector<std::string> bad;
    const int n = g.dim;
    for (size_t i = 0; i < g.vertices.size(); ++i)
        if (static_cast<int>(g.vertices[i].position.size()) != n)
            bad.push_back(fmt("vertex", i, "position dimension mismatch"));

    std::vector<int> valence(g.vertices.size(), 0);
    for (size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        if (static_cast<int>(e.slope.size()) != n) {
            bad.push_back(fmt("edge", i, "slope dimension mismatch"));
            continue;
        }
        if (e.v1 >= 0) valence[e.v1]++;
        if (e.v2 >= 0) valence[e.v2]++;
        if (e.v1 >= 0 && e.v2 >= 0) {
            if (!(e.length > 0.0)) bad.push_back(fmt("edge", i, "bounded edge needs positive length"));
            for (int k = 0; k < n; ++k) {
                double want = g.vertices[e.v1].position[k] + e.length * e.slope[k];
                if (std::abs(want - g.vertices[e.v2].position[k]) > 1e-9)
                    bad.push_back(fmt("edge", i, "endpoint positions inconsistent with length * slope"));
            }
        }
    }
    for (size_t i = 0; i < g.vertices.size(); ++i)
        if (valence[i] == 1 && g.vertices[i].genus == 0)
            bad.push_back(fmt("vertex", i, "1-valent vertex of genus 0"));

    for (size_t v = 0; v < g.vertices.size(); ++v) {
        std::vector<long long> sum(n, 0);
        for (const auto& e : g.edges) {
            if (e.v1 == static_cast<int>(v))
                for (int k = 0; k < n; ++k) sum[k] += e.slope[k];
            if (e.v2 == static_cast<int>(v))
                for (int k = 0; k < n; ++k) sum[k] -= e.slope[k];
        }
        for (int k = 0; k < n; ++k)
            if (sum[k] != 0) {
                bad.push_back(fmt("vertex", v, "balancing condition fails"));
                break;
            }
    }
    return bad;
}

int tropical_degree(const TropicalCurveGraph& g) {
    auto end_degree = [](const std::vector<int>& u) {
        int mx = 0;
        for (int c : u) mx = std::max(mx, c);
        return mx; // zero when every coordinate <= 0
    };
    int total = 0;
    for (const auto& e : g.edges) {
        bool leaf1 = e.v1 < 0, leaf2 = e.v2 < 0;
        std::vector<int> neg(e.slope.size());
        for (size_t k = 0; k < e.slope.size(); ++k) neg[k] = -e.slope[k];
        if (leaf1 && leaf2) { // double-infinite line: both ends count
            total += end_degree(e.slope) + end_degree(neg);
        } else if (leaf2) {
            total += end_degree(e.slope); // oriented v1 -> infinity
        } else if (leaf1) {
            total += end_degree(neg);
        }
    }
    return total;
}

std::vector<double> log_t(const std::vector<cplx>& z, double t) {
    if (t <= 1.0) fail(ErrorKind::BadScale, "log_t needs t > 1");
    std::vector<double> out(z.size());
    double lt = std::log(t);
    for (size_t i = 0; i < z.size(); ++i) {
        double m = std::abs(z[i]);
        if (m == 0.0) fail(ErrorKind::ZeroCoordinate, "log_t of a zero coordinate");
        out[i] = std::log(m) / lt;
    }
    return out;
}

TropLimit trop_limit(const std::vector<std::pair<double, cplx>>& seq) {
    if (seq.empty()) fail(ErrorKind::InputError, "trop_limit of empty sequence");
    std::vector<double> vals;
    vals.reserve(seq.size());
    for (const auto& [t, z] : seq) {
        if (t <= 1.0) fail(ErrorKind::BadScale, "trop_limit needs scales > 1");
        double m = std::abs(z);
        if (m == 0.0) fail(ErrorKind::ZeroCoordinate, "trop_limit of a zero value");
        vals.push_back(std::log(m) / std::log(t));
    }
    size_t tail = std::max<size_t>(1, vals.size() / 3);
    std::vector<double> tv(vals.end() - tail, vals.end());
    double lo = *std::min_element(tv.begin(), tv.end());
    double hi = *std::max_element(tv.begin(), tv.end());
    TropLimit out;
    if (hi - lo < 5e-3 * std::max(1.0, std::abs(hi))) {
        out.kind = TropLimit::Finite;
        double s = 0.0;
        for (double v : tv) s += v;
        out.value = s / tv.size();
        return out;
    }
    // a stable tail was ruled out; monotone growth across the tail reads as
    // divergence, anything else as no limit
    bool inc = true, dec = true;
    for (size_t i = 1; i < tv.size(); ++i) {
        inc = inc && tv[i] > tv[i - 1];
        dec = dec && tv[i] < tv[i - 1];
    }
    if (inc && tv.back() - tv.front() > 1.0) out.kind = TropLimit::PlusInf;
    else if (dec && tv.front() - tv.back() > 1.0) out.kind = TropLimit::MinusInf;
    else out.kind = TropLimit::None;
    return out;
}

std::vector<std::vector<double>> build_psi(const TropicalCurveGraph& g, const PsiPhaseData& phases,
                                           int per_piece) {
    const int n = g.dim;
    if (phases.vertex_coamoebas.size() != g.vertices.size() ||
        phases.edge_circles.size() != g.edges.size())
        fail(ErrorKind::DimensionMismatch, "phase data must match the graph");
    std::vector<std::vector<double>> cloud;
    for (size_t v = 0; v < g.vertices.size(); ++v) {
        for (const auto& arg : phases.vertex_coamoebas[v]) {
            if (static_cast<int>(arg.size()) != n)
                fail(ErrorKind::DimensionMismatch, "coamoeba sample dimension");
            std::vector<double> pt = g.vertices[v].position;
            pt.insert(pt.end(), arg.begin(), arg.end());
            cloud.push_back(std::move(pt));
        }
    }
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
        const auto& e = g.edges[ei];
        const auto& circ = phases.edge_circles[ei];
        if (static_cast<int>(circ.base.size()) != n || static_cast<int>(circ.direction.size()) != n)
            fail(ErrorKind::DimensionMismatch, "edge circle dimension");
        // direction must be parallel to the slope
        long long cross = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                cross += std::llabs(static_cast<long long>(circ.direction[i]) * e.slope[j] -
                                    static_cast<long long>(circ.direction[j]) * e.slope[i]);
        if (cross != 0) fail(ErrorKind::DimensionMismatch, "edge circle direction not parallel to slope");

        // sample the image segment x the phase circle
        double len = (e.v1 >= 0 && e.v2 >= 0) ? e.length : 1.0;
        for (int a = 0; a < per_piece; ++a) {
            double s = len * (a + 0.5) / per_piece;
            std::vector<double> base_pos(n, 0.0);
            if (e.v1 >= 0)
                base_pos = g.vertices[e.v1].position;
            else if (e.v2 >= 0)
                base_pos = g.vertices[e.v2].position;
            std::vector<double> pt(n);
            double sgn = (e.v1 < 0 && e.v2 >= 0) ? -1.0 : 1.0;
            for (int k = 0; k < n; ++k) pt[k] = base_pos[k] + sgn * s * e.slope[k];
            for (int b = 0; b < per_piece; ++b) {
                double th = 2.0 * M_PI * (b + 0.5) / per_piece;
                std::vector<double> full = pt;
                for (int k = 0; k < n; ++k) {
                    double ang = std::fmod(circ.base[k] + th * circ.direction[k], 2.0 * M_PI);
                    if (ang < 0) ang += 2.0 * M_PI;
                    full.push_back(ang);
                }
                cloud.push_back(std::move(full));
            }
        }
    }
    return cloud;
}

// -- floor diagrams -----------------------------------------------------------

std::vector<std::string> validate_floor_diagram(const FloorDiagram& d) {
    std::vector<std::string> bad;
    auto width_of = [&](int v) { return d.vertices[v].infinite ? kInf : d.vertices[v].width; };

    for (size_t i = 0; i < d.vertices.size(); ++i) {
        const auto& v = d.vertices[i];
        if (v.infinite || v.width > 0.0) {
            if (!v.bidegree) bad.push_back(fmt("vertex", i, "positive/infinite width needs a bidegree"));
            if (v.delta) bad.push_back(fmt("vertex", i, "bidegree vertices carry no delta"));
            if (v.bidegree && (v.bidegree->first < 0 || v.bidegree->second < 0))
                bad.push_back(fmt("vertex", i, "bidegree must be non-negative"));
        } else {
            if (!v.delta) bad.push_back(fmt("vertex", i, "zero width needs a degree delta"));
            if (v.bidegree) bad.push_back(fmt("vertex", i, "zero-width vertices carry no bidegree"));
            if (v.delta && *v.delta < 0) bad.push_back(fmt("vertex", i, "delta must be non-negative"));
        }
        if (!v.infinite && v.width < 0.0) bad.push_back(fmt("vertex", i, "negative width"));
    }

    for (size_t i = 0; i < d.edges.size(); ++i) {
        const auto& e = d.edges[i];
        if (e.v1 < 0 || e.v2 < 0 || e.v1 >= static_cast<int>(d.vertices.size()) ||
            e.v2 >= static_cast<int>(d.vertices.size())) {
            bad.push_back(fmt("edge", i, "endpoint index out of range"));
            continue;
        }
        if (e.weight <= 0) bad.push_back(fmt("edge", i, "weight must be positive"));
        if (width_of(e.v1) == width_of(e.v2)) bad.push_back(fmt("edge", i, "connects equal widths"));
        double n = std::sqrt(e.phi[0] * e.phi[0] + e.phi[1] * e.phi[1] + e.phi[2] * e.phi[2]);
        if (std::abs(n - 1.0) > 1e-9) bad.push_back(fmt("edge", i, "angle must be a unit vector"));
    }
    if (!bad.empty()) return bad; // structural issues first

    // total degree
    long long total = 0;
    for (const auto& v : d.vertices) {
        if (!v.infinite && v.width == 0.0 && v.delta) total += *v.delta;
        if (!v.infinite && v.width > 0.0 && v.bidegree) total += v.bidegree->first + v.bidegree->second;
    }
    if (total != d.degree) bad.push_back(fmt("diagram", 0, "total degree mismatch"));

    // divergence condition for finite-width vertices
    for (size_t vi = 0; vi < d.vertices.size(); ++vi) {
        const auto& v = d.vertices[vi];
        if (v.infinite) continue;
        long long div = 0;
        for (const auto& e : d.edges) {
            int other = -1;
            if (e.v1 == static_cast<int>(vi)) other = e.v2;
            if (e.v2 == static_cast<int>(vi)) other = e.v1;
            if (other < 0) continue;
            double wv = width_of(static_cast<int>(vi)), wo = width_of(other);
            if (wo > wv) div += e.weight;
            else div -= e.weight;
        }
        long long want = v.width == 0.0 ? 2LL * *v.delta
                                        : 2LL * (v.bidegree->first + v.bidegree->second);
        if (div != want) bad.push_back(fmt("vertex", vi, "divergence condition fails"));
    }

    // shared angle at d_+ = 0 vertices of positive/infinite width
    for (size_t vi = 0; vi < d.vertices.size(); ++vi) {
        const auto& v = d.vertices[vi];
        if (!(v.infinite || v.width > 0.0) || !v.bidegree || v.bidegree->first != 0) continue;
        const std::array<double, 3>* ref = nullptr;
        for (const auto& e : d.edges) {
            if (e.v1 != static_cast<int>(vi) && e.v2 != static_cast<int>(vi)) continue;
            if (!ref) {
                ref = &e.phi;
                continue;
            }
            double dot = e.phi[0] * (*ref)[0] + e.phi[1] * (*ref)[1] + e.phi[2] * (*ref)[2];
            if (dot < 1.0 - 1e-9) {
                bad.push_back(fmt("vertex", vi, "d_+ = 0 vertex with differing edge angles"));
                break;
            }
        }
    }
    return bad;
}

FloorDiagram example_figure_diagram() {
    FloorDiagram d;
    d.degree = 3;
    // 0: interior dot (bidegree (0,1)), 1: inner sphere, 2: outer sphere, 3..8: ends
    d.vertices.push_back({0.5, false, std::make_pair(0, 1), std::nullopt});
    d.vertices.push_back({1.0, false, std::make_pair(1, 0), std::nullopt});
    d.vertices.push_back({2.0, false, std::make_pair(1, 0), std::nullopt});
    auto dir = [](double th, double z) {
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return std::array<double, 3>{r * std::cos(th), r * std::sin(th), z};
    };
    for (int k = 0; k < 6; ++k)
        d.vertices.push_back({0.0, true, std::make_pair(0, 0), std::nullopt});
    d.edges.push_back({0, 1, dir(0.3, 0.6), 2});
    for (int k = 0; k < 4; ++k) d.edges.push_back({1, 2, dir(0.5 + k, 0.2 - 0.1 * k), 1});
    for (int k = 0; k < 6; ++k) d.edges.push_back({2, 3 + k, dir(1.0 * k, -0.3 + 0.1 * k), 1});
    return d;
}

FloorDiagram constant_line_diagram(const AbsPoint& end1, const AbsPoint& end2) {
    FloorDiagram d;
    d.degree = 1;
    d.vertices.push_back({0.0, false, std::nullopt, 1});
    d.vertices.push_back({0.0, true, std::make_pair(0, 0), std::nullopt});
    d.vertices.push_back({0.0, true, std::make_pair(0, 0), std::nullopt});
    d.edges.push_back({0, 1, end1.unit_vec(), 1});
    d.edges.push_back({0, 2, end2.unit_vec(), 1});
    return d;
}

SphericalComplex build_theta(const FloorDiagram& d, int) {
    auto bad = validate_floor_diagram(d);
    if (!bad.empty()) fail(ErrorKind::InputError, "invalid floor diagram: " + bad.front());
    SphericalComplex sc;
    auto width_of = [&](int v) { return d.vertices[v].infinite ? kInf : d.vertices[v].width; };
    for (size_t vi = 0; vi < d.vertices.size(); ++vi) {
        const auto& v = d.vertices[vi];
        double r = width_of(static_cast<int>(vi));
        if (v.bidegree && v.bidegree->first > 0) {
            sc.pieces.push_back({SphericalComplex::Piece::Shell, r, r, {}});
        } else {
            // point (r, phi(v)); for zero width this is the origin
            std::array<double, 3> phi{0.0, 0.0, 1.0};
            for (const auto& e : d.edges)
                if (e.v1 == static_cast<int>(vi) || e.v2 == static_cast<int>(vi)) {
                    phi = e.phi;
                    break;
                }
            sc.pieces.push_back({SphericalComplex::Piece::Dot, r, r, phi});
        }
    }
    for (const auto& e : d.edges) {
        double r1 = width_of(e.v1), r2 = width_of(e.v2);
        if (r1 > r2) std::swap(r1, r2);
        sc.pieces.push_back({SphericalComplex::Piece::Segment, r1, r2, e.phi});
    }
    return sc;
}

PointCloud SphericalComplex::sample(int density) const {
    PointCloud cloud;
    cloud.generator = "theta-complex";
    if (pieces.empty()) return cloud;
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    int tag = 0;
    for (const auto& p : pieces) {
        switch (p.kind) {
            case Piece::Shell: {
                if (std::isinf(p.r1)) {
                    for (int i = 0; i < density; ++i) {
                        double z = 1.0 - 2.0 * (i + 0.5) / density;
                        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
                        BallPoint b;
                        b.v = {r * std::cos(ga * i), r * std::sin(ga * i), z};
                        b.boundary = true;
                        cloud.add(b, tag);
                    }
                    break;
                }
                double e = std::tanh(0.5 * p.r1);
                for (int i = 0; i < density; ++i) {
                    double z = 1.0 - 2.0 * (i + 0.5) / density;
                    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
                    BallPoint b;
                    b.v = {e * r * std::cos(ga * i), e * r * std::sin(ga * i), e * z};
                    cloud.add(b, tag);
                }
                break;
            }
            case Piece::Dot: {
                BallPoint b;
                double e = std::isinf(p.r1) ? 1.0 : std::tanh(0.5 * p.r1);
                b.v = {e * p.phi[0], e * p.phi[1], e * p.phi[2]};
                b.boundary = std::isinf(p.r1);
                cloud.add(b, tag);
                break;
            }
            case Piece::Segment: {
                double e1 = std::tanh(0.5 * p.r1);
                double e2 = std::isinf(p.r2) ? 1.0 : std::tanh(0.5 * p.r2);
                for (int i = 0; i < density; ++i) {
                    double e = e1 + (e2 - e1) * (i + 0.5) / density; // uniform in the ball radius
                    BallPoint b;
                    b.v = {e * p.phi[0], e * p.phi[1], e * p.phi[2]};
                    cloud.add(b, tag);
                }
                break;
            }
        }
        ++tag;
    }
    return cloud;
}

// -- Hausdorff ---------------------------------------------------------------

namespace {

struct Grid {
    double cell;
    int nside;
    std::vector<std::vector<int>> bins;
    const std::vector<BallPoint>* pts;

    explicit Grid(const std::vector<BallPoint>& points) : pts(&points) {
        int target = std::max(4, static_cast<int>(std::cbrt(points.size() / 2.0)));
        nside = std::min(64, target);
        cell = 2.0 / nside;
        bins.assign(static_cast<size_t>(nside) * nside * nside, {});
        for (size_t i = 0; i < points.size(); ++i) bins[index_of(points[i].v)].push_back(static_cast<int>(i));
    }

    int clampi(int i) const { return std::min(nside - 1, std::max(0, i)); }
    size_t index_of(const std::array<double, 3>& v) const {
        int ix = clampi(static_cast<int>((v[0] + 1.0) / cell));
        int iy = clampi(static_cast<int>((v[1] + 1.0) / cell));
        int iz = clampi(static_cast<int>((v[2] + 1.0) / cell));
        return (static_cast<size_t>(ix) * nside + iy) * nside + iz;
    }

    double nearest_dist(const std::array<double, 3>& v) const {
        int ix = clampi(static_cast<int>((v[0] + 1.0) / cell));
        int iy = clampi(static_cast<int>((v[1] + 1.0) / cell));
        int iz = clampi(static_cast<int>((v[2] + 1.0) / cell));
        double best = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring <= nside; ++ring) {
            // cells on ring r are at least (r-1)*cell away; no improvement possible beyond
            if (best < (ring - 1) * cell) break;
            for (int dx = -ring; dx <= ring; ++dx)
                for (int dy = -ring; dy <= ring; ++dy)
                    for (int dz = -ring; dz <= ring; ++dz) {
                        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != ring) continue;
                        int jx = ix + dx, jy = iy + dy, jz = iz + dz;
                        if (jx < 0 || jy < 0 || jz < 0 || jx >= nside || jy >= nside || jz >= nside)
                            continue;
                        for (int idx : bins[(static_cast<size_t>(jx) * nside + jy) * nside + jz]) {
                            const auto& w = (*pts)[idx].v;
                            double d2 = 0.0;
                            for (int k = 0; k < 3; ++k) d2 += (v[k] - w[k]) * (v[k] - w[k]);
                            best = std::min(best, std::sqrt(d2));
                        }
                    }
        }
        return best;
    }
};

int hausdorff_threads() {
    if (const char* env = std::getenv("HYPAM_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

double directed_hausdorff(const std::vector<BallPoint>& from, const Grid& to) {
    int nthreads = std::min<int>(hausdorff_threads(), 8);
    if (nthreads <= 1 || from.size() < 4096) {
        double worst = 0.0;
        for (const auto& p : from) worst = std::max(worst, to.nearest_dist(p.v));
        return worst;
    }
    // max-reduction over disjoint chunks: result independent of scheduling
    std::vector<double> partial(nthreads, 0.0);
    std::vector<std::thread> pool;
    size_t chunk = (from.size() + nthreads - 1) / nthreads;
    for (int ti = 0; ti < nthreads; ++ti)
        pool.emplace_back([&, ti] {
            size_t lo = ti * chunk, hi = std::min(from.size(), lo + chunk);
            double w = 0.0;
            for (size_t i = lo; i < hi; ++i) w = std::max(w, to.nearest_dist(from[i].v));
            partial[ti] = w;
        });
    for (auto& th : pool) th.join();
    double worst = 0.0;
    for (double w : partial) worst = std::max(worst, w);
    return worst;
}

} // namespace

double hausdorff(const PointCloud& a, const PointCloud& b) {
    if (a.points.empty() || b.points.empty()) fail(ErrorKind::EmptyCloud, "hausdorff of empty cloud");
    Grid ga(a.points), gb(b.points);
    return std::max(directed_hausdorff(a.points, gb), directed_hausdorff(b.points, ga));
}

double hausdorff_bruteforce(const PointCloud& a, const PointCloud& b) {
    if (a.points.empty() || b.points.empty()) fail(ErrorKind::EmptyCloud, "hausdorff of empty cloud");
    auto directed = [](const std::vector<BallPoint>& from, const std::vector<BallPoint>& to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) {
                double d2 = 0.0;
                for (int k = 0; k < 3; ++k) d2 += (p.v[k] - q.v[k]) * (p.v[k] - q.v[k]);
                best = std::min(best, d2);
            }
            worst = std::max(worst, std::sqrt(best));
        }
        return worst;
    };
    return std::max(directed(a.points, b.points), directed(b.points, a.points));
}

// -- convergence --------------------------------------------------------------

ConvergenceReport kappa_convergence_check(const FamilySampler& family, const FloorDiagram& diagram,
                                          const std::vector<double>& schedule, int density,
                                          double tol_conv) {
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1]) fail(ErrorKind::InputError, "schedule must increase");
    SphericalComplex theta = build_theta(diagram);
    int pieces = std::max(1, static_cast<int>(theta.pieces.size()));
    PointCloud theta_cloud = theta.sample(std::max(64, density / pieces));

    ConvergenceReport rep;
    rep.t_values = schedule;
    for (double t : schedule) {
        if (t <= 1.0) fail(ErrorKind::BadScale, "schedule values must exceed 1");
        double logt = std::log(t);
        PointCloud amoeba;
        amoeba.generator = "rescaled-amoeba";
        for (const auto& p : family(t)) {
            PolarCoord pc = kappa_polar_deep(p);
            if (!pc.infinite) pc.rho /= logt;
            amoeba.add(to_ball(pc));
        }
        if (amoeba.points.empty()) fail(ErrorKind::EmptyCloud, "family produced no samples");
        rep.distances.push_back(hausdorff(amoeba, theta_cloud));
    }
    rep.final_distance = rep.distances.back();
    // strictly decreasing from the third schedule point on; plateaus below 5%
    // of the tolerance count as converged (sampling resolution floor)
    double floor_tol = 0.05 * tol_conv;
    rep.eventually_decreasing = rep.distances.size() >= 3;
    for (size_t i = 2; i < rep.distances.size(); ++i)
        if (rep.distances[i] >= rep.distances[i - 1] && rep.distances[i] > floor_tol)
            rep.eventually_decreasing = false;
    rep.pass = rep.eventually_decreasing && rep.final_distance < tol_conv;
    return rep;
}

std::vector<ProjPoint> constant_line_family_samples(const Line& l, double t, int density,
                                                    std::uint64_t seed, double rho_max_factor) {
    std::vector<ProjPoint> out;
    out.reserve(density);
    int bulk = density / 2;
    for (const auto& lam : sample_line_params(l, bulk, seed)) out.push_back(l.at(lam));

    // log-radial fans toward each root: rescaled rho approximately uniform
    int fan_total = density - bulk;
    int per_root = std::max(1, fan_total / std::max(1, static_cast<int>(l.qdata.roots.size())));
    double logt = std::log(t);
    Rng rng(seed ^ 0xfa15);
    for (const auto& root : l.qdata.roots) {
        // chart direction: perturb the root inside CP^1; at offset delta the
        // rescaled rho is about -log(delta)/log(t)
        for (int k = 0; k < per_root; ++k) {
            double u = rho_max_factor * logt * (k + 0.5) / per_root; // target rho
            double delta = std::exp(-u);
            double th = 2.0 * M_PI * rng.uniform();
            cplx off = delta * std::exp(cplx(0.0, th));
            // step away from the root in the larger-coordinate chart
            CP1Point lam = std::abs(root.v) >= std::abs(root.u)
                               ? CP1Point(root.u + off, root.v)
                               : CP1Point(root.u, root.v + off);
            out.push_back(l.at(lam));
        }
        out.push_back(l.at(root)); // the exact boundary point
    }
    return out;
}

} // namespace hypam
