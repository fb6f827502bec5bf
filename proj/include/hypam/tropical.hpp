#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypam/pointcloud.hpp"

namespace hypam {

// -- commutative scaffolding --------------------------------------------------

/// Metric graph with integer slopes; edges with v2 < 0 are leaves (infinite
/// length), edges with both endpoints < 0 are double-infinite lines.
struct TropicalCurveGraph {
    struct Vertex {
        std::vector<double> position;
        int genus = 0;
    };
    struct Edge {
        int v1 = -1, v2 = -1;
        std::vector<int> slope;   // u(E) = weight * primitive, oriented v1 -> v2
        double length = 0.0;      // ignored (infinite) when an endpoint is missing
    };
    int dim = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
};

/// All violated invariants, empty iff the graph is a parameterized tropical curve.
std::vector<std::string> validate_tropical_curve(const TropicalCurveGraph& g);

/// Sum over unbounded ends of max(0, max coordinate of the outward slope).
int tropical_degree(const TropicalCurveGraph& g);

/// Coordinatewise log base t. errors: ZeroCoordinate, BadScale
std::vector<double> log_t(const std::vector<cplx>& z, double t);

struct TropLimit {
    enum Kind { Finite, PlusInf, MinusInf, None } kind = None;
    double value = 0.0;
};

/// Tropical limit of a scaled sequence log_{t_k}|z_k| with a tail-stability
/// diagnostic.
TropLimit trop_limit(const std::vector<std::pair<double, cplx>>& seq);

/// Phase data for the unparameterized phase-tropical limit constructor.
struct PsiPhaseData {
    // per-vertex coamoeba samples in (S^1)^n, angles in [0, 2pi)
    std::vector<std::vector<std::vector<double>>> vertex_coamoebas;
    // per-edge circle: basepoint angles + integer direction (parallel to the slope)
    struct EdgeCircle {
        std::vector<double> base;
        std::vector<int> direction;
    };
    std::vector<EdgeCircle> edge_circles;
};

/// Sampled union of {h(v)} x Arg_v and {h(E)} x circle_E in R^n x (S^1)^n.
/// Points are concatenated (position, angles). errors: DimensionMismatch
std::vector<std::vector<double>> build_psi(const TropicalCurveGraph& g, const PsiPhaseData& phases,
                                           int per_piece);

// -- H^3 floor diagrams -------------------------------------------------------

struct FloorDiagram {
    struct Vertex {
        double width = 0.0; // inf allowed
        bool infinite = false;
        std::optional<std::pair<int, int>> bidegree; // positive/infinite width
        std::optional<int> delta;                    // zero width
    };
    struct Edge {
        int v1 = 0, v2 = 0;
        std::array<double, 3> phi{0.0, 0.0, 1.0}; // unit vector on S^2
        int weight = 1;
    };
    int degree = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
};

std::vector<std::string> validate_floor_diagram(const FloorDiagram& d);

/// The degree-3 diagram of the worked example: two spheres, an interior dot
/// fed by a weight-2 edge, six ends at the absolute.
FloorDiagram example_figure_diagram();

/// Degree-1 diagram of a constant transverse line: origin dot, two rays.
FloorDiagram constant_line_diagram(const AbsPoint& end1, const AbsPoint& end2);

/// Geometric realization of a floor diagram: shells, dots, radial segments.
struct SphericalComplex {
    struct Piece {
        enum Kind { Shell, Dot, Segment } kind;
        double r1 = 0.0, r2 = 0.0;   // radii (hyperbolic); inf allowed
        std::array<double, 3> phi{}; // direction for dots/segments
    };
    std::vector<Piece> pieces;

    PointCloud sample(int density) const;
};

SphericalComplex build_theta(const FloorDiagram& d, int density_hint = 0);

/// Symmetric Hausdorff distance in the Euclidean metric of the closed ball.
/// errors: EmptyCloud
double hausdorff(const PointCloud& a, const PointCloud& b);

/// Exhaustive O(|A||B|) reference used to validate the accelerated version.
double hausdorff_bruteforce(const PointCloud& a, const PointCloud& b);

struct ConvergenceReport {
    std::vector<double> t_values;
    std::vector<double> distances;
    bool eventually_decreasing = false;
    double final_distance = 0.0;
    bool pass = false;
};

/// Family sampler: t -> projective samples of V_t (may include points of Q).
using FamilySampler = std::function<std::vector<ProjPoint>(double t)>;

/// kappa-tropical convergence test: rescaled amoeba clouds against Theta(Delta).
ConvergenceReport kappa_convergence_check(const FamilySampler& family, const FloorDiagram& diagram,
                                          const std::vector<double>& schedule, int density,
                                          double tol_conv);

/// Pencil samples of a fixed line suited to rescaled-amoeba comparisons:
/// uniform bulk samples plus log-radial fans toward the Q-roots (rescaled
/// rho coverage up to rho_max_factor), plus the exact boundary points.
std::vector<ProjPoint> constant_line_family_samples(const Line& l, double t, int density,
                                                    std::uint64_t seed,
                                                    double rho_max_factor = 6.0);

} // namespace hypam
