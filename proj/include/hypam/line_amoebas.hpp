#pragma once

#include <variant>

#include "hypam/hyperbolic.hpp"
#include "hypam/pointcloud.hpp"
#include "hypam/rng.hpp"

namespace hypam {

// Trichotomy of line amoebas. On-quadric lines have empty amoebas; the
// compactified image is a single boundary point (plus ruling) or the whole
// absolute (minus ruling).
struct EmptyPlusRuling {
    AbsPoint point;
};
struct EmptyMinusRuling {};
struct Horosphere {
    AbsPoint center;
    HPoint basepoint;
};
struct Cylinder {
    AbsPoint axis1, axis2;
    double radius;
};
struct Geodesic {
    AbsPoint end1, end2;
};

using LineAmoebaClass = std::variant<EmptyPlusRuling, EmptyMinusRuling, Horosphere, Cylinder, Geodesic>;

const char* class_name(const LineAmoebaClass& c);

/// Full trichotomy with verified geometric parameters.
LineAmoebaClass classify_line(const Line& l);

/// n kappa-images of pencil points, parameters uniform on CP^1 away from the
/// Q-roots; deterministic under seed. errors: EmptyAmoeba for on-quadric lines.
PointCloud sample_line_amoeba(const Line& l, int n, std::uint64_t seed);

/// Pencil parameters used by sample_line_amoeba (for callers needing both).
std::vector<CP1Point> sample_line_params(const Line& l, int n, std::uint64_t seed);

/// For each spherical distance s between q2 and the antipode of q1, build a
/// line with that Q-data (generic fixed betas) and return its cylinder radius.
std::vector<double> cylinder_radius_curve(const CP1Point& q1, const std::vector<double>& sweep);

/// Line with prescribed quadric points (alpha_i, beta_i).
Line line_from_qpoints(const QuadricPoint& z1, const QuadricPoint& z2);

/// Whether the involution maps the line to itself (setwise).
bool line_is_p_real(const Line& l);

} // namespace hypam
