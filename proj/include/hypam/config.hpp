#pragma once

namespace hypam {

/// Numeric tolerances, all relative to unit-normalized (canonical) data.
struct Tolerances {
    double proj = 1e-9;      // projective point equality
    double q = 1e-8;         // |det| below which a point counts as on Q
    double disc = 1e-8;      // discriminant threshold for tangency
    double rank = 1e-8;      // smallest singular value for span/rank tests
    double antipode = 1e-7;  // spherical distance deciding geodesic vs cylinder
    double geo = 1e-6;       // cylinder radius at or below which we report a geodesic
    double member = 1e-10;   // membership threshold on the normalized sphere minimum
    double on_surface = 1e-8;   // |p(A)| / coeff_norm for "A lies on S"
    double smooth = 1e-8;       // gradient norm below which a point is singular
    double conv = 0.1;          // final Hausdorff threshold for kappa-tropical convergence
};

Tolerances& tols();

} // namespace hypam
