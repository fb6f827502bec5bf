#pragma once

#include <vector>

#include "hypam/hyperbolic.hpp"
#include "hypam/line_amoebas.hpp"

namespace hypam {

/// Homogeneous binary form sum c[j] s^(k-j) t^j of degree k = coeffs.size()-1.
struct BinaryForm {
    std::vector<cplx> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx eval(const CP1Point& st) const;
    BinaryForm d_s() const;
    BinaryForm d_t() const;
    double max_coeff() const;

    /// Roots as CP^1 points (via the companion matrix of the dehomogenization).
    std::vector<CP1Point> roots() const;
};

BinaryForm operator*(const BinaryForm& f, const BinaryForm& g);
BinaryForm operator-(const BinaryForm& f, const BinaryForm& g);

/// Rational curve (a(s,t):b(s,t):c(s,t):d(s,t)) of common degree d, coprime,
/// not contained in Q.
struct RationalCurve {
    std::array<BinaryForm, 4> components;
    int degree;

    static RationalCurve make(const std::array<BinaryForm, 4>& comps); // validates
    ProjPoint at(const CP1Point& st) const;
    BinaryForm det_form() const; // det composed with the parameterization, degree 2d
};

/// Unordered pair {z, z'} of CP^1 points as (e0:e1:e2), the binary quadratic
/// e0 w^2 - e1 w v + e2 v^2 with those roots; finite pairs read (1 : z+z' : zz').
struct Sym2Point {
    std::array<cplx, 3> e;

    Sym2Point() : e{1.0, 0.0, 0.0} {}
    explicit Sym2Point(const std::array<cplx, 3>& raw); // canonicalizes

    static Sym2Point from_pair(const CP1Point& z1, const CP1Point& z2);
    std::pair<CP1Point, CP1Point> roots() const;
    cplx discriminant() const { return e[1] * e[1] - 4.0 * e[0] * e[2]; }
};

double proj_dist(const Sym2Point& p, const Sym2Point& q);

/// Antiholomorphic involution (u:v:w) -> (conj w : -conj v : conj u); its fixed
/// locus R corresponds to antipodal pairs.
Sym2Point sigma_R(const Sym2Point& p);

/// Half the Fubini-Study distance from p to sigma_R(p); zero iff p in R.
double dist_to_R(const Sym2Point& p);

enum class GaussSide { Minus, Plus };

/// Tangent line to the curve at the parameter. errors: SingularParameter
Line tangent_line(const RationalCurve& c, const CP1Point& param);

/// Ruling projections of the tangent line's Q-intersection pair.
Sym2Point gauss(const RationalCurve& c, const CP1Point& param, GaussSide side);

/// Algebraic degree of the Gauss map by smallest-degree interpolation fit.
/// errors: IllConditioned
int gauss_degree_estimate(const RationalCurve& c, GaussSide side);

struct CriticalSearchOptions {
    int grid = 512;
    double tol = 1e-8;
};

/// Parameters where kappa|_C is critical: dist_to_R(gauss-) < tol after local
/// refinement, cross-validated against the rank of the real differential.
std::vector<CP1Point> critical_params(const RationalCurve& c, const CriticalSearchOptions& opts);

/// Smallest relative singular value of the real differential of kappa o C.
double kappa_jacobian_sigma_min(const RationalCurve& c, const CP1Point& param);

} // namespace hypam
