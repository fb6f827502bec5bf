#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hypam/curves.hpp"
#include "hypam/hyperbolic.hpp"

namespace hypam {

/// Sparse homogeneous polynomial in the matrix entries (a,b,c,d).
struct Poly4 {
    std::map<std::array<int, 4>, cplx> monomials;

    int degree() const;
    cplx eval(const Mat2& m) const;
    std::array<cplx, 4> gradient(const Mat2& m) const;
    Poly4 partial(int var) const;
    double coeff_norm() const;

    Poly4& add(const std::array<int, 4>& exp, cplx coeff);
    Poly4 operator*(const Poly4& o) const;
    Poly4 operator+(const Poly4& o) const;
    Poly4 operator*(cplx s) const;

    /// Substitute variable i by the linear form sum_j L[i][j] var_j: p'(x) = p(L x).
    Poly4 compose_linear(const std::array<std::array<cplx, 4>, 4>& l) const;

    static Poly4 variable(int var);
    static Poly4 quadric(); // ad - bc
    static Poly4 trace();   // a + d
};

/// Projective surface {p = 0} of degree d, not a scalar multiple of Q.
struct Surface {
    Poly4 p;
    int degree = 0;
    double coeff_norm = 0.0;

    static Surface make(const Poly4& p); // validates
};

/// q(A) = p(B A). errors: OnQuadric (for B)
Surface translate_left(const Surface& s, const ProjPoint& b);
/// q(A) = p(A B).
Surface translate_right(const Surface& s, const ProjPoint& b);

struct MembershipOptions {
    int starts = 64;
    double tau = 1e-10;
    std::uint64_t seed = 1;
};

struct MembershipResult {
    bool member = false;
    double min_value = 0.0;           // min |q|^2 / coeff_norm^2 over kappa^{-1}(x)
    std::array<double, 4> witness{};  // unit quaternion: A = sqrt(x) U(witness)
    int starts = 0;
};

/// Does S meet kappa^{-1}(x)? Multistart minimization of the normalized squared
/// modulus over the unitary fiber, parameterized by unit quaternions.
MembershipResult membership(const Surface& s, const HPoint& x, const MembershipOptions& opts = {});

/// SU(2) matrix of a unit quaternion.
Mat2 su2_of_quaternion(const std::array<double, 4>& q);

struct ConvexityOptions {
    int n_pairs = 50;
    int n_steps = 20;
    std::uint64_t seed = 1;
    double r_box = 3.0;
    int rejection_budget = 10000;
    MembershipOptions member;
};

struct ConvexityViolation {
    HPoint x, y, interior;
    double value;
};

struct ConvexityReport {
    int pairs_tested = 0;
    std::vector<std::pair<HPoint, HPoint>> pairs; // the sampled non-member endpoints
    std::vector<ConvexityViolation> violations;
};

/// Samples non-member pairs and tests geodesic interiors for membership.
/// errors: NoComplementFound when rejection sampling exhausts its budget.
ConvexityReport convexity_check(const Surface& s, const ConvexityOptions& opts = {});

/// Quadric rotated slightly about the pi_+ fiber line over x:
/// det + eps * L1 * L2 with L1, L2 linear forms cutting that line.
Surface perturbed_quadric(const AbsPoint& x, double eps);

/// Points at distance 0,1,...,n-1 along the ray toward x are all non-members.
bool ray_disjoint_check(const Surface& s_x, const AbsPoint& x, int n,
                        const MembershipOptions& opts = {});

/// Left PSL2-Gauss map in the su(2) conormal coordinates.
/// errors: NotOnSurface, SingularPoint, OnQuadric
Sym2Point gauss_left(const Surface& s, const ProjPoint& a);

/// Is gauss_left(s,a) fixed by coordinatewise conjugation (the P-real
/// structure)? Cross-validated against the rank of the real differential.
bool critical_test(const Surface& s, const ProjPoint& a, double tol = 1e-6);

/// The two ingredients of critical_test, for margin-filtered comparisons.
double gauss_left_real_dist(const Surface& s, const ProjPoint& a);
double surface_jacobian_sigma_min(const Surface& s, const ProjPoint& a);

/// Tangent plane of Q at the quadric point (covector = grad det there).
Surface tangent_plane(const QuadricPoint& z);

/// Constant gauss_left values of n tangent planes sampled over the minus ruling.
std::vector<Sym2Point> c_N_generate(int n); // errors: InputError for n < 6

struct ConicReport {
    std::array<cplx, 6> conic; // coefficients of x^2, xy, xz, y^2, yz, z^2
    double fit_residual = 0.0;
    double nondegeneracy = 0.0;     // sigma_3 / sigma_1 of the symmetric matrix
    double conj_invariance = 0.0;   // relative distance between conj(M) and the line of M
    double real_point_margin = 0.0; // min over RP^2 of |x^T M x| (normalized)
};

ConicReport c_N_conic_check(const std::vector<Sym2Point>& points); // errors: IllConditioned

/// Solve gauss_left|_R = w on a transverse plane R (all equations linear);
/// returns the solution point (typically on Q when w lies on C_N).
ProjPoint gauss_left_linear_solve(const Surface& plane, const Sym2Point& w);

/// Q-points of S cap Q over a fixed beta (solves the degree-d binary form in alpha).
std::vector<QuadricPoint> quadric_trace_points(const Surface& s, const CP1Point& beta);

} // namespace hypam
