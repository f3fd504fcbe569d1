#pragma once
// Linear fractional self-maps of the unit ball of C^n:
//     phi(z) = (A z + B) / (<z,C> + d),
// stored projectively via the (n+1)x(n+1) matrix [[A, B], [C*, d]] acting on
// (z, 1).  <z,w> = sum z_j conj(w_j) throughout.  |d| > |C| keeps the
// denominator zero-free on the closed ball (necessary and sufficient).

#include <complex>
#include <optional>

#include <Eigen/Core>

#include "wco/series.hpp"

namespace wco {

// <z,w> with the first slot linear; Eigen's dot conjugates the caller.
inline cplx hdot(const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) { return w.dot(z); }

// A point of the open unit ball; construction checks |v| < 1.
struct BallPoint {
    Eigen::VectorXcd v;

    BallPoint() = default;
    explicit BallPoint(Eigen::VectorXcd coords);
    static BallPoint origin(int n);
    int dim() const { return static_cast<int>(v.size()); }
    double norm() const { return v.norm(); }
};

struct LinearFractionalMap {
    Eigen::MatrixXcd A;  // n x n
    Eigen::VectorXcd B;  // n
    Eigen::VectorXcd C;  // n
    cplx d = 1.0;

    int dim() const { return static_cast<int>(B.size()); }
    void ensure_valid() const;  // dimensions and |d| > |C|

    Eigen::MatrixXcd projective_matrix() const;
    static LinearFractionalMap from_projective(const Eigen::MatrixXcd&);
    static LinearFractionalMap identity(int n);
    static LinearFractionalMap linear(const Eigen::MatrixXcd& A);

    // Canonical projective representative: d scaled to exactly 1 when it
    // dominates, otherwise the largest-modulus entry scaled to 1.
    LinearFractionalMap normalized() const;
};

// Works on the closed ball; throws only if the denominator is ~0 at z.
Eigen::VectorXcd lfm_apply(const LinearFractionalMap&, const Eigen::VectorXcd& z);

// The involutive automorphism exchanging 0 and a:
//   phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>),   s_a = sqrt(1-|a|^2),
// P_a the projection onto span(a).  Its linear part is Hermitian.
LinearFractionalMap moebius_involution(const BallPoint& a);

// phi after psi: (phi . psi)(z) = phi(psi(z)); projective matrix product.
LinearFractionalMap lfm_compose(const LinearFractionalMap& phi, const LinearFractionalMap& psi);

// The companion map sigma(z) = (A* z - C) / (-<z,B> + conj(d)) implementing
// the adjoint of the induced composition operator; sigma of a composition
// reverses the order.
LinearFractionalMap adjoint_map(const LinearFractionalMap&);

double projective_distance(const LinearFractionalMap&, const LinearFractionalMap&);
bool projectively_equal(const LinearFractionalMap&, const LinearFractionalMap&,
                        double tol = 1e-9);

struct SelfMapCheck {
    bool ok = false;
    double sup = 0.0;     // max |phi| over the sample set
    double margin = 0.0;  // 1 - sup
};

// Deterministic low-discrepancy boundary samples plus interior rings;
// accepts when sup |phi| <= 1 + 1e-9.
SelfMapCheck is_self_map(const LinearFractionalMap&, int samples = 4096);

// Projective inverse if it exists and is a self-map of the ball.
std::optional<LinearFractionalMap> inverse_map(const LinearFractionalMap&);
bool is_automorphism(const LinearFractionalMap&);

// Interior fixed point via the eigenvectors of the projective matrix,
// dehomogenized; smallest-norm interior candidate wins.  Empty when the map
// has no fixed point in the open ball (e.g. parabolic boundary fixing).
std::optional<BallPoint> fixed_point_in_ball(const LinearFractionalMap&);

// Complex Jacobian d(phi_i)/d(z_j) at z (quotient rule).
Eigen::MatrixXcd jacobian_at(const LinearFractionalMap&, const Eigen::VectorXcd& z);

}  // namespace wco
