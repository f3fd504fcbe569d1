#include "wco/maps.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "wco/sampling.hpp"

namespace wco {

BallPoint::BallPoint(Eigen::VectorXcd coords) : v(std::move(coords)) {
    if (v.size() < 1) throw std::invalid_argument("ball point needs at least one coordinate");
    if (!(v.norm() < 1.0)) throw std::domain_error("point lies outside the open unit ball");
}

BallPoint BallPoint::origin(int n) { return BallPoint(Eigen::VectorXcd::Zero(n)); }

void LinearFractionalMap::ensure_valid() const {
    const int n = dim();
    if (n < 1 || A.rows() != n || A.cols() != n || C.size() != n)
        throw std::invalid_argument("linear fractional map has inconsistent dimensions");
    if (!(C.norm() < std::abs(d)))
        throw std::domain_error("denominator may vanish on the closed ball");
}

Eigen::MatrixXcd LinearFractionalMap::projective_matrix() const {
    const int n = dim();
    Eigen::MatrixXcd M(n + 1, n + 1);
    M.topLeftCorner(n, n) = A;
    M.topRightCorner(n, 1) = B;
    M.bottomLeftCorner(1, n) = C.adjoint();  // row of conj(C_j): <z,C> = C^* z
    M(n, n) = d;
    return M;
}

LinearFractionalMap LinearFractionalMap::from_projective(const Eigen::MatrixXcd& M) {
    if (M.rows() != M.cols() || M.rows() < 2)
        throw std::invalid_argument("projective matrix must be square, size >= 2");
    const int n = static_cast<int>(M.rows()) - 1;
    LinearFractionalMap phi;
    phi.A = M.topLeftCorner(n, n);
    phi.B = M.topRightCorner(n, 1);
    phi.C = M.bottomLeftCorner(1, n).adjoint();
    phi.d = M(n, n);
    return phi;
}

LinearFractionalMap LinearFractionalMap::identity(int n) {
    return linear(Eigen::MatrixXcd::Identity(n, n));
}

LinearFractionalMap LinearFractionalMap::linear(const Eigen::MatrixXcd& A) {
    LinearFractionalMap phi;
    phi.A = A;
    phi.B = Eigen::VectorXcd::Zero(A.rows());
    phi.C = Eigen::VectorXcd::Zero(A.rows());
    phi.d = 1.0;
    return phi;
}

LinearFractionalMap LinearFractionalMap::normalized() const {
    double top = std::max({A.cwiseAbs().maxCoeff(), B.cwiseAbs().maxCoeff(),
                           C.cwiseAbs().maxCoeff(), std::abs(d)});
    if (top == 0.0) throw std::invalid_argument("zero projective data");
    LinearFractionalMap out = *this;
    if (std::abs(d) > 1e-3 * top) {
        const cplx s = 1.0 / d;
        out.A *= s;
        out.B *= s;
        out.C *= std::conj(s);  // denominator <z,C> + d scales by s: C picks up conj(s)
        out.d = 1.0;
    } else {
        // Degenerate-d data: scale the largest entry to exactly 1.
        cplx big = d;
        double best = std::abs(d);
        auto consider = [&](cplx v) {
            if (std::abs(v) > best) { best = std::abs(v); big = v; }
        };
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < A.cols(); ++j) consider(A(i, j));
        for (int i = 0; i < B.size(); ++i) consider(B[i]);
        for (int i = 0; i < C.size(); ++i) consider(C[i]);
        const cplx s = 1.0 / big;
        out.A *= s;
        out.B *= s;
        out.C *= std::conj(s);
        out.d *= s;
    }
    return out;
}

Eigen::VectorXcd lfm_apply(const LinearFractionalMap& phi, const Eigen::VectorXcd& z) {
    if (z.size() != phi.dim()) throw std::invalid_argument("point dimension mismatch");
    const cplx den = hdot(z, phi.C) + phi.d;
    if (std::abs(den) < 1e-14 * (1.0 + phi.B.norm() + phi.A.norm()))
        throw std::domain_error("linear fractional map denominator vanishes at the point");
    return (phi.A * z + phi.B) / den;
}

LinearFractionalMap moebius_involution(const BallPoint& a) {
    const int n = a.dim();
    const double na2 = a.v.squaredNorm();
    const double s = std::sqrt(1.0 - na2);
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(n, n);
    if (na2 > 0.0) P = a.v * a.v.adjoint() / na2;
    const Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(n, n) - P;
    LinearFractionalMap phi;
    phi.A = -(P + s * Q);
    phi.B = a.v;
    phi.C = -a.v;
    phi.d = 1.0;
    phi.ensure_valid();
    return phi;
}

LinearFractionalMap lfm_compose(const LinearFractionalMap& phi, const LinearFractionalMap& psi) {
    if (phi.dim() != psi.dim()) throw std::invalid_argument("composition dimension mismatch");
    LinearFractionalMap out =
        LinearFractionalMap::from_projective(phi.projective_matrix() * psi.projective_matrix())
            .normalized();
    out.ensure_valid();
    return out;
}

LinearFractionalMap adjoint_map(const LinearFractionalMap& phi) {
    LinearFractionalMap sigma;
    sigma.A = phi.A.adjoint();
    sigma.B = -phi.C;
    sigma.C = -phi.B;
    sigma.d = std::conj(phi.d);
    return sigma;
}

double projective_distance(const LinearFractionalMap& phi, const LinearFractionalMap& psi) {
    if (phi.dim() != psi.dim()) throw std::invalid_argument("dimension mismatch");
    const Eigen::MatrixXcd Mp = phi.normalized().projective_matrix();
    const Eigen::MatrixXcd Mq = psi.normalized().projective_matrix();
    const double scale = std::max(Mp.cwiseAbs().maxCoeff(), Mq.cwiseAbs().maxCoeff());
    return (Mp - Mq).cwiseAbs().maxCoeff() / (1.0 + scale);
}

bool projectively_equal(const LinearFractionalMap& phi, const LinearFractionalMap& psi,
                        double tol) {
    return projective_distance(phi, psi) <= tol;
}

SelfMapCheck is_self_map(const LinearFractionalMap& phi, int samples) {
    phi.ensure_valid();
    const int n = phi.dim();
    if (samples < 16) samples = 16;
    double sup = 0.0;
    static const double rings[] = {0.25, 0.5, 0.75, 0.9, 0.99};
    for (int k = 0; k < samples; ++k) {
        const Eigen::VectorXcd w = weyl_sphere_point(n, static_cast<std::uint64_t>(k));
        sup = std::max(sup, lfm_apply(phi, w).norm());
        if (k < samples / 8)
            for (double r : rings) sup = std::max(sup, lfm_apply(phi, (r * w).eval()).norm());
    }
    SelfMapCheck out;
    out.sup = sup;
    out.margin = 1.0 - sup;
    out.ok = sup <= 1.0 + 1e-9;
    return out;
}

std::optional<LinearFractionalMap> inverse_map(const LinearFractionalMap& phi) {
    const Eigen::MatrixXcd M = phi.projective_matrix();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
    if (!lu.isInvertible()) return std::nullopt;
    LinearFractionalMap inv = LinearFractionalMap::from_projective(lu.inverse());
    if (!(inv.C.norm() < std::abs(inv.d))) return std::nullopt;
    inv = inv.normalized();
    if (!is_self_map(inv).ok) return std::nullopt;
    return inv;
}

bool is_automorphism(const LinearFractionalMap& phi) {
    if (!is_self_map(phi).ok) return false;
    auto inv = inverse_map(phi);
    if (!inv) return false;
    const int n = phi.dim();
    return projectively_equal(lfm_compose(phi, *inv), LinearFractionalMap::identity(n)) &&
           projectively_equal(lfm_compose(*inv, phi), LinearFractionalMap::identity(n));
}

std::optional<BallPoint> fixed_point_in_ball(const LinearFractionalMap& phi) {
    phi.ensure_valid();
    const int n = phi.dim();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(phi.projective_matrix());
    if (es.info() != Eigen::Success) throw std::runtime_error("projective eigensolver failed");
    std::optional<BallPoint> best;
    for (int j = 0; j <= n; ++j) {
        Eigen::VectorXcd v = es.eigenvectors().col(j);
        if (std::abs(v[n]) <= 1e-9 * v.norm()) continue;  // fixed point at infinity
        Eigen::VectorXcd p = v.head(n) / v[n];
        // boundary-parabolic maps have a defective projective matrix; its
        // eigenvectors carry O(sqrt(eps)) noise, so points this close to the
        // sphere cannot be certified interior
        if (!(p.norm() < 1.0 - 1e-6)) continue;
        if ((lfm_apply(phi, p) - p).norm() > 1e-7 * (1.0 + p.norm())) continue;
        if (!best || p.norm() < best->norm()) best = BallPoint(p);
    }
    return best;
}

Eigen::MatrixXcd jacobian_at(const LinearFractionalMap& phi, const Eigen::VectorXcd& z) {
    if (z.size() != phi.dim()) throw std::invalid_argument("point dimension mismatch");
    const cplx den = hdot(z, phi.C) + phi.d;
    const Eigen::VectorXcd num = phi.A * z + phi.B;
    // d/dz_j [num_i / den] = A_ij / den - num_i conj(C_j) / den^2
    return phi.A / den - num * phi.C.adjoint() / (den * den);
}

}  // namespace wco
