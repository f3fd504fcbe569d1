#include "wco/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "wco/sampling.hpp"

namespace wco {

namespace {

cplx kernel_raw(double gamma, const Eigen::VectorXcd& base, const Eigen::VectorXcd& at) {
    return std::pow(cplx(1.0) - hdot(at, base), cplx(-gamma, 0.0));
}

void check_gamma(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
}

}  // namespace

cplx kernel_eval(double gamma, const BallPoint& z, const BallPoint& w) {
    check_gamma(gamma);
    if (z.dim() != w.dim()) throw std::invalid_argument("kernel points dimension mismatch");
    return kernel_raw(gamma, z.v, w.v);
}

KernelVector normalized_kernel(double gamma, const BallPoint& a) {
    check_gamma(gamma);
    KernelVector k;
    k.gamma = gamma;
    k.base = a;
    k.scale = std::pow(1.0 - a.v.squaredNorm(), gamma / 2.0);  // 1/||K_a||
    return k;
}

cplx inner_product(const KernelVector& u, const KernelVector& v) {
    if (u.gamma != v.gamma) throw std::invalid_argument("kernel vectors from different spaces");
    if (u.base.dim() != v.base.dim()) throw std::invalid_argument("kernel base dimension mismatch");
    return u.scale * std::conj(v.scale) * kernel_raw(u.gamma, u.base.v, v.base.v);
}

double check_reciprocal_identity(const LinearFractionalMap& psi, double gamma, int samples) {
    check_gamma(gamma);
    auto inv = inverse_map(psi);
    if (!inv) throw std::domain_error("reciprocal identity requires an automorphism");
    const int n = psi.dim();
    const BallPoint a{lfm_apply(*inv, Eigen::VectorXcd::Zero(n))};
    const BallPoint b{lfm_apply(psi, Eigen::VectorXcd::Zero(n))};
    const KernelVector ka = normalized_kernel(gamma, a);
    const KernelVector kb = normalized_kernel(gamma, b);
    DetRng rng(0x5eedu);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const BallPoint z{rng.ball_point(n, 0.9)};
        const BallPoint pz{lfm_apply(psi, z.v)};
        const cplx val = ka.scale * kernel_raw(gamma, ka.base.v, z.v) * kb.scale *
                         kernel_raw(gamma, kb.base.v, pz.v);
        worst = std::max(worst, std::abs(val - 1.0));
    }
    return worst;
}

TransformResiduals check_kernel_transform(const LinearFractionalMap& phi, double gamma,
                                          const BallPoint& a, int samples) {
    check_gamma(gamma);
    phi.ensure_valid();
    if (a.dim() != phi.dim()) throw std::invalid_argument("base point dimension mismatch");
    const int n = phi.dim();
    const LinearFractionalMap sigma = adjoint_map(phi);
    sigma.ensure_valid();
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n);
    const Eigen::VectorXcd phi0 = lfm_apply(phi, zero), sig0 = lfm_apply(sigma, zero);
    const Eigen::VectorXcd phia = lfm_apply(phi, a.v), siga = lfm_apply(sigma, a.v);

    DetRng rng(0x7ab5u);
    TransformResiduals res;
    for (int i = 0; i < samples; ++i) {
        const Eigen::VectorXcd z = rng.ball_point(n, 0.9);
        {
            const cplx lhs = kernel_raw(gamma, phi0, z) * kernel_raw(gamma, a.v, lfm_apply(sigma, z));
            const cplx rhs = std::conj(kernel_raw(gamma, sig0, a.v)) * kernel_raw(gamma, phia, z);
            res.forward = std::max(res.forward, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
        }
        {
            const cplx lhs = kernel_raw(gamma, sig0, z) * kernel_raw(gamma, a.v, lfm_apply(phi, z));
            const cplx rhs = std::conj(kernel_raw(gamma, phi0, a.v)) * kernel_raw(gamma, siga, z);
            res.companion = std::max(res.companion, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
        }
    }
    return res;
}

double check_two_point_identity(const LinearFractionalMap& psi, int samples) {
    auto inv = inverse_map(psi);
    if (!inv) throw std::domain_error("two-point identity requires an automorphism");
    const int n = psi.dim();
    const Eigen::VectorXcd a = lfm_apply(*inv, Eigen::VectorXcd::Zero(n));
    DetRng rng(0x2a17u);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Eigen::VectorXcd z = rng.ball_point(n, 0.9);
        const Eigen::VectorXcd w = rng.ball_point(n, 0.9);
        const cplx lhs = 1.0 - hdot(lfm_apply(psi, z), lfm_apply(psi, w));
        const cplx rhs = (1.0 - hdot(a, a)) * (1.0 - hdot(z, w)) /
                         ((1.0 - hdot(z, a)) * (1.0 - hdot(a, w)));
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    return worst;
}

}  // namespace wco
