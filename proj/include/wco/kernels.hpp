#pragma once
// Reproducing kernels of H_gamma: K_z(w) = (1 - <w,z>)^{-gamma}, the
// normalized kernels k_a = K_a / ||K_a||, inner products of kernel vectors,
// and residual checks for the two-point automorphism identities
//   1 - <psi(z),psi(w)> = (1-|a|^2)(1-<z,w>) / ((1-<z,a>)(1-<a,w>)),
//   k_a(z) k_b(psi(z)) = 1,        a = psi^{-1}(0), b = psi(0),
// and the kernel-transform lemma tying a map to its adjoint companion.

#include "wco/maps.hpp"

namespace wco {

// K^gamma_z evaluated at w.  Principal power; the base 1 - <w,z> has
// positive real part on the ball, so the branch is unambiguous.
cplx kernel_eval(double gamma, const BallPoint& z, const BallPoint& w);

// scale * K^gamma_base as a closed-form vector of H_gamma.
struct KernelVector {
    double gamma = 1.0;
    BallPoint base;
    cplx scale = 1.0;
};

// k_a = (1-|a|^2)^{gamma/2} K_a; unit norm.
KernelVector normalized_kernel(double gamma, const BallPoint& a);

// <u, v> = scale_u conj(scale_v) (1 - <base_v, base_u>)^{-gamma}.
cplx inner_product(const KernelVector& u, const KernelVector& v);

// Max residual |k_a(z) k_b(psi(z)) - 1| over deterministic samples, with
// a = psi^{-1}(0), b = psi(0).  Requires psi to be an automorphism.
double check_reciprocal_identity(const LinearFractionalMap& psi, double gamma, int samples = 100);

// Residuals of the paired transform identities, max over samples z:
//   K_{phi(0)}(z) K_a(sigma(z)) = conj(K_{sigma(0)}(a)) K_{phi(a)}(z)
//   K_{sigma(0)}(z) K_a(phi(z)) = conj(K_{phi(0)}(a))  K_{sigma(a)}(z)
struct TransformResiduals {
    double forward = 0.0;
    double companion = 0.0;
};
TransformResiduals check_kernel_transform(const LinearFractionalMap& phi, double gamma,
                                          const BallPoint& a, int samples = 100);

// Residual of 1 - <psi(z),psi(w)> against the two-point factorization above,
// max relative error over sample pairs.  Requires psi to be an automorphism.
double check_two_point_identity(const LinearFractionalMap& psi, int samples = 100);

}  // namespace wco
