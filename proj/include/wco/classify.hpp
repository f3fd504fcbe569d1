#pragma once
// Structure detection for weighted composition symbols.  Each classifier is
// matched by a constructor that builds certified instances:
//   unitary           f = lambda k_a, |lambda| = 1, phi an automorphism,
//                     a = phi^{-1}(0)
//   self-adjoint      f = alpha K_c (alpha real), phi = (c + Az)/(1 - <z,c>)
//                     with A Hermitian
//   normal, interior  phi = phi_p . A . phi_p (A a normal contraction),
//   fixed point p     f = f(p) k_p / (k_p . phi)
//   normal LFM        f = alpha K_{sigma(0)}, |phi(0)| = |sigma(0)|,
//                     phi . sigma = sigma . phi
// Verdicts carry witnesses and a certifying residual; rejections carry a
// reason string.

#include <optional>
#include <string>
#include <vector>

#include "wco/symbol.hpp"

namespace wco {

enum class Verdict { Unitary, SelfAdjoint, NormalFixedPoint, NormalLfm, None };

struct ClassifyOptions {
    double tol_symbol = 1e-9;
    int samples = 100;
};

struct Classification {
    Verdict verdict = Verdict::None;
    double residual = 0.0;
    std::string reason;  // filled when verdict == None

    std::optional<cplx> lambda;                 // unitary scalar
    std::optional<BallPoint> a;                 // phi^{-1}(0)
    std::optional<BallPoint> c;                 // self-adjoint center phi(0)
    std::optional<Eigen::MatrixXcd> linear_part;
    std::optional<BallPoint> p;                 // interior fixed point
    std::optional<cplx> alpha;                  // weight value at the pivot
    std::vector<cplx> map_derivative_eigenvalues;  // spectrum of phi'(p)
};

// lambda k_{psi^{-1}(0)} paired with the automorphism psi; |lambda| = 1.
WcoSymbol make_unitary(const LinearFractionalMap& psi, double gamma, cplx lambda);
Classification classify_unitary(const WcoSymbol& W, const ClassifyOptions& opts = {});

struct AdjointInversePair {
    bool ok = false;
    double residual = 0.0;
    std::string reason;
    std::optional<cplx> lambda;
    std::optional<BallPoint> a;
};

// W1 W2* = I  iff  both share one automorphism psi and the weights are
// lambda k_a and (1/conj(lambda)) k_a at a = psi^{-1}(0).
AdjointInversePair check_adjoint_inverse_pair(const WcoSymbol& W1, const WcoSymbol& W2,
                                              const ClassifyOptions& opts = {});

WcoSymbol make_self_adjoint(const BallPoint& c, const Eigen::MatrixXcd& A, double alpha,
                            double gamma);
Classification classify_self_adjoint(const WcoSymbol& W, const ClassifyOptions& opts = {});

// phi_p . A . phi_p with the induced weight; does not require A normal, so
// non-normal counterexamples can be built for testing the classifier.
WcoSymbol make_conjugated_linear(const BallPoint& p, const Eigen::MatrixXcd& A, cplx alpha,
                                 double gamma);
// Same, with A validated as a normal contraction: the certified normal case.
WcoSymbol make_normal(const BallPoint& p, const Eigen::MatrixXcd& A, cplx alpha, double gamma);
Classification classify_normal_fixed_point(const WcoSymbol& W, const ClassifyOptions& opts = {});

Classification classify_normal_lfm(const WcoSymbol& W, const ClassifyOptions& opts = {});

// One-dimensional family ((2-t) z + t) / (-t z + (2+t)), Re t >= 0, weighted
// by K_{sigma(0)}: normal for every such t, self-adjoint exactly for real t,
// fixing the boundary point 1.
WcoSymbol make_parabolic_1d(cplx t, double gamma);

// Coefficient test of the one-dimensional normality conditions
// |b| = |c| and conj(a) b - conj(c) d = b conj(d) - a conj(c) for
// phi(z) = (az + b)/(cz + d); independent route used to cross-check
// classify_normal_lfm.
bool normal_coefficients_1d(const LinearFractionalMap& phi, double tol = 1e-9);

}  // namespace wco
