#include "wco/classify.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "wco/sampling.hpp"

namespace wco {

namespace {

cplx kernel_raw(double gamma, const Eigen::VectorXcd& base, const Eigen::VectorXcd& at) {
    return std::pow(cplx(1.0) - hdot(at, base), cplx(-gamma, 0.0));
}

double operator_norm(const Eigen::MatrixXcd& A) {
    return A.jacobiSvd().singularValues()(0);
}

double commutator_norm(const Eigen::MatrixXcd& A) {
    return (A * A.adjoint() - A.adjoint() * A).norm();  // Frobenius
}

std::vector<cplx> sorted_eigenvalues(const Eigen::MatrixXcd& A) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + A.rows());
    std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) {
        if (std::abs(std::abs(x) - std::abs(y)) > 1e-14) return std::abs(x) > std::abs(y);
        if (std::abs(std::arg(x) - std::arg(y)) > 1e-14) return std::arg(x) < std::arg(y);
        return x.real() > y.real();
    });
    return ev;
}

// Max normalized deviation of the weight from a closed-form model over
// deterministic interior samples.
double weight_residual(const WcoSymbol& W, const std::function<cplx(const Eigen::VectorXcd&)>& model,
                       int samples) {
    DetRng rng(0x93b1u);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Eigen::VectorXcd w = rng.ball_point(W.dim(), 0.7);
        const cplx have = W.weight.eval(w);
        const cplx want = model(w);
        worst = std::max(worst, std::abs(have - want) / (1.0 + std::abs(have) + std::abs(want)));
    }
    return worst;
}

Classification reject(const std::string& reason) {
    Classification cls;
    cls.verdict = Verdict::None;
    cls.reason = reason;
    return cls;
}

}  // namespace

WcoSymbol make_unitary(const LinearFractionalMap& psi, double gamma, cplx lambda) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw std::domain_error("unitary scalar must have modulus one");
    if (!is_automorphism(psi))
        throw std::domain_error("unitary construction requires a ball automorphism");
    const auto inv = inverse_map(psi);
    const BallPoint a{lfm_apply(*inv, Eigen::VectorXcd::Zero(psi.dim()))};
    const KernelVector ka = normalized_kernel(gamma, a);
    return make_wco(gamma, WeightSpec::kernel(gamma, lambda * ka.scale, a), psi);
}

Classification classify_unitary(const WcoSymbol& W, const ClassifyOptions& opts) {
    if (!is_self_map(W.map).ok) return reject("map is not a self-map of the ball");
    if (!is_automorphism(W.map)) return reject("map is not an automorphism");
    const auto inv = inverse_map(W.map);
    const int n = W.dim();
    const BallPoint a{lfm_apply(*inv, Eigen::VectorXcd::Zero(n))};
    const BallPoint b{lfm_apply(W.map, Eigen::VectorXcd::Zero(n))};
    const KernelVector ka = normalized_kernel(W.gamma, a);
    const cplx lambda = W.weight.eval(Eigen::VectorXcd::Zero(n)) / ka.scale;
    if (std::abs(std::abs(lambda) - 1.0) > opts.tol_symbol)
        return reject("weight scale is not unimodular");

    double resid = std::abs(std::abs(lambda) - 1.0);
    resid = std::max(resid, weight_residual(
                                W,
                                [&](const Eigen::VectorXcd& w) {
                                    return lambda * ka.scale * kernel_raw(W.gamma, a.v, w);
                                },
                                opts.samples));
    if (resid > opts.tol_symbol) return reject("weight is not a normalized kernel at the inverse image of zero");

    // Gram preservation through the symbol algebra: W*W acts as the identity
    // on kernel functions.
    const KernelVector kb = normalized_kernel(W.gamma, b);
    const WcoSymbol Wadj =
        make_wco(W.gamma, WeightSpec::kernel(W.gamma, std::conj(lambda) * kb.scale, b), *inv);
    const WcoSymbol P = wco_product(Wadj, W);
    DetRng rng(0x6a3fu);
    for (int i = 0; i < opts.samples / 2; ++i) {
        const BallPoint z{rng.ball_point(n, 0.8)};
        const BallPoint w{rng.ball_point(n, 0.8)};
        const cplx have = wco_apply_to_kernel(P, z, w);
        const cplx want = kernel_eval(W.gamma, z, w);
        resid = std::max(resid, std::abs(have - want) / (1.0 + std::abs(want)));
    }
    if (resid > opts.tol_symbol) return reject("symbol does not preserve kernel Gram data");

    Classification cls;
    cls.verdict = Verdict::Unitary;
    cls.residual = resid;
    cls.lambda = lambda;
    cls.a = a;
    return cls;
}

AdjointInversePair check_adjoint_inverse_pair(const WcoSymbol& W1, const WcoSymbol& W2,
                                              const ClassifyOptions& opts) {
    AdjointInversePair out;
    if (W1.dim() != W2.dim() || std::abs(W1.gamma - W2.gamma) > 1e-12) {
        out.reason = "symbols not comparable";
        return out;
    }
    if (!projectively_equal(W1.map, W2.map, opts.tol_symbol)) {
        out.reason = "maps differ";
        return out;
    }
    if (!is_automorphism(W1.map)) {
        out.reason = "shared map is not an automorphism";
        return out;
    }
    const int n = W1.dim();
    const auto inv = inverse_map(W1.map);
    const BallPoint a{lfm_apply(*inv, Eigen::VectorXcd::Zero(n))};
    const BallPoint b{lfm_apply(W1.map, Eigen::VectorXcd::Zero(n))};
    const KernelVector ka = normalized_kernel(W1.gamma, a);
    const cplx lambda = W1.weight.eval(Eigen::VectorXcd::Zero(n)) / ka.scale;
    if (std::abs(lambda) < 1e-13) {
        out.reason = "first weight vanishes at zero";
        return out;
    }

    double resid = weight_residual(
        W1, [&](const Eigen::VectorXcd& w) { return lambda * ka.scale * kernel_raw(W1.gamma, a.v, w); },
        opts.samples);
    resid = std::max(resid, weight_residual(
                                W2,
                                [&](const Eigen::VectorXcd& w) {
                                    return ka.scale * kernel_raw(W1.gamma, a.v, w) /
                                           std::conj(lambda);
                                },
                                opts.samples));
    if (resid > opts.tol_symbol) {
        out.residual = resid;
        out.reason = "weights are not the matched normalized-kernel pair";
        return out;
    }

    // Numeric certificate: W1 (claimed adjoint of W2) is the identity symbol.
    const KernelVector kb = normalized_kernel(W1.gamma, b);
    const WcoSymbol W2adj =
        make_wco(W1.gamma, WeightSpec::kernel(W1.gamma, kb.scale / lambda, b), *inv);
    const SymbolComparison cmp =
        symbols_equal(wco_product(W1, W2adj), identity_symbol(n, W1.gamma), opts.samples,
                      opts.tol_symbol);
    out.residual = std::max(resid, cmp.residual);
    out.ok = cmp.equal && out.residual <= opts.tol_symbol;
    if (!out.ok) {
        out.reason = "product with the claimed adjoint is not the identity";
        return out;
    }
    out.lambda = lambda;
    out.a = a;
    return out;
}

WcoSymbol make_self_adjoint(const BallPoint& c, const Eigen::MatrixXcd& A, double alpha,
                            double gamma) {
    const int n = c.dim();
    if (A.rows() != n || A.cols() != n) throw std::invalid_argument("linear part dimension mismatch");
    if ((A - A.adjoint()).norm() > 1e-10 * (1.0 + A.norm()))
        throw std::domain_error("linear part must be Hermitian");
    LinearFractionalMap phi;
    phi.A = A;
    phi.B = c.v;
    phi.C = -c.v;
    phi.d = 1.0;
    phi.ensure_valid();
    if (!is_self_map(phi).ok) throw std::domain_error("map is not a self-map of the ball");
    return make_wco(gamma, WeightSpec::kernel(gamma, alpha, c), phi);
}

Classification classify_self_adjoint(const WcoSymbol& W, const ClassifyOptions& opts) {
    if (!is_self_map(W.map).ok) return reject("map is not a self-map of the ball");
    const LinearFractionalMap nm = W.map.normalized();  // d == 1
    const double scale = 1.0 + nm.A.norm() + nm.B.norm();
    if ((nm.C + nm.B).norm() > opts.tol_symbol * scale)
        return reject("denominator is not 1 - <z, phi(0)>");
    if ((nm.A - nm.A.adjoint()).norm() > opts.tol_symbol * scale)
        return reject("linear part is not Hermitian");
    if (!(nm.B.norm() < 1.0)) return reject("phi(0) lies outside the ball");
    const BallPoint c{nm.B};

    const cplx alpha = W.weight.eval(Eigen::VectorXcd::Zero(W.dim()));
    if (std::abs(alpha.imag()) > opts.tol_symbol * (1.0 + std::abs(alpha)))
        return reject("weight scale is not real");
    double resid = std::abs(alpha.imag()) / (1.0 + std::abs(alpha));
    resid = std::max(resid, weight_residual(
                                W,
                                [&](const Eigen::VectorXcd& w) {
                                    return alpha * kernel_raw(W.gamma, c.v, w);
                                },
                                opts.samples));
    resid = std::max(resid, (nm.C + nm.B).norm() / scale);
    resid = std::max(resid, (nm.A - nm.A.adjoint()).norm() / scale);
    if (resid > opts.tol_symbol) return reject("weight is not a real kernel multiple at phi(0)");

    // Certify by the adjoint symbol: a kernel-weight twin of W has an exact
    // adjoint, which must agree with W itself.
    const WcoSymbol twin =
        make_wco(W.gamma, WeightSpec::kernel(W.gamma, alpha.real(), c), nm);
    const SymbolComparison cmp =
        symbols_equal(wco_adjoint_symbol(twin), W, opts.samples, opts.tol_symbol);
    resid = std::max(resid, cmp.residual);
    if (resid > opts.tol_symbol) return reject("symbol differs from its adjoint");

    Classification cls;
    cls.verdict = Verdict::SelfAdjoint;
    cls.residual = resid;
    cls.c = c;
    cls.linear_part = nm.A;
    cls.alpha = alpha;
    return cls;
}

WcoSymbol make_conjugated_linear(const BallPoint& p, const Eigen::MatrixXcd& A, cplx alpha,
                                 double gamma) {
    const int n = p.dim();
    if (A.rows() != n || A.cols() != n) throw std::invalid_argument("linear part dimension mismatch");
    const LinearFractionalMap phi_p = moebius_involution(p);
    const LinearFractionalMap phi =
        lfm_compose(phi_p, lfm_compose(LinearFractionalMap::linear(A), phi_p));
    const LinearFractionalMap sigma = adjoint_map(phi);
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n);
    const Eigen::VectorXcd phi0 = lfm_apply(phi, zero);
    const Eigen::VectorXcd sig0 = lfm_apply(sigma, zero);
    // f = alpha k_p / (k_p . phi) collapses to  alpha / conj(K_{phi(0)}(p)) * K_{sigma(0)}.
    const cplx scale = alpha / std::conj(kernel_raw(gamma, phi0, p.v));
    return make_wco(gamma, WeightSpec::kernel(gamma, scale, BallPoint(sig0)), phi);
}

WcoSymbol make_normal(const BallPoint& p, const Eigen::MatrixXcd& A, cplx alpha, double gamma) {
    if (std::abs(alpha) == 0.0) throw std::domain_error("weight scale must be nonzero");
    if (commutator_norm(A) > 1e-10 * (1.0 + A.squaredNorm()))
        throw std::domain_error("linear part must be normal");
    if (operator_norm(A) > 1.0 + 1e-12)
        throw std::domain_error("linear part must be a contraction");
    return make_conjugated_linear(p, A, alpha, gamma);
}

Classification classify_normal_fixed_point(const WcoSymbol& W, const ClassifyOptions& opts) {
    if (!is_self_map(W.map).ok) return reject("map is not a self-map of the ball");
    const auto fp = fixed_point_in_ball(W.map);
    if (!fp) return reject("no interior fixed point");
    const BallPoint p = *fp;
    const int n = W.dim();

    const LinearFractionalMap phi_p = moebius_involution(p);
    const LinearFractionalMap conj_map =
        lfm_compose(phi_p, lfm_compose(W.map, phi_p)).normalized();
    const double scale = 1.0 + conj_map.A.norm();
    Eigen::MatrixXcd A = conj_map.A;
    if (conj_map.B.norm() > opts.tol_symbol * scale)
        return reject("conjugated map is not linear");
    if (A.norm() <= opts.tol_symbol * scale) {
        A.setZero();  // the zero map carries arbitrary denominator data
    } else if (conj_map.C.norm() > opts.tol_symbol * scale) {
        return reject("conjugated map is not linear");
    }
    if (commutator_norm(A) > std::max(opts.tol_symbol, 1e-10) * (1.0 + A.squaredNorm()))
        return reject("linear part of the conjugated map is not normal");
    if (operator_norm(A) > 1.0 + 1e-9)
        return reject("linear part of the conjugated map is not a contraction");

    const cplx alpha = W.weight.eval(p.v);
    double wresid = weight_residual(
        W,
        [&](const Eigen::VectorXcd& w) {
            // alpha k_p(w) / k_p(phi(w)); the normalizing constants cancel.
            const cplx top = kernel_raw(W.gamma, p.v, w);
            const cplx bot = kernel_raw(W.gamma, p.v, lfm_apply(W.map, w));
            return alpha * top / bot;
        },
        opts.samples);
    if (std::abs(alpha) < 1e-13) {
        DetRng rng(0x11adu);
        double sup = 0.0;
        for (int i = 0; i < 16; ++i)
            sup = std::max(sup, std::abs(W.weight.eval(rng.ball_point(n, 0.7))));
        if (sup < 1e-13) return reject("weight vanishes identically");
        return reject("weight vanishes at the fixed point");
    }
    if (wresid > opts.tol_symbol) return reject("weight does not match the fixed-point form");

    Classification cls;
    cls.verdict = Verdict::NormalFixedPoint;
    cls.residual = wresid;
    cls.p = p;
    cls.linear_part = A;
    cls.alpha = alpha;
    cls.map_derivative_eigenvalues = sorted_eigenvalues(jacobian_at(W.map, p.v));
    return cls;
}

Classification classify_normal_lfm(const WcoSymbol& W, const ClassifyOptions& opts) {
    if (!is_self_map(W.map).ok) return reject("map is not a self-map of the ball");
    const int n = W.dim();
    const LinearFractionalMap sigma = adjoint_map(W.map);
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n);
    const Eigen::VectorXcd sig0 = lfm_apply(sigma, zero);
    const Eigen::VectorXcd phi0 = lfm_apply(W.map, zero);

    const cplx alpha = W.weight.eval(zero);
    if (std::abs(alpha) < 1e-13) return reject("weight vanishes at the origin");
    double resid = weight_residual(
        W, [&](const Eigen::VectorXcd& w) { return alpha * kernel_raw(W.gamma, sig0, w); },
        opts.samples);
    if (resid > opts.tol_symbol) return reject("weight not K_{sigma(0)}-type");

    const double modulus_gap = std::abs(phi0.norm() - sig0.norm());
    const double commute_gap =
        projective_distance(lfm_compose(W.map, sigma), lfm_compose(sigma, W.map));
    resid = std::max({resid, modulus_gap, commute_gap});
    if (modulus_gap > opts.tol_symbol) return reject("|phi(0)| and |sigma(0)| differ");
    if (commute_gap > opts.tol_symbol) return reject("map does not commute with its adjoint map");

    Classification cls;
    cls.verdict = Verdict::NormalLfm;
    cls.residual = resid;
    cls.alpha = alpha;
    return cls;
}

WcoSymbol make_parabolic_1d(cplx t, double gamma) {
    if (t.real() < -1e-12) throw std::domain_error("parabolic parameter needs Re t >= 0");
    LinearFractionalMap phi;
    phi.A = Eigen::MatrixXcd::Constant(1, 1, 2.0 - t);
    phi.B = Eigen::VectorXcd::Constant(1, t);
    phi.C = Eigen::VectorXcd::Constant(1, -std::conj(t));  // denominator -t z + (2+t)
    phi.d = 2.0 + t;
    phi.ensure_valid();
    const LinearFractionalMap sigma = adjoint_map(phi);
    const BallPoint sig0{lfm_apply(sigma, Eigen::VectorXcd::Zero(1))};
    return make_wco(gamma, WeightSpec::kernel(gamma, 1.0, sig0), phi);
}

bool normal_coefficients_1d(const LinearFractionalMap& phi, double tol) {
    if (phi.dim() != 1) throw std::invalid_argument("coefficient test is one-dimensional");
    const LinearFractionalMap nm = phi.normalized();
    const cplx a = nm.A(0, 0), b = nm.B(0), c = std::conj(nm.C(0)), d = nm.d;
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    const double t = tol * (1.0 + scale * scale);
    return std::abs(std::abs(b) - std::abs(c)) <= tol * (1.0 + scale) &&
           std::abs((std::conj(a) * b - std::conj(c) * d) -
                    (b * std::conj(d) - a * std::conj(c))) <= t;
}

}  // namespace wco
