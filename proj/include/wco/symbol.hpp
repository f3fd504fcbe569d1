#pragma once
// Weighted composition symbols on H_gamma:  W_{f,phi} h = f * (h . phi).
// The closed-form core identities:
//   (W K_z)(w)   = f(w) K_z(phi(w))
//   W* K_z       = conj(f(z)) K_{phi(z)}
//   W1 W2        = W_{f * (g . phi1), phi2 . phi1}
// and for kernel weights centered at sigma(0) (sigma the adjoint companion
// map) the adjoint is again such a symbol:  (alpha W_{K_{sigma(0)},phi})* =
// conj(alpha) W_{K_{phi(0)},sigma}.

#include <memory>
#include <optional>

#include "wco/kernels.hpp"

namespace wco {

// A weight is one of
//   Kernel:  alpha * K^gamma_c                  (closed form, exact)
//   Series:  an explicit truncated expansion    (eval truncation-limited)
//   Product: w |-> f(w) * g(inner(w))           (lazy, exact over its leaves)
// Products arise from symbol multiplication when the kernel-collapse probe
// fails; coefficient-level consumers materialize them via weight_as_series.
class WeightSpec {
  public:
    enum class Kind { Kernel, Series, Product };

    static WeightSpec kernel(double gamma, cplx alpha, BallPoint c);
    static WeightSpec series(TruncatedSeries f);
    static WeightSpec product(WeightSpec f, WeightSpec g, LinearFractionalMap inner);

    Kind kind() const { return kind_; }
    int dim() const;
    double gamma() const;

    cplx eval(const Eigen::VectorXcd& w) const;

    cplx kernel_scale() const;
    const BallPoint& kernel_base() const;
    const TruncatedSeries& series_ref() const;
    const WeightSpec& product_left() const;
    const WeightSpec& product_right() const;
    const LinearFractionalMap& product_inner() const;

  private:
    WeightSpec() = default;

    Kind kind_ = Kind::Kernel;
    double gamma_ = 1.0;
    cplx alpha_ = 1.0;
    BallPoint c_;
    std::shared_ptr<const TruncatedSeries> s_;
    std::shared_ptr<const WeightSpec> f_, g_;
    std::shared_ptr<const LinearFractionalMap> inner_;
};

struct WcoSymbol {
    double gamma = 1.0;
    WeightSpec weight = WeightSpec::kernel(1.0, 1.0, BallPoint::origin(1));
    LinearFractionalMap map = LinearFractionalMap::identity(1);

    int dim() const { return map.dim(); }
};

// Validates dimensions, gamma consistency, and the denominator condition.
WcoSymbol make_wco(double gamma, WeightSpec weight, LinearFractionalMap map);
WcoSymbol identity_symbol(int n, double gamma);

// (W K_z)(w) = f(w) K_z(phi(w)).
cplx wco_apply_to_kernel(const WcoSymbol& W, const BallPoint& z, const BallPoint& w);

// W* K_z = conj(f(z)) K_{phi(z)} as a closed-form kernel vector.
KernelVector wco_adjoint_on_kernel(const WcoSymbol& W, const BallPoint& z);

// Operator product W1 W2; the weight collapses to a kernel weight when the
// probe certifies it, otherwise stays an exact lazy product.
WcoSymbol wco_product(const WcoSymbol& W1, const WcoSymbol& W2);

// Adjoint symbol; requires the weight to be kernel type centered at
// sigma(0) (within 1e-9), else throws std::domain_error.
WcoSymbol wco_adjoint_symbol(const WcoSymbol& W);

struct SymbolComparison {
    bool equal = false;
    double residual = 0.0;
};

// Pointwise agreement of weights and maps on deterministic interior samples.
SymbolComparison symbols_equal(const WcoSymbol& W1, const WcoSymbol& W2, int samples = 100,
                               double tol = 1e-9);

// Materializes any weight as a truncated expansion.  Kernel weights go
// through the binomial power series of (1 - <z,c>)^{-gamma}; product weights
// compose their right factor with the inner map first.
TruncatedSeries weight_as_series(const WeightSpec& weight, const SpaceParams& params);

// Taylor coefficients of h(phi(z)) through the cap: each monomial h_m z^m
// contributes h_m (Az+B)^m (<z,C>+d)^{-|m|}.
TruncatedSeries compose_with_lfm(const TruncatedSeries& h, const LinearFractionalMap& phi);

// Probe-and-verify: does the weight equal alpha * K^gamma_c pointwise?
std::optional<std::pair<cplx, BallPoint>> kernel_collapse(const WeightSpec& weight);

}  // namespace wco
