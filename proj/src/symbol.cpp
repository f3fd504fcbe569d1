#include "wco/symbol.hpp"

#include <cmath>
#include <stdexcept>

#include "wco/sampling.hpp"

namespace wco {

namespace {

cplx kernel_raw(double gamma, const Eigen::VectorXcd& base, const Eigen::VectorXcd& at) {
    return std::pow(cplx(1.0) - hdot(at, base), cplx(-gamma, 0.0));
}

}  // namespace

WeightSpec WeightSpec::kernel(double gamma, cplx alpha, BallPoint c) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    WeightSpec w;
    w.kind_ = Kind::Kernel;
    w.gamma_ = gamma;
    w.alpha_ = alpha;
    w.c_ = std::move(c);
    return w;
}

WeightSpec WeightSpec::series(TruncatedSeries f) {
    WeightSpec w;
    w.kind_ = Kind::Series;
    w.gamma_ = f.params().gamma;
    w.s_ = std::make_shared<const TruncatedSeries>(std::move(f));
    return w;
}

WeightSpec WeightSpec::product(WeightSpec f, WeightSpec g, LinearFractionalMap inner) {
    if (f.dim() != g.dim() || f.dim() != inner.dim())
        throw std::invalid_argument("product weight dimension mismatch");
    if (f.gamma() != g.gamma())
        throw std::invalid_argument("product weight factors from different spaces");
    inner.ensure_valid();
    WeightSpec w;
    w.kind_ = Kind::Product;
    w.gamma_ = f.gamma();
    w.f_ = std::make_shared<const WeightSpec>(std::move(f));
    w.g_ = std::make_shared<const WeightSpec>(std::move(g));
    w.inner_ = std::make_shared<const LinearFractionalMap>(std::move(inner));
    return w;
}

int WeightSpec::dim() const {
    switch (kind_) {
        case Kind::Kernel: return c_.dim();
        case Kind::Series: return s_->params().n;
        case Kind::Product: return inner_->dim();
    }
    return 0;
}

double WeightSpec::gamma() const { return gamma_; }

cplx WeightSpec::eval(const Eigen::VectorXcd& w) const {
    switch (kind_) {
        case Kind::Kernel: return alpha_ * kernel_raw(gamma_, c_.v, w);
        case Kind::Series: return series_eval(*s_, w);
        case Kind::Product: return f_->eval(w) * g_->eval(lfm_apply(*inner_, w));
    }
    return 0.0;
}

cplx WeightSpec::kernel_scale() const {
    if (kind_ != Kind::Kernel) throw std::logic_error("not a kernel weight");
    return alpha_;
}

const BallPoint& WeightSpec::kernel_base() const {
    if (kind_ != Kind::Kernel) throw std::logic_error("not a kernel weight");
    return c_;
}

const TruncatedSeries& WeightSpec::series_ref() const {
    if (kind_ != Kind::Series) throw std::logic_error("not a series weight");
    return *s_;
}

const WeightSpec& WeightSpec::product_left() const {
    if (kind_ != Kind::Product) throw std::logic_error("not a product weight");
    return *f_;
}

const WeightSpec& WeightSpec::product_right() const {
    if (kind_ != Kind::Product) throw std::logic_error("not a product weight");
    return *g_;
}

const LinearFractionalMap& WeightSpec::product_inner() const {
    if (kind_ != Kind::Product) throw std::logic_error("not a product weight");
    return *inner_;
}

WcoSymbol make_wco(double gamma, WeightSpec weight, LinearFractionalMap map) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    map.ensure_valid();
    if (weight.dim() != map.dim()) throw std::invalid_argument("weight/map dimension mismatch");
    if (std::abs(weight.gamma() - gamma) > 1e-12)
        throw std::invalid_argument("weight belongs to a different kernel exponent");
    WcoSymbol W;
    W.gamma = gamma;
    W.weight = std::move(weight);
    W.map = std::move(map);
    return W;
}

WcoSymbol identity_symbol(int n, double gamma) {
    return make_wco(gamma, WeightSpec::kernel(gamma, 1.0, BallPoint::origin(n)),
                    LinearFractionalMap::identity(n));
}

cplx wco_apply_to_kernel(const WcoSymbol& W, const BallPoint& z, const BallPoint& w) {
    if (z.dim() != W.dim() || w.dim() != W.dim())
        throw std::invalid_argument("kernel point dimension mismatch");
    const Eigen::VectorXcd pw = lfm_apply(W.map, w.v);
    return W.weight.eval(w.v) * kernel_raw(W.gamma, z.v, pw);
}

KernelVector wco_adjoint_on_kernel(const WcoSymbol& W, const BallPoint& z) {
    if (z.dim() != W.dim()) throw std::invalid_argument("kernel point dimension mismatch");
    KernelVector out;
    out.gamma = W.gamma;
    out.base = BallPoint(lfm_apply(W.map, z.v));
    out.scale = std::conj(W.weight.eval(z.v));
    return out;
}

std::optional<std::pair<cplx, BallPoint>> kernel_collapse(const WeightSpec& weight) {
    const int n = weight.dim();
    const double gamma = weight.gamma();
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n);
    const cplx delta = weight.eval(zero);
    if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) return std::nullopt;
    if (std::abs(delta) < 1e-250) {
        // Identically-zero weights collapse to the zero kernel weight; verify.
        DetRng rng(0xc011u);
        for (int i = 0; i < 8; ++i)
            if (std::abs(weight.eval(rng.ball_point(n, 0.5))) > 1e-13) return std::nullopt;
        return std::make_pair(cplx(0.0), BallPoint::origin(n));
    }

    // If the weight is alpha (1 - <w,c>)^{-gamma}, a small probe along each
    // axis recovers conj(c_j) exactly:  (h(r e_j)/h(0))^{-1/gamma} is affine.
    const double r = 0.02;
    Eigen::VectorXcd c(n);
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
        e[j] = r;
        const cplx u = std::pow(weight.eval(e) / delta, cplx(-1.0 / gamma, 0.0));
        c[j] = std::conj((cplx(1.0) - u) / r);
    }
    if (!(c.norm() < 1.0)) return std::nullopt;

    DetRng rng(0xc0deu);
    for (int i = 0; i < 24; ++i) {
        const Eigen::VectorXcd w = rng.ball_point(n, 0.6);
        const cplx have = weight.eval(w);
        const cplx want = delta * kernel_raw(gamma, c, w);
        if (std::abs(have - want) > 1e-11 * (1.0 + std::abs(have) + std::abs(want)))
            return std::nullopt;
    }
    return std::make_pair(delta, BallPoint(c));
}

WcoSymbol wco_product(const WcoSymbol& W1, const WcoSymbol& W2) {
    if (W1.dim() != W2.dim()) throw std::invalid_argument("symbol dimension mismatch");
    if (std::abs(W1.gamma - W2.gamma) > 1e-12)
        throw std::invalid_argument("symbols from different kernel exponents");
    // (W1 W2) h = f (g . phi1) (h . phi2 . phi1)
    LinearFractionalMap map = lfm_compose(W2.map, W1.map);
    WeightSpec weight = WeightSpec::product(W1.weight, W2.weight, W1.map);
    if (auto kc = kernel_collapse(weight))
        weight = WeightSpec::kernel(W1.gamma, kc->first, kc->second);
    return make_wco(W1.gamma, std::move(weight), std::move(map));
}

WcoSymbol wco_adjoint_symbol(const WcoSymbol& W) {
    LinearFractionalMap sigma = adjoint_map(W.map);
    sigma.ensure_valid();
    const Eigen::VectorXcd sig0 = lfm_apply(sigma, Eigen::VectorXcd::Zero(W.dim()));

    std::optional<std::pair<cplx, BallPoint>> kc;
    if (W.weight.kind() == WeightSpec::Kind::Kernel)
        kc = std::make_pair(W.weight.kernel_scale(), W.weight.kernel_base());
    else
        kc = kernel_collapse(W.weight);
    if (!kc)
        throw std::domain_error("adjoint symbol requires a kernel-type weight");
    if ((kc->second.v - sig0).norm() > 1e-9)
        throw std::domain_error(
            "adjoint symbol requires the weight centered at the adjoint map's image of zero");

    const BallPoint phi0{lfm_apply(W.map, Eigen::VectorXcd::Zero(W.dim()))};
    return make_wco(W.gamma, WeightSpec::kernel(W.gamma, std::conj(kc->first), phi0),
                    std::move(sigma));
}

SymbolComparison symbols_equal(const WcoSymbol& W1, const WcoSymbol& W2, int samples,
                               double tol) {
    if (W1.dim() != W2.dim() || std::abs(W1.gamma - W2.gamma) > 1e-12)
        throw std::invalid_argument("symbols not comparable");
    DetRng rng(0xe9a1u);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Eigen::VectorXcd w = rng.ball_point(W1.dim(), 0.7);
        const cplx f1 = W1.weight.eval(w), f2 = W2.weight.eval(w);
        worst = std::max(worst, std::abs(f1 - f2) / (1.0 + std::abs(f1) + std::abs(f2)));
        worst = std::max(worst, (lfm_apply(W1.map, w) - lfm_apply(W2.map, w)).norm());
    }
    return SymbolComparison{worst <= tol, worst};
}

namespace {

// alpha (1 - <phi(z),e>)^{-gamma} as a series: with d scaled to 1 the base
// splits as (t + <z, C - A^H e>) / (1 + <z,C>), t = 1 - <B,e>, and both
// factors have right-half-plane constant terms.
TruncatedSeries kernel_after_map(cplx alpha, const BallPoint& e, double gamma,
                                 const LinearFractionalMap& phi, const SpaceParams& sp) {
    const LinearFractionalMap ph = phi.normalized();
    const int n = sp.n;
    const cplx t = cplx(1.0) - hdot(ph.B, e.v);
    const Eigen::VectorXcd u = ph.C - ph.A.adjoint() * e.v;
    std::vector<cplx> num_lin(n), den_lin(n);
    for (int j = 0; j < n; ++j) {
        num_lin[j] = std::conj(u[j]) / t;
        den_lin[j] = std::conj(ph.C[j]);
    }
    const TruncatedSeries num = TruncatedSeries::affine(sp, 1.0, num_lin);
    const TruncatedSeries den = TruncatedSeries::affine(sp, 1.0, den_lin);
    const cplx scale = alpha * std::pow(t, cplx(-gamma, 0.0));
    return scale * (series_real_power(num, -gamma) * series_real_power(den, gamma));
}

}  // namespace

TruncatedSeries compose_with_lfm(const TruncatedSeries& h, const LinearFractionalMap& phi) {
    const SpaceParams& sp = h.params();
    if (phi.dim() != sp.n) throw std::invalid_argument("map dimension mismatch");
    const LinearFractionalMap ph = phi.normalized();
    ph.ensure_valid();
    const int n = sp.n;

    std::vector<cplx> den_lin(n);
    for (int j = 0; j < n; ++j) den_lin[j] = std::conj(ph.C[j]);
    const TruncatedSeries den_inv =
        series_reciprocal(TruncatedSeries::affine(sp, 1.0, den_lin));
    std::vector<TruncatedSeries> den_inv_pow;
    den_inv_pow.push_back(TruncatedSeries::constant(sp, 1.0));
    for (int k = 1; k <= sp.degree_cap; ++k) den_inv_pow.push_back(den_inv_pow.back() * den_inv);

    std::vector<TruncatedSeries> rows;
    for (int j = 0; j < n; ++j) {
        std::vector<cplx> lin(n);
        for (int k = 0; k < n; ++k) lin[k] = ph.A(j, k);
        rows.push_back(TruncatedSeries::affine(sp, ph.B[j], lin));
    }

    const BasisTable& table = h.table();
    TruncatedSeries out(sp);
    for_each_monomial_product(sp, rows, [&](int idx, const TruncatedSeries& numpow) {
        if (h[idx] == cplx(0.0)) return;
        out = out + h[idx] * (numpow * den_inv_pow[table.degree(idx)]);
    });
    return out;
}

TruncatedSeries weight_as_series(const WeightSpec& weight, const SpaceParams& params) {
    params.validate();
    if (weight.dim() != params.n) throw std::invalid_argument("weight dimension mismatch");
    if (std::abs(weight.gamma() - params.gamma) > 1e-12)
        throw std::invalid_argument("weight belongs to a different kernel exponent");
    switch (weight.kind()) {
        case WeightSpec::Kind::Kernel: {
            const BallPoint& c = weight.kernel_base();
            std::vector<cplx> lin(params.n);
            for (int j = 0; j < params.n; ++j) lin[j] = -std::conj(c.v[j]);
            const TruncatedSeries base = TruncatedSeries::affine(params, 1.0, lin);
            return weight.kernel_scale() * series_real_power(base, -params.gamma);
        }
        case WeightSpec::Kind::Series: {
            const TruncatedSeries& s = weight.series_ref();
            if (s.params() == params) return s;
            if (s.params().n != params.n)
                throw std::invalid_argument("series weight dimension mismatch");
            TruncatedSeries out(params);
            for (int i = 0; i < s.size(); ++i) {
                if (s[i] == cplx(0.0)) continue;
                if (s.table().degree(i) > params.degree_cap) continue;
                out.set_coefficient(s.table().index(i), s[i]);
            }
            return out;
        }
        case WeightSpec::Kind::Product: {
            const WeightSpec& g = weight.product_right();
            const LinearFractionalMap& inner = weight.product_inner();
            TruncatedSeries right =
                (g.kind() == WeightSpec::Kind::Kernel)
                    ? kernel_after_map(g.kernel_scale(), g.kernel_base(), params.gamma, inner,
                                       params)
                    : compose_with_lfm(weight_as_series(g, params), inner);
            return weight_as_series(weight.product_left(), params) * right;
        }
    }
    throw std::logic_error("unreachable weight kind");
}

}  // namespace wco
