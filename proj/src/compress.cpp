#include "wco/compress.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wco {

namespace {

struct CompressSetup {
    LinearFractionalMap phi;               // normalized, d == 1
    TruncatedSeries weight;                // f
    std::vector<TruncatedSeries> rows;     // (Az + B)_j
    TruncatedSeries den_inv;               // 1 / (1 + <z,C>)
    std::vector<double> sqrt_c;
    std::shared_ptr<const BasisTable> table;
};

CompressSetup prepare(const WcoSymbol& W, const SpaceParams& sp) {
    sp.validate();
    if (W.dim() != sp.n) throw std::invalid_argument("symbol dimension mismatch");
    if (std::abs(W.gamma - sp.gamma) > 1e-12)
        throw std::invalid_argument("symbol belongs to a different kernel exponent");
    W.map.ensure_valid();

    CompressSetup s;
    s.phi = W.map.normalized();
    s.weight = weight_as_series(W.weight, sp);
    s.table = BasisTable::get(sp.n, sp.degree_cap);

    std::vector<cplx> den_lin(sp.n);
    for (int j = 0; j < sp.n; ++j) den_lin[j] = std::conj(s.phi.C[j]);
    s.den_inv = series_reciprocal(TruncatedSeries::affine(sp, 1.0, den_lin));

    for (int j = 0; j < sp.n; ++j) {
        std::vector<cplx> lin(sp.n);
        for (int k = 0; k < sp.n; ++k) lin[k] = s.phi.A(j, k);
        s.rows.push_back(TruncatedSeries::affine(sp, s.phi.B[j], lin));
    }

    const std::vector<double> c = kernel_coefficients(*s.table, sp.gamma);
    s.sqrt_c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) s.sqrt_c[i] = std::sqrt(c[i]);
    return s;
}

}  // namespace

Eigen::MatrixXcd wco_compress(const WcoSymbol& W, const SpaceParams& sp) {
    const CompressSetup s = prepare(W, sp);
    const BasisTable& table = *s.table;
    const int N = table.size();

    // G[k] = f / (1 + <z,C>)^k, shared across all degree-k columns.
    std::vector<TruncatedSeries> G;
    G.push_back(s.weight);
    for (int k = 1; k <= sp.degree_cap; ++k) G.push_back(G.back() * s.den_inv);

    Eigen::MatrixXcd M(N, N);
#pragma omp parallel for schedule(dynamic)
    for (int col = 0; col < N; ++col) {
        const MultiIndex& m = table.index(col);
        TruncatedSeries t = G[table.degree(col)];
        for (int j = 0; j < sp.n; ++j)
            for (int e = 0; e < m[j]; ++e) t = t * s.rows[j];
        for (int k = 0; k < N; ++k) M(k, col) = s.sqrt_c[col] / s.sqrt_c[k] * t[k];
    }
    return M;
}

Eigen::MatrixXcd wco_compress_serial(const WcoSymbol& W, const SpaceParams& sp) {
    const CompressSetup s = prepare(W, sp);
    const BasisTable& table = *s.table;
    const int N = table.size();

    std::vector<TruncatedSeries> phi_component;
    for (int j = 0; j < sp.n; ++j) phi_component.push_back(s.rows[j] * s.den_inv);

    Eigen::MatrixXcd M(N, N);
    for (int col = 0; col < N; ++col) {
        const MultiIndex& m = table.index(col);
        TruncatedSeries t = TruncatedSeries::constant(sp, 1.0);
        for (int j = 0; j < sp.n; ++j)
            for (int e = 0; e < m[j]; ++e) t = t * phi_component[j];
        t = s.weight * t;
        for (int k = 0; k < N; ++k) M(k, col) = s.sqrt_c[col] / s.sqrt_c[k] * t[k];
    }
    return M;
}

}  // namespace wco
