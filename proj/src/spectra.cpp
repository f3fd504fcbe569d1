#include "wco/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace wco {

namespace {

// Modulus descending, then argument ascending, then real part descending:
// a total order so reports are reproducible across eigensolver backends.
bool eig_less(const cplx& x, const cplx& y) {
    if (std::abs(std::abs(x) - std::abs(y)) > 1e-14) return std::abs(x) > std::abs(y);
    if (std::abs(std::arg(x) - std::arg(y)) > 1e-14) return std::arg(x) < std::arg(y);
    return x.real() > y.real();
}

}  // namespace

std::vector<cplx> matrix_eigenvalues_sorted(const Eigen::MatrixXcd& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + M.rows());
    std::sort(ev.begin(), ev.end(), eig_less);
    return ev;
}

EigenSystem normal_linear_spectrum(const Eigen::MatrixXcd& A, const SpaceParams& params) {
    params.validate();
    const int n = params.n;
    if (A.rows() != n || A.cols() != n) throw std::invalid_argument("matrix dimension mismatch");
    if ((A * A.adjoint() - A.adjoint() * A).norm() > 1e-10 * (1.0 + A.squaredNorm()))
        throw std::domain_error("matrix is not normal");
    if (A.jacobiSvd().singularValues()(0) > 1.0 + 1e-12)
        throw std::domain_error("matrix is not a contraction");

    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(A, true);
    if (schur.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    const Eigen::MatrixXcd U = schur.matrixU();  // normal input: T is diagonal,
                                                 // columns of U are eigenvectors

    EigenSystem sys;
    sys.params = params;
    for (int j = 0; j < n; ++j) sys.linear_eigenvalues.push_back(schur.matrixT()(j, j));

    std::vector<TruncatedSeries> rows;
    rows.reserve(n);
    for (int j = 0; j < n; ++j) {
        std::vector<cplx> lin(n);
        for (int i = 0; i < n; ++i) lin[i] = std::conj(U(i, j));  // <z, u_j>
        rows.push_back(TruncatedSeries::affine(params, 0.0, lin));
    }

    const auto table = BasisTable::get(n, params.degree_cap);
    const int N = table->size();
    sys.eigenvalues.assign(N, cplx(0.0));
    sys.eigenfunctions.assign(N, TruncatedSeries(params));
    for_each_monomial_product(params, rows, [&](int pos, const TruncatedSeries& prod) {
        const MultiIndex& m = table->index(pos);
        cplx lam = 1.0;
        for (int j = 0; j < n; ++j)
            for (int e = 0; e < m[j]; ++e) lam *= sys.linear_eigenvalues[j];
        sys.eigenvalues[pos] = lam;
        sys.eigenfunctions[pos] = cplx(1.0 / series_norm_hgamma(prod)) * prod;
    });
    return sys;
}

EigenSystem normal_wco_spectrum(const WcoSymbol& W, const SpaceParams& params,
                                const ClassifyOptions& opts) {
    params.validate();
    if (W.dim() != params.n) throw std::invalid_argument("dimension mismatch");
    if (std::abs(W.gamma - params.gamma) > 1e-12) throw std::invalid_argument("gamma mismatch");
    const Classification cls = classify_normal_fixed_point(W, opts);
    if (cls.verdict != Verdict::NormalFixedPoint)
        throw std::domain_error("not a normal symbol with an interior fixed point: " +
                                cls.reason);

    const BallPoint p = *cls.p;
    EigenSystem sys = normal_linear_spectrum(*cls.linear_part, params);
    sys.scale = *cls.alpha;

    // g_m = k_p * (f_m . phi_p): unitary image of f_m, eigenvalue scale*lam^m.
    const LinearFractionalMap phi_p = moebius_involution(p);
    const KernelVector kp = normalized_kernel(params.gamma, p);
    const TruncatedSeries kp_series =
        weight_as_series(WeightSpec::kernel(params.gamma, kp.scale, p), params);
    for (std::size_t i = 0; i < sys.eigenfunctions.size(); ++i) {
        TruncatedSeries g = kp_series * compose_with_lfm(sys.eigenfunctions[i], phi_p);
        const double nrm = series_norm_hgamma(g);
        if (nrm > 1e-300) g = cplx(1.0 / nrm) * g;
        sys.eigenfunctions[i] = g;
        sys.eigenvalues[i] *= sys.scale;
    }
    return sys;
}

std::vector<cplx> compression_eigenvalues(const WcoSymbol& W, const SpaceParams& params) {
    return matrix_eigenvalues_sorted(wco_compress(W, params));
}

double directed_hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.empty()) return 0.0;
    if (b.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const cplx& x : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const cplx& y : b) best = std::min(best, std::abs(x - y));
        worst = std::max(worst, best);
    }
    return worst;
}

SpectrumReport spectrum_report(const WcoSymbol& W, const SpaceParams& params,
                               const ClassifyOptions& opts) {
    SpectrumReport rep;
    rep.unitary = classify_unitary(W, opts);
    rep.self_adjoint = classify_self_adjoint(W, opts);
    rep.normal_fixed_point = classify_normal_fixed_point(W, opts);
    rep.normal_lfm = classify_normal_lfm(W, opts);

    if (const auto fp = fixed_point_in_ball(W.map))
        rep.map_derivative_eigenvalues = matrix_eigenvalues_sorted(jacobian_at(W.map, fp->v));

    rep.compression_eigenvalues = compression_eigenvalues(W, params);

    if (rep.normal_fixed_point.verdict == Verdict::NormalFixedPoint) {
        try {
            EigenSystem sys = normal_wco_spectrum(W, params, opts);
            rep.exact_eigenvalues = sys.eigenvalues;
            std::sort(rep.exact_eigenvalues.begin(), rep.exact_eigenvalues.end(), eig_less);
            rep.has_exact_spectrum = true;
            for (const cplx& l : sys.linear_eigenvalues)
                if (std::abs(l) < 1.0 - 1e-12) rep.zero_is_limit_point = true;
            rep.hausdorff_exact_to_compression =
                directed_hausdorff(rep.exact_eigenvalues, rep.compression_eigenvalues);
            rep.hausdorff_compression_to_exact =
                directed_hausdorff(rep.compression_eigenvalues, rep.exact_eigenvalues);
            rep.note = "exact eigenvalues from the interior-fixed-point normal form";
        } catch (const std::exception& e) {
            rep.note = std::string("no exact spectrum available (") + e.what() + ")";
        }
    } else {
        rep.note = "no exact spectrum available";
    }
    return rep;
}

}  // namespace wco
