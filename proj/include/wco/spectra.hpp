#pragma once
// Exact eigen-systems for normal composition operators C_A and for normal
// weighted composition symbols with an interior fixed point, plus the
// finite-section cross-check against compression eigenvalues.
//
// For normal A = U diag(lambda) U* the functions
//     f_m(z) = <z,u_1>^{m_1} ... <z,u_n>^{m_n}
// form a complete orthogonal set with C_A f_m = lambda^m f_m.  Conjugating by
// the self-inverse unitary U_p transports this to any symbol with map
// phi = phi_p . A . phi_p and weight alpha k_p / (k_p . phi):  the
// eigenfunctions become g_m = U_p f_m with eigenvalues alpha lambda^m.

#include <string>
#include <vector>

#include "wco/classify.hpp"
#include "wco/compress.hpp"

namespace wco {

struct EigenSystem {
    SpaceParams params;
    std::vector<cplx> linear_eigenvalues;         // lambda_j, diagonal of the Schur form
    cplx scale = 1.0;                             // weight value at the fixed point
    std::vector<cplx> eigenvalues;                // scale * lambda^m, table order
    std::vector<TruncatedSeries> eigenfunctions;  // unit H_gamma norm, table order
};

// Eigen-system of h -> h . A for a normal contraction A; throws
// std::domain_error when A fails either hypothesis.
EigenSystem normal_linear_spectrum(const Eigen::MatrixXcd& A, const SpaceParams& params);

// Eigen-system of a symbol classified NormalFixedPoint; throws
// std::domain_error (with the classifier's reason) on any other verdict.
EigenSystem normal_wco_spectrum(const WcoSymbol& W, const SpaceParams& params,
                                const ClassifyOptions& opts = {});

// Eigenvalues of wco_compress(W, params), deterministically ordered by
// modulus (descending), then argument, then real part.
std::vector<cplx> compression_eigenvalues(const WcoSymbol& W, const SpaceParams& params);

std::vector<cplx> matrix_eigenvalues_sorted(const Eigen::MatrixXcd& M);

// max over a of the distance from a to the set b; 0 for empty a, infinity
// for empty b with nonempty a.
double directed_hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b);

struct SpectrumReport {
    Classification unitary;
    Classification self_adjoint;
    Classification normal_fixed_point;
    Classification normal_lfm;

    bool has_exact_spectrum = false;
    std::vector<cplx> exact_eigenvalues;            // sorted like the compression list
    bool zero_is_limit_point = false;               // some |lambda_j| < 1
    std::vector<cplx> map_derivative_eigenvalues;   // spectrum of phi'(p), if p exists
    std::vector<cplx> compression_eigenvalues;
    double hausdorff_exact_to_compression = 0.0;
    double hausdorff_compression_to_exact = 0.0;
    std::string note;
};

SpectrumReport spectrum_report(const WcoSymbol& W, const SpaceParams& params,
                               const ClassifyOptions& opts = {});

}  // namespace wco
