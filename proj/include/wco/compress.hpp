#pragma once
// Galerkin compression of a weighted composition symbol onto the span of the
// orthonormalized monomials e_m = sqrt(c_m) z^m with |m| <= degree_cap:
//   M(k, m) = <W e_m, e_k> = sqrt(c_m / c_k) * [coeff at k of f * (z^m . phi)].
//
// wco_compress parallelizes over matrix columns (independent work, output
// bit-identical for any schedule); wco_compress_serial is a deliberately
// naive single-threaded reference used to cross-check it.

#include <Eigen/Core>

#include "wco/symbol.hpp"

namespace wco {

Eigen::MatrixXcd wco_compress(const WcoSymbol& W, const SpaceParams& params);
Eigen::MatrixXcd wco_compress_serial(const WcoSymbol& W, const SpaceParams& params);

}  // namespace wco
