#pragma once
// Deterministic sampling: a seeded SplitMix64 generator with Box-Muller
// normals (bit-stable across platforms, unlike <random> distributions) and an
// additive Weyl sequence for low-discrepancy points on the sphere S^{2n-1}.

#include <cstdint>

#include <Eigen/Core>

#include "wco/series.hpp"

namespace wco {

class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double normal();
    cplx normal_cplx();

    // Uniform in the complex ball of radius rmax.
    Eigen::VectorXcd ball_point(int n, double rmax);
    // Uniform on the unit sphere of C^n.
    Eigen::VectorXcd sphere_point(int n);

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// k-th point of a fixed Weyl/Kronecker sequence mapped to the unit sphere of
// C^n via Box-Muller; no state, identical for all callers.
Eigen::VectorXcd weyl_sphere_point(int n, std::uint64_t k);

}  // namespace wco
