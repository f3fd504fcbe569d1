#include "wco/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace wco {

std::uint64_t DetRng::next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double DetRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double DetRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

cplx DetRng::normal_cplx() {
    const double re = normal();
    return cplx(re, normal());
}

Eigen::VectorXcd DetRng::sphere_point(int n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    Eigen::VectorXcd v(n);
    double nrm2 = 0.0;
    do {
        for (int j = 0; j < n; ++j) v[j] = normal_cplx();
        nrm2 = v.squaredNorm();
    } while (nrm2 < 1e-200);
    return v / std::sqrt(nrm2);
}

Eigen::VectorXcd DetRng::ball_point(int n, double rmax) {
    // Radius density r^{2n-1}: uniform with respect to volume.
    const double r = rmax * std::pow(uniform(), 1.0 / (2.0 * n));
    return r * sphere_point(n);
}

Eigen::VectorXcd weyl_sphere_point(int n, std::uint64_t k) {
    static const double primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    if (n < 1 || 2 * n > static_cast<int>(sizeof(primes) / sizeof(primes[0])))
        throw std::invalid_argument("unsupported dimension for the Weyl sequence");
    Eigen::VectorXcd v(n);
    double nrm2 = 0.0;
    for (int j = 0; j < n; ++j) {
        auto coord = [&](int axis) {
            double alpha = std::sqrt(primes[axis]);
            alpha -= std::floor(alpha);
            double u = 0.5 + (static_cast<double>(k) + 1.0) * alpha;
            return u - std::floor(u);
        };
        double u1 = coord(2 * j), u2 = coord(2 * j + 1);
        if (u1 < 1e-12) u1 = 1e-12;
        const double r = std::sqrt(-2.0 * std::log(u1));
        v[j] = cplx(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
        nrm2 += std::norm(v[j]);
    }
    if (nrm2 < 1e-200) return weyl_sphere_point(n, k + 7919);
    return v / std::sqrt(nrm2);
}

}  // namespace wco
