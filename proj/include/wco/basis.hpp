#pragma once
// Graded monomial basis of the kernel space H_gamma on the unit ball of C^n.
//
// The reproducing kernel (1 - <w,z>)^{-gamma} expands as
//     sum_m c_m w^m conj(z)^m,   c_m = Gamma(gamma+|m|) / (Gamma(gamma) m!),
// so the monomials z^m are orthogonal with ||z^m||^2 = 1/c_m.  Everything
// downstream (series arithmetic, Galerkin compression, spectra) is indexed by
// one canonical enumeration of the multi-indices with |m| <= degree_cap:
// sorted by total degree, descending lexicographic within a degree, e.g. for
// n = 2: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...

#include <memory>
#include <stdexcept>
#include <vector>

namespace wco {

using MultiIndex = std::vector<int>;

struct SpaceParams {
    int n = 1;            // complex dimension of the ball
    double gamma = 1.0;   // kernel exponent, strictly positive
    int degree_cap = 15;  // series truncation degree D

    void validate() const;
    bool operator==(const SpaceParams&) const = default;
};

int total_degree(const MultiIndex& m);

std::vector<MultiIndex> enumerate_multiindices(int n, int degree_cap);

// Canonical enumeration plus O(n) combinatorial ranking.  Immutable, shared,
// cached per (n, degree_cap); safe to use concurrently once obtained.
class BasisTable {
  public:
    static std::shared_ptr<const BasisTable> get(int n, int degree_cap);

    int n() const { return n_; }
    int degree_cap() const { return cap_; }
    int size() const { return static_cast<int>(indices_.size()); }

    const MultiIndex& index(int i) const { return indices_[i]; }
    int degree(int i) const { return degree_[i]; }

    // Half-open range [block_begin(d), block_end(d)) of the degree-d indices.
    int block_begin(int d) const { return offsets_[d]; }
    int block_end(int d) const { return offsets_[d + 1]; }

    // Rank of m in the enumeration; throws if outside the table.
    int position(const MultiIndex& m) const;

    // Rank of index(i) + index(j), or -1 when the sum exceeds degree_cap.
    int position_sum(int i, int j) const;

    // First axis with a nonzero exponent and the rank of index(i) - e_axis;
    // parent_axis(0) == -1.  Gives each monomial a one-multiplication parent.
    int parent_axis(int i) const { return parent_axis_[i]; }
    int parent_position(int i) const { return parent_pos_[i]; }

  private:
    BasisTable(int n, int degree_cap);

    int rank_within_degree(const MultiIndex& m, int d) const;
    double choose(int a, int b) const;

    int n_ = 0;
    int cap_ = 0;
    std::vector<MultiIndex> indices_;
    std::vector<int> degree_;
    std::vector<int> offsets_;
    std::vector<int> parent_axis_;
    std::vector<int> parent_pos_;
    std::vector<double> binom_;  // (cap+n+1) x (cap+n+1), row-major
    int binom_dim_ = 0;
};

// c_m, computed by the stepwise recurrence c_{m+e_j} (m_j+1) = c_m (gamma+|m|)
// starting from c_0 = 1.  Exact in floating point for small integer data and
// free of Gamma-function overflow; throws std::range_error if the value
// itself does not fit in a double.
double kernel_coefficient(const MultiIndex& m, double gamma);

// ||z^m||^2 in H_gamma, the reciprocal of kernel_coefficient.
double monomial_norm_sq(const MultiIndex& m, double gamma);

// c_m for every table entry, in table order.
std::vector<double> kernel_coefficients(const BasisTable& table, double gamma);

}  // namespace wco
