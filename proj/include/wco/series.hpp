#pragma once
// Truncated multivariate power series over the canonical graded basis.
// Dense coefficient storage in table order; all operations truncate at the
// shared degree cap, so the ring is C[z]/(degree > D).

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "wco/basis.hpp"

namespace wco {

using cplx = std::complex<double>;

class TruncatedSeries {
  public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(const SpaceParams& params);  // zero series

    static TruncatedSeries constant(const SpaceParams&, cplx value);
    static TruncatedSeries coordinate(const SpaceParams&, int axis);
    // c0 + sum_j linear[j] z_j
    static TruncatedSeries affine(const SpaceParams&, cplx c0, const std::vector<cplx>& linear);
    static TruncatedSeries monomial(const SpaceParams&, const MultiIndex&, cplx coeff);

    const SpaceParams& params() const { return params_; }
    const BasisTable& table() const { return *table_; }
    int size() const { return static_cast<int>(coef_.size()); }

    cplx operator[](int i) const { return coef_[i]; }
    cplx& operator[](int i) { return coef_[i]; }
    cplx coefficient(const MultiIndex& m) const { return coef_[table_->position(m)]; }
    void set_coefficient(const MultiIndex& m, cplx v) { coef_[table_->position(m)] = v; }

    double max_abs() const;

  private:
    SpaceParams params_;
    std::shared_ptr<const BasisTable> table_;
    std::vector<cplx> coef_;
};

TruncatedSeries operator+(const TruncatedSeries&, const TruncatedSeries&);
TruncatedSeries operator-(const TruncatedSeries&, const TruncatedSeries&);
TruncatedSeries operator-(const TruncatedSeries&);
TruncatedSeries operator*(const TruncatedSeries&, const TruncatedSeries&);  // Cauchy product
TruncatedSeries operator*(cplx, const TruncatedSeries&);

// 1/a by degree-wise back-substitution; requires |a(0)| > constant_tol.
TruncatedSeries series_reciprocal(const TruncatedSeries& a, double constant_tol = 1e-12);

// a^exponent via the Euler-operator recurrence a * theta(b) = exponent * theta(a) * b.
// The constant term must be positive real (any nonzero complex is accepted
// when the exponent is an integer); it is factored out before the recurrence.
TruncatedSeries series_real_power(const TruncatedSeries& a, double exponent,
                                  double constant_tol = 1e-12);

// Value at z, every monomial obtained from its parent by one multiplication.
cplx series_eval(const TruncatedSeries&, const Eigen::VectorXcd& z);

// Taylor coefficients of h(Az + b) through the degree cap.
TruncatedSeries series_compose_affine(const TruncatedSeries& h, const Eigen::MatrixXcd& A,
                                      const Eigen::VectorXcd& b);

// Visits (position, series of prod_j rows[j]^{m_j}) for every |m| <= cap in
// depth-first order over the monomial tree (children append on trailing
// axes), keeping only O(D) live series.  rows.size() must equal n.
void for_each_monomial_product(const SpaceParams&, const std::vector<TruncatedSeries>& rows,
                               const std::function<void(int, const TruncatedSeries&)>& visit);

// H_gamma inner product of truncated elements: sum_m a_m conj(b_m) / c_m.
cplx series_inner_hgamma(const TruncatedSeries& a, const TruncatedSeries& b);
double series_norm_hgamma(const TruncatedSeries& a);

}  // namespace wco
