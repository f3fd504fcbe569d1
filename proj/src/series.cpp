#include "wco/series.hpp"

#include <cmath>
#include <stdexcept>

namespace wco {

namespace {

void check_same(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (!(a.params() == b.params()))
        throw std::invalid_argument("series live in different truncated spaces");
}

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

}  // namespace

TruncatedSeries::TruncatedSeries(const SpaceParams& params) : params_(params) {
    params.validate();
    table_ = BasisTable::get(params.n, params.degree_cap);
    coef_.assign(table_->size(), cplx(0.0));
}

TruncatedSeries TruncatedSeries::constant(const SpaceParams& p, cplx value) {
    TruncatedSeries s(p);
    s.coef_[0] = value;
    return s;
}

TruncatedSeries TruncatedSeries::coordinate(const SpaceParams& p, int axis) {
    if (axis < 0 || axis >= p.n) throw std::invalid_argument("coordinate axis out of range");
    TruncatedSeries s(p);
    if (p.degree_cap >= 1) {
        MultiIndex m(p.n, 0);
        m[axis] = 1;
        s.set_coefficient(m, 1.0);
    }
    return s;
}

TruncatedSeries TruncatedSeries::affine(const SpaceParams& p, cplx c0,
                                        const std::vector<cplx>& linear) {
    if (static_cast<int>(linear.size()) != p.n)
        throw std::invalid_argument("affine coefficient count must equal dimension");
    TruncatedSeries s(p);
    s.coef_[0] = c0;
    if (p.degree_cap >= 1)
        for (int j = 0; j < p.n; ++j) s.coef_[s.table_->block_begin(1) + j] = linear[j];
    return s;
}

TruncatedSeries TruncatedSeries::monomial(const SpaceParams& p, const MultiIndex& m, cplx coeff) {
    TruncatedSeries s(p);
    s.set_coefficient(m, coeff);
    return s;
}

double TruncatedSeries::max_abs() const {
    double v = 0.0;
    for (const cplx& c : coef_) v = std::max(v, std::abs(c));
    return v;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_same(a, b);
    TruncatedSeries out = a;
    for (int i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_same(a, b);
    TruncatedSeries out = a;
    for (int i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a) {
    TruncatedSeries out = a;
    for (int i = 0; i < out.size(); ++i) out[i] = -out[i];
    return out;
}

TruncatedSeries operator*(cplx s, const TruncatedSeries& a) {
    TruncatedSeries out = a;
    for (int i = 0; i < out.size(); ++i) out[i] *= s;
    return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_same(a, b);
    const BasisTable& t = a.table();
    const int cap = a.params().degree_cap;
    TruncatedSeries out(a.params());
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] == cplx(0.0)) continue;
        const cplx ai = a[i];
        const int jmax = t.block_end(cap - t.degree(i));
        for (int j = 0; j < jmax; ++j) {
            if (b[j] == cplx(0.0)) continue;
            out[t.position_sum(i, j)] += ai * b[j];
        }
    }
    return out;
}

TruncatedSeries series_reciprocal(const TruncatedSeries& a, double constant_tol) {
    const cplx a0 = a[0];
    if (std::abs(a0) <= constant_tol)
        throw std::domain_error("series reciprocal: constant term too close to zero");
    const BasisTable& t = a.table();
    const int cap = a.params().degree_cap;
    TruncatedSeries r(a.params());
    r[0] = 1.0 / a0;
    for (int d = 1; d <= cap; ++d) {
        for (int i = t.block_begin(d); i < t.block_end(d); ++i) {
            const MultiIndex& m = t.index(i);
            cplx acc = 0.0;
            // sum over p + q = m with p != 0:  a_p r_q
            for (int p = t.block_begin(1); p < t.block_end(d); ++p) {
                if (a[p] == cplx(0.0)) continue;
                const MultiIndex& mp = t.index(p);
                MultiIndex q(m);
                bool ok = true;
                for (int k = 0; k < a.params().n; ++k) {
                    q[k] -= mp[k];
                    if (q[k] < 0) { ok = false; break; }
                }
                if (ok) acc += a[p] * r[t.position(q)];
            }
            r[i] = -acc / a0;
        }
    }
    return r;
}

TruncatedSeries series_real_power(const TruncatedSeries& a, double exponent,
                                  double constant_tol) {
    const cplx a0 = a[0];
    if (std::abs(a0) <= constant_tol)
        throw std::domain_error("series power: constant term too close to zero");
    cplx scale;
    if (is_integer(exponent)) {
        scale = std::pow(a0, cplx(exponent, 0.0));
    } else if (std::abs(a0.imag()) <= constant_tol * std::abs(a0) && a0.real() > 0.0) {
        scale = std::pow(a0.real(), exponent);
    } else {
        throw std::domain_error(
            "series power: constant term must be positive real for non-integer exponents");
    }

    const BasisTable& t = a.table();
    const int cap = a.params().degree_cap;
    const int n = a.params().n;
    TruncatedSeries b(a.params());
    b[0] = 1.0;
    // b = (a/a0)^exponent from a * theta(b) = exponent * theta(a) * b, i.e.
    // |m| b_m = sum_{p+q=m, p!=0} (exponent |p| - |q|) (a/a0)_p b_q.
    for (int d = 1; d <= cap; ++d) {
        for (int i = t.block_begin(d); i < t.block_end(d); ++i) {
            const MultiIndex& m = t.index(i);
            cplx acc = 0.0;
            for (int p = t.block_begin(1); p < t.block_end(d); ++p) {
                if (a[p] == cplx(0.0)) continue;
                const int dp = t.degree(p);
                const MultiIndex& mp = t.index(p);
                MultiIndex q(m);
                bool ok = true;
                for (int k = 0; k < n; ++k) {
                    q[k] -= mp[k];
                    if (q[k] < 0) { ok = false; break; }
                }
                if (!ok) continue;
                acc += (exponent * dp - (d - dp)) * (a[p] / a0) * b[t.position(q)];
            }
            b[i] = acc / static_cast<double>(d);
        }
    }
    return scale * b;
}

cplx series_eval(const TruncatedSeries& a, const Eigen::VectorXcd& z) {
    if (z.size() != a.params().n) throw std::invalid_argument("evaluation point dimension mismatch");
    const BasisTable& t = a.table();
    std::vector<cplx> vals(t.size());
    cplx out = 0.0;
    for (int i = 0; i < t.size(); ++i) {
        vals[i] = (i == 0) ? cplx(1.0) : vals[t.parent_position(i)] * z[t.parent_axis(i)];
        out += a[i] * vals[i];
    }
    return out;
}

void for_each_monomial_product(const SpaceParams& params, const std::vector<TruncatedSeries>& rows,
                               const std::function<void(int, const TruncatedSeries&)>& visit) {
    params.validate();
    if (static_cast<int>(rows.size()) != params.n)
        throw std::invalid_argument("one factor series per coordinate required");
    auto table = BasisTable::get(params.n, params.degree_cap);

    // DFS over the monomial tree: node m branches to m + e_j for j >= axis.
    std::function<void(const MultiIndex&, int, const TruncatedSeries&)> rec =
        [&](const MultiIndex& m, int axis, const TruncatedSeries& prod) {
            visit(table->position(m), prod);
            if (total_degree(m) == params.degree_cap) return;
            MultiIndex child(m);
            for (int j = axis; j < params.n; ++j) {
                child[j] += 1;
                rec(child, j, prod * rows[j]);
                child[j] -= 1;
            }
        };
    rec(MultiIndex(params.n, 0), 0, TruncatedSeries::constant(params, 1.0));
}

TruncatedSeries series_compose_affine(const TruncatedSeries& h, const Eigen::MatrixXcd& A,
                                      const Eigen::VectorXcd& b) {
    const SpaceParams& p = h.params();
    if (A.rows() != p.n || A.cols() != p.n || b.size() != p.n)
        throw std::invalid_argument("affine data dimension mismatch");
    std::vector<TruncatedSeries> rows;
    rows.reserve(p.n);
    for (int j = 0; j < p.n; ++j) {
        std::vector<cplx> lin(p.n);
        for (int k = 0; k < p.n; ++k) lin[k] = A(j, k);
        rows.push_back(TruncatedSeries::affine(p, b[j], lin));
    }
    TruncatedSeries out(p);
    for_each_monomial_product(p, rows, [&](int idx, const TruncatedSeries& prod) {
        if (h[idx] != cplx(0.0)) out = out + h[idx] * prod;
    });
    return out;
}

cplx series_inner_hgamma(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_same(a, b);
    std::vector<double> c = kernel_coefficients(a.table(), a.params().gamma);
    cplx acc = 0.0;
    for (int i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]) / c[i];
    return acc;
}

double series_norm_hgamma(const TruncatedSeries& a) {
    return std::sqrt(std::abs(series_inner_hgamma(a, a)));
}

}  // namespace wco
