#include "wco/basis.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace wco {

void SpaceParams::validate() const {
    if (n < 1) throw std::invalid_argument("space dimension must be >= 1");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("kernel exponent gamma must be positive");
    if (degree_cap < 0) throw std::invalid_argument("degree cap must be >= 0");
}

int total_degree(const MultiIndex& m) {
    int d = 0;
    for (int e : m) {
        if (e < 0) throw std::invalid_argument("negative exponent in multi-index");
        d += e;
    }
    return d;
}

namespace {

void emit(int n, int axis, int remaining, MultiIndex& m, std::vector<MultiIndex>& out) {
    if (axis == n - 1) {
        m[axis] = remaining;
        out.push_back(m);
        return;
    }
    for (int e = remaining; e >= 0; --e) {  // descending lexicographic
        m[axis] = e;
        emit(n, axis + 1, remaining - e, m, out);
    }
    m[axis] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate_multiindices(int n, int degree_cap) {
    if (n < 1 || degree_cap < 0) throw std::invalid_argument("bad enumeration parameters");
    std::vector<MultiIndex> out;
    MultiIndex m(n, 0);
    for (int d = 0; d <= degree_cap; ++d) emit(n, 0, d, m, out);
    return out;
}

BasisTable::BasisTable(int n, int degree_cap) : n_(n), cap_(degree_cap) {
    binom_dim_ = n + degree_cap + 2;
    binom_.assign(static_cast<size_t>(binom_dim_) * binom_dim_, 0.0);
    for (int a = 0; a < binom_dim_; ++a) {
        binom_[static_cast<size_t>(a) * binom_dim_] = 1.0;
        for (int b = 1; b <= a; ++b)
            binom_[static_cast<size_t>(a) * binom_dim_ + b] =
                binom_[static_cast<size_t>(a - 1) * binom_dim_ + b - 1] +
                binom_[static_cast<size_t>(a - 1) * binom_dim_ + b];
    }

    double count = choose(n + degree_cap, n);
    if (count > 2.0e6)
        throw std::invalid_argument("basis too large: C(n+D,n) exceeds 2e6 entries");

    indices_ = enumerate_multiindices(n, degree_cap);
    const int N = static_cast<int>(indices_.size());
    degree_.resize(N);
    parent_axis_.resize(N);
    parent_pos_.resize(N);
    offsets_.assign(degree_cap + 2, 0);
    for (int i = 0; i < N; ++i) degree_[i] = total_degree(indices_[i]);
    for (int d = 0, i = 0; d <= degree_cap; ++d) {
        offsets_[d] = i;
        while (i < N && degree_[i] == d) ++i;
        offsets_[d + 1] = i;
    }
    for (int i = 0; i < N; ++i) {
        if (degree_[i] == 0) {
            parent_axis_[i] = -1;
            parent_pos_[i] = -1;
            continue;
        }
        MultiIndex m = indices_[i];
        int axis = 0;
        while (m[axis] == 0) ++axis;
        m[axis] -= 1;
        parent_axis_[i] = axis;
        parent_pos_[i] = position(m);
    }
}

double BasisTable::choose(int a, int b) const {
    if (b < 0 || b > a || a < 0) return 0.0;
    return binom_[static_cast<size_t>(a) * binom_dim_ + b];
}

int BasisTable::rank_within_degree(const MultiIndex& m, int d) const {
    // Descending lexicographic: everything with a larger leading exponent
    // comes first; hockey-stick sums collapse the counts to one binomial.
    double rank = 0.0;
    int rem = d;
    for (int j = 0; j + 1 < n_; ++j) {
        rank += choose(rem - m[j] - 1 + n_ - 1 - j, n_ - 1 - j);
        rem -= m[j];
    }
    return static_cast<int>(rank + 0.5);
}

int BasisTable::position(const MultiIndex& m) const {
    if (static_cast<int>(m.size()) != n_) throw std::invalid_argument("multi-index dimension mismatch");
    int d = total_degree(m);
    if (d > cap_) throw std::out_of_range("multi-index degree exceeds table cap");
    return offsets_[d] + rank_within_degree(m, d);
}

int BasisTable::position_sum(int i, int j) const {
    int d = degree_[i] + degree_[j];
    if (d > cap_) return -1;
    const MultiIndex &a = indices_[i], &b = indices_[j];
    double rank = 0.0;
    int rem = d;
    for (int k = 0; k + 1 < n_; ++k) {
        int mk = a[k] + b[k];
        rank += choose(rem - mk - 1 + n_ - 1 - k, n_ - 1 - k);
        rem -= mk;
    }
    return offsets_[d] + static_cast<int>(rank + 0.5);
}

std::shared_ptr<const BasisTable> BasisTable::get(int n, int degree_cap) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::weak_ptr<const BasisTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, degree_cap);
    if (auto hit = cache[key].lock()) return hit;
    std::shared_ptr<const BasisTable> fresh(new BasisTable(n, degree_cap));
    cache[key] = fresh;
    return fresh;
}

double kernel_coefficient(const MultiIndex& m, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    double c = 1.0;
    int seen = 0;  // |m| so far along the walk from 0
    for (size_t j = 0; j < m.size(); ++j) {
        if (m[j] < 0) throw std::invalid_argument("negative exponent in multi-index");
        for (int i = 1; i <= m[j]; ++i) {
            c *= (gamma + seen) / i;  // c_{m+e_j} = c_m (gamma+|m|) / (m_j+1)
            ++seen;
        }
    }
    if (!std::isfinite(c)) throw std::range_error("kernel coefficient overflows double");
    return c;
}

double monomial_norm_sq(const MultiIndex& m, double gamma) {
    return 1.0 / kernel_coefficient(m, gamma);
}

std::vector<double> kernel_coefficients(const BasisTable& table, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    const int N = table.size();
    std::vector<double> c(N);
    if (N > 0) c[0] = 1.0;
    for (int i = 1; i < N; ++i) {
        int axis = table.parent_axis(i);
        int d = table.degree(i);
        c[i] = c[table.parent_position(i)] * (gamma + d - 1) / table.index(i)[axis];
        if (!std::isfinite(c[i])) throw std::range_error("kernel coefficient overflows double");
    }
    return c;
}

}  // namespace wco
