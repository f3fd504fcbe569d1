#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "wco/basis.hpp"

using namespace wco;

namespace {

// exact integer Pascal triangle, independent of the library's tables
long long binom_ll(int a, int b) {
    if (b < 0 || b > a) return 0;
    long long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

// log c_m through the Gamma function, an independent route to the recurrence
double log_coefficient(const MultiIndex& m, double gamma) {
    int total = 0;
    for (int e : m) total += e;
    double lg = std::lgamma(gamma + total) - std::lgamma(gamma);
    for (int e : m) lg -= std::lgamma(e + 1.0);
    return lg;
}

}  // namespace

TEST_CASE("enumeration size follows the stars-and-bars count") {
    CHECK(binom_ll(3 + 4, 3) == 35);
    CHECK(enumerate_multiindices(3, 4).size() == 35);
    for (int n = 1; n <= 4; ++n)
        for (int cap = 0; cap <= 6; ++cap)
            CHECK(static_cast<long long>(enumerate_multiindices(n, cap).size()) ==
                  binom_ll(n + cap, n));
}

TEST_CASE("two-variable enumeration is graded, descending-lex inside a degree") {
    const std::vector<MultiIndex> expect = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    const auto got = enumerate_multiindices(2, 2);
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expect[i]);
}

TEST_CASE("position inverts the enumeration") {
    for (int n : {1, 2, 3}) {
        const auto table = BasisTable::get(n, 6);
        for (int i = 0; i < table->size(); ++i) CHECK(table->position(table->index(i)) == i);
    }
}

TEST_CASE("degree blocks partition the table in order") {
    const auto table = BasisTable::get(3, 7);
    int expected_begin = 0;
    for (int d = 0; d <= 7; ++d) {
        CHECK(table->block_begin(d) == expected_begin);
        CHECK(table->block_end(d) - table->block_begin(d) == binom_ll(3 + d - 1, 3 - 1));
        for (int i = table->block_begin(d); i < table->block_end(d); ++i)
            CHECK(table->degree(i) == d);
        expected_begin = table->block_end(d);
    }
    CHECK(expected_begin == table->size());
}

TEST_CASE("position_sum ranks sums and signals overflow") {
    const auto table = BasisTable::get(2, 5);
    for (int i = 0; i < table->size(); ++i) {
        for (int j = 0; j < table->size(); ++j) {
            MultiIndex sum(2);
            for (int k = 0; k < 2; ++k) sum[k] = table->index(i)[k] + table->index(j)[k];
            if (table->degree(i) + table->degree(j) > 5) {
                CHECK(table->position_sum(i, j) == -1);
            } else {
                CHECK(table->position_sum(i, j) == table->position(sum));
            }
        }
    }
}

TEST_CASE("parent links drop one unit from the first nonzero axis") {
    const auto table = BasisTable::get(3, 6);
    CHECK(table->parent_axis(0) == -1);
    for (int i = 1; i < table->size(); ++i) {
        const int axis = table->parent_axis(i);
        REQUIRE(axis >= 0);
        MultiIndex m = table->index(i);
        for (int j = 0; j < axis; ++j) CHECK(m[j] == 0);
        CHECK(m[axis] > 0);
        m[axis] -= 1;
        CHECK(table->parent_position(i) == table->position(m));
    }
}

TEST_CASE("tables are cached and shared") {
    CHECK(BasisTable::get(2, 9).get() == BasisTable::get(2, 9).get());
}

TEST_CASE("oversized tables are rejected before allocation") {
    CHECK_THROWS_AS(BasisTable::get(10, 15), std::invalid_argument);
}

TEST_CASE("kernel coefficients match the Gamma-function formula") {
    for (double gamma : {0.5, 1.0, 2.0, 3.7}) {
        for (const auto& m : enumerate_multiindices(3, 8)) {
            const double expect = std::exp(log_coefficient(m, gamma));
            CHECK(kernel_coefficient(m, gamma) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    // deeper one-variable spot checks
    for (int k : {15, 25, 30}) {
        const MultiIndex m{k};
        const double expect = std::exp(log_coefficient(m, 0.75));
        CHECK(kernel_coefficient(m, 0.75) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("integer-data coefficients are exact") {
    CHECK(kernel_coefficient({0}, 0.7) == 1.0);
    CHECK(kernel_coefficient({3}, 2.0) == 4.0);    // 4!/ (1! 3!)
    CHECK(kernel_coefficient({1, 1}, 1.0) == 2.0); // 2!/(1! 1!)
    CHECK(kernel_coefficient({2, 1}, 2.0) == 12.0);
    for (int k = 0; k <= 12; ++k) {
        CHECK(kernel_coefficient({k}, 1.0) == 1.0);
        CHECK(kernel_coefficient({k}, 2.0) == static_cast<double>(k + 1));
    }
    CHECK(monomial_norm_sq({3}, 2.0) == 0.25);
    CHECK(monomial_norm_sq({5}, 1.0) == 1.0);
}

TEST_CASE("coefficient tables agree with the scalar routine") {
    const auto table = BasisTable::get(2, 6);
    const auto c = kernel_coefficients(*table, 1.5);
    REQUIRE(static_cast<int>(c.size()) == table->size());
    for (int i = 0; i < table->size(); ++i)
        CHECK(c[i] == doctest::Approx(kernel_coefficient(table->index(i), 1.5)).epsilon(1e-13));
}

TEST_CASE("coefficient overflow throws instead of returning infinity") {
    CHECK_THROWS_AS(kernel_coefficient(MultiIndex{200}, 1e6), std::range_error);
}

TEST_CASE("space parameters are validated") {
    CHECK_THROWS_AS((SpaceParams{0, 1.0, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((SpaceParams{1, 0.0, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((SpaceParams{1, -2.0, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((SpaceParams{1, 1.0, -1}).validate(), std::invalid_argument);
    CHECK_NOTHROW((SpaceParams{3, 0.5, 0}).validate());
}
