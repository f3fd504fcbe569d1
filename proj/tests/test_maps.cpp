#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "wco/maps.hpp"
#include "wco/sampling.hpp"

using namespace wco;
using namespace wcotest;

TEST_CASE("the ball involution swaps the origin with its center") {
    DetRng rng(101);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 200 / n; ++trial) {
            const BallPoint a{rng.ball_point(n, 0.85)};
            const LinearFractionalMap phi = moebius_involution(a);
            CHECK((lfm_apply(phi, Eigen::VectorXcd::Zero(n)) - a.v).norm() <= 1e-12);
            CHECK(lfm_apply(phi, a.v).norm() <= 1e-10);
            // Hermitian linear part: -(P_a + s_a Q_a) is self-adjoint.
            CHECK((phi.A - phi.A.adjoint()).norm() <= 1e-12);
        }
    }
}

TEST_CASE("the ball involution squares to the identity pointwise") {
    DetRng rng(102);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            const BallPoint a{rng.ball_point(n, 0.8)};
            const LinearFractionalMap phi = moebius_involution(a);
            const Eigen::VectorXcd z = rng.ball_point(n, 0.9);
            CHECK((lfm_apply(phi, lfm_apply(phi, z)) - z).norm() <= 1e-10);
        }
    }
}

TEST_CASE("ball involutions are automorphisms") {
    DetRng rng(103);
    for (int n = 1; n <= 3; ++n) {
        const BallPoint a{rng.ball_point(n, 0.7)};
        CHECK(is_automorphism(moebius_involution(a)));
    }
}

TEST_CASE("one-variable involution fixes the root of its quadratic") {
    // phi_a(z) = (a-z)/(1-conj(a)z) with a = 1/2 fixes z^2 - 4z + 1 = 0,
    // whose interior root is 2 - sqrt(3).
    const double root = 2.0 - std::sqrt(3.0);
    const BallPoint a{Eigen::VectorXcd::Constant(1, 0.5)};
    const LinearFractionalMap phi = moebius_involution(a);
    Eigen::VectorXcd z(1);
    z << root;
    CHECK((lfm_apply(phi, z) - z).norm() <= 1e-14);
    const auto p = fixed_point_in_ball(phi);
    REQUIRE(p.has_value());
    CHECK(std::abs(p->v(0) - root) <= 1e-12);
}

TEST_CASE("composition evaluates pointwise as phi after psi") {
    DetRng rng(104);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        const LinearFractionalMap phi = random_self_map(n, rng);
        const LinearFractionalMap psi = random_self_map(n, rng);
        const LinearFractionalMap comp = lfm_compose(phi, psi);
        const Eigen::VectorXcd z = rng.ball_point(n, 0.9);
        CHECK((lfm_apply(comp, z) - lfm_apply(phi, lfm_apply(psi, z))).norm() <= 1e-12);
    }
}

TEST_CASE("normalization fixes d = 1 exactly without moving the map") {
    DetRng rng(105);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        LinearFractionalMap phi = random_self_map(n, rng);
        const cplx s = 2.3 * std::polar(1.0, 1.1);  // arbitrary projective rescale
        phi.A *= s;
        phi.B *= s;
        phi.C *= std::conj(s);
        phi.d *= s;
        const LinearFractionalMap norm = phi.normalized();
        CHECK(norm.d == cplx(1.0, 0.0));
        const Eigen::VectorXcd z = rng.ball_point(n, 0.8);
        CHECK((lfm_apply(norm, z) - lfm_apply(phi, z)).norm() <= 1e-12);
    }
}

TEST_CASE("the companion map reverses compositions and is an involution") {
    DetRng rng(106);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        const LinearFractionalMap phi = random_self_map(n, rng);
        const LinearFractionalMap psi = random_self_map(n, rng);
        CHECK(projectively_equal(adjoint_map(lfm_compose(phi, psi)),
                                 lfm_compose(adjoint_map(psi), adjoint_map(phi)), 1e-11));
        CHECK(projectively_equal(adjoint_map(adjoint_map(phi)), phi, 1e-12));
    }
}

TEST_CASE("the ball involution is its own companion map") {
    DetRng rng(107);
    for (int n = 1; n <= 3; ++n) {
        const BallPoint a{rng.ball_point(n, 0.75)};
        const LinearFractionalMap phi = moebius_involution(a);
        CHECK(projectively_equal(adjoint_map(phi), phi, 1e-12));
    }
}

TEST_CASE("self-map screening separates contractions from expansions") {
    const int n = 2;
    DetRng rng(108);
    const BallPoint a{rng.ball_point(n, 0.6)};
    CHECK(is_self_map(moebius_involution(a)).ok);
    CHECK(is_self_map(LinearFractionalMap::linear(0.5 * Eigen::MatrixXcd::Identity(n, n))).ok);
    CHECK_FALSE(
        is_self_map(LinearFractionalMap::linear(2.0 * Eigen::MatrixXcd::Identity(n, n))).ok);

    LinearFractionalMap shift = LinearFractionalMap::identity(n);
    shift.B = Eigen::VectorXcd::Constant(n, 0.5);  // z + (1/2, 1/2) leaves the ball
    CHECK_FALSE(is_self_map(shift).ok);
}

TEST_CASE("inverses exist exactly for automorphisms") {
    DetRng rng(109);
    const int n = 2;

    const BallPoint a{rng.ball_point(n, 0.6)};
    const LinearFractionalMap phi = moebius_involution(a);
    const auto inv = inverse_map(phi);
    REQUIRE(inv.has_value());
    CHECK(projectively_equal(*inv, phi, 1e-10));  // involution

    const Eigen::MatrixXcd V = random_unitary(n, rng);
    const auto vinv = inverse_map(LinearFractionalMap::linear(V));
    REQUIRE(vinv.has_value());
    CHECK((vinv->normalized().A - Eigen::MatrixXcd(V.adjoint())).norm() <= 1e-12);

    LinearFractionalMap constant;  // z -> b, projectively singular
    constant.A = Eigen::MatrixXcd::Zero(n, n);
    constant.B = Eigen::VectorXcd::Constant(n, 0.3);
    constant.C = Eigen::VectorXcd::Zero(n);
    constant.d = 1.0;
    CHECK_FALSE(inverse_map(constant).has_value());

    CHECK_FALSE(is_automorphism(
        LinearFractionalMap::linear(0.5 * Eigen::MatrixXcd::Identity(n, n))));
}

TEST_CASE("the Jacobian matches central finite differences") {
    DetRng rng(110);
    const double h = 1e-5;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        const LinearFractionalMap phi = random_self_map(n, rng);
        const Eigen::VectorXcd z = rng.ball_point(n, 0.5);
        Eigen::MatrixXcd fd(n, n);  // oracle: (phi(z+h e_j) - phi(z-h e_j)) / 2h
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXcd zp = z, zm = z;
            zp(j) += h;
            zm(j) -= h;
            fd.col(j) = (lfm_apply(phi, zp) - lfm_apply(phi, zm)) / (2.0 * h);
        }
        CHECK((jacobian_at(phi, z) - fd).norm() <= 1e-7);
    }
}

TEST_CASE("interior fixed points are found or correctly absent") {
    const auto id = fixed_point_in_ball(LinearFractionalMap::identity(2));
    REQUIRE(id.has_value());
    CHECK(id->v.norm() <= 1e-12);

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
    A(0, 0) = 0.5;
    A(1, 1) = 0.3;
    const auto lin = fixed_point_in_ball(LinearFractionalMap::linear(A));
    REQUIRE(lin.has_value());
    CHECK(lin->v.norm() <= 1e-12);

    // One-variable parabolic map fixing only the boundary point 1.
    LinearFractionalMap para;
    para.A = Eigen::MatrixXcd::Constant(1, 1, 1.0);   // (A,B,C,d) = (2-t, t, -t, 2+t), t=1
    para.B = Eigen::VectorXcd::Constant(1, 1.0);
    para.C = Eigen::VectorXcd::Constant(1, -1.0);
    para.d = 3.0;
    CHECK(is_self_map(para).ok);
    CHECK_FALSE(fixed_point_in_ball(para).has_value());
}

TEST_CASE("points outside the open ball are rejected") {
    CHECK_THROWS_AS(BallPoint(Eigen::VectorXcd::Constant(1, 1.0)), std::domain_error);
    CHECK_THROWS_AS(BallPoint(Eigen::VectorXcd::Constant(2, 0.8)), std::domain_error);
}

TEST_CASE("maps whose denominator can vanish on the closed ball are rejected") {
    LinearFractionalMap bad = LinearFractionalMap::identity(1);
    bad.C = Eigen::VectorXcd::Constant(1, 1.5);
    CHECK_THROWS_WITH_AS(bad.ensure_valid(), "denominator may vanish on the closed ball",
                         std::domain_error);
}
