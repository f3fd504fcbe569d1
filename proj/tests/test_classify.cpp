#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "test_helpers.hpp"
#include "wco/classify.hpp"
#include "wco/sampling.hpp"

using namespace wco;
using namespace wcotest;

TEST_CASE("constructed unitaries classify as unitary with the right scalar") {
    DetRng rng(501);
    for (int n = 1; n <= 3; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const LinearFractionalMap psi = random_automorphism(n, rng);
            const cplx lambda = std::polar(1.0, 6.28318530717958648 * rng.uniform());
            const double gamma = 0.5 + 2.0 * rng.uniform();
            const WcoSymbol W = make_unitary(psi, gamma, lambda);
            const Classification cl = classify_unitary(W);
            REQUIRE(cl.verdict == Verdict::Unitary);
            CHECK(cl.residual <= 1e-9);
            REQUIRE(cl.lambda.has_value());
            CHECK(std::abs(*cl.lambda - lambda) <= 1e-10);
        }
    }
}

TEST_CASE("unitary symbols preserve kernel Gram data") {
    DetRng rng(502);
    for (int n = 1; n <= 3; ++n) {
        const LinearFractionalMap psi = random_automorphism(n, rng);
        const double gamma = 1.0 + rng.uniform();
        const WcoSymbol W = make_unitary(psi, gamma, std::polar(1.0, 2.1));
        const WcoSymbol Wadj = wco_adjoint_symbol(W);
        for (int rep = 0; rep < 50; ++rep) {
            const BallPoint z{rng.ball_point(n, 0.8)};
            const BallPoint w{rng.ball_point(n, 0.8)};
            // <W K_z, W K_w> = <W* W K_z, K_w> = (W* W K_z)(w)
            const WcoSymbol P = wco_product(Wadj, W);
            const cplx lhs = wco_apply_to_kernel(P, z, w);
            const cplx rhs = kernel_eval(gamma, z, w);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("non-unitary symbols are rejected") {
    const WcoSymbol half = make_wco(
        1.0, WeightSpec::kernel(1.0, 1.0, BallPoint::origin(1)),
        LinearFractionalMap::linear(0.5 * Eigen::MatrixXcd::Identity(1, 1)));
    CHECK(classify_unitary(half).verdict == Verdict::None);

    DetRng rng(503);
    const LinearFractionalMap psi = random_automorphism(2, rng);
    WcoSymbol scaled = make_unitary(psi, 1.5, 1.0);
    scaled.weight = WeightSpec::kernel(1.5, 2.0 * scaled.weight.kernel_scale(),
                                       scaled.weight.kernel_base());
    CHECK(classify_unitary(scaled).verdict == Verdict::None);
}

TEST_CASE("constructed self-adjoint symbols classify as such") {
    DetRng rng(504);
    for (int n = 1; n <= 3; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            const BallPoint c{rng.ball_point(n, 0.15)};
            const Eigen::MatrixXcd A = random_hermitian_contraction(n, rng, 0.5);
            const double alpha = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.5 + rng.uniform());
            const double gamma = 0.5 + 2.0 * rng.uniform();
            const WcoSymbol W = make_self_adjoint(c, A, alpha, gamma);
            const Classification cl = classify_self_adjoint(W);
            REQUIRE(cl.verdict == Verdict::SelfAdjoint);
            CHECK(cl.residual <= 1e-9);
            REQUIRE(cl.alpha.has_value());
            CHECK(std::abs(*cl.alpha - alpha) <= 1e-10 * (1.0 + std::abs(alpha)));
        }
    }
}

TEST_CASE("the ball involution weighted by its kernel is self-adjoint and unitary") {
    DetRng rng(505);
    const BallPoint a{rng.ball_point(2, 0.5)};
    const WcoSymbol U = make_unitary(moebius_involution(a), 2.0, 1.0);
    CHECK(classify_unitary(U).verdict == Verdict::Unitary);
    CHECK(classify_self_adjoint(U).verdict == Verdict::SelfAdjoint);
}

TEST_CASE("self-adjointness is sharp in the weight scale") {
    DetRng rng(506);
    const BallPoint c{rng.ball_point(2, 0.15)};
    const Eigen::MatrixXcd A = random_hermitian_contraction(2, rng, 0.4);
    const WcoSymbol W = make_self_adjoint(c, A, 1.3, 2.0);

    WcoSymbol imag = W;
    imag.weight = WeightSpec::kernel(2.0, cplx(0.0, 1.3), W.weight.kernel_base());
    CHECK(classify_self_adjoint(imag).verdict == Verdict::None);

    WcoSymbol tilted = W;
    tilted.weight = WeightSpec::kernel(2.0, 1.3 * cplx(1.0, 1e-3), W.weight.kernel_base());
    CHECK(classify_self_adjoint(tilted).verdict == Verdict::None);
}

TEST_CASE("constructed normal symbols return their witnesses") {
    DetRng rng(507);
    for (int n = 1; n <= 2; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            const BallPoint p{rng.ball_point(n, 0.3)};
            const Eigen::MatrixXcd A = random_normal_contraction(n, rng, 0.5);
            const cplx alpha = cplx(1.0, 0.0) + 0.4 * rng.normal_cplx();
            const double gamma = 1.0 + rng.uniform();
            const WcoSymbol W = make_normal(p, A, alpha, gamma);
            const Classification cl = classify_normal_fixed_point(W);
            REQUIRE(cl.verdict == Verdict::NormalFixedPoint);
            CHECK(cl.residual <= 1e-9);
            REQUIRE(cl.p.has_value());
            CHECK((cl.p->v - p.v).norm() <= 1e-8);
            REQUIRE(cl.alpha.has_value());
            CHECK(std::abs(*cl.alpha - alpha) <= 1e-9 * (1.0 + std::abs(alpha)));
            // the map derivative at p is similar to A
            REQUIRE(cl.map_derivative_eigenvalues.size() == static_cast<std::size_t>(n));
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
            std::vector<cplx> ea(es.eigenvalues().data(), es.eigenvalues().data() + n);
            for (const cplx& lam : cl.map_derivative_eigenvalues) {
                double best = 1e9;
                for (const cplx& mu : ea) best = std::min(best, std::abs(lam - mu));
                CHECK(best <= 1e-8);
            }
        }
    }
}

TEST_CASE("a plain normal linear map is normal with fixed point zero") {
    Eigen::MatrixXcd A(2, 2);
    A << 0.3, 0.2, -0.2, 0.3;
    const WcoSymbol W = make_wco(2.0, WeightSpec::kernel(2.0, 1.0, BallPoint::origin(2)),
                                 LinearFractionalMap::linear(A));
    const Classification cl = classify_normal_fixed_point(W);
    REQUIRE(cl.verdict == Verdict::NormalFixedPoint);
    CHECK(cl.p->v.norm() <= 1e-10);
    CHECK(std::abs(*cl.alpha - 1.0) <= 1e-10);
}

TEST_CASE("Jordan blocks are rejected as non-normal") {
    Eigen::MatrixXcd A(2, 2);
    A << 0.5, 0.5, 0.0, 0.5;
    const WcoSymbol W = make_conjugated_linear(BallPoint::origin(2), A, 1.0, 2.0);
    const Classification cl = classify_normal_fixed_point(W);
    CHECK(cl.verdict == Verdict::None);
    CHECK_THROWS_AS(make_normal(BallPoint::origin(2), A, 1.0, 2.0), std::domain_error);
}

TEST_CASE("normal verdicts certify commuting adjoints") {
    DetRng rng(508);
    const BallPoint p{rng.ball_point(2, 0.25)};
    const Eigen::MatrixXcd A = random_normal_contraction(2, rng, 0.5);
    const WcoSymbol W = make_normal(p, A, cplx(0.8, 0.5), 2.0);
    REQUIRE(classify_normal_fixed_point(W).verdict == Verdict::NormalFixedPoint);
    const WcoSymbol Wadj = wco_adjoint_symbol(W);
    const SymbolComparison cmp =
        symbols_equal(wco_product(W, Wadj), wco_product(Wadj, W), 100, 1e-9);
    CHECK(cmp.equal);
    CHECK(cmp.residual <= 1e-10);
}

TEST_CASE("maps without an interior fixed point are rejected with that reason") {
    const WcoSymbol W = make_parabolic_1d(1.0, 2.0);
    const Classification cl = classify_normal_fixed_point(W);
    CHECK(cl.verdict == Verdict::None);
    CHECK(cl.reason == "no interior fixed point");
}

TEST_CASE("weights off the kernel ray are rejected with that reason") {
    const SpaceParams p{1, 1.0, 10};
    TruncatedSeries f = TruncatedSeries::constant(p, 1.0);
    f.set_coefficient({2}, 0.5);
    const WcoSymbol W = make_wco(
        1.0, WeightSpec::series(f),
        LinearFractionalMap::linear(0.5 * Eigen::MatrixXcd::Identity(1, 1)));
    const Classification cl = classify_normal_lfm(W);
    CHECK(cl.verdict == Verdict::None);
    CHECK(cl.reason == "weight not K_{sigma(0)}-type");
}

TEST_CASE("identically vanishing weights never classify as normal") {
    const WcoSymbol W = make_wco(
        1.0, WeightSpec::kernel(1.0, 0.0, BallPoint::origin(1)),
        LinearFractionalMap::linear(0.5 * Eigen::MatrixXcd::Identity(1, 1)));
    const Classification cl = classify_normal_fixed_point(W);
    CHECK(cl.verdict == Verdict::None);
    CHECK(cl.reason.find("vanishes") != std::string::npos);
}

TEST_CASE("the one-variable classifier agrees with the coefficient conditions") {
    DetRng rng(509);
    int fired = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const LinearFractionalMap phi = random_self_map(1, rng);
        const LinearFractionalMap sigma = adjoint_map(phi);
        const BallPoint s0{lfm_apply(sigma, Eigen::VectorXcd::Zero(1))};
        const WcoSymbol W = make_wco(1.0, WeightSpec::kernel(1.0, 1.0, s0), phi);
        const bool coef = normal_coefficients_1d(phi);
        const bool cls = classify_normal_lfm(W).verdict == Verdict::NormalLfm;
        CHECK(coef == cls);
        fired += cls ? 1 : 0;
    }
    // generic draws are non-normal; the agreement must not be vacuous both ways
    CHECK(fired < 200);
}

TEST_CASE("the parabolic family is normal with frozen coefficient identity") {
    DetRng rng(510);
    std::vector<cplx> ts = {0.0, 1.0, cplx(0, 1), cplx(1, 1)};
    for (int rep = 0; rep < 6; ++rep)
        ts.push_back(cplx(1.5 * rng.uniform(), 2.0 * rng.normal()));
    for (const cplx t : ts) {
        const WcoSymbol W = make_parabolic_1d(t, 2.0);
        CHECK(classify_normal_lfm(W).verdict == Verdict::NormalLfm);
        CHECK(normal_coefficients_1d(W.map));
        const cplx a = W.map.A(0, 0), b = W.map.B(0);
        const cplx c = std::conj(W.map.C(0)), d = W.map.d;
        const cplx lhs = std::conj(a) * b - std::conj(c) * d;
        const cplx rhs = b * std::conj(d) - a * std::conj(c);
        CHECK(std::abs(lhs - 4.0 * t.real()) <= 1e-12 * (1.0 + std::abs(t) * std::abs(t)));
        CHECK(std::abs(rhs - 4.0 * t.real()) <= 1e-12 * (1.0 + std::abs(t) * std::abs(t)));
    }

    CHECK(classify_self_adjoint(make_parabolic_1d(1.0, 2.0)).verdict == Verdict::SelfAdjoint);
    CHECK(classify_self_adjoint(make_parabolic_1d(cplx(0, 1), 2.0)).verdict == Verdict::None);
    CHECK_THROWS_AS(make_parabolic_1d(cplx(-0.1, 0.0), 2.0), std::domain_error);
}

TEST_CASE("adjoint-inverse pairing certifies scaled unitary pairs") {
    DetRng rng(511);
    const LinearFractionalMap psi = moebius_involution(BallPoint{rng.ball_point(2, 0.5)});
    const double gamma = 1.5;

    const WcoSymbol U = make_unitary(psi, gamma, 1.0);
    const AdjointInversePair same = check_adjoint_inverse_pair(U, U);
    CHECK(same.ok);
    CHECK(std::abs(*same.lambda - 1.0) <= 1e-10);

    WcoSymbol twice = U, half = U;
    twice.weight = WeightSpec::kernel(gamma, 2.0 * U.weight.kernel_scale(),
                                      U.weight.kernel_base());
    half.weight = WeightSpec::kernel(gamma, 0.5 * U.weight.kernel_scale(),
                                     U.weight.kernel_base());
    const AdjointInversePair scaled = check_adjoint_inverse_pair(twice, half);
    CHECK(scaled.ok);
    CHECK(std::abs(*scaled.lambda - 2.0) <= 1e-10);

    // PW2* is not the inverse when the maps are unrelated rotations
    const Eigen::MatrixXcd V = random_unitary(2, rng);
    const Eigen::MatrixXcd R = random_unitary(2, rng);
    const WcoSymbol CV = make_unitary(LinearFractionalMap::linear(V), gamma, 1.0);
    const WcoSymbol CR = make_unitary(LinearFractionalMap::linear(R), gamma, 1.0);
    CHECK_FALSE(check_adjoint_inverse_pair(CV, CR).ok);
}
