// Compression timing: naive serial reference vs the column-parallel kernel at
// one thread and at all threads, plus the max entrywise deviation.
// Usage: wco-bench [n] [degree_cap]
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wco/classify.hpp"
#include "wco/compress.hpp"

using namespace wco;

namespace {

template <typename F>
double time_ms(F&& f, Eigen::MatrixXcd& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 2;
    const int cap = argc > 2 ? std::atoi(argv[2]) : 22;
    const SpaceParams params{n, 2.0, cap};

    Eigen::VectorXcd pv(n);
    for (int j = 0; j < n; ++j) pv(j) = cplx(0.22 / (j + 1), -0.1 + 0.05 * j);
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n);
    for (int j = 0; j < n; ++j) v(j) *= std::polar(1.0, 0.7 * (j + 1));
    v.normalize();
    const Eigen::MatrixXcd Q =
        Eigen::MatrixXcd::Identity(n, n) - 2.0 * v * v.adjoint();  // unitary reflection
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) D(j, j) = std::polar(0.75 - 0.2 * j / std::max(1, n - 1), 0.4 * j);
    const Eigen::MatrixXcd A = Q * D * Q.adjoint();

    const WcoSymbol W = make_normal(BallPoint(pv), A, cplx(1.2, 0.3), params.gamma);
    const int N = BasisTable::get(n, cap)->size();
    std::printf("n=%d  degree_cap=%d  basis size N=%d  (matrix %d x %d)\n", n, cap, N, N, N);

    Eigen::MatrixXcd Ms, M1, Mp;
    const double ts = time_ms([&] { return wco_compress_serial(W, params); }, Ms);
    std::printf("serial reference      %10.1f ms\n", ts);

#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    const double t1 = time_ms([&] { return wco_compress(W, params); }, M1);
    std::printf("parallel, 1 thread    %10.1f ms   (speedup over serial %.2fx)\n", t1, ts / t1);

#ifdef _OPENMP
    omp_set_num_threads(max_threads);
    const double tp = time_ms([&] { return wco_compress(W, params); }, Mp);
    std::printf("parallel, %2d threads  %10.1f ms   (speedup over serial %.2fx)\n", max_threads,
                tp, ts / tp);
#else
    Mp = M1;
    std::printf("built without OpenMP; parallel path ran single-threaded\n");
#endif

    const double d1 = (Ms - M1).cwiseAbs().maxCoeff();
    const double dp = (Ms - Mp).cwiseAbs().maxCoeff();
    const double ds = (M1 - Mp).cwiseAbs().maxCoeff();
    std::printf("max |serial - parallel(1)| = %.3e\n", d1);
    std::printf("max |serial - parallel(T)| = %.3e\n", dp);
    std::printf("max |parallel(1) - parallel(T)| = %.3e  (must be exactly 0)\n", ds);
    return ds == 0.0 && d1 < 1e-10 ? 0 : 1;
}
