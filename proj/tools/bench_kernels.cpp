// Serial vs OpenMP comparison for the hot kernels: dense matrix products,
// batched objective evaluations (the finite-difference probe pattern) and
// eigendecomposition throughput.  Parallel results must be bitwise equal to
// the serial ones; any mismatch is reported and fails the run.

#include <chrono>
#include <cstdio>
#include <vector>

#include "qcap/divergences.hpp"
#include "qcap/linalg.hpp"
#include "qcap/parallel.hpp"
#include "qcap/rng.hpp"

using namespace qcap;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double time_ms(int reps, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) body();
    return ms_since(t0) / reps;
}

bool bench_matmul(int d, int reps) {
    Rng rng(7);
    const Matrix a = random_hermitian(rng, d);
    const Matrix b = random_hermitian(rng, d);
    Matrix serial_out, par_out;
    const double ts = time_ms(reps, [&] { serial_out = mul(a, b, Exec::serial); });
    const double tp = time_ms(reps, [&] { par_out = mul(a, b, Exec::par); });
    const bool equal = (serial_out - par_out).max_abs() == 0.0;
    std::printf("matmul d=%-3d        serial %8.3f ms  parallel %8.3f ms  speedup %5.2fx  bitwise %s\n",
                d, ts, tp, ts / tp, equal ? "equal" : "DIFFER");
    return equal;
}

bool bench_probe_batch(int batch, int d) {
    // One entropy evaluation per slot, the same shape as a finite-difference
    // gradient pass: independent inputs, disjoint output slots.
    Rng root(11);
    std::vector<Matrix> inputs;
    inputs.reserve(static_cast<std::size_t>(batch));
    for (int i = 0; i < batch; ++i) {
        Rng rng = root.fork(static_cast<std::uint64_t>(i));
        inputs.push_back(random_density(rng, d));
    }
    std::vector<double> out_serial(static_cast<std::size_t>(batch));
    std::vector<double> out_par(static_cast<std::size_t>(batch));
    const double ts = time_ms(3, [&] {
        parallel_for(static_cast<std::size_t>(batch), Exec::serial,
                     [&](std::size_t i) { out_serial[i] = vn_entropy(inputs[i]); });
    });
    const double tp = time_ms(3, [&] {
        parallel_for(static_cast<std::size_t>(batch), Exec::par,
                     [&](std::size_t i) { out_par[i] = vn_entropy(inputs[i]); });
    });
    bool equal = true;
    for (int i = 0; i < batch; ++i)
        equal = equal && out_serial[static_cast<std::size_t>(i)] == out_par[static_cast<std::size_t>(i)];
    std::printf("probe batch %dx d=%-2d serial %8.3f ms  parallel %8.3f ms  speedup %5.2fx  bitwise %s\n",
                batch, d, ts, tp, ts / tp, equal ? "equal" : "DIFFER");
    return equal;
}

void bench_jacobi(int d, int count) {
    Rng root(13);
    std::vector<Matrix> inputs;
    for (int i = 0; i < count; ++i) {
        Rng rng = root.fork(static_cast<std::uint64_t>(i));
        inputs.push_back(random_hermitian(rng, d));
    }
    const auto t0 = std::chrono::steady_clock::now();
    double acc = 0.0;
    for (const Matrix& m : inputs) acc += herm_eig(m).eigenvalues.front();
    const double total = ms_since(t0);
    std::printf("jacobi d=%-3d        %d decompositions in %8.3f ms  (%.1f eig/s, checksum %.6f)\n",
                d, count, total, 1000.0 * count / total, acc);
}

}  // namespace

int main() {
    std::printf("threads available: %d (OpenMP %s)\n", max_threads(),
                openmp_enabled() ? "enabled" : "disabled");
    bool ok = true;
    ok = bench_matmul(16, 50) && ok;
    ok = bench_matmul(32, 20) && ok;
    ok = bench_matmul(64, 10) && ok;
    ok = bench_probe_batch(256, 8) && ok;
    ok = bench_probe_batch(64, 16) && ok;
    bench_jacobi(16, 200);
    bench_jacobi(32, 40);
    if (!ok) {
        std::printf("FAIL: parallel kernels are not bitwise equal to serial\n");
        return 1;
    }
    std::printf("all parallel kernels bitwise equal to serial\n");
    return 0;
}
