// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

// Compares the OpenMP lift kernel against the serial reference and checks
// that both produce bit-identical operators.

#include <chrono>
#include <cstdio>

#include "qrp/experiments.hpp"
#include "qrp/lift.hpp"
#include "qrp/unitary.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_case(int modes, int photons) {
    const auto u = qrp::haar_unitary(modes, 42);
    const auto basis = qrp::FockBasis::fixed(modes, photons);

    auto start = std::chrono::steady_clock::now();
    const auto serial = qrp::lift_unitary_serial(u, basis);
    const double t_serial = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const auto parallel = qrp::lift_unitary(u, basis);
    const double t_parallel = seconds_since(start);

    const bool identical = serial.mat == parallel.mat;
    std::printf("%2d modes, %d photons (%4d states): serial %8.3f ms  parallel %8.3f ms  "
                "speedup %.2fx  identical=%s\n",
                modes, photons, basis.size(), 1e3 * t_serial, 1e3 * t_parallel,
                t_serial / t_parallel, identical ? "yes" : "NO");
}

void bench_dataset(int count) {
    auto start = std::chrono::steady_clock::now();
    const auto dataset = qrp::gen_mixed_state_dataset(count, 2, 7);
    const double t = seconds_since(start);
    std::printf("mixed-state dataset of %d samples: %8.3f ms\n", count, 1e3 * t);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif
    bench_case(4, 2);
    bench_case(9, 2);
    bench_case(8, 3);
    bench_case(10, 4);
    bench_case(12, 4);
    bench_dataset(200);
    return 0;
}
