// Benchmark: OpenMP kernels against the serial reference on representative
// workloads (exact matrix product, row reduction, transfer recursion).

#include <chrono>
#include <iostream>
#include <random>

#include "defq/hpt.hpp"
#include "defq/parallel.hpp"

using namespace defq;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

Matrix random_matrix(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 7);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = Rational(num(rng), den(rng));
    return m;
}

Dgla bench_algebra() {
    Dgla g;
    g.complex.space.basis[-1] = {"x0", "x1", "x2", "x3"};
    g.complex.space.basis[-2] = {"y0", "y1", "y2"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    Matrix d1(3, 4);
    d1.at(0, 1) = Rational(1);
    g.complex.d.set_block(-1, d1);
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> num(-2, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            std::vector<std::pair<Label, Rational>> entry;
            for (int t = 0; t < 3; ++t) {
                const Rational c(num(rng), 2);
                if (!c.is_zero())
                    entry.emplace_back("y" + std::to_string(t), c);
            }
            if (!entry.empty())
                g.set_bracket("x" + std::to_string(i), "x" + std::to_string(j),
                              std::move(entry));
        }
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    int threads = 4;
    if (argc > 1)
        threads = std::atoi(argv[1]);
    std::cout << "openmp compiled: " << (par::openmp_compiled() ? "yes" : "no")
              << ", parallel threads: " << threads << "\n\n";

    std::mt19937_64 rng(2718);
    {
        const int n = 120;
        const Matrix a = random_matrix(rng, n);
        const Matrix b = random_matrix(rng, n);
        const auto t0 = Clock::now();
        const Matrix serial = mul_serial(a, b);
        const auto t1 = Clock::now();
        par::set_max_threads(threads);
        const auto t2 = Clock::now();
        const Matrix parallel = mul_parallel(a, b);
        const auto t3 = Clock::now();
        par::set_max_threads(1);
        std::cout << "matrix product " << n << "x" << n << ": serial " << seconds(t0, t1)
                  << " s, parallel " << seconds(t2, t3) << " s, equal: "
                  << ((serial == parallel) ? "yes" : "NO") << "\n";
    }
    {
        const int n = 70;
        const Matrix a = random_matrix(rng, n);
        par::set_max_threads(1);
        const auto t0 = Clock::now();
        const Rref serial = rref(a);
        const auto t1 = Clock::now();
        par::set_max_threads(threads);
        const auto t2 = Clock::now();
        const Rref parallel = rref(a);
        const auto t3 = Clock::now();
        par::set_max_threads(1);
        std::cout << "row reduction " << n << "x" << n << ":  serial " << seconds(t0, t1)
                  << " s, parallel " << seconds(t2, t3) << " s, equal: "
                  << ((serial.reduced == parallel.reduced &&
                       serial.transform == parallel.transform)
                          ? "yes"
                          : "NO")
                  << "\n";
    }
    {
        const Dgla g = bench_algebra();
        const ContractionBuild c = build_contraction(g.complex);
        const int order = 7;
        par::set_max_threads(1);
        const auto t0 = Clock::now();
        HptEngine serial_engine(g, c.contraction, order);
        const auto serial = serial_engine.compute_tau_and_d();
        const auto t1 = Clock::now();
        par::set_max_threads(threads);
        const auto t2 = Clock::now();
        HptEngine parallel_engine(g, c.contraction, order);
        const auto parallel = parallel_engine.compute_tau_and_d();
        const auto t3 = Clock::now();
        par::set_max_threads(1);
        bool equal = true;
        for (int len = 1; len <= order; ++len)
            if (!(serial.first.by_len[len] == parallel.first.by_len[len]))
                equal = false;
        std::cout << "transfer recursion to order " << order << ": serial "
                  << seconds(t0, t1) << " s, parallel " << seconds(t2, t3)
                  << " s, equal: " << (equal ? "yes" : "NO") << "\n";
    }
    return 0;
}
