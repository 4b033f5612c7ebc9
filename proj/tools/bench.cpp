// Compares the serial reference paths against the OpenMP-parallel kernels:
// classical encoding enumeration and multistart seesaw.

#include <chrono>
#include <cstdio>

#include "pmrac/classical.hpp"
#include "pmrac/optimizer.hpp"

namespace {

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    using namespace pmrac;
    using classical::Execution;

    std::printf("%-34s %12s %12s %8s\n", "benchmark", "serial(ms)", "parallel(ms)", "speedup");

    classical::RationalScore rs, rp;
    const double ts = time_ms([&] { rs = classical::enumerate_bound(3, 2, Execution::Serial); });
    const double tp = time_ms([&] { rp = classical::enumerate_bound(3, 2, Execution::Parallel); });
    std::printf("%-34s %12.2f %12.2f %7.2fx   (%s vs %s)\n", "classical enumerate_bound(3,2)", ts,
                tp, ts / tp, rs.to_fraction().c_str(), rp.to_fraction().c_str());

    SeesawConfig cfg;
    cfg.seed = 7;
    cfg.num_starts = 20;
    SeesawResult ss, sp;
    cfg.parallel = false;
    const double os = time_ms([&] { ss = multistart(cfg); });
    cfg.parallel = true;
    const double op = time_ms([&] { sp = multistart(cfg); });
    std::printf("%-34s %12.2f %12.2f %7.2fx   (%.12f vs %.12f)\n", "multistart seesaw (20 starts)",
                os, op, os / op, ss.value, sp.value);

    const bool agree = rs.numerator == rp.numerator && rs.denominator == rp.denominator &&
                       ss.value == sp.value && ss.seed == sp.seed;
    std::printf("serial/parallel agreement: %s\n", agree ? "ok" : "MISMATCH");
    return agree ? 0 : 1;
}
