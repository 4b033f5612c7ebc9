// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "pmrac/certifier.hpp"
#include "pmrac/classical.hpp"
#include "pmrac/optimizer.hpp"

using namespace pmrac;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion1_classical_bounds() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto b1 = classical::enumerate_bound(3, 1);
    const auto b2 = classical::enumerate_bound(3, 2, classical::Execution::Parallel);
    const double secs = elapsed_s(t0);
    const bool pass = b1 == classical::RationalScore{3, 4} &&
                      b2 == classical::RationalScore{5, 6} && secs < 10.0;
    report(1, "classical bounds 3/4 and 5/6, exact, under 10 s", pass,
           b1.to_fraction() + ", " + b2.to_fraction() + ", " + std::to_string(secs) + " s");
}

void criterion2_canonical_optimum() {
    const Strategy s = canonical_strategy();
    const double sq = success_direct(s);
    const auto gv = success_via_delta(s);
    bool pass = std::abs(sq - optimal_value()) <= 1e-12;
    pass = pass && std::abs(gv.delta - 8 * std::sqrt(6.0)) <= 1e-10;
    for (double w : gv.omegas) pass = pass && std::abs(w - std::sqrt(8.0 / 3.0)) <= 1e-10;
    report(2, "canonical optimum: s_q, Delta, omegas", pass);
}

void criterion3_path_identity() {
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const Strategy s = random_strategy(seed);
        worst = std::max(worst, std::abs(success_direct(s) - success_via_delta(s).s_q));
    }
    report(3, "path identity on 10^4 random strategies", worst <= 1e-12,
           "worst deviation " + std::to_string(worst));
}

void criterion4_upper_bound() {
    const double cap = optimal_value() + 1e-9;
    double worst = 0;
    bool pass = true;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const double v = success_direct(random_strategy(seed));
        worst = std::max(worst, v);
        pass = pass && v <= cap;
    }
    SeesawConfig cfg;
    cfg.seed = 1;
    cfg.num_starts = 20;
    const auto res = multistart(cfg);
    pass = pass && res.value <= cap;
    report(4, "no strategy exceeds 1/2 + 1/sqrt(6) + 1e-9", pass,
           "max observed " + std::to_string(std::max(worst, res.value)));
}

void criterion5_seesaw_attainment() {
    const auto t0 = std::chrono::steady_clock::now();
    SeesawConfig cfg;
    cfg.seed = 7;
    int within = 0;
    double best = 0;
    for (int i = 0; i < 20; ++i) {
        cfg.seed = 7 + static_cast<std::uint64_t>(i);
        const auto res = seesaw(cfg, random_strategy(cfg.seed));
        if (std::abs(res.value - optimal_value()) <= 1e-6) ++within;
        best = std::max(best, res.value);
    }
    const double secs = elapsed_s(t0);
    const bool pass =
        within >= 18 && std::abs(best - optimal_value()) <= 1e-6 && secs < 60.0;
    report(5, "seesaw attainment over 20 starts", pass,
           std::to_string(within) + "/20 within 1e-6, best " + std::to_string(best) + ", " +
               std::to_string(secs) + " s");
}

void criterion6_certify_canonical() {
    const auto rep = certify(canonical_strategy(), 1e-9);
    std::string first_fail;
    for (const auto& c : rep.checks)
        if (!c.pass && first_fail.empty()) first_fail = c.name;
    report(6, "certification of the canonical strategy at 1e-9", rep.overall,
           rep.overall ? std::to_string(rep.checks.size()) + " checks" : "first failure " + first_fail);
}

void criterion7_end_to_end() {
    int passed = 0;
    SeesawConfig cfg;
    for (int i = 0; i < 20; ++i) {
        cfg.seed = 100 + static_cast<std::uint64_t>(i);
        const auto res = seesaw(cfg, random_strategy(cfg.seed));
        if (std::abs(res.value - optimal_value()) > 1e-6) continue;
        if (certify(res.strategy, 1e-6).overall) ++passed;
    }
    report(7, "optimize -> certify pipeline at tol 1e-6", passed >= 18,
           std::to_string(passed) + "/20 seeds certified");
}

void criterion8_baseline_ordering() {
    const double baseline = qrac_baseline();
    const double classical_2 = classical::enumerate_bound(3, 2).value();
    const bool pass = std::abs(baseline - 0.5 * (1 + 1.0 / std::sqrt(3.0))) <= 1e-12 &&
                      classical_2 < optimal_value();
    report(8, "baseline ordering: qrac = (1+1/sqrt 3)/2, classical 5/6 < variant optimum", pass);
}

void criterion9_noise_affinity() {
    Strategy s = canonical_strategy();
    bool pass = true;
    double worst = 0;
    for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        s.state = depolarized_state(eta);
        const double dev = std::abs(success_direct(s) - (0.5 + eta / std::sqrt(6.0)));
        worst = std::max(worst, dev);
        pass = pass && dev <= 1e-10;
    }
    report(9, "depolarizing affinity s_q = 1/2 + eta/sqrt(6)", pass,
           "worst deviation " + std::to_string(worst));
}

void criterion10_linalg_properties() {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    bool pass = true;
    for (int trial = 0; trial < 1000; ++trial) {
        CMatrix h(4);
        for (int i = 0; i < 4; ++i) {
            h(i, i) = gauss(rng);
            for (int j = i + 1; j < 4; ++j) {
                h(i, j) = Complex(gauss(rng), gauss(rng));
                h(j, i) = std::conj(h(i, j));
            }
        }
        const auto eig = hermitian_eig(h);
        CMatrix recon(4);
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    recon(i, j) +=
                        eig.eigenvalues[k] * eig.eigenvectors[k][i] * std::conj(eig.eigenvectors[k][j]);
        pass = pass && max_abs_diff(recon, h) <= 1e-10;

        // exact Kronecker products round-trip
        CMatrix a(2), b(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                a(i, j) = Complex(gauss(rng), gauss(rng));
                b(i, j) = Complex(gauss(rng), gauss(rng));
            }
        CMatrix ah = Complex(0.5) * (a + adjoint(a));
        CMatrix bh = Complex(0.5) * (b + adjoint(b));
        pass = pass && kron_factorize(kron(ah, bh)).residual <= 1e-10;

        double min_abs = 1e300;
        for (double l : eig.eigenvalues) min_abs = std::min(min_abs, std::abs(l));
        if (min_abs > 1e-6) {
            const CMatrix sgn = sign_operator(h).op;
            pass = pass && max_abs_diff(sgn * sgn, id4()) <= 1e-9;
        }
    }
    report(10, "linalg property suite (eig, kron_factorize, sign)", pass);
}

}  // namespace

int main() {
    criterion1_classical_bounds();
    criterion2_canonical_optimum();
    criterion3_path_identity();
    criterion4_upper_bound();
    criterion5_seesaw_attainment();
    criterion6_certify_canonical();
    criterion7_end_to_end();
    criterion8_baseline_ordering();
    criterion9_noise_affinity();
    criterion10_linalg_properties();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
