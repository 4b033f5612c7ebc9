#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmrac/game.hpp"

namespace pmrac {

struct SeesawConfig {
    int max_rounds = 500;
    double convergence_tol = 1e-12;  // change in s_q per round that declares convergence
    double polish_tol = 1e-15;       // keep cycling below convergence_tol down to this floor
    int escape_attempts = 8;         // perturb-and-recycle tries from a converged plateau
    double escape_scale = 0.2;       // base magnitude of the plateau perturbation
    std::uint64_t seed = 0;
    int num_starts = 20;
    bool parallel = false;  // run starts concurrently; result is identical either way
};

struct SeesawResult {
    Strategy strategy;
    double value = 0;
    int rounds_used = 0;
    std::vector<double> history;  // s_q after each round
    bool converged = false;
    std::uint64_t seed = 0;
    std::string rng_name = "mt19937_64";
};

/// B_y = sign(N_y - M_y); the exact dichotomic maximizer of Delta for fixed
/// states. Zero operators fall back to the identity via the sign(0) = +1
/// convention.
BobObservables best_response_bob(const std::array<CMatrix, 8>& states);

/// Top eigenvector of G = sum_{x,y} (-1)^{x_y} (U_x (x) I) B_y (U_x^dag (x) I)
/// as a pure state; Tr[rho G] = 48 (s_q - 1/2). A vanishing G returns the
/// first basis state.
SharedState best_response_state(const EncodingUnitaries& alice, const BobObservables& bob);

/// Per-x exact maximizer of Tr[(U^dag (x) I) rho (U (x) I) C_x] with
/// C_x = sum_y (-1)^{x_y} B_y, through the quaternion parametrization
/// U = u0 I + i(u1 sx + u2 sy + u3 sz): the objective is u^T K_x u with K_x
/// real symmetric, maximized by its top eigenvector.
EncodingUnitaries best_response_unitaries(const SharedState& state, const BobObservables& bob);

/// Cyclic best responses (bob -> state -> unitaries) from the given start.
/// Iteration continues past convergence_tol down to polish_tol so the
/// converged strategy is accurate at the operator level, not just in value.
/// From a converged plateau, up to escape_attempts seeded perturbations are
/// tried and kept only when they strictly improve the value; the published
/// history contains the accepted monotone trajectory.
SeesawResult seesaw(const SeesawConfig& config, const Strategy& init);

/// Seeded random strategy: Haar-like unitaries from normalized Gaussian
/// quaternions, pure shared state from a normalized Gaussian 4-vector,
/// observables from signs of random Hermitian operators.
Strategy random_strategy(std::uint64_t seed);

/// Best seesaw result over num_starts seeded initializations; deterministic
/// given config.seed, ties resolved toward the earliest start.
SeesawResult multistart(const SeesawConfig& config);

}  // namespace pmrac
