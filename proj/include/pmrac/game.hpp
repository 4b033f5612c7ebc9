#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "pmrac/linalg.hpp"

namespace pmrac {

/// Input strings x in {0,1}^3 are indexed 0..7 with x1 the most significant
/// bit; bit_of(x, y) is the bit Bob must guess for question y in {0,1,2}.
inline int bit_of(int x, int y) { return (x >> (2 - y)) & 1; }
inline int complement_of(int x) { return 7 - x; }
inline bool even_parity(int x) { return (std::popcount(static_cast<unsigned>(x)) % 2) == 0; }

struct SharedState {
    CMatrix rho;  // 4x4, Hermitian, unit trace, PSD
};

struct EncodingUnitaries {
    std::array<CMatrix, 8> u;  // 2x2 unitaries, indexed by x
};

struct BobObservables {
    std::array<CMatrix, 3> b;  // 4x4 Hermitian dichotomic
};

struct Strategy {
    SharedState state;
    EncodingUnitaries alice;
    BobObservables bob;
};

struct GameValue {
    double s_q = 0;
    double delta = 0;
    std::array<double, 3> omegas{};
};

struct ValidationTolerances {
    double hermiticity = 1e-9;
    double trace = 1e-9;
    double psd = 1e-9;        // min eigenvalue >= -psd
    double unitarity = 1e-9;
    double dichotomy = 1e-8;  // ||B^2 - I||_maxabs
};

/// Throws std::invalid_argument naming the offending field
/// ("state", "unitaries/011", "observables/2", ...).
void validate_strategy(const Strategy& s, const ValidationTolerances& tol = {});

/// The eight encoded states rho_x = (U_x^dag (x) I) rho (U_x (x) I).
std::array<CMatrix, 8> apply_encoding(const SharedState& state, const EncodingUnitaries& alice);

/// (1/24) sum_{y,x} Tr[rho_x Pi_y^{x_y}] with Pi_y^b = (I + (-1)^b B_y)/2.
double success_direct(const Strategy& s);

/// Signed even-parity state sums M_y and odd-parity sums N_y.
std::array<CMatrix, 3> build_M(const std::array<CMatrix, 8>& states);
std::array<CMatrix, 3> build_N(const std::array<CMatrix, 8>& states);

/// Correlation function sum_y Tr[(N_y - M_y) B_y].
double delta(const std::array<CMatrix, 8>& states, const BobObservables& bob);

/// Success probability through the correlation-function route,
/// s_q = 1/2 + delta/48, with the scaled-norm weights omega_y.
GameValue success_via_delta(const Strategy& s);

/// Singlet state, the Pauli encoding unitaries, and the matched observables
/// attaining s_q = 1/2 + 1/sqrt(6).
Strategy canonical_strategy();

/// Optimal traditional one-qubit 3-bit RAC value, (1/2)(1 + 1/sqrt(3)),
/// evaluated from the explicit Bloch-vector construction.
double qrac_baseline();

/// eta * singlet + (1 - eta) * I/4.
SharedState depolarized_state(double eta);

inline double optimal_value() { return 0.5 + 1.0 / std::sqrt(6.0); }

}  // namespace pmrac
