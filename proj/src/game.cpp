#include "pmrac/game.hpp"

#include <stdexcept>

namespace pmrac {

namespace {

const std::array<std::string, 8> kBitStrings = {"000", "001", "010", "011",
                                                "100", "101", "110", "111"};

// Sign of rho_x in M_y (even parity) / N_y (odd parity); x_y = 0 contributes
// with the sign that makes Tr[rho_x B_y] count toward success.
int m_sign(int x, int y) {
    // M_1 = -rho_000 - rho_011 + rho_101 + rho_110, and cyclic patterns.
    return bit_of(x, y) == 0 ? -1 : 1;
}
int n_sign(int x, int y) { return bit_of(x, y) == 0 ? 1 : -1; }

}  // namespace

void validate_strategy(const Strategy& s, const ValidationTolerances& tol) {
    const CMatrix& rho = s.state.rho;
    if (rho.dim() != 4) throw std::invalid_argument("state: must be 4x4");
    if (hermiticity_defect(rho) > tol.hermiticity)
        throw std::invalid_argument("state: not Hermitian within tolerance");
    if (std::abs(trace(rho) - Complex(1, 0)) > tol.trace)
        throw std::invalid_argument("state: trace must be 1");
    const auto eig = hermitian_eig(rho);
    if (eig.eigenvalues.back() < -tol.psd)
        throw std::invalid_argument("state: not positive semidefinite (min eigenvalue " +
                                    std::to_string(eig.eigenvalues.back()) + ")");
    for (int x = 0; x < 8; ++x) {
        const CMatrix& u = s.alice.u[x];
        if (u.dim() != 2) throw std::invalid_argument("unitaries/" + kBitStrings[x] + ": must be 2x2");
        if (unitarity_defect(u) > tol.unitarity)
            throw std::invalid_argument("unitaries/" + kBitStrings[x] + ": not unitary within tolerance");
    }
    for (int y = 0; y < 3; ++y) {
        const CMatrix& b = s.bob.b[y];
        const std::string name = "observables/" + std::to_string(y);
        if (b.dim() != 4) throw std::invalid_argument(name + ": must be 4x4");
        if (hermiticity_defect(b) > tol.hermiticity)
            throw std::invalid_argument(name + ": not Hermitian within tolerance");
        if (max_abs_diff(b * b, id4()) > tol.dichotomy)
            throw std::invalid_argument(name + ": not dichotomic (B^2 != I) within tolerance");
    }
}

std::array<CMatrix, 8> apply_encoding(const SharedState& state, const EncodingUnitaries& alice) {
    std::array<CMatrix, 8> out;
    for (int x = 0; x < 8; ++x) {
        const CMatrix left = kron(adjoint(alice.u[x]), id2());
        const CMatrix right = kron(alice.u[x], id2());
        out[x] = left * state.rho * right;
    }
    return out;
}

double success_direct(const Strategy& s) {
    const auto states = apply_encoding(s.state, s.alice);
    double total = 0;
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 8; ++x) {
            const double sgn = bit_of(x, y) == 0 ? 1.0 : -1.0;
            total += 0.5 * (1.0 + sgn * trace(states[x] * s.bob.b[y]).real());
        }
    return total / 24.0;
}

std::array<CMatrix, 3> build_M(const std::array<CMatrix, 8>& states) {
    std::array<CMatrix, 3> m{CMatrix(4), CMatrix(4), CMatrix(4)};
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 8; ++x) {
            if (!even_parity(x)) continue;
            if (m_sign(x, y) > 0)
                m[y] += states[x];
            else
                m[y] -= states[x];
        }
    return m;
}

std::array<CMatrix, 3> build_N(const std::array<CMatrix, 8>& states) {
    std::array<CMatrix, 3> n{CMatrix(4), CMatrix(4), CMatrix(4)};
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 8; ++x) {
            if (even_parity(x)) continue;
            if (n_sign(x, y) > 0)
                n[y] += states[x];
            else
                n[y] -= states[x];
        }
    return n;
}

double delta(const std::array<CMatrix, 8>& states, const BobObservables& bob) {
    const auto m = build_M(states);
    const auto n = build_N(states);
    double d = 0;
    for (int y = 0; y < 3; ++y) d += trace((n[y] - m[y]) * bob.b[y]).real();
    return d;
}

GameValue success_via_delta(const Strategy& s) {
    const auto states = apply_encoding(s.state, s.alice);
    const auto m = build_M(states);
    const auto n = build_N(states);
    GameValue gv;
    for (int y = 0; y < 3; ++y) {
        gv.delta += trace((n[y] - m[y]) * s.bob.b[y]).real();
        gv.omegas[y] = scaled_frobenius_norm(n[y] - m[y]);
    }
    gv.s_q = 0.5 + gv.delta / 48.0;
    return gv;
}

Strategy canonical_strategy() {
    Strategy s;
    s.state.rho = 0.25 * (id4() - kron(sigma_x(), sigma_x()) - kron(sigma_y(), sigma_y()) -
                          kron(sigma_z(), sigma_z()));

    const Complex i(0, 1);
    const CMatrix u011 = i * sigma_x();
    const CMatrix u101 = -i * sigma_y();
    const CMatrix u110 = -i * sigma_z();
    const CMatrix ug = (1.0 / std::sqrt(3.0)) * (Complex(-1) * id2() + i * sigma_x() - i * sigma_y());

    s.alice.u[0b000] = id2();
    s.alice.u[0b011] = u011;
    s.alice.u[0b101] = u101;
    s.alice.u[0b110] = u110;
    // Odd-parity partners via the grand unitary: 000->001, 011->010,
    // 101->100, 110->111 elementwise.
    s.alice.u[0b001] = id2() * ug;
    s.alice.u[0b010] = u011 * ug;
    s.alice.u[0b100] = u101 * ug;
    s.alice.u[0b111] = u110 * ug;

    const double inv6 = 1.0 / std::sqrt(6.0);
    s.bob.b[0] = kron(inv6 * (Complex(-2) * sigma_x() + sigma_y() + sigma_z()), sigma_x());
    s.bob.b[1] = kron(inv6 * (Complex(-2) * sigma_y() + sigma_x() + sigma_z()), sigma_y());
    s.bob.b[2] = kron(inv6 * (Complex(-2) * sigma_z() + sigma_x() + sigma_y()), sigma_z());
    return s;
}

double qrac_baseline() {
    // One-qubit 3-bit RAC: Bloch vectors (+-1, +-1, +-1)/sqrt(3) matched to
    // the input bits (x_y = 0 -> +), measurements sigma_x, sigma_y, sigma_z.
    const std::array<const CMatrix*, 3> paulis = {&sigma_x(), &sigma_y(), &sigma_z()};
    double total = 0;
    for (int x = 0; x < 8; ++x) {
        CMatrix bloch(2);
        for (int y = 0; y < 3; ++y) {
            const double sgn = bit_of(x, y) == 0 ? 1.0 : -1.0;
            bloch += Complex(sgn / std::sqrt(3.0)) * (*paulis[y]);
        }
        const CMatrix rho = 0.5 * (id2() + bloch);
        for (int y = 0; y < 3; ++y) {
            const double sgn = bit_of(x, y) == 0 ? 1.0 : -1.0;
            const CMatrix proj = 0.5 * (id2() + Complex(sgn) * (*paulis[y]));
            total += trace(rho * proj).real();
        }
    }
    return total / 24.0;
}

SharedState depolarized_state(double eta) {
    if (eta < 0 || eta > 1) throw std::invalid_argument("depolarized_state: eta must lie in [0,1]");
    const CMatrix singlet = canonical_strategy().state.rho;
    return {Complex(eta) * singlet + Complex((1 - eta) * 0.25) * id4()};
}

}  // namespace pmrac
