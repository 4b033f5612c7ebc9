#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pmrac/game.hpp"

namespace pmrac {

struct CheckResult {
    std::string name;
    double measured = 0;
    double target = 0;
    double tolerance = 0;
    bool pass = false;

    static CheckResult make(std::string name, double measured, double target, double tolerance) {
        CheckResult c{std::move(name), measured, target, tolerance, false};
        c.pass = std::abs(c.measured - c.target) <= c.tolerance;
        return c;
    }
};

struct CertificationReport {
    std::vector<CheckResult> checks;
    bool overall = false;
    std::string gauge_note;

    void add(CheckResult c) { checks.push_back(std::move(c)); }
    void finalize();
    void merge(const CertificationReport& other);
};

/// Local operator frame recovered from the M_y factorizations, with pair
/// signs re-gauged so the odd-parity decomposition coefficients a_y, b_y
/// come out +1 when the strategy admits it.
///
/// The optimum set contains two structural classes: in one, the two-operator
/// combination inside each N_y sits on the first (Alice) factor; in the
/// mirror class it sits on the second (Bob) factor, with the rotation between
/// the parity bases running in the opposite sense. Extraction reconstructs
/// N_y under both layouts and keeps the better fit; `mirrored` records which
/// class was found.
struct ExtractedFrame {
    CMatrix q1, p1, r1;  // Alice side
    CMatrix q2, p2, r2;  // Bob side
    std::array<double, 3> residuals{};  // per-y reconstruction residual of N_y
    std::array<int, 3> a{1, 1, 1};
    std::array<int, 3> b{1, 1, 1};
    bool mirrored = false;
    bool reliable = true;  // false when any factorization/reconstruction residual > 1e-6
};

struct GrandUnitaryDecomposition {
    Complex p, q, r, s;  // U_G = p I + q Q1 + r P1 + s R1
};

/// Operator-relation battery: completeness, overlap table, Tr[M_y N_y], omega_y,
/// B_y = sqrt(3/8)(N_y - M_y), and the M/N commutation algebra.
CertificationReport check_theorem1(const Strategy& s, double tol);

std::vector<CheckResult> check_entanglement(const SharedState& state, double tol);

ExtractedFrame extract_frame(const std::array<CMatrix, 8>& states);

/// Unitary-structure battery on the gauge-normalized unitaries: mutual
/// anticommutation of {U_011, U_101, U_110}, phase-insensitive match against
/// {i Q1, -i P1, -i R1}, and the encoded-state reconstructions from M/N.
CertificationReport check_unitary_structure(const Strategy& s, double tol);

struct GrandUnitaryResult {
    CMatrix u_g;
    GrandUnitaryDecomposition decomposition;
    std::vector<CheckResult> checks;
};

/// U_G = (-I + U_011 + U_101)/sqrt(3) from phase-aligned gauge-normalized
/// unitaries; unitarity, coefficient, and elementwise basis-mapping checks.
GrandUnitaryResult grand_unitary(const Strategy& s, const ExtractedFrame& frame, double tol);

/// Full certification: operator relations, entanglement, unitary structure, grand
/// unitary, and the game-value check against 1/2 + 1/sqrt(6).
CertificationReport certify(const Strategy& s, double tol);

}  // namespace pmrac
