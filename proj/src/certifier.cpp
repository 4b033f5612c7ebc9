#include "pmrac/certifier.hpp"

#include <cmath>
#include <stdexcept>

namespace pmrac {

namespace {

const std::array<std::string, 8> kBits = {"000", "001", "010", "011", "100", "101", "110", "111"};

// The four complement pairs of Eq-style overlap zeros and the twelve
// cross-parity pairs with overlap 1/3, transcribed literally.
constexpr std::array<std::pair<int, int>, 4> kComplementPairs = {
    std::pair{0b000, 0b111}, {0b011, 0b100}, {0b101, 0b010}, {0b110, 0b001}};
constexpr std::array<std::pair<int, int>, 12> kThirdPairs = {
    std::pair{0b000, 0b001}, {0b000, 0b010}, {0b000, 0b100}, {0b011, 0b001},
    {0b011, 0b010},          {0b011, 0b111}, {0b101, 0b001}, {0b101, 0b100},
    {0b101, 0b111},          {0b110, 0b010}, {0b110, 0b100}, {0b110, 0b111}};

double overlap(const CMatrix& a, const CMatrix& b) { return trace(a * b).real(); }

// Gauge-normalized encoding unitaries V_x with V_000 = I: the V_x satisfy
// rho_x = (V_x^dag (x) I) rho_000 (V_x (x) I) and are invariant (up to
// conjugation by the absorbed unitary) under the strategy's gauge freedoms.
std::array<CMatrix, 8> gauge_normalize(const EncodingUnitaries& alice) {
    const CMatrix u000_dag = adjoint(alice.u[0]);
    std::array<CMatrix, 8> v;
    for (int x = 0; x < 8; ++x) {
        v[x] = u000_dag * alice.u[x];
        // Strip the global phase: largest-modulus entry real positive.
        double best = 0;
        int bi = 0, bj = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (std::abs(v[x](i, j)) > best + 1e-12) {
                    best = std::abs(v[x](i, j));
                    bi = i;
                    bj = j;
                }
        if (best > 1e-12) v[x] *= std::conj(v[x](bi, bj)) / best;
    }
    return v;
}

// min over global phase of max-abs(e^{i phi} a - target).
double phase_insensitive_distance(const CMatrix& a, const CMatrix& target) {
    const Complex t = trace(adjoint(target) * a);
    CMatrix rotated = a;
    if (std::abs(t) > 1e-14) rotated *= std::conj(t) / std::abs(t);
    return max_abs_diff(rotated, target);
}

// Phase-rotate a onto target in the least-squares sense.
CMatrix phase_align(const CMatrix& a, const CMatrix& target) {
    const Complex t = trace(adjoint(target) * a);
    if (std::abs(t) < 1e-14) return a;
    return a * (std::conj(t) / std::abs(t));
}

}  // namespace

void CertificationReport::finalize() {
    overall = true;
    for (const auto& c : checks) overall = overall && c.pass;
}

void CertificationReport::merge(const CertificationReport& other) {
    for (const auto& c : other.checks) checks.push_back(c);
    if (!other.gauge_note.empty()) {
        if (!gauge_note.empty()) gauge_note += "; ";
        gauge_note += other.gauge_note;
    }
}

CertificationReport check_theorem1(const Strategy& s, double tol) {
    validate_strategy(s);
    CertificationReport rep;
    const auto states = apply_encoding(s.state, s.alice);
    const auto m = build_M(states);
    const auto n = build_N(states);

    CMatrix even_sum(4), odd_sum(4);
    for (int x = 0; x < 8; ++x) (even_parity(x) ? even_sum : odd_sum) += states[x];
    rep.add(CheckResult::make("thm1/completeness_even", max_abs_diff(even_sum, id4()), 0, tol));
    rep.add(CheckResult::make("thm1/completeness_odd", max_abs_diff(odd_sum, id4()), 0, tol));

    for (const auto& [x, xc] : kComplementPairs)
        rep.add(CheckResult::make("thm1/overlap_" + kBits[x] + "_" + kBits[xc],
                                  overlap(states[x], states[xc]), 0, tol));
    for (const auto& [x, xp] : kThirdPairs)
        rep.add(CheckResult::make("thm1/overlap_" + kBits[x] + "_" + kBits[xp],
                                  overlap(states[x], states[xp]), 1.0 / 3.0, tol));

    for (int y = 0; y < 3; ++y)
        rep.add(CheckResult::make("thm1/tr_M" + std::to_string(y + 1) + "N" + std::to_string(y + 1),
                                  trace(m[y] * n[y]).real(), -4.0 / 3.0, tol));
    const double omega_target = std::sqrt(8.0 / 3.0);
    for (int y = 0; y < 3; ++y)
        rep.add(CheckResult::make("thm1/omega_" + std::to_string(y + 1),
                                  scaled_frobenius_norm(n[y] - m[y]), omega_target, tol));

    const double scale = std::sqrt(3.0 / 8.0);
    for (int y = 0; y < 3; ++y)
        rep.add(CheckResult::make(
            "thm1/bob_matches_" + std::to_string(y + 1),
            max_abs_diff(s.bob.b[y], Complex(scale) * (n[y] - m[y])), 0, tol));

    for (int y = 0; y < 3; ++y)
        for (int yp = y + 1; yp < 3; ++yp) {
            const std::string suffix = std::to_string(y + 1) + std::to_string(yp + 1);
            rep.add(CheckResult::make("thm1/commute_M" + suffix,
                                      max_abs(commutator(m[y], m[yp])), 0, tol));
            rep.add(CheckResult::make("thm1/commute_N" + suffix,
                                      max_abs(commutator(n[y], n[yp])), 0, tol));
        }
    rep.add(CheckResult::make("thm1/M1_is_minus_M2M3", max_abs_diff(m[0], Complex(-1) * (m[1] * m[2])),
                              0, tol));
    rep.add(CheckResult::make("thm1/N1_is_minus_N2N3", max_abs_diff(n[0], Complex(-1) * (n[1] * n[2])),
                              0, tol));
    rep.finalize();
    return rep;
}

std::vector<CheckResult> check_entanglement(const SharedState& state, double tol) {
    std::vector<CheckResult> out;
    out.push_back(CheckResult::make("ent/purity", trace(state.rho * state.rho).real(), 1.0, tol));
    const CMatrix half_id = Complex(0.5) * id2();
    out.push_back(CheckResult::make(
        "ent/reduced_alice", max_abs_diff(partial_trace(state.rho, Subsystem::Second), half_id), 0, tol));
    out.push_back(CheckResult::make(
        "ent/reduced_bob", max_abs_diff(partial_trace(state.rho, Subsystem::First), half_id), 0, tol));
    return out;
}

namespace {

// Builds one orientation candidate: factor-pair signs re-gauged from the N_1
// coefficients, a_y/b_y read off by projection, and the per-y residual of the
// signed reconstruction N_y = -M_y/3 + a_y (2 sqrt2 / 3) M'_y.
ExtractedFrame frame_candidate(const std::array<CMatrix, 3>& m, const std::array<CMatrix, 3>& n,
                               const std::array<KronFactorization, 3>& facs, bool mirrored) {
    ExtractedFrame f;
    f.q1 = facs[0].a;
    f.q2 = facs[0].b;
    f.p1 = facs[1].a;
    f.p2 = facs[1].b;
    f.r1 = facs[2].a;
    f.r2 = facs[2].b;
    f.mirrored = mirrored;

    // Coefficient of A (x) B inside a Hermitian 4x4, unit-dichotomic basis.
    const auto coeff = [](const CMatrix& a, const CMatrix& b, const CMatrix& in) {
        return trace(adjoint(kron(a, b)) * in).real() / 4.0;
    };

    // M_y is invariant under flipping both members of a factor pair; choose
    // the (P1,P2) and (R1,R2) signs that make the N_1 coefficients positive.
    const CMatrix t1 = n[0] + Complex(1.0 / 3.0) * m[0];
    const double cp = mirrored ? coeff(f.q1, f.p2, t1) : coeff(f.p1, f.q2, t1);
    const double cr = mirrored ? coeff(f.q1, f.r2, t1) : coeff(f.r1, f.q2, t1);
    if (cp < 0) {
        f.p1 *= Complex(-1);
        f.p2 *= Complex(-1);
    }
    if (cr < 0) {
        f.r1 *= Complex(-1);
        f.r2 *= Complex(-1);
    }

    // Per y: the two operators entering the combination and the fixed factor
    // carried over from M_y. Normal orientation combines on the first
    // (Alice) factor; the mirror combines on the second (Bob) factor.
    struct Layout {
        const CMatrix *comb1, *comb2, *fixed;
    };
    const std::array<Layout, 3> layout =
        mirrored ? std::array<Layout, 3>{{{&f.p2, &f.r2, &f.q1},
                                          {&f.q2, &f.r2, &f.p1},
                                          {&f.q2, &f.p2, &f.r1}}}
                 : std::array<Layout, 3>{{{&f.p1, &f.r1, &f.q2},
                                          {&f.q1, &f.r1, &f.p2},
                                          {&f.q1, &f.p1, &f.r2}}};

    const double lead = 2.0 * std::sqrt(2.0) / 3.0;
    double worst = 0;
    for (int y = 0; y < 3; ++y) {
        const CMatrix ty = n[y] + Complex(1.0 / 3.0) * m[y];
        const auto& lay = layout[y];
        const auto pair_coeff = [&](const CMatrix& c) {
            return mirrored ? coeff(*lay.fixed, c, ty) : coeff(c, *lay.fixed, ty);
        };
        const double alpha = pair_coeff(*lay.comb1) >= 0 ? 1.0 : -1.0;
        const double beta = pair_coeff(*lay.comb2) >= 0 ? 1.0 : -1.0;
        f.a[y] = static_cast<int>(alpha);
        f.b[y] = static_cast<int>(alpha * beta);
        const CMatrix comb =
            Complex(1.0 / std::sqrt(2.0)) * (*lay.comb1 + Complex(f.b[y]) * (*lay.comb2));
        const CMatrix mprime = mirrored ? kron(*lay.fixed, comb) : kron(comb, *lay.fixed);
        const CMatrix recon = Complex(-1.0 / 3.0) * m[y] + Complex(f.a[y] * lead) * mprime;
        // Deviation from the certified structure: reconstruction error, the
        // factorization error, and how far the carried-over factor is from
        // dichotomic (catches degenerate near-zero M_y).
        f.residuals[y] = std::max({max_abs_diff(n[y], recon), facs[y].residual,
                                   max_abs_diff((*lay.fixed) * (*lay.fixed), id2())});
        worst = std::max(worst, f.residuals[y]);
    }
    f.reliable = worst <= 1e-6;
    return f;
}

double worst_residual(const ExtractedFrame& f) {
    return std::max({f.residuals[0], f.residuals[1], f.residuals[2]});
}

}  // namespace

ExtractedFrame extract_frame(const std::array<CMatrix, 8>& states) {
    const auto m = build_M(states);
    const auto n = build_N(states);
    const std::array<KronFactorization, 3> facs = {kron_factorize(m[0]), kron_factorize(m[1]),
                                                   kron_factorize(m[2])};
    const ExtractedFrame normal = frame_candidate(m, n, facs, false);
    const ExtractedFrame mirror = frame_candidate(m, n, facs, true);
    return worst_residual(mirror) < worst_residual(normal) ? mirror : normal;
}

CertificationReport check_unitary_structure(const Strategy& s, double tol) {
    validate_strategy(s);
    CertificationReport rep;
    const auto states = apply_encoding(s.state, s.alice);
    const auto frame = extract_frame(states);
    const auto v = gauge_normalize(s.alice);
    rep.gauge_note =
        "unitaries normalized to V_x = U_000^dag U_x with global phases stripped; "
        "matches are phase-insensitive";
    if (frame.mirrored)
        rep.gauge_note += "; frame orientation mirrored (combination on the second factor)";

    for (int y = 0; y < 3; ++y)
        rep.add(CheckResult::make("thm2/frame_residual_" + std::to_string(y + 1), frame.residuals[y],
                                  0, 1e-6));
    if (!frame.reliable) rep.gauge_note += "; frame unreliable, structure checks indeterminate";

    const std::array<int, 3> odd_core = {0b011, 0b101, 0b110};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            rep.add(CheckResult::make(
                "thm2/anticommute_U" + kBits[odd_core[i]] + "_U" + kBits[odd_core[j]],
                max_abs(anticommutator(v[odd_core[i]], v[odd_core[j]])), 0, tol));

    const Complex i1(0, 1);
    rep.add(CheckResult::make("thm2/U011_is_iQ1",
                              phase_insensitive_distance(v[0b011], i1 * frame.q1), 0, tol));
    rep.add(CheckResult::make("thm2/U101_is_minus_iP1",
                              phase_insensitive_distance(v[0b101], -i1 * frame.p1), 0, tol));
    rep.add(CheckResult::make("thm2/U110_is_minus_iR1",
                              phase_insensitive_distance(v[0b110], -i1 * frame.r1), 0, tol));

    // States must match their M/N reconstructions.
    const auto m = build_M(states);
    const auto n = build_N(states);
    auto mix = [](const CMatrix& a, double s1, const CMatrix& b, double s2, const CMatrix& c,
                  double s3) {
        return Complex(0.25) * (id4() + Complex(s1) * a + Complex(s2) * b + Complex(s3) * c);
    };
    const std::array<std::pair<int, CMatrix>, 8> recon = {
        std::pair{0b000, mix(m[0], -1, m[1], -1, m[2], -1)},
        {0b011, mix(m[0], -1, m[1], 1, m[2], 1)},
        {0b101, mix(m[0], 1, m[1], -1, m[2], 1)},
        {0b110, mix(m[0], 1, m[1], 1, m[2], -1)},
        {0b001, mix(n[0], 1, n[1], 1, n[2], -1)},
        {0b010, mix(n[0], 1, n[1], -1, n[2], 1)},
        {0b100, mix(n[0], -1, n[1], 1, n[2], 1)},
        {0b111, mix(n[0], -1, n[1], -1, n[2], -1)}};
    for (const auto& [x, target] : recon)
        rep.add(CheckResult::make("thm2/state_recon_" + kBits[x], max_abs_diff(states[x], target), 0,
                                  tol));
    rep.finalize();
    return rep;
}

GrandUnitaryResult grand_unitary(const Strategy& s, const ExtractedFrame& frame, double tol) {
    GrandUnitaryResult out;
    const Complex i1(0, 1);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);

    // The grand rotation acts on the factor that carries the two-operator
    // combination: the first (Alice) factor in the normal class, where it is
    // assembled from the strategy's own phase-aligned unitaries, and the
    // second (Bob) factor in the mirror class, where it is assembled from the
    // frame directly (the encoding unitaries live on the first factor only).
    const CMatrix& fq = frame.mirrored ? frame.q2 : frame.q1;
    const CMatrix& fp = frame.mirrored ? frame.p2 : frame.p1;
    const CMatrix& fr = frame.mirrored ? frame.r2 : frame.r1;
    if (frame.mirrored) {
        out.u_g = Complex(inv_sqrt3) * (Complex(-1) * id2() + i1 * fq - i1 * fp);
    } else {
        const auto v = gauge_normalize(s.alice);
        const CMatrix u011 = phase_align(v[0b011], i1 * fq);
        const CMatrix u101 = phase_align(v[0b101], -i1 * fp);
        out.u_g = Complex(inv_sqrt3) * (Complex(-1) * id2() + u011 + u101);
    }

    out.checks.push_back(
        CheckResult::make("ug/unitarity", unitarity_defect(out.u_g), 0, tol));

    // Coefficients over {I, Q, P, R} of the combination side; each basis
    // element has Tr[X^dag X] = 2.
    out.decomposition.p = trace(out.u_g) / 2.0;
    out.decomposition.q = trace(adjoint(fq) * out.u_g) / 2.0;
    out.decomposition.r = trace(adjoint(fp) * out.u_g) / 2.0;
    out.decomposition.s = trace(adjoint(fr) * out.u_g) / 2.0;
    out.checks.push_back(CheckResult::make(
        "ug/coeff_p", std::abs(out.decomposition.p - Complex(-inv_sqrt3)), 0, tol));
    out.checks.push_back(CheckResult::make(
        "ug/coeff_q", std::abs(out.decomposition.q - i1 * inv_sqrt3), 0, tol));
    out.checks.push_back(CheckResult::make(
        "ug/coeff_r", std::abs(out.decomposition.r + i1 * inv_sqrt3), 0, tol));
    out.checks.push_back(CheckResult::make("ug/coeff_s", std::abs(out.decomposition.s), 0, tol));

    // Elementwise basis mapping 000->001, 011->010, 101->100, 110->111.
    // Depending on the structural class and the handedness of the extracted
    // frame, the rotation between the parity bases runs in either sense; both
    // conjugation directions are evaluated and the better fit is certified
    // (ties keep the forward sense, which is exact for the canonical case).
    const auto states = apply_encoding(s.state, s.alice);
    const std::array<std::pair<int, int>, 4> mapping = {
        std::pair{0b000, 0b001}, {0b011, 0b010}, {0b101, 0b100}, {0b110, 0b111}};
    const CMatrix fwd_left =
        frame.mirrored ? kron(id2(), adjoint(out.u_g)) : kron(adjoint(out.u_g), id2());
    const CMatrix fwd_right = frame.mirrored ? kron(id2(), out.u_g) : kron(out.u_g, id2());
    std::array<std::array<double, 4>, 2> dev{};
    double worst_fwd = 0, worst_inv = 0;
    for (int i = 0; i < 4; ++i) {
        const auto& [src, dst] = mapping[i];
        dev[0][i] = max_abs_diff(fwd_left * states[src] * fwd_right, states[dst]);
        dev[1][i] = max_abs_diff(fwd_right * states[src] * fwd_left, states[dst]);
        worst_fwd = std::max(worst_fwd, dev[0][i]);
        worst_inv = std::max(worst_inv, dev[1][i]);
    }
    const int sense = worst_inv < worst_fwd ? 1 : 0;
    for (int i = 0; i < 4; ++i) {
        const auto& [src, dst] = mapping[i];
        out.checks.push_back(CheckResult::make("ug/map_" + kBits[src] + "_to_" + kBits[dst],
                                               dev[sense][i], 0, tol));
    }
    return out;
}

CertificationReport certify(const Strategy& s, double tol) {
    validate_strategy(s);
    CertificationReport rep = check_theorem1(s, tol);
    for (auto& c : check_entanglement(s.state, tol)) rep.add(std::move(c));
    rep.merge(check_unitary_structure(s, tol));
    const auto frame = extract_frame(apply_encoding(s.state, s.alice));
    for (auto& c : grand_unitary(s, frame, tol).checks) rep.add(std::move(c));
    rep.add(CheckResult::make("value/s_q", success_direct(s), optimal_value(), tol));
    rep.finalize();
    return rep;
}

}  // namespace pmrac
