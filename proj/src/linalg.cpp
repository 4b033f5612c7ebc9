#include "pmrac/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pmrac {

namespace {

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

}  // namespace

CMatrix::CMatrix(int dim, std::vector<Complex> entries) : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != static_cast<size_t>(dim) * dim)
        throw std::invalid_argument("CMatrix: entries length must be dim^2");
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    require_same_dim(*this, o, "add");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    require_same_dim(*this, o, "sub");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "multiply");
    const int n = a.dim();
    CMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

const CMatrix& sigma_x() {
    static const CMatrix m(2, {0.0, 1.0, 1.0, 0.0});
    return m;
}
const CMatrix& sigma_y() {
    static const CMatrix m(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0});
    return m;
}
const CMatrix& sigma_z() {
    static const CMatrix m(2, {1.0, 0.0, 0.0, -1.0});
    return m;
}
const CMatrix& id2() {
    static const CMatrix m = CMatrix::identity(2);
    return m;
}
const CMatrix& id4() {
    static const CMatrix m = CMatrix::identity(4);
    return m;
}

CMatrix adjoint(const CMatrix& a) {
    const int n = a.dim();
    CMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = std::conj(a(j, i));
    return c;
}

Complex trace(const CMatrix& a) {
    Complex t = 0;
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    CMatrix c(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) c(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return c;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }
CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

double max_abs(const CMatrix& a) {
    double m = 0;
    for (const auto& v : a.entries()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double m = 0;
    for (size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

double hermiticity_defect(const CMatrix& a) {
    double m = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

double unitarity_defect(const CMatrix& a) {
    return max_abs_diff(a * adjoint(a), CMatrix::identity(a.dim()));
}

double scaled_frobenius_norm(const CMatrix& a) {
    double s = 0;
    for (const auto& v : a.entries()) s += std::norm(v);
    return std::sqrt(s / a.dim());
}

namespace {

// Fix the global phase so the largest-modulus component is real positive.
// Among components within 1e-12 of the maximum modulus, the first wins.
void canonicalize_phase(std::vector<Complex>& v) {
    double best = 0;
    for (const auto& c : v) best = std::max(best, std::abs(c));
    if (best == 0) return;
    size_t idx = 0;
    for (size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) >= best - 1e-12) {
            idx = i;
            break;
        }
    const Complex phase = std::conj(v[idx]) / std::abs(v[idx]);
    for (auto& c : v) c *= phase;
    v[idx] = Complex(std::abs(v[idx]), 0);  // kill rounding in the pivot
}

bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

}  // namespace

EigenDecomposition hermitian_eig(const CMatrix& h) {
    constexpr double kHermTol = 1e-9;
    const double defect = hermiticity_defect(h);
    if (defect > kHermTol)
        throw std::invalid_argument("hermitian_eig: input not Hermitian (defect " +
                                    std::to_string(defect) + " > 1e-9)");
    const int n = h.dim();
    // Work on the symmetrized copy so tiny anti-Hermitian noise cannot bias sweeps.
    CMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    CMatrix v = CMatrix::identity(n);

    constexpr double kOffTol = 1e-14;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < kOffTol) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < kOffTol) continue;
                // Unitary 2x2 rotation U = diag(1, e^{-i phi}) * [[c,-s],[s,c]]
                // zeroing the (p,q) entry; phi = arg(apq).
                const Complex eiphi = apq / mag;
                const double app = a(p, p).real(), aqq = a(q, q).real();
                const double tau = (aqq - app) / (2 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const double c = 1.0 / std::sqrt(1 + t * t);
                const double s = t * c;
                // Column operations A <- A U, then row operations A <- U^dag A.
                for (int i = 0; i < n; ++i) {
                    const Complex aip = a(i, p), aiq = a(i, q) * std::conj(eiphi);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                    const Complex vip = v(i, p), viq = v(i, q) * std::conj(eiphi);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
                for (int j = 0; j < n; ++j) {
                    const Complex apj = a(p, j), aqj = a(q, j) * eiphi;
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
                a(p, q) = 0;
                a(q, p) = 0;
            }
    }

    std::vector<std::pair<double, std::vector<Complex>>> pairs(n);
    for (int k = 0; k < n; ++k) {
        pairs[k].first = a(k, k).real();
        pairs[k].second.resize(n);
        for (int i = 0; i < n; ++i) pairs[k].second[i] = v(i, k);
        // Normalize and canonicalize.
        double nrm = 0;
        for (const auto& c : pairs[k].second) nrm += std::norm(c);
        nrm = std::sqrt(nrm);
        for (auto& c : pairs[k].second) c /= nrm;
        canonicalize_phase(pairs[k].second);
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
        if (std::abs(x.first - y.first) > 1e-10) return x.first > y.first;
        return lex_less(x.second, y.second);
    });

    EigenDecomposition out;
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (auto& p : pairs) {
        out.eigenvalues.push_back(p.first);
        out.eigenvectors.push_back(std::move(p.second));
    }
    return out;
}

SignOperatorResult sign_operator(const CMatrix& h) {
    const auto eig = hermitian_eig(h);
    const int n = h.dim();
    SignOperatorResult res{CMatrix(n), false};
    for (int k = 0; k < n; ++k) {
        const double lambda = eig.eigenvalues[k];
        if (std::abs(lambda) <= 1e-12) res.zero_eigenvalue = true;
        const double sgn = (std::abs(lambda) <= 1e-12 || lambda > 0) ? 1.0 : -1.0;
        const auto& v = eig.eigenvectors[k];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) res.op(i, j) += sgn * v[i] * std::conj(v[j]);
    }
    return res;
}

CMatrix partial_trace(const CMatrix& m, Subsystem traced_out) {
    if (m.dim() != 4) throw std::invalid_argument("partial_trace: dim must be 4");
    CMatrix r(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                if (traced_out == Subsystem::Second)
                    r(i, j) += m(2 * i + k, 2 * j + k);
                else
                    r(i, j) += m(2 * k + i, 2 * k + j);
            }
    return r;
}

namespace {

// Reshuffle: R[2i+j][2k+l] = M[2i+k][2j+l], so M = A (x) B becomes
// R = vec(A) vec(B)^T.
CMatrix reshuffle(const CMatrix& m) {
    CMatrix r(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r(2 * i + j, 2 * k + l) = m(2 * i + k, 2 * j + l);
    return r;
}

}  // namespace

KronFactorization kron_factorize(const CMatrix& m) {
    if (m.dim() != 4) throw std::invalid_argument("kron_factorize: dim must be 4");
    const CMatrix r = reshuffle(m);
    // Leading left singular vector of R from the Hermitian matrix R R^dag.
    const CMatrix rrd = r * adjoint(r);
    const auto eig = hermitian_eig(rrd);
    const auto& u = eig.eigenvectors[0];  // vec(A) candidate, unit norm

    // Phase-rotate vec(A) onto the Hermitian matrices: for A = e^{-i alpha} H,
    // sum_ij A[i][j] A[j][i] = e^{-2 i alpha} * (positive real).
    CMatrix a0(2, {u[0], u[1], u[2], u[3]});
    Complex csum = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) csum += a0(i, j) * a0(j, i);
    if (std::abs(csum) > 1e-14) a0 *= std::exp(Complex(0, -0.5 * std::arg(csum)));
    CMatrix a = 0.5 * (a0 + adjoint(a0));
    const double nrm = scaled_frobenius_norm(a);
    if (nrm > 1e-14) a *= Complex(1.0 / nrm, 0);

    // Sign convention on the first significant entry.
    for (const auto& e : a.entries()) {
        if (std::abs(e) <= 1e-9) continue;
        const bool flip = (e.real() < -1e-12) || (std::abs(e.real()) <= 1e-12 && e.imag() < 0);
        if (flip) a *= Complex(-1, 0);
        break;
    }

    // Least-squares B for fixed A: vec(B)^T = vec(A)^dag R / ||vec(A)||^2.
    const Complex va[4] = {a(0, 0), a(0, 1), a(1, 0), a(1, 1)};
    double va2 = 0;
    for (const auto& c : va) va2 += std::norm(c);
    CMatrix b(2);
    for (int n = 0; n < 4; ++n) {
        Complex acc = 0;
        for (int mm = 0; mm < 4; ++mm) acc += std::conj(va[mm]) * r(mm, n);
        b(n / 2, n % 2) = acc / va2;
    }
    const double residual = max_abs_diff(m, kron(a, b));
    return {std::move(a), std::move(b), residual};
}

std::string to_string(const CMatrix& a) {
    std::ostringstream os;
    os.precision(6);
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            const Complex& c = a(i, j);
            os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
            if (j + 1 < a.dim()) os << " ";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace pmrac
