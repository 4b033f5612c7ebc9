#pragma once

#include <complex>
#include <string>
#include <vector>

namespace pmrac {

using Complex = std::complex<double>;

/// Dense complex square matrix, row-major. Dimensions 2 and 4 in practice.
class CMatrix {
  public:
    CMatrix() : dim_(0) {}
    explicit CMatrix(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim) {}
    CMatrix(int dim, std::vector<Complex> entries);

    static CMatrix identity(int dim);
    static CMatrix zero(int dim) { return CMatrix(dim); }

    int dim() const { return dim_; }
    Complex& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
    const Complex& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * dim_ + c]; }
    const std::vector<Complex>& entries() const { return data_; }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(Complex s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) { return multiply(a, b); }

    friend CMatrix multiply(const CMatrix& a, const CMatrix& b);

  private:
    int dim_;
    std::vector<Complex> data_;
};

// Pauli matrices and identities.
const CMatrix& sigma_x();
const CMatrix& sigma_y();
const CMatrix& sigma_z();
const CMatrix& id2();
const CMatrix& id4();

CMatrix adjoint(const CMatrix& a);
Complex trace(const CMatrix& a);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

/// Largest |entry| of a; zero matrix gives 0.
double max_abs(const CMatrix& a);
/// max_ij |a_ij - b_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
/// max_ij |a_ij - conj(a_ji)|.
double hermiticity_defect(const CMatrix& a);
/// max-abs of A A^dag - I.
double unitarity_defect(const CMatrix& a);

/// (1/sqrt(dim)) sqrt(Tr[A^dag A]); normalized so the identity has norm 1.
double scaled_frobenius_norm(const CMatrix& a);

struct EigenDecomposition {
    std::vector<double> eigenvalues;       // descending
    std::vector<std::vector<Complex>> eigenvectors;  // unit norm, phase-canonical
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Eigenvalues descending;
/// each eigenvector's global phase fixed so its largest-modulus component is
/// real positive; degenerate blocks ordered lexicographically by that
/// representative. Throws std::invalid_argument when the hermiticity defect
/// exceeds 1e-9.
EigenDecomposition hermitian_eig(const CMatrix& h);

struct SignOperatorResult {
    CMatrix op;
    bool zero_eigenvalue = false;  // some |lambda| <= 1e-12, sign(0) := +1 applied
};

/// Sum sgn(lambda_k) v_k v_k^dag with sgn(0) := +1.
SignOperatorResult sign_operator(const CMatrix& h);

enum class Subsystem { First, Second };

/// Trace out the named qubit of a 4x4 operator; returns the 2x2 remainder.
CMatrix partial_trace(const CMatrix& m, Subsystem traced_out);

struct KronFactorization {
    CMatrix a;        // 2x2, Hermitian-projected, unit scaled-Frobenius norm, sign-fixed
    CMatrix b;        // 2x2
    double residual;  // max-abs of m - kron(a, b)
};

/// Nearest rank-1 Kronecker factorization of a 4x4 matrix via the leading
/// singular pair of the reshuffled matrix. The left factor is phase-rotated
/// onto the Hermitian matrices, normalized to unit scaled-Frobenius norm, and
/// sign-fixed so its first entry of modulus > 1e-9 has positive real part
/// (positive imaginary part when the real part vanishes).
KronFactorization kron_factorize(const CMatrix& m);

std::string to_string(const CMatrix& a);

}  // namespace pmrac
