#pragma once

#include <complex>
#include <span>
#include <vector>

// Dense complex linear algebra kernel for small Hermitian problems:
// products, Kronecker products, partial trace, Jacobi eigendecomposition,
// von Neumann entropy. Everything is value-semantic and thread-safe.

namespace qswitch {

using Complex = std::complex<double>;

namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double unit_trace = 1e-10;
inline constexpr double min_eigenvalue = -1e-9;
inline constexpr double entropy_floor = 1e-14;
inline constexpr double eig_symmetrize = 1e-8;
}  // namespace tol

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    explicit ComplexMatrix(int dim);

    static ComplexMatrix identity(int dim);

    int dim() const noexcept { return dim_; }

    Complex& operator()(int r, int c) noexcept { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    const Complex& operator()(int r, int c) const noexcept {
        return a_[static_cast<std::size_t>(r) * dim_ + c];
    }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    bool all_finite() const noexcept;

private:
    int dim_;
    std::vector<Complex> a_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

/// result.dim = a.dim * b.dim; block (i,j) equals a(i,j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |a - a^dagger| over all entries.
double hermiticity_defect(const ComplexMatrix& a);

/// Trace-one Hermitian PSD matrix plus the tensor-factor dimensions of the
/// space it lives on (e.g. {d, m} for target (x) control, target outermost).
/// Construction validates Hermiticity, unit trace and positivity.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix mat, std::vector<int> factors);

    const ComplexMatrix& mat() const noexcept { return mat_; }
    const std::vector<int>& factors() const noexcept { return factors_; }
    int dim() const noexcept { return mat_.dim(); }

private:
    ComplexMatrix mat_;
    std::vector<int> factors_;
};

/// Partial trace over all factors except `keep` (0-based index into factors).
/// Raw version operates on any matrix with the given factor layout.
ComplexMatrix partial_trace_mat(const ComplexMatrix& m, std::span<const int> factors, int keep);
DensityMatrix partial_trace(const DensityMatrix& rho, int keep);

struct HermitianSpectrum {
    std::vector<double> eigenvalues;  // sorted descending
    ComplexMatrix eigenvectors;       // columns, same order
};

/// Cyclic Jacobi diagonalization. Inputs with Hermiticity defect up to
/// tol::eig_symmetrize are symmetrized; anything worse throws.
HermitianSpectrum eig_hermitian(const ComplexMatrix& a);

/// Base-2 von Neumann entropy. Eigenvalues below tol::entropy_floor
/// contribute nothing; eigenvalues below tol::min_eigenvalue throw.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_from_eigenvalues(std::span<const double> eigenvalues);

}  // namespace qswitch
