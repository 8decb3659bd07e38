#include "qswitch/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qswitch {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
    a_.assign(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (dim_ != rhs.dim_) throw std::invalid_argument("matrix add: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (dim_ != rhs.dim_) throw std::invalid_argument("matrix sub: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
}

bool ComplexMatrix::all_finite() const noexcept {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matmul: dimension mismatch");
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (int r = 0; r < nb; ++r)
                for (int c = 0; c < nb; ++c) out(i * nb + r, j * nb + c) = aij * b(r, c);
        }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = std::conj(a(j, i));
    return out;
}

Complex trace(const ComplexMatrix& a) {
    Complex t{0.0, 0.0};
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j <= i; ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, std::vector<int> factors)
    : mat_(std::move(mat)), factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("DensityMatrix: factors must be non-empty");
    long long prod = 1;
    for (int f : factors_) {
        if (f < 1) throw std::invalid_argument("DensityMatrix: factor dims must be >= 1");
        prod *= f;
    }
    if (prod != mat_.dim())
        throw std::invalid_argument("DensityMatrix: factor product does not match matrix dim");
    if (!mat_.all_finite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
    if (hermiticity_defect(mat_) > tol::hermiticity)
        throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    if (std::abs(trace(mat_) - Complex{1.0, 0.0}) > tol::unit_trace)
        throw std::invalid_argument("DensityMatrix: trace differs from 1 beyond tolerance");
    const auto spec = eig_hermitian(mat_);
    if (spec.eigenvalues.back() < tol::min_eigenvalue)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                    std::to_string(spec.eigenvalues.back()));
}

ComplexMatrix partial_trace_mat(const ComplexMatrix& m, std::span<const int> factors, int keep) {
    if (factors.size() < 1) throw std::invalid_argument("partial_trace: no factors");
    if (keep < 0 || keep >= static_cast<int>(factors.size()))
        throw std::invalid_argument("partial_trace: invalid subsystem index");
    long long prod = 1;
    for (int f : factors) prod *= f;
    if (prod != m.dim()) throw std::invalid_argument("partial_trace: factor/dim mismatch");

    const int dk = factors[keep];
    // Row-major layout: index = hi * (dk * lo_stride) + i_keep * lo_stride + lo.
    long long lo_stride = 1;
    for (std::size_t f = keep + 1; f < factors.size(); ++f) lo_stride *= factors[f];
    const long long hi_count = m.dim() / (dk * lo_stride);

    ComplexMatrix out(dk);
    for (int a = 0; a < dk; ++a)
        for (int b = 0; b < dk; ++b) {
            Complex sum{0.0, 0.0};
            for (long long hi = 0; hi < hi_count; ++hi)
                for (long long lo = 0; lo < lo_stride; ++lo) {
                    const long long base = hi * dk * lo_stride + lo;
                    sum += m(static_cast<int>(base + a * lo_stride),
                             static_cast<int>(base + b * lo_stride));
                }
            out(a, b) = sum;
        }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
    if (rho.factors().size() < 2)
        throw std::invalid_argument("partial_trace: need at least two factors");
    ComplexMatrix reduced = partial_trace_mat(rho.mat(), rho.factors(), keep);
    return DensityMatrix(std::move(reduced), {rho.factors()[keep]});
}

namespace {

// One complex Jacobi rotation zeroing A(p,q), accumulated into V.
// U is identity except for the 2x2 block [[c, -conj(s)], [s, c]] at (p,q).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
    const Complex apq = a(p, q);
    const double beta = std::abs(apq);
    if (beta == 0.0) return;
    const double alpha = a(p, p).real();
    const double gamma = a(q, q).real();
    const double phi = std::arg(apq);

    const double tau = (gamma - alpha) / (2.0 * beta);
    double t;
    if (tau >= 0.0)
        t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const Complex s = std::polar(t * c, -phi);

    const int n = a.dim();
    // A <- U^dagger A U : columns p,q then rows p,q.
    for (int r = 0; r < n; ++r) {
        const Complex arp = a(r, p), arq = a(r, q);
        a(r, p) = arp * c + arq * s;
        a(r, q) = -arp * std::conj(s) + arq * c;
    }
    for (int cidx = 0; cidx < n; ++cidx) {
        const Complex apc = a(p, cidx), aqc = a(q, cidx);
        a(p, cidx) = c * apc + std::conj(s) * aqc;
        a(q, cidx) = -s * apc + c * aqc;
    }
    for (int r = 0; r < n; ++r) {
        const Complex vrp = v(r, p), vrq = v(r, q);
        v(r, p) = vrp * c + vrq * s;
        v(r, q) = -vrp * std::conj(s) + vrq * c;
    }
    a(p, q) = Complex{0.0, 0.0};
    a(q, p) = Complex{0.0, 0.0};
}

double max_offdiag(const ComplexMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

}  // namespace

HermitianSpectrum eig_hermitian(const ComplexMatrix& input) {
    if (!input.all_finite()) throw std::invalid_argument("eig_hermitian: non-finite entries");
    if (hermiticity_defect(input) > tol::eig_symmetrize)
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian within tolerance");

    const int n = input.dim();
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(1.0, max_abs(a));
    const double threshold = 1e-15 * scale;

    for (int sweep = 0; sweep < 100 && max_offdiag(a) > threshold; ++sweep) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > threshold) jacobi_rotate(a, v, p, q);
    }

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    HermitianSpectrum spec{std::vector<double>(n), ComplexMatrix(n)};
    for (int k = 0; k < n; ++k) {
        spec.eigenvalues[k] = a(perm[k], perm[k]).real();
        for (int r = 0; r < n; ++r) spec.eigenvectors(r, k) = v(r, perm[k]);
    }
    return spec;
}

double entropy_from_eigenvalues(std::span<const double> eigenvalues) {
    double h = 0.0;
    for (double lam : eigenvalues) {
        if (lam < tol::min_eigenvalue)
            throw std::domain_error("entropy: eigenvalue below negativity tolerance: " +
                                    std::to_string(lam));
        if (lam <= tol::entropy_floor) continue;
        h -= lam * std::log2(lam);
    }
    return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const auto spec = eig_hermitian(rho.mat());
    return entropy_from_eigenvalues(spec.eigenvalues);
}

}  // namespace qswitch
