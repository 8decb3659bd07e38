#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qswitch/qmath.hpp"

// Deterministic random inputs for tests.

namespace qswitch::testutil {

inline ComplexMatrix random_matrix(std::mt19937_64& g, int dim) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex{n(g), n(g)};
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& g, int dim) {
    const ComplexMatrix a = random_matrix(g, dim);
    ComplexMatrix h(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

inline DensityMatrix random_density(std::mt19937_64& g, std::vector<int> factors) {
    int dim = 1;
    for (int f : factors) dim *= f;
    const ComplexMatrix a = random_matrix(g, dim);
    ComplexMatrix m = a * adjoint(a);
    const double tr = trace(m).real();
    m *= Complex{1.0 / tr, 0.0};
    return DensityMatrix(std::move(m), std::move(factors));
}

inline std::vector<Complex> random_pure(std::mt19937_64& g, int dim) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<Complex> amp(dim);
    double norm = 0.0;
    for (auto& a : amp) {
        a = Complex{n(g), n(g)};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : amp) a /= norm;
    return amp;
}

inline ComplexMatrix pure_density(const std::vector<Complex>& amp) {
    const int d = static_cast<int>(amp.size());
    ComplexMatrix rho(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rho(i, j) = amp[i] * std::conj(amp[j]);
    return rho;
}

// Gram-Schmidt on random columns.
inline ComplexMatrix random_unitary(std::mt19937_64& g, int dim) {
    const ComplexMatrix a = random_matrix(g, dim);
    ComplexMatrix u(dim);
    for (int c = 0; c < dim; ++c) {
        std::vector<Complex> v(dim);
        for (int r = 0; r < dim; ++r) v[r] = a(r, c);
        for (int prev = 0; prev < c; ++prev) {
            Complex proj{0.0, 0.0};
            for (int r = 0; r < dim; ++r) proj += std::conj(u(r, prev)) * v[r];
            for (int r = 0; r < dim; ++r) v[r] -= proj * u(r, prev);
        }
        double norm = 0.0;
        for (const auto& x : v) norm += std::norm(x);
        norm = std::sqrt(norm);
        for (int r = 0; r < dim; ++r) u(r, c) = v[r] / norm;
    }
    return u;
}

}  // namespace qswitch::testutil
