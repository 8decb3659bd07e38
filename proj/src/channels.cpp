#include "qswitch/channels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qswitch {

ComplexMatrix weyl_operator(int d, int a, int b) {
    if (d < 1) throw std::invalid_argument("weyl_operator: d must be >= 1");
    if (a < 0 || a >= d || b < 0 || b >= d)
        throw std::invalid_argument("weyl_operator: indices out of range");
    ComplexMatrix w(d);
    for (int j = 0; j < d; ++j)
        w((j + a) % d, j) = std::polar(1.0, 2.0 * std::numbers::pi * b * j / d);
    return w;
}

KrausSet depolarizing_kraus(int d, double q) {
    if (d < 1) throw std::invalid_argument("depolarizing_kraus: d must be >= 1");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("depolarizing_kraus: q must be in [0,1]");
    KrausSet k{d, q, {}};
    k.ops.reserve(static_cast<std::size_t>(d) * d);
    const double uniform = std::sqrt((1.0 - q) / (d * d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const double c =
                (a == 0 && b == 0) ? std::sqrt(q + (1.0 - q) / (d * d)) : uniform;
            k.ops.push_back(Complex{c, 0.0} * weyl_operator(d, a, b));
        }
    return k;
}

double completeness_defect(const KrausSet& k) {
    ComplexMatrix sum(k.d);
    for (const auto& op : k.ops) sum += adjoint(op) * op;
    return max_abs_diff(sum, ComplexMatrix::identity(k.d));
}

DensityMatrix apply_channel(const KrausSet& k, const DensityMatrix& rho) {
    if (rho.dim() != k.d) throw std::invalid_argument("apply_channel: dimension mismatch");
    ComplexMatrix out(k.d);
    for (const auto& op : k.ops) out += op * rho.mat() * adjoint(op);
    return DensityMatrix(std::move(out), rho.factors());
}

}  // namespace qswitch
