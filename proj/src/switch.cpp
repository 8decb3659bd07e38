#include "qswitch/switch.hpp"

#include <cmath>
#include <stdexcept>

namespace qswitch {

SwitchSpec depolarizing_switch(int n, int d, std::span<const double> qs,
                               OrderCombination combination, ControlMode mode) {
    if (static_cast<int>(qs.size()) != n)
        throw std::invalid_argument("depolarizing_switch: need one q per channel");
    SwitchSpec spec;
    spec.n = n;
    spec.d = d;
    spec.kraus_sets.reserve(n);
    for (double q : qs) spec.kraus_sets.push_back(depolarizing_kraus(d, q));
    spec.combination = std::move(combination);
    spec.control_mode = mode;
    validate_spec(spec);
    return spec;
}

int control_dim(const SwitchSpec& spec) {
    return spec.control_mode == ControlMode::Compressed
               ? spec.combination.m()
               : static_cast<int>(factorial(spec.n));
}

void validate_spec(const SwitchSpec& spec) {
    if (spec.n < 1 || spec.d < 1) throw std::invalid_argument("switch spec: n and d must be >= 1");
    if (static_cast<int>(spec.kraus_sets.size()) != spec.n)
        throw std::invalid_argument("switch spec: need one Kraus set per channel");
    for (const auto& k : spec.kraus_sets) {
        if (k.d != spec.d) throw std::invalid_argument("switch spec: Kraus set dimension mismatch");
        if (k.ops.empty()) throw std::invalid_argument("switch spec: empty Kraus set");
        for (const auto& op : k.ops)
            if (op.dim() != spec.d)
                throw std::invalid_argument("switch spec: Kraus element dimension mismatch");
    }
    if (spec.combination.n != spec.n)
        throw std::invalid_argument("switch spec: combination channel count mismatch");
    if (spec.combination.m() < 1) throw std::invalid_argument("switch spec: empty combination");
    double sum = 0.0;
    for (double w : spec.combination.weights) {
        if (w < 0.0) throw std::invalid_argument("switch spec: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("switch spec: weights must sum to 1");
    for (const auto& o : spec.combination.orders)
        if (o.n() != spec.n)
            throw std::invalid_argument("switch spec: order length mismatch");
}

DensityMatrix control_state(const OrderCombination& c, ControlMode mode) {
    const int dim = mode == ControlMode::Compressed ? c.m() : static_cast<int>(factorial(c.n));
    std::vector<double> amp(dim, 0.0);
    for (int i = 0; i < c.m(); ++i) {
        const int pos = mode == ControlMode::Compressed ? i : c.orders[i].label - 1;
        amp[pos] = std::sqrt(c.weights[i]);
    }
    ComplexMatrix rho(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) rho(i, j) = amp[i] * amp[j];
    return DensityMatrix(std::move(rho), {dim});
}

ComplexMatrix branch_operator(const SwitchSpec& spec, std::span<const int> kraus_indices,
                              const CausalOrder& order) {
    if (static_cast<int>(kraus_indices.size()) != spec.n)
        throw std::invalid_argument("branch_operator: need one Kraus index per channel");
    for (int ch = 0; ch < spec.n; ++ch)
        if (kraus_indices[ch] < 0 ||
            kraus_indices[ch] >= static_cast<int>(spec.kraus_sets[ch].ops.size()))
            throw std::invalid_argument("branch_operator: Kraus index out of range");

    ComplexMatrix b = ComplexMatrix::identity(spec.d);
    for (int ch : order.sequence)  // first applied ... last applied
        b = spec.kraus_sets[ch - 1].ops[kraus_indices[ch - 1]] * b;
    return b;
}

namespace {

// Control basis index of the i-th participating order.
int control_pos(const SwitchSpec& spec, int i) {
    return spec.control_mode == ControlMode::Compressed ? i
                                                        : spec.combination.orders[i].label - 1;
}

bool advance_tuple(std::vector<int>& tup, const SwitchSpec& spec) {
    for (int ch = spec.n - 1; ch >= 0; --ch) {
        if (++tup[ch] < static_cast<int>(spec.kraus_sets[ch].ops.size())) return true;
        tup[ch] = 0;
    }
    return false;
}

}  // namespace

ComplexMatrix switch_kraus_action(const SwitchSpec& spec, const ComplexMatrix& target_in) {
    validate_spec(spec);
    if (target_in.dim() != spec.d)
        throw std::invalid_argument("switch_kraus_action: target dimension mismatch");

    const int d = spec.d;
    const int m = spec.combination.m();
    const int cd = control_dim(spec);

    std::vector<int> cpos(m);
    std::vector<double> sw(m);
    for (int i = 0; i < m; ++i) {
        cpos[i] = control_pos(spec, i);
        sw[i] = std::sqrt(spec.combination.weights[i]);
    }

    ComplexMatrix out(d * cd);
    std::vector<ComplexMatrix> branch(m, ComplexMatrix(d));
    std::vector<ComplexMatrix> left(m, ComplexMatrix(d));

    std::vector<int> tup(spec.n, 0);
    do {
        for (int i = 0; i < m; ++i) {
            branch[i] = branch_operator(spec, tup, spec.combination.orders[i]);
            left[i] = branch[i] * target_in;
        }
        for (int k1 = 0; k1 < m; ++k1)
            for (int k2 = 0; k2 < m; ++k2) {
                const double w = sw[k1] * sw[k2];
                if (w == 0.0) continue;
                // block (k1,k2) += w * B_{k1} rho B_{k2}^dagger
                for (int t1 = 0; t1 < d; ++t1)
                    for (int t2 = 0; t2 < d; ++t2) {
                        Complex v{0.0, 0.0};
                        for (int x = 0; x < d; ++x)
                            v += left[k1](t1, x) * std::conj(branch[k2](t2, x));
                        out(t1 * cd + cpos[k1], t2 * cd + cpos[k2]) += w * v;
                    }
            }
    } while (advance_tuple(tup, spec));

    return out;
}

SwitchOutput switch_output(const SwitchSpec& spec, const DensityMatrix& rho) {
    if (rho.dim() != spec.d) throw std::invalid_argument("switch_output: target dimension mismatch");
    const int cd = control_dim(spec);
    ComplexMatrix joint = switch_kraus_action(spec, rho.mat());
    return SwitchOutput{DensityMatrix(std::move(joint), {spec.d, cd}), cd};
}

CptpCheck switch_cptp_check(const SwitchSpec& spec) {
    validate_spec(spec);
    const int d = spec.d;
    const int cd = control_dim(spec);
    const int dim = d * cd;

    // In FullBasis mode every one of the N! orders contributes a branch term;
    // in Compressed mode only the participating ones exist.
    std::vector<CausalOrder> orders;
    std::vector<int> cpos;
    if (spec.control_mode == ControlMode::FullBasis) {
        const auto nfact = static_cast<int>(factorial(spec.n));
        for (int k = 1; k <= nfact; ++k) {
            orders.push_back(order_from_label(k, spec.n));
            cpos.push_back(k - 1);
        }
    } else {
        for (int i = 0; i < spec.combination.m(); ++i) {
            orders.push_back(spec.combination.orders[i]);
            cpos.push_back(i);
        }
    }

    ComplexMatrix sum(dim);
    std::vector<int> tup(spec.n, 0);
    do {
        ComplexMatrix w(dim);
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const ComplexMatrix b = branch_operator(spec, tup, orders[i]);
            for (int t1 = 0; t1 < d; ++t1)
                for (int t2 = 0; t2 < d; ++t2)
                    w(t1 * cd + cpos[i], t2 * cd + cpos[i]) = b(t1, t2);
        }
        sum += adjoint(w) * w;
    } while (advance_tuple(tup, spec));

    const double dev = max_abs_diff(sum, ComplexMatrix::identity(dim));
    return CptpCheck{dev <= 1e-9, dev};
}

ComplexMatrix control_block(const ComplexMatrix& joint, int d, int cd, int a, int b) {
    if (joint.dim() != d * cd) throw std::invalid_argument("control_block: dimension mismatch");
    if (a < 0 || a >= cd || b < 0 || b >= cd)
        throw std::invalid_argument("control_block: control index out of range");
    ComplexMatrix blk(d);
    for (int t1 = 0; t1 < d; ++t1)
        for (int t2 = 0; t2 < d; ++t2) blk(t1, t2) = joint(t1 * cd + a, t2 * cd + b);
    return blk;
}

SwitchLinearMap::SwitchLinearMap(const SwitchSpec& spec)
    : d_(spec.d), out_dim_(spec.d * control_dim(spec)) {
    phi_.reserve(static_cast<std::size_t>(d_) * d_);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            ComplexMatrix basis(d_);
            basis(i, j) = 1.0;
            phi_.push_back(switch_kraus_action(spec, basis));
        }
}

ComplexMatrix SwitchLinearMap::apply(const ComplexMatrix& target_in) const {
    if (target_in.dim() != d_)
        throw std::invalid_argument("SwitchLinearMap: target dimension mismatch");
    ComplexMatrix out(out_dim_);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            const Complex rij = target_in(i, j);
            if (rij == Complex{0.0, 0.0}) continue;
            const ComplexMatrix& phi = phi_[static_cast<std::size_t>(i) * d_ + j];
            for (int r = 0; r < out_dim_; ++r)
                for (int c = 0; c < out_dim_; ++c) out(r, c) += rij * phi(r, c);
        }
    return out;
}

}  // namespace qswitch
