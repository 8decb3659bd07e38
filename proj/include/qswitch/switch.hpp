#pragma once

#include <span>
#include <vector>

#include "qswitch/channels.hpp"
#include "qswitch/orders.hpp"
#include "qswitch/qmath.hpp"

// The quantum N-switch channel: N channels applied to a d-dimensional target
// in a coherent superposition of causal orders selected by a control system.
//
// Kraus convention: each channel keeps one Kraus index across all branches;
// only the multiplication order varies with the causal order (first-applied
// operator rightmost). This is the unique convention under which the switch
// operators form a completeness-preserving (CPTP) family and which reduces to
// the established two-channel switch.

namespace qswitch {

/// Control register layout. FullBasis uses all N! labels; Compressed keeps
/// only the participating labels of the combination, in ascending label order.
enum class ControlMode { FullBasis, Compressed };

struct SwitchSpec {
    int n = 0;
    int d = 0;
    std::vector<KrausSet> kraus_sets;  // one per channel, all of dimension d
    OrderCombination combination;
    ControlMode control_mode = ControlMode::Compressed;
};

/// Switch over N depolarizing channels with strengths qs (one per channel).
SwitchSpec depolarizing_switch(int n, int d, std::span<const double> qs,
                               OrderCombination combination,
                               ControlMode mode = ControlMode::Compressed);

int control_dim(const SwitchSpec& spec);
void validate_spec(const SwitchSpec& spec);

/// Pure control state sum_k sqrt(P_k) |k> as a density matrix.
DensityMatrix control_state(const OrderCombination& c, ControlMode mode);

/// Product of the chosen Kraus elements in the order dictated by `order`
/// (first-applied rightmost). kraus_indices holds one index per channel.
ComplexMatrix branch_operator(const SwitchSpec& spec, std::span<const int> kraus_indices,
                              const CausalOrder& order);

/// Action of the switch Kraus family on target_in (x) rho_c, where rho_c is
/// the combination's control state. Linear in target_in; no state validation.
ComplexMatrix switch_kraus_action(const SwitchSpec& spec, const ComplexMatrix& target_in);

struct SwitchOutput {
    DensityMatrix state;  // factors {d, control_dim}
    int control_dim = 0;
};

SwitchOutput switch_output(const SwitchSpec& spec, const DensityMatrix& rho);

struct CptpCheck {
    bool ok = false;
    double max_deviation = 0.0;
};

/// Verifies sum_W W^dagger W = I on the d * control_dim space by assembling
/// every switch Kraus operator explicitly.
CptpCheck switch_cptp_check(const SwitchSpec& spec);

/// d x d block of a joint target (x) control matrix at control pair (a, b).
ComplexMatrix control_block(const ComplexMatrix& joint, int d, int control_dim, int a, int b);

/// Precomputed linear action rho -> switch output, built by feeding the d^2
/// target basis matrices through switch_kraus_action once. Exact (the switch
/// is linear in the target state); used where many evaluations are needed.
class SwitchLinearMap {
public:
    explicit SwitchLinearMap(const SwitchSpec& spec);

    int target_dim() const noexcept { return d_; }
    int output_dim() const noexcept { return out_dim_; }

    ComplexMatrix apply(const ComplexMatrix& target_in) const;

private:
    int d_ = 0;
    int out_dim_ = 0;
    std::vector<ComplexMatrix> phi_;  // action on basis matrix E(i,j), row-major in (i,j)
};

}  // namespace qswitch
