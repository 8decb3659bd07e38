#pragma once

#include <cstdint>
#include <vector>

#include "qswitch/switch.hpp"

// Holevo information of a switch configuration:
//   chi = log2(d) + H(control output) - Hmin,
// where Hmin is the output entropy minimized over pure target states.
// The minimization is a deterministic multi-start Nelder-Mead over a
// hyperspherical chart of the pure-state manifold.

namespace qswitch {

/// d-1 polar angles followed by d-1 relative phases (radians). Surjective
/// onto pure states up to global phase.
struct PureStateChart {
    std::vector<double> params;
};

std::vector<Complex> pure_state_amplitudes(const PureStateChart& chart, int d);
ComplexMatrix pure_state_density(const PureStateChart& chart, int d);

struct OptimizerOptions {
    int starts = 32;
    std::uint64_t seed = 7;
    double tol = 1e-10;      // per-start convergence tolerance on entropy
    int max_iterations = 0;  // per start; 0 = 250 * chart dimension
};

struct MinEntropyResult {
    double h_min = 0.0;
    PureStateChart minimizer;
    bool converged = false;  // best and runner-up starts agree within 1e-7 bits
    int starts_used = 0;
    long long evaluations = 0;
};

MinEntropyResult min_output_entropy(const SwitchSpec& spec, const OptimizerOptions& opts = {});

/// Control output: switch output with the target traced out.
DensityMatrix control_output(const SwitchSpec& spec, const DensityMatrix& rho);

struct HolevoResult {
    double chi = 0.0;        // bits
    double h_control = 0.0;  // bits, at the entropy-minimizing input
    double h_min = 0.0;      // bits
    PureStateChart minimizer;
    int starts_used = 0;
    bool converged = false;
    long long evaluations = 0;
    // Max deviation of the control output across random pure inputs. The chi
    // formula implicitly assumes input independence; values above 1e-6 are
    // reported as a warning by callers.
    double control_drift = 0.0;
};

inline constexpr double control_drift_warn_threshold = 1e-6;

HolevoResult holevo_chi(const SwitchSpec& spec, const OptimizerOptions& opts = {});

}  // namespace qswitch
