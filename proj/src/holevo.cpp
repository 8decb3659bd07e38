#include "qswitch/holevo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qswitch/nelder_mead.hpp"

namespace qswitch {

std::vector<Complex> pure_state_amplitudes(const PureStateChart& chart, int d) {
    if (d < 1) throw std::invalid_argument("pure_state_amplitudes: d must be >= 1");
    if (static_cast<int>(chart.params.size()) != 2 * (d - 1))
        throw std::invalid_argument("pure_state_amplitudes: chart needs 2(d-1) parameters");

    std::vector<Complex> amp(d);
    if (d == 1) {
        amp[0] = 1.0;
        return amp;
    }
    const double* theta = chart.params.data();
    const double* phase = chart.params.data() + (d - 1);

    double prefix = 1.0;
    amp[0] = std::cos(theta[0]);
    for (int i = 1; i < d - 1; ++i) {
        prefix *= std::sin(theta[i - 1]);
        amp[i] = prefix * std::cos(theta[i]) * std::polar(1.0, phase[i - 1]);
    }
    prefix *= std::sin(theta[d - 2]);
    amp[d - 1] = prefix * std::polar(1.0, phase[d - 2]);

    double norm = 0.0;
    for (const auto& a : amp) norm += std::norm(a);
    norm = std::sqrt(norm);
    for (auto& a : amp) a /= norm;
    return amp;
}

ComplexMatrix pure_state_density(const PureStateChart& chart, int d) {
    const auto amp = pure_state_amplitudes(chart, d);
    ComplexMatrix rho(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rho(i, j) = amp[i] * std::conj(amp[j]);
    return rho;
}

namespace {

// splitmix64, used to derive deterministic offsets and gaussians.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// Deterministic standard normal (Box-Muller on splitmix64 output).
double gaussian(std::uint64_t& state) {
    const double u = std::max(unit_double(state), 1e-300);
    const double v = unit_double(state);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

// R-sequence: low-discrepancy points in the unit cube.
std::vector<double> r_sequence_alphas(int dim) {
    // Unique positive root of x^(dim+1) = x + 1 by fixed-point iteration.
    double g = 1.5;
    for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / (dim + 1));
    std::vector<double> alpha(dim);
    double p = 1.0;
    for (int j = 0; j < dim; ++j) {
        p /= g;
        alpha[j] = p;
    }
    return alpha;
}

double output_entropy(const SwitchLinearMap& map, const PureStateChart& chart, int d) {
    const ComplexMatrix out = map.apply(pure_state_density(chart, d));
    return entropy_from_eigenvalues(eig_hermitian(out).eigenvalues);
}

MinEntropyResult minimize_over_chart(const SwitchLinearMap& map, int d,
                                     const OptimizerOptions& opts) {
    if (opts.starts < 1) throw std::invalid_argument("min_output_entropy: starts must be >= 1");
    const int nparams = 2 * (d - 1);

    MinEntropyResult res;
    res.starts_used = opts.starts;

    if (nparams == 0) {
        res.minimizer = PureStateChart{{}};
        res.h_min = output_entropy(map, res.minimizer, d);
        res.converged = true;
        res.evaluations = 1;
        return res;
    }

    auto objective = [&](const std::vector<double>& x) {
        return output_entropy(map, PureStateChart{x}, d);
    };

    const auto alpha = r_sequence_alphas(nparams);
    std::uint64_t offset_state = opts.seed;
    std::vector<double> offset(nparams);
    for (auto& o : offset) o = unit_double(offset_state);

    const int max_iter = opts.max_iterations > 0 ? opts.max_iterations : 250 * nparams;
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    long long evals = 0;

    for (int k = 0; k < opts.starts; ++k) {
        std::vector<double> x0(nparams);
        for (int j = 0; j < nparams; ++j) {
            const double u = std::fmod(offset[j] + (k + 1) * alpha[j], 1.0);
            // First d-1 coordinates are polar angles, remaining are phases.
            x0[j] = j < d - 1 ? u * std::numbers::pi / 2.0 : u * 2.0 * std::numbers::pi;
        }
        const auto run = nelder_mead(objective, x0, 0.3, opts.tol, max_iter);
        evals += run.evaluations;
        if (run.f < best) {
            second = best;
            best = run.f;
            best_x = run.x;
        } else if (run.f < second) {
            second = run.f;
        }
    }

    res.h_min = best;
    res.minimizer = PureStateChart{std::move(best_x)};
    res.converged = opts.starts == 1 || (second - best) <= 1e-7;
    res.evaluations = evals;
    return res;
}

}  // namespace

MinEntropyResult min_output_entropy(const SwitchSpec& spec, const OptimizerOptions& opts) {
    validate_spec(spec);
    const SwitchLinearMap map(spec);
    return minimize_over_chart(map, spec.d, opts);
}

DensityMatrix control_output(const SwitchSpec& spec, const DensityMatrix& rho) {
    return partial_trace(switch_output(spec, rho).state, 1);
}

HolevoResult holevo_chi(const SwitchSpec& spec, const OptimizerOptions& opts) {
    validate_spec(spec);
    const SwitchLinearMap map(spec);
    const int d = spec.d;
    const int cd = control_dim(spec);
    const std::vector<int> factors{d, cd};

    MinEntropyResult me = minimize_over_chart(map, d, opts);

    const ComplexMatrix out_min = map.apply(pure_state_density(me.minimizer, d));
    const ComplexMatrix rc_min = partial_trace_mat(out_min, factors, 1);
    const double h_control = entropy_from_eigenvalues(eig_hermitian(rc_min).eigenvalues);

    HolevoResult res;
    res.h_min = me.h_min;
    res.h_control = h_control;
    res.minimizer = std::move(me.minimizer);
    res.starts_used = me.starts_used;
    res.converged = me.converged;
    res.evaluations = me.evaluations;

    double chi = std::log2(static_cast<double>(d)) + h_control - me.h_min;
    if (chi < 0.0 && chi >= -1e-9) chi = 0.0;
    res.chi = chi;

    // Input-independence probe for the control output.
    std::uint64_t rng = opts.seed ^ 0xC001D00DULL;
    for (int probe = 0; probe < 8; ++probe) {
        std::vector<Complex> amp(d);
        double norm = 0.0;
        for (auto& a : amp) {
            a = Complex{gaussian(rng), gaussian(rng)};
            norm += std::norm(a);
        }
        norm = std::sqrt(norm);
        ComplexMatrix rho(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) rho(i, j) = amp[i] * std::conj(amp[j]) / (norm * norm);
        const ComplexMatrix rc = partial_trace_mat(map.apply(rho), factors, 1);
        res.control_drift = std::max(res.control_drift, max_abs_diff(rc, rc_min));
    }
    return res;
}

}  // namespace qswitch
