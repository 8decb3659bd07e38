#pragma once

#include <vector>

#include "qswitch/qmath.hpp"

// Qudit depolarizing channels as explicit Kraus families.
//
// The switch output depends on the chosen Kraus representation, not only on
// the channel map, so the representation is fixed here: the Weyl-Heisenberg
// (generalized Pauli) set {X^a Z^b}. With coefficients c_00 = sqrt(q + (1-q)/d^2)
// and c_ab = sqrt((1-q)/d^2) otherwise, the family reproduces
// N(rho) = q rho + (1-q) tr(rho) I/d for every q in [0,1].

namespace qswitch {

/// Complete Kraus family of one depolarizing channel.
/// q = 1 is the identity channel, q = 0 is completely depolarizing.
struct KrausSet {
    int d = 0;
    double q = 0.0;
    std::vector<ComplexMatrix> ops;  // d^2 elements, each d x d
};

/// W_ab = X^a Z^b with X|j> = |j+1 mod d>, Z|j> = w^j |j>, w = exp(2 pi i / d).
ComplexMatrix weyl_operator(int d, int a, int b);

KrausSet depolarizing_kraus(int d, double q);

/// max |sum_i K_i^dagger K_i - I| over entries.
double completeness_defect(const KrausSet& k);

DensityMatrix apply_channel(const KrausSet& k, const DensityMatrix& rho);

}  // namespace qswitch
