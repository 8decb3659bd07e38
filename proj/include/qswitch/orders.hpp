#pragma once

#include <vector>

// Causal orders of N channels, enumeration of order combinations, and the
// local/global pair classification via fixed points.
//
// Label convention: label k enumerates, in lexicographic order, the tuples of
// channel indices written last-applied-first (composition notation); the
// stored sequence is that tuple reversed, i.e. first-applied first. For N = 3
// this gives k=1 -> (3,2,1), k=2 -> (2,3,1), k=3 -> (3,1,2), k=4 -> (1,3,2),
// k=5 -> (2,1,3), k=6 -> (1,2,3).

namespace qswitch {

long long factorial(int n);

/// One of the N! application orders.
struct CausalOrder {
    int label = 0;             // 1..N!
    std::vector<int> sequence; // channel indices 1..N, applied first -> last
    int n() const noexcept { return static_cast<int>(sequence.size()); }
};

CausalOrder order_from_label(int k, int n);
int label_from_order(const std::vector<int>& sequence);

/// A set of distinct causal orders with probabilities summing to one.
/// Orders are kept sorted by label; weights follow their order.
struct OrderCombination {
    int n = 0;
    std::vector<CausalOrder> orders;
    std::vector<double> weights;

    int m() const noexcept { return static_cast<int>(orders.size()); }
    bool uniform() const noexcept;
    std::vector<int> labels() const;
};

OrderCombination make_combination(int n, std::vector<int> labels, std::vector<double> weights);
OrderCombination uniform_combination(int n, std::vector<int> labels);

/// All C(N!, m) combinations in lexicographic label order, uniform weights.
std::vector<OrderCombination> enumerate_combinations(int n, int m);

enum class Switching { Local, Global };

struct PairClass {
    Switching kind = Switching::Local;
    std::vector<int> fixed_points;  // 0-based positions where the sequences agree
};

/// Global iff the two orders apply different channels at every position.
PairClass classify_pair(const CausalOrder& a, const CausalOrder& b);

struct PairCount {
    int global = 0;
    int total = 0;
};

PairCount global_pair_count(const OrderCombination& c);

enum class CombinationClass { Max, Min, Single };

/// Predicts from the global-pair count alone which Holevo branch a uniform
/// N = 3 combination lands on (Max vs Min for m in {2,3,4}, Single otherwise).
CombinationClass predict_class(const OrderCombination& c);

const char* to_string(CombinationClass c);

}  // namespace qswitch
