#include "qswitch/orders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qswitch {

long long factorial(int n) {
    if (n < 0 || n > 20) throw std::invalid_argument("factorial: n out of range");
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

CausalOrder order_from_label(int k, int n) {
    if (n < 1) throw std::invalid_argument("order_from_label: n must be >= 1");
    const long long nfact = factorial(n);
    if (k < 1 || k > nfact) throw std::invalid_argument("order_from_label: label out of range");

    // Factoradic unranking of the (k-1)-th lexicographic tuple, last-applied first.
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> composition;
    composition.reserve(n);
    long long rank = k - 1;
    long long block = nfact;
    for (int remaining = n; remaining >= 1; --remaining) {
        block /= remaining;
        const auto idx = static_cast<int>(rank / block);
        rank %= block;
        composition.push_back(pool[idx]);
        pool.erase(pool.begin() + idx);
    }
    std::reverse(composition.begin(), composition.end());  // first-applied first
    return CausalOrder{k, std::move(composition)};
}

int label_from_order(const std::vector<int>& sequence) {
    const int n = static_cast<int>(sequence.size());
    if (n < 1) throw std::invalid_argument("label_from_order: empty sequence");
    std::vector<int> sorted = sequence;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
        if (sorted[i] != i + 1)
            throw std::invalid_argument("label_from_order: sequence is not a permutation of 1..N");

    std::vector<int> composition(sequence.rbegin(), sequence.rend());
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    long long rank = 0;
    long long block = factorial(n);
    for (int pos = 0; pos < n; ++pos) {
        block /= (n - pos);
        const auto it = std::find(pool.begin(), pool.end(), composition[pos]);
        rank += block * std::distance(pool.begin(), it);
        pool.erase(it);
    }
    return static_cast<int>(rank) + 1;
}

bool OrderCombination::uniform() const noexcept {
    if (orders.empty()) return false;
    const double w = 1.0 / static_cast<double>(orders.size());
    for (double x : weights)
        if (std::abs(x - w) > 1e-12) return false;
    return true;
}

std::vector<int> OrderCombination::labels() const {
    std::vector<int> out;
    out.reserve(orders.size());
    for (const auto& o : orders) out.push_back(o.label);
    return out;
}

OrderCombination make_combination(int n, std::vector<int> labels, std::vector<double> weights) {
    if (labels.empty()) throw std::invalid_argument("combination: needs at least one order");
    if (labels.size() != weights.size())
        throw std::invalid_argument("combination: weights length must match orders");

    std::vector<std::size_t> perm(labels.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return labels[a] < labels[b];
    });

    OrderCombination c;
    c.n = n;
    double sum = 0.0;
    for (std::size_t i : perm) {
        if (!c.orders.empty() && c.orders.back().label == labels[i])
            throw std::invalid_argument("combination: duplicate order label");
        if (weights[i] < 0.0) throw std::invalid_argument("combination: negative weight");
        c.orders.push_back(order_from_label(labels[i], n));
        c.weights.push_back(weights[i]);
        sum += weights[i];
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("combination: weights must sum to 1");
    return c;
}

OrderCombination uniform_combination(int n, std::vector<int> labels) {
    const double w = 1.0 / static_cast<double>(labels.size());
    return make_combination(n, std::move(labels), std::vector<double>(labels.size(), w));
}

std::vector<OrderCombination> enumerate_combinations(int n, int m) {
    const long long nfact = factorial(n);
    if (m < 1 || m > nfact)
        throw std::invalid_argument("enumerate_combinations: m out of range");

    std::vector<OrderCombination> out;
    std::vector<int> pick(m);
    std::iota(pick.begin(), pick.end(), 1);
    while (true) {
        out.push_back(uniform_combination(n, pick));
        int i = m - 1;
        while (i >= 0 && pick[i] == nfact - (m - 1 - i)) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

PairClass classify_pair(const CausalOrder& a, const CausalOrder& b) {
    if (a.n() != b.n()) throw std::invalid_argument("classify_pair: different channel counts");
    if (a.sequence == b.sequence)
        throw std::invalid_argument("classify_pair: orders are identical");
    PairClass pc;
    for (int pos = 0; pos < a.n(); ++pos)
        if (a.sequence[pos] == b.sequence[pos]) pc.fixed_points.push_back(pos);
    pc.kind = pc.fixed_points.empty() ? Switching::Global : Switching::Local;
    return pc;
}

PairCount global_pair_count(const OrderCombination& c) {
    if (c.m() < 2) throw std::invalid_argument("global_pair_count: needs m >= 2");
    PairCount pc;
    for (int i = 0; i < c.m(); ++i)
        for (int j = i + 1; j < c.m(); ++j) {
            ++pc.total;
            if (classify_pair(c.orders[i], c.orders[j]).kind == Switching::Global) ++pc.global;
        }
    return pc;
}

CombinationClass predict_class(const OrderCombination& c) {
    if (c.n != 3) throw std::invalid_argument("predict_class: defined for N = 3 only");
    if (!c.uniform()) throw std::invalid_argument("predict_class: requires uniform weights");
    const int m = c.m();
    if (m == 1 || m == 5 || m == 6) return CombinationClass::Single;
    const int global = global_pair_count(c).global;
    switch (m) {
        case 2: return global == 1 ? CombinationClass::Max : CombinationClass::Min;
        case 3: return global == 3 ? CombinationClass::Max : CombinationClass::Min;
        case 4: return global == 3 ? CombinationClass::Max : CombinationClass::Min;
        default: return CombinationClass::Single;  // unreachable for N = 3
    }
}

const char* to_string(CombinationClass c) {
    switch (c) {
        case CombinationClass::Max: return "Max";
        case CombinationClass::Min: return "Min";
        case CombinationClass::Single: return "Single";
    }
    return "?";
}

}  // namespace qswitch
