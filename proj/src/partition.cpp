#include "ibp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ibp/errors.hpp"

namespace ibp {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw invalid_input("partition parts must be positive");
        if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
            throw invalid_input("partition parts must be weakly decreasing");
    }
}

int Partition::modulus() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return {};
    std::vector<int> conj(static_cast<size_t>(parts_[0]), 0);
    for (int p : parts_)
        for (int j = 0; j < p; ++j) ++conj[static_cast<size_t>(j)];
    return Partition(std::move(conj));
}

namespace {

void enumerate_rec(int remaining, int max_part, int max_len,
                   std::vector<int>& head, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(head);
        return;
    }
    if (max_len == 0) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        head.push_back(p);
        enumerate_rec(remaining - p, p, max_len - 1, head, out);
        head.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_up_to(int n, int max_len) {
    if (n < 0 || max_len < 1) throw invalid_input("partitions_up_to: need n >= 0, max_len >= 1");
    if (n > kMaxPartitionModulus)
        throw invalid_input("partitions_up_to: modulus above capacity (30)");
    std::vector<Partition> out;
    std::vector<int> head;
    enumerate_rec(n, n, max_len, head, out);
    return out;
}

bool dominance_leq(const Partition& lambda, const Partition& tau) {
    if (lambda.modulus() != tau.modulus()) return false;
    long sl = 0, st = 0;
    int len = std::max(lambda.length(), tau.length());
    for (int j = 1; j <= len; ++j) {
        sl += lambda.part(j);
        st += tau.part(j);
        if (sl > st) return false;
    }
    return true;
}

std::uint64_t multinomial_count(const Partition& lambda, int n_vars) {
    if (lambda.length() > n_vars)
        throw invalid_input("multinomial_count: partition longer than variable count");
    // Repetition counts of the distinct parts, zeroes included.
    std::vector<int> reps;
    int zeros = n_vars - lambda.length();
    const auto& parts = lambda.parts();
    for (size_t i = 0; i < parts.size();) {
        size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        reps.push_back(static_cast<int>(j - i));
        i = j;
    }
    if (zeros > 0) reps.push_back(zeros);

    // N!/(l_1!...l_p!) built as an integer-valued product of binomials.
    std::uint64_t result = 1;
    int slots = n_vars;
    for (int r : reps) {
        // result *= C(slots, r)
        std::uint64_t c = 1;
        for (int k = 1; k <= r; ++k)
            c = c * static_cast<std::uint64_t>(slots - r + k) / static_cast<std::uint64_t>(k);
        result *= c;
        slots -= r;
    }
    return result;
}

double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double partition_factorial(const Partition& lambda) {
    double r = 1.0;
    for (int p : lambda.parts()) r *= factorial(p);
    return r;
}

double partition_factorial_doubled(const Partition& lambda) {
    double r = 1.0;
    for (int p : lambda.parts()) r *= factorial(2 * p);
    return r;
}

}  // namespace ibp
