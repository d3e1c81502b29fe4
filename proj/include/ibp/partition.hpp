#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace ibp {

// Integer partition: weakly decreasing positive parts, trailing zeroes
// dropped on construction. The empty partition is valid.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    int length() const { return static_cast<int>(parts_.size()); }
    int modulus() const;

    // 1-indexed part access; parts beyond length() read as 0.
    int part(int i) const {
        return (i >= 1 && i <= length()) ? parts_[static_cast<size_t>(i - 1)] : 0;
    }
    const std::vector<int>& parts() const { return parts_; }

    Partition conjugate() const;

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

  private:
    std::vector<int> parts_;
};

// Partitions never exceed this modulus; enumeration and the Jack tables
// reject anything larger.
inline constexpr int kMaxPartitionModulus = 30;

// All partitions of modulus exactly n with length <= max_len, in
// reverse-lexicographic order ((n) first, (1,1,...,1) last when it fits).
std::vector<Partition> partitions_up_to(int n, int max_len);

// Dominance order: true iff sum_{i<=j} lambda_i <= sum_{i<=j} tau_i for all
// j. Returns false when the moduli differ.
bool dominance_leq(const Partition& lambda, const Partition& tau);

// N! / (l_1! ... l_p!) where l_i counts repetitions of each distinct part of
// lambda padded with zeroes to N parts.
std::uint64_t multinomial_count(const Partition& lambda, int n_vars);

double factorial(int n);
double log_factorial(int n);

// prod_i lambda_i! over the parts (the "lambda!" of partition calculus).
double partition_factorial(const Partition& lambda);
// prod_i (2*lambda_i)!
double partition_factorial_doubled(const Partition& lambda);

}  // namespace ibp
