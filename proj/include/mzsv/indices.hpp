#pragma once

#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mzsv {

/// Ordered tuple (k1, ..., kn) of positive integers; may be empty.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> parts);
  explicit MultiIndex(std::vector<int> parts);

  /// Parses "k1,k2,...". Throws DomainError on malformed input.
  static MultiIndex parse(std::string_view text);

  std::span<const int> parts() const { return parts_; }
  int operator[](std::size_t i) const { return parts_[i]; }
  bool empty() const { return parts_.empty(); }

  int weight() const;
  int depth() const { return static_cast<int>(parts_.size()); }
  int height() const;
  bool admissible() const { return !parts_.empty() && parts_.front() >= 2; }

  /// Number of 1-parts immediately after the first part.
  int leading_ones_after_first() const;

  /// "k1,k2,..." (empty string for the empty index).
  std::string to_string() const;

  /// Index with parts (k_from, ..., kn).
  MultiIndex suffix(std::size_t from) const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> parts_;
};

struct Classification {
  int weight = 0;
  int depth = 0;
  int height = 0;
  bool admissible = false;
  friend bool operator==(const Classification&, const Classification&) = default;
};

Classification classify(const MultiIndex& idx);

/// All compositions of k with height s (k1 >= 2 when admissible_only),
/// in lexicographic order.
std::vector<MultiIndex> enum_indices(int k, int s, bool admissible_only);

/// |enum_indices(k, s, admissible_only)| without materializing the list.
unsigned long long count_indices(int k, int s, bool admissible_only);

/// The 2^(n-1) coarsenings of idx (each comma independently kept or merged),
/// ordered by the merge bitmask: bit i merges the comma after part i.
/// zeta*(idx) = sum over the result of zeta(p).
std::vector<MultiIndex> star_expand(const MultiIndex& idx);

struct SignedIndex {
  int sign = 1;
  MultiIndex index;
};

/// Same coarsenings, signed (-1)^(depth(idx) - depth(p)):
/// zeta(idx) = sum of sign * zeta*(p).
std::vector<SignedIndex> mzv_expand(const MultiIndex& idx);

/// One index per line, parts comma-separated.
std::string to_csv(std::span<const MultiIndex> list);

/// JSON array of arrays of parts.
std::string to_json(std::span<const MultiIndex> list);

}  // namespace mzsv
