#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace choicematch {

using Mask = std::uint32_t;

/// Per-agent universe cap for the exhaustive checkers (dense tables are 2^n).
inline constexpr std::size_t kMaxAgentUniverse = 16;
/// Whole-market cap for operations that enumerate subsets of all contracts.
inline constexpr std::size_t kMaxMarketContracts = 24;

/// A set of contract indices relative to some fixed, canonically ordered
/// universe (an agent's own contracts, or the whole market). Bit i is the
/// i-th contract of that universe, so equal sets have equal masks.
class ContractSet {
 public:
  constexpr ContractSet() = default;
  constexpr explicit ContractSet(Mask bits) : bits_(bits) {}

  static constexpr ContractSet full(std::size_t n) {
    return ContractSet(n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1));
  }
  static constexpr ContractSet single(std::size_t index) {
    return ContractSet(Mask{1} << index);
  }

  constexpr Mask bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool contains(std::size_t index) const {
    return ((bits_ >> index) & 1u) != 0;
  }
  constexpr bool subset_of(ContractSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool proper_subset_of(ContractSet other) const {
    return subset_of(other) && bits_ != other.bits_;
  }
  constexpr bool intersects(ContractSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  constexpr bool disjoint(ContractSet other) const { return !intersects(other); }
  /// Index of the lowest member; the set must be nonempty.
  constexpr std::size_t lowest() const {
    return static_cast<std::size_t>(std::countr_zero(bits_));
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (Mask m = bits_; m != 0; m &= m - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    }
    return out;
  }

  constexpr ContractSet operator|(ContractSet o) const { return ContractSet(bits_ | o.bits_); }
  constexpr ContractSet operator&(ContractSet o) const { return ContractSet(bits_ & o.bits_); }
  /// Set difference.
  constexpr ContractSet operator-(ContractSet o) const { return ContractSet(bits_ & ~o.bits_); }
  constexpr ContractSet& operator|=(ContractSet o) { bits_ |= o.bits_; return *this; }
  constexpr ContractSet& operator&=(ContractSet o) { bits_ &= o.bits_; return *this; }
  constexpr ContractSet& operator-=(ContractSet o) { bits_ &= ~o.bits_; return *this; }

  /// Canonical order is ascending mask.
  constexpr auto operator<=>(const ContractSet&) const = default;

 private:
  Mask bits_ = 0;
};

/// Calls fn(sub) for every subset of `set` in ascending mask order,
/// starting with the empty set.
template <typename Fn>
constexpr void for_each_subset(ContractSet set, Fn&& fn) {
  const Mask s = set.bits();
  Mask sub = 0;
  while (true) {
    fn(ContractSet(sub));
    if (sub == s) break;
    sub = (sub - s) & s;
  }
}

/// Like for_each_subset but stops as soon as fn returns true; returns
/// whether it stopped early.
template <typename Fn>
constexpr bool any_subset(ContractSet set, Fn&& fn) {
  const Mask s = set.bits();
  Mask sub = 0;
  while (true) {
    if (fn(ContractSet(sub))) return true;
    if (sub == s) return false;
    sub = (sub - s) & s;
  }
}

}  // namespace choicematch
