#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "choicematch/contract_set.hpp"

namespace choicematch {

/// An agent's choice correspondence, stored densely: one entry per subset of
/// the agent's universe, indexed by the subset's mask. The universe is kept in
/// canonical (byte-wise lexicographic) id order.
///
/// A table may be partial while it is being assembled or when loaded from a
/// file that omits menus; choose() on an absent entry throws MissingEntry.
class ChoiceTable {
 public:
  static constexpr Mask kMissing = ~Mask{0};

  ChoiceTable() = default;
  /// All entries start absent except C(empty) = empty. Throws
  /// UniverseTooLarge above kMaxAgentUniverse.
  ChoiceTable(std::string agent, std::vector<std::string> universe);

  /// Builds a total table from fn(menu) -> chosen.
  static ChoiceTable from_function(std::string agent, std::vector<std::string> universe,
                                   const std::function<ContractSet(ContractSet)>& fn);

  const std::string& agent() const { return agent_; }
  const std::vector<std::string>& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }
  std::size_t menu_count() const { return entries_.size(); }
  ContractSet full() const { return ContractSet::full(universe_.size()); }

  /// Stores an entry as given; containment is not checked here (see
  /// missing_or_invalid() and validate_market()).
  void set(ContractSet menu, ContractSet chosen);
  void erase(ContractSet menu);
  bool has(ContractSet menu) const;

  /// C(menu). Bits outside the universe are ignored.
  ContractSet choose(ContractSet menu) const;
  ContractSet operator()(ContractSet menu) const { return choose(menu); }
  /// Unchecked lookup for total tables in hot loops.
  Mask raw(Mask menu) const { return entries_[menu]; }
  std::span<const Mask> entries() const { return entries_; }

  bool is_total() const;
  /// True iff C(S) = empty for every S.
  bool is_trivial() const;
  /// Fills every absent singleton entry with C({x}) = {x}.
  void fill_singleton_identity();

  std::optional<std::size_t> index_of(std::string_view contract_id) const;
  /// "{a,b}" using contract ids.
  std::string format(ContractSet set) const;
  std::vector<std::string> ids(ContractSet set) const;

  /// Throws MissingEntry unless total; checkers call this on entry.
  void require_total() const;
  /// Throws UniverseTooLarge if size() > cap.
  void require_cap(std::size_t cap, std::string_view operation) const;

  bool operator==(const ChoiceTable&) const = default;

 private:
  std::string agent_;
  std::vector<std::string> universe_;
  std::vector<Mask> entries_;
};

inline ContractSet choose(const ChoiceTable& table, ContractSet menu) {
  return table.choose(menu);
}

}  // namespace choicematch
