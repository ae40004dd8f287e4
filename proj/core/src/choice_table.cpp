#include "choicematch/choice_table.hpp"

#include <algorithm>

#include "choicematch/errors.hpp"

namespace choicematch {

ChoiceTable::ChoiceTable(std::string agent, std::vector<std::string> universe)
    : agent_(std::move(agent)), universe_(std::move(universe)) {
  if (universe_.size() > kMaxAgentUniverse) {
    throw UniverseTooLarge("agent '" + agent_ + "' has " + std::to_string(universe_.size()) +
                           " contracts; the cap is " + std::to_string(kMaxAgentUniverse));
  }
  std::sort(universe_.begin(), universe_.end());
  entries_.assign(std::size_t{1} << universe_.size(), kMissing);
  entries_[0] = 0;
}

ChoiceTable ChoiceTable::from_function(std::string agent, std::vector<std::string> universe,
                                       const std::function<ContractSet(ContractSet)>& fn) {
  ChoiceTable t(std::move(agent), std::move(universe));
  for (Mask m = 0; m < t.entries_.size(); ++m) {
    t.entries_[m] = fn(ContractSet(m)).bits();
  }
  return t;
}

void ChoiceTable::set(ContractSet menu, ContractSet chosen) {
  entries_.at(menu.bits()) = chosen.bits();
}

void ChoiceTable::erase(ContractSet menu) { entries_.at(menu.bits()) = kMissing; }

bool ChoiceTable::has(ContractSet menu) const {
  return (menu.bits() & ~full().bits()) == 0 && entries_[menu.bits()] != kMissing;
}

ContractSet ChoiceTable::choose(ContractSet menu) const {
  const Mask m = menu.bits() & full().bits();
  const Mask e = entries_[m];
  if (e == kMissing) {
    throw MissingEntry("agent '" + agent_ + "' has no choice entry for menu " +
                       format(ContractSet(m)));
  }
  return ContractSet(e);
}

bool ChoiceTable::is_total() const {
  return std::none_of(entries_.begin(), entries_.end(), [](Mask e) { return e == kMissing; });
}

bool ChoiceTable::is_trivial() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Mask e) { return e == 0; });
}

void ChoiceTable::fill_singleton_identity() {
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    Mask m = Mask{1} << i;
    if (entries_[m] == kMissing) entries_[m] = m;
  }
}

std::optional<std::size_t> ChoiceTable::index_of(std::string_view contract_id) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), contract_id);
  if (it == universe_.end() || *it != contract_id) return std::nullopt;
  return static_cast<std::size_t>(it - universe_.begin());
}

std::string ChoiceTable::format(ContractSet set) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : set.indices()) {
    if (!first) out += ",";
    first = false;
    out += i < universe_.size() ? universe_[i] : "#" + std::to_string(i);
  }
  return out + "}";
}

std::vector<std::string> ChoiceTable::ids(ContractSet set) const {
  std::vector<std::string> out;
  for (std::size_t i : set.indices()) out.push_back(universe_.at(i));
  return out;
}

void ChoiceTable::require_total() const {
  for (Mask m = 0; m < entries_.size(); ++m) {
    if (entries_[m] == kMissing) {
      throw MissingEntry("agent '" + agent_ + "' has no choice entry for menu " +
                         format(ContractSet(m)));
    }
  }
}

void ChoiceTable::require_cap(std::size_t cap, std::string_view operation) const {
  if (size() > cap) {
    throw UniverseTooLarge(std::string(operation) + ": agent '" + agent_ + "' has " +
                           std::to_string(size()) + " contracts; the cap is " +
                           std::to_string(cap));
  }
}

}  // namespace choicematch
