#include "choicematch/market.hpp"

#include <algorithm>
#include <set>

#include "choicematch/errors.hpp"

namespace choicematch {

Market::Market(std::vector<std::string> firms, std::vector<std::string> workers,
               std::vector<Contract> contracts, std::map<std::string, ChoiceTable> tables,
               SingletonDefault singletons)
    : firms_(std::move(firms)),
      workers_(std::move(workers)),
      contracts_(std::move(contracts)),
      tables_(std::move(tables)),
      singletons_(singletons) {
  std::sort(firms_.begin(), firms_.end());
  std::sort(workers_.begin(), workers_.end());
  std::stable_sort(contracts_.begin(), contracts_.end(),
                   [](const Contract& a, const Contract& b) { return a.id < b.id; });

  auto add_agent = [&](const std::string& id, Side side) {
    Agent a{id, side, {}};
    for (std::size_t i = 0; i < contracts_.size(); ++i) {
      const auto& named = side == Side::firm ? contracts_[i].firm : contracts_[i].worker;
      if (named == id) a.contracts.push_back(i);
    }
    agent_index_.emplace(id, agents_.size());
    agents_.push_back(std::move(a));
  };
  for (const auto& f : firms_) add_agent(f, Side::firm);
  for (const auto& w : workers_) add_agent(w, Side::worker);
}

const Market::Agent& Market::agent(std::string_view id) const {
  auto it = agent_index_.find(id);
  if (it == agent_index_.end()) throw UnknownAgent("unknown agent '" + std::string(id) + "'");
  return agents_[it->second];
}

bool Market::has_agent(std::string_view id) const { return agent_index_.contains(id); }

const ChoiceTable& Market::table(std::string_view agent_id) const {
  auto it = tables_.find(std::string(agent_id));
  if (it == tables_.end()) {
    throw UnknownAgent("no choice table for agent '" + std::string(agent_id) + "'");
  }
  return it->second;
}

std::optional<std::size_t> Market::contract_index(std::string_view id) const {
  auto it = std::lower_bound(contracts_.begin(), contracts_.end(), id,
                             [](const Contract& c, std::string_view v) { return c.id < v; });
  if (it == contracts_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - contracts_.begin());
}

ContractSet Market::universe_of(std::string_view agent_id) const {
  Mask m = 0;
  for (std::size_t i : agent(agent_id).contracts) m |= Mask{1} << i;
  return ContractSet(m);
}

ContractSet Market::to_local(const Agent& agent, ContractSet global) const {
  Mask out = 0;
  for (std::size_t j = 0; j < agent.contracts.size(); ++j) {
    if (global.contains(agent.contracts[j])) out |= Mask{1} << j;
  }
  return ContractSet(out);
}

ContractSet Market::to_global(const Agent& agent, ContractSet local) const {
  Mask out = 0;
  for (std::size_t j = 0; j < agent.contracts.size(); ++j) {
    if (local.contains(j)) out |= Mask{1} << agent.contracts[j];
  }
  return ContractSet(out);
}

ContractSet Market::project(const Matching& matching, std::string_view agent_id) const {
  return matching.contracts & universe_of(agent_id);
}

ContractSet Market::choose(const Agent& agent, ContractSet global) const {
  return to_global(agent, table(agent.id).choose(to_local(agent, global)));
}

std::string Market::format(ContractSet global) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : global.indices()) {
    if (!first) out += ",";
    first = false;
    out += i < contracts_.size() ? contracts_[i].id : "#" + std::to_string(i);
  }
  return out + "}";
}

std::vector<std::string> Market::ids(ContractSet global) const {
  std::vector<std::string> out;
  for (std::size_t i : global.indices()) out.push_back(contracts_.at(i).id);
  return out;
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::duplicate_agent: return "duplicate_agent";
    case IssueKind::duplicate_contract: return "duplicate_contract";
    case IssueKind::dangling_agent: return "dangling_agent";
    case IssueKind::missing_table: return "missing_table";
    case IssueKind::unknown_table_agent: return "unknown_table_agent";
    case IssueKind::universe_mismatch: return "universe_mismatch";
    case IssueKind::universe_too_large: return "universe_too_large";
    case IssueKind::missing_entry: return "missing_entry";
    case IssueKind::containment: return "containment";
  }
  return "unknown";
}

bool ValidationReport::has(IssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [kind](const ValidationIssue& i) { return i.kind == kind; });
}

void validate_table(const ChoiceTable& table, std::vector<ValidationIssue>& out) {
  const auto entries = table.entries();
  for (Mask m = 0; m < entries.size(); ++m) {
    const Mask e = entries[m];
    if (e == ChoiceTable::kMissing) {
      out.push_back({IssueKind::missing_entry, table.agent(),
                     "no entry for menu " + table.format(ContractSet(m))});
    } else if ((e & ~m) != 0) {
      out.push_back({IssueKind::containment, table.agent(),
                     "C(" + table.format(ContractSet(m)) + ") = " +
                         table.format(ContractSet(e)) + " is not a subset of the menu"});
    }
  }
}

ValidationReport validate_market(const Market& market) {
  ValidationReport report;
  auto& out = report.issues;

  std::set<std::string> seen;
  for (const auto& a : market.agents()) {
    if (!seen.insert(a.id).second) {
      out.push_back({IssueKind::duplicate_agent, a.id, "agent id declared more than once"});
    }
  }
  const auto& contracts = market.contracts();
  for (std::size_t i = 1; i < contracts.size(); ++i) {
    if (contracts[i].id == contracts[i - 1].id) {
      out.push_back({IssueKind::duplicate_contract, "", "contract id '" + contracts[i].id +
                                                            "' declared more than once"});
    }
  }
  const std::set<std::string> firms(market.firms().begin(), market.firms().end());
  const std::set<std::string> workers(market.workers().begin(), market.workers().end());
  for (const auto& c : contracts) {
    if (!firms.contains(c.firm)) {
      out.push_back({IssueKind::dangling_agent, c.firm,
                     "contract '" + c.id + "' names undeclared firm '" + c.firm + "'"});
    }
    if (!workers.contains(c.worker)) {
      out.push_back({IssueKind::dangling_agent, c.worker,
                     "contract '" + c.id + "' names undeclared worker '" + c.worker + "'"});
    }
  }
  if (contracts.size() > kMaxMarketContracts) {
    out.push_back({IssueKind::universe_too_large, "",
                   std::to_string(contracts.size()) + " contracts exceed the market cap of " +
                       std::to_string(kMaxMarketContracts)});
  }

  for (const auto& [id, table] : market.tables()) {
    if (!market.has_agent(id)) {
      out.push_back({IssueKind::unknown_table_agent, id, "choice table for undeclared agent"});
    }
  }
  for (const auto& a : market.agents()) {
    if (a.contracts.size() > kMaxAgentUniverse) {
      out.push_back({IssueKind::universe_too_large, a.id,
                     std::to_string(a.contracts.size()) + " contracts exceed the agent cap of " +
                         std::to_string(kMaxAgentUniverse)});
    }
    auto it = market.tables().find(a.id);
    if (it == market.tables().end()) {
      out.push_back({IssueKind::missing_table, a.id, "agent has no choice table"});
      continue;
    }
    const ChoiceTable& table = it->second;
    std::vector<std::string> expected;
    for (std::size_t i : a.contracts) expected.push_back(contracts[i].id);
    if (table.universe() != expected) {
      out.push_back({IssueKind::universe_mismatch, a.id,
                     "table universe differs from the contracts naming the agent"});
      continue;
    }
    validate_table(table, out);
  }
  return report;
}

}  // namespace choicematch
