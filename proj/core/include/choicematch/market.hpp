#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "choicematch/choice_table.hpp"
#include "choicematch/contract_set.hpp"

namespace choicematch {

struct Contract {
  std::string id;
  std::string firm;
  std::string worker;

  bool operator==(const Contract&) const = default;
};

enum class Side { firm, worker };

enum class SingletonDefault { explicit_entries, identity };

/// A set of contracts over the market's full (canonically ordered) contract
/// list.
struct Matching {
  ContractSet contracts;

  auto operator<=>(const Matching&) const = default;
};

/// firms, workers, contracts and one choice table per agent. Contracts are
/// kept sorted by id; firms and workers sorted by id. The constructor does not
/// reject ill-formed content; validate_market() reports it.
class Market {
 public:
  struct Agent {
    std::string id;
    Side side;
    /// Global indices of the contracts naming this agent, ascending.
    std::vector<std::size_t> contracts;

    bool operator==(const Agent&) const = default;
  };

  Market() = default;
  Market(std::vector<std::string> firms, std::vector<std::string> workers,
         std::vector<Contract> contracts, std::map<std::string, ChoiceTable> tables,
         SingletonDefault singletons = SingletonDefault::explicit_entries);

  const std::vector<std::string>& firms() const { return firms_; }
  const std::vector<std::string>& workers() const { return workers_; }
  const std::vector<Contract>& contracts() const { return contracts_; }
  const std::map<std::string, ChoiceTable>& tables() const { return tables_; }
  SingletonDefault singleton_default() const { return singletons_; }
  /// Free text carried by the market file's "comment" field.
  const std::string& comment() const { return comment_; }
  void set_comment(std::string comment) { comment_ = std::move(comment); }

  /// Firms first, then workers, each in id order.
  const std::vector<Agent>& agents() const { return agents_; }
  const Agent& agent(std::string_view id) const;
  bool has_agent(std::string_view id) const;
  const ChoiceTable& table(std::string_view agent_id) const;

  std::size_t contract_count() const { return contracts_.size(); }
  ContractSet all_contracts() const { return ContractSet::full(contracts_.size()); }
  std::optional<std::size_t> contract_index(std::string_view id) const;

  /// Global set of the agent's contracts.
  ContractSet universe_of(std::string_view agent_id) const;
  /// Global set -> set over the agent's own universe (foreign bits dropped).
  ContractSet to_local(const Agent& agent, ContractSet global) const;
  ContractSet to_global(const Agent& agent, ContractSet local) const;

  /// The contracts of `matching` that name the agent (global indices).
  /// Throws UnknownAgent.
  ContractSet project(const Matching& matching, std::string_view agent_id) const;

  /// C_a(global ∩ X_a), returned as a global set.
  ContractSet choose(const Agent& agent, ContractSet global) const;

  /// "{id,id}" over global indices.
  std::string format(ContractSet global) const;
  std::vector<std::string> ids(ContractSet global) const;

  bool operator==(const Market&) const = default;

 private:
  std::vector<std::string> firms_;
  std::vector<std::string> workers_;
  std::vector<Contract> contracts_;
  std::map<std::string, ChoiceTable> tables_;
  SingletonDefault singletons_ = SingletonDefault::explicit_entries;
  std::string comment_;
  std::vector<Agent> agents_;
  std::map<std::string, std::size_t, std::less<>> agent_index_;
};

enum class IssueKind {
  duplicate_agent,
  duplicate_contract,
  dangling_agent,
  missing_table,
  unknown_table_agent,
  universe_mismatch,
  universe_too_large,
  missing_entry,
  containment,
};

std::string_view to_string(IssueKind kind);

struct ValidationIssue {
  IssueKind kind;
  std::string agent;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(IssueKind kind) const;
};

/// Lists every violated structural invariant; an empty report means the
/// market is well formed (all tables total, C(S) ⊆ S, universes consistent).
ValidationReport validate_market(const Market& market);

/// Issues of a single table: missing entries and containment failures.
void validate_table(const ChoiceTable& table, std::vector<ValidationIssue>& out);

}  // namespace choicematch
