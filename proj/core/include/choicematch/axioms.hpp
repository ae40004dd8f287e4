#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "choicematch/choice_table.hpp"
#include "choicematch/contract_set.hpp"

namespace choicematch {

enum class Axiom { SUB, CON, PI, GA, BA };

std::string_view to_string(Axiom axiom);

enum class VerdictKind { holds, violated, no_violation_up_to };

std::string_view to_string(VerdictKind kind);

/// One recorded choice value C(menu) = chosen.
struct Evaluation {
  ContractSet menu;
  ContractSet chosen;

  bool operator==(const Evaluation&) const = default;
};

enum class GraphMove { grow, discard };

/// A labelled edge of the grow/discard graph.
struct GraphEdge {
  ContractSet from;
  ContractSet challenger;
  GraphMove move;
  ContractSet to;

  bool operator==(const GraphEdge&) const = default;
};

/// Certificate of a violation.
///
/// SUB: sets = (A, B) with A ⊆ B, element = a member of C(B) ∩ A missing
/// from C(A). CON: sets = (A, B) with C(B) ⊆ A ⊆ B and C(A) != C(B).
/// PI: sets = (A, B) with C(A∪B) != C(C(A)∪C(B)).
/// GA chain: sets = (S_1, ..., S_k), derived = (D_1, ..., D_{k-2}).
/// GA graph: sets = the cycle's nodes (first node not repeated), edges = the
/// labelled moves between them. BA: sequence = (x_1, ..., x_k).
struct AxiomWitness {
  Axiom axiom = Axiom::SUB;
  std::vector<ContractSet> sets;
  std::vector<ContractSet> derived;
  std::optional<std::size_t> element;
  std::vector<std::size_t> sequence;
  std::vector<GraphEdge> edges;
  std::vector<Evaluation> evaluations;

  bool operator==(const AxiomWitness&) const = default;
};

struct Verdict {
  Axiom axiom = Axiom::SUB;
  VerdictKind kind = VerdictKind::holds;
  std::optional<AxiomWitness> witness;
  /// Chain-length bound searched, for no_violation_up_to.
  std::optional<std::size_t> bound;
  /// For no_violation_up_to: the finite state space was exhausted, so no
  /// admissible chain of any length exists.
  bool exhaustive = false;

  bool holds() const { return kind == VerdictKind::holds; }
  bool violated() const { return kind == VerdictKind::violated; }

  bool operator==(const Verdict&) const = default;
};

struct ScanOptions {
  /// Worker threads for the 4^n scans; the witness is the same for any value.
  unsigned jobs = 1;
};

struct GaChainOptions {
  /// Longest chain considered. 0 selects 2 * (2^n - 1).
  std::size_t max_k = 0;
  /// Search nodes before BudgetExceeded is thrown.
  std::uint64_t node_budget = 10'000'000;
  /// Literal definition: the final challenger S_k need not be disjoint from
  /// the set it is added to. The default also requires that disjointness.
  bool strict = false;
  /// Only consider chains with this S_1. The verdict then speaks about
  /// chains from that set alone.
  std::optional<ContractSet> first;
};

struct BaOptions {
  /// Only consider chains starting at this contract (local index).
  std::optional<std::size_t> first;
};

/// Every checker requires a total table (MissingEntry otherwise) and an
/// agent universe within kMaxAgentUniverse (UniverseTooLarge otherwise).
Verdict check_sub(const ChoiceTable& table);
Verdict check_con(const ChoiceTable& table);
Verdict check_pi(const ChoiceTable& table, const ScanOptions& options = {});
Verdict check_ba(const ChoiceTable& table, const BaOptions& options = {});
Verdict check_ga_chain(const ChoiceTable& table, const GaChainOptions& options = {});
Verdict check_ga_graph(const ChoiceTable& table);

/// Re-derives the violation from the witness sets alone, looking every value
/// up through choose(). True iff the witness is a genuine violation and its
/// recorded evaluations agree with the table.
bool replay(const ChoiceTable& table, const AxiomWitness& witness, bool strict_ga = false);

/// True iff (x_1, ..., x_k) premises hold and x_1 is not in C({x_1, x_k}).
bool ba_chain_violates(const ChoiceTable& table, const std::vector<std::size_t>& sequence);

/// True iff the chain S_1..S_k is admissible and ends with S_1 re-chosen.
/// derived receives D_1..D_{k-2} when admissible.
bool ga_chain_violates(const ChoiceTable& table, const std::vector<ContractSet>& chain,
                       bool strict = false, std::vector<ContractSet>* derived = nullptr);

struct ImplicationReport {
  Verdict sub;
  Verdict con;
  Verdict pi;
  Verdict ba;
  Verdict ga_graph;
  Verdict ga_chain;
  /// Proven implications that failed on this table (always a library bug).
  std::vector<std::string> failures;
  /// The two GA checkers disagree on holds vs violated. A finding, not an
  /// error: their equivalence is not established in general.
  bool ga_disagreement = false;

  /// Throws ImplicationFailure listing `failures` if any.
  void require_consistent() const;
};

ImplicationReport implication_suite(const ChoiceTable& table,
                                    const GaChainOptions& ga = {},
                                    const ScanOptions& scan = {});

}  // namespace choicematch
