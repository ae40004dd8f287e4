#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "choicematch/axioms.hpp"
#include "choicematch/market.hpp"

namespace choicematch {

/// An agent whose holding is not IR: C(held) = chosen != held.
struct IrFailure {
  std::string agent;
  ContractSet held;
  ContractSet chosen;
};

struct IrCheck {
  bool holds = true;
  std::optional<IrFailure> failure;
};

/// Per-agent IR, agents in firms-then-workers id order; the first failing
/// agent is reported.
IrCheck is_matching_ir(const Market& market, const Matching& matching);

/// How one agent evaluates a block: chosen = C_a(held ∪ offered). All sets
/// are over the whole market.
struct AgentEvaluation {
  std::string agent;
  Side side = Side::firm;
  ContractSet offered;
  ContractSet held;
  ContractSet chosen;
};

struct BlockWitness {
  ContractSet block;
  std::vector<AgentEvaluation> evaluations;
};

enum class BlockScan {
  /// Every nonempty subset of the unmatched contracts, ascending.
  full,
  /// For each firm in id order, the nonempty subsets of its unmatched
  /// contracts. Agrees with `full` whenever every worker's table is
  /// substitutable.
  single_firm,
};

struct StabilityCheck {
  bool stable = true;
  std::optional<IrFailure> ir_failure;
  std::optional<BlockWitness> block;
};

/// IR plus absence of a blocking set. Throws UniverseTooLarge above
/// kMaxMarketContracts.
StabilityCheck is_cy_stable(const Market& market, const Matching& matching,
                            BlockScan scan = BlockScan::full, const ScanOptions& options = {});

/// True iff the block is nonempty, disjoint from the matching, every involved
/// agent keeps its part of it, and the recorded evaluations agree.
bool block_replays(const Market& market, const Matching& matching, const BlockWitness& block);

/// Every CY-stable matching, ascending by contract mask.
std::vector<Matching> enumerate_cy_stable(const Market& market, const ScanOptions& options = {});

struct WorkerResponse {
  std::string worker;
  ContractSet offered;
  ContractSet held;
  ContractSet chosen;
  bool accepted = false;
};

/// One proposal attempt. Void attempts (some worker refused) leave the
/// matching unchanged.
struct GdmaRound {
  std::string firm;
  ContractSet proposal;
  /// C_f(μ_f ∪ proposal).
  ContractSet firm_chosen;
  std::vector<WorkerResponse> responses;
  bool accepted = false;
  Matching before;
  Matching after;
};

struct GdmaOptions {
  /// Enforce check_sub on every agent (PreconditionFailed).
  bool require_sub = true;
  /// Accepted rounds before declaring non-termination; 0 selects the number
  /// of possible matchings.
  std::uint64_t round_budget = 0;
  /// Record refused proposals in the trace.
  bool record_void = true;
};

struct GdmaResult {
  enum class Status { terminated, non_terminating };

  Status status = Status::terminated;
  Matching matching;
  /// The first tentative matching: workers' choices from the pooled
  /// step-one proposals.
  Matching initial;
  /// Each firm's step-one proposal (a strongly maximal IR set of its own).
  std::map<std::string, ContractSet> proposals;
  std::vector<GdmaRound> rounds;
  /// For non_terminating: the repeating matchings, starting at the first one
  /// that recurred.
  std::vector<Matching> cycle;
  /// Human-readable cause when non_terminating.
  std::string diagnosis;

  bool terminated() const { return status == Status::terminated; }
};

/// Firm-proposing grow-or-discard matching with sequential rounds: each round
/// applies the first accepted (firm, proposal) pair in canonical order
/// (firms by id, proposals ascending). Rejected contracts stay eligible.
GdmaResult gdma(const Market& market, const GdmaOptions& options = {});

/// Re-applies the accepted rounds of `result` to its initial matching.
/// Throws ImplicationFailure if a recorded round no longer applies.
Matching replay_gdma(const Market& market, const GdmaResult& result);

}  // namespace choicematch
