#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "choicematch/choice_table.hpp"
#include "choicematch/contract_set.hpp"

namespace choicematch {

/// Revealed preference between disjoint nonempty sets A and B, where
/// A ≿ B iff A ⊆ C(A ∪ B).
enum class PairRelation {
  first_preferred,   // A ≻ B
  second_preferred,  // B ≻ A
  indifferent,       // A ∼ B
  incomparable,      // A ∥ B
};

std::string_view to_string(PairRelation relation);

/// Throws EmptySet if either set is empty, NotDisjoint if they intersect.
PairRelation classify_pair(const ChoiceTable& table, ContractSet a, ContractSet b);

bool is_ir(const ChoiceTable& table, ContractSet s);

struct MaximalityCheck {
  enum class Failure { none, not_ir, challenger };

  bool holds = false;
  Failure failure = Failure::none;
  /// For Failure::challenger: the least disjoint S' with S' ⊆ C(S ∪ S').
  ContractSet challenger;
  /// C(S) for not_ir, C(S ∪ S') for challenger.
  ContractSet chosen;
};

MaximalityCheck is_strongly_maximal_ir(const ChoiceTable& table, ContractSet s);

/// Every strongly maximal IR set (∅ included when it qualifies), ascending.
std::vector<ContractSet> enumerate_strongly_maximal_ir(const ChoiceTable& table);

enum class GdaMove { grow, discard, rejected };

std::string_view to_string(GdaMove move);

struct GdaStep {
  ContractSet current;
  ContractSet challenger;
  GdaMove move = GdaMove::rejected;
  /// C(current ∪ challenger).
  ContractSet chosen;
  /// Set held after the step (equal to current for rejected challengers).
  ContractSet result;

  bool operator==(const GdaStep&) const = default;
};

struct GdaOptions {
  /// Enforce check_sub on non-trivial tables (PreconditionFailed).
  bool require_sub = true;
  /// Moves before the run is declared non-terminating; 0 selects 2^(n+1).
  std::uint64_t move_budget = 0;
  /// Record rejected challengers in the trace, not just moves.
  bool record_rejections = true;
};

struct GdaResult {
  enum class Status { terminated, non_terminating };

  Status status = Status::terminated;
  /// Final set when terminated; the set where the repeat was detected
  /// otherwise.
  ContractSet result;
  std::vector<GdaStep> trace;
  /// For non_terminating: the repeated states, starting at the first state
  /// that recurred (the cycle closes back to cycle.front()).
  std::vector<ContractSet> cycle;

  bool terminated() const { return status == Status::terminated; }
};

/// The grow-or-discard search for a strongly maximal IR set. Starts from
/// C(universe); scans disjoint nonempty challengers in ascending order,
/// testing grow before discard, and restarts the scan after every move. A
/// trivial table returns ∅ with an empty trace.
GdaResult gda(const ChoiceTable& table, const GdaOptions& options = {});

/// True iff the steps chain (each result is the next current set), every
/// move is legal for the table, and the moves land on gda's final set.
bool gda_trace_consistent(const ChoiceTable& table, const GdaResult& result);

}  // namespace choicematch
