#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "choicematch/axioms.hpp"
#include "choicematch/errors.hpp"
#include "choicematch/many2many.hpp"
#include "choicematch/market.hpp"

namespace choicematch {

/// Stands for the outside option ∅ inside orders.
inline constexpr std::size_t kOutside = std::numeric_limits<std::size_t>::max();

/// The table fails binary acyclicity, so no order can be built from it.
class BaViolation : public Error {
 public:
  BaViolation(const std::string& agent, AxiomWitness witness, const std::string& what)
      : Error(what), agent_(agent), witness_(std::move(witness)) {}

  const std::string& agent() const { return agent_; }
  const AxiomWitness& witness() const { return witness_; }

 private:
  std::string agent_;
  AxiomWitness witness_;
};

/// The pairwise rules produced a relation that is not transitive. This can
/// happen under BA when some pair of acceptable contracts has an empty
/// choice: the pair is left indifferent while strict pairs around it are not.
class IntransitiveOrder : public Error {
 public:
  IntransitiveOrder(const std::string& agent, std::size_t x, std::size_t y, std::size_t z,
                    const std::string& what)
      : Error(what), agent_(agent), triple_{x, y, z} {}

  const std::string& agent() const { return agent_; }
  /// x ≿ y and y ≿ z but not x ≿ z (local indices, kOutside for ∅).
  const std::array<std::size_t, 3>& triple() const { return triple_; }

 private:
  std::string agent_;
  std::array<std::size_t, 3> triple_;
};

/// The pairwise relation over X_a ∪ {∅} as a dense matrix. Index n (the
/// universe size) is the outside option.
struct WeakRelation {
  std::size_t n = 0;
  std::vector<bool> cells;

  std::size_t carrier() const { return n + 1; }
  bool at(std::size_t i, std::size_t j) const { return cells[i * (n + 1) + j]; }
};

/// Applies the construction rules directly: reflexivity, acceptability
/// against ∅, unacceptable contracts tied below every acceptable one, strict
/// pairs from binary choices closed transitively, all other acceptable pairs
/// tied. Reads only menus of size at most two. No BA check.
WeakRelation build_relation(const ChoiceTable& table);

struct OrderProperties {
  bool reflexive = false;
  bool complete = false;
  bool transitive = false;
  /// A failing triple for transitivity (carrier indices).
  std::optional<std::array<std::size_t, 3>> counterexample;

  bool weak_order() const { return reflexive && complete && transitive; }
};

/// Exhaustive check over every pair and triple of the carrier.
OrderProperties order_properties(const WeakRelation& relation);

/// A weak order stored as indifference classes, best first. kOutside marks
/// the ∅ class; contracts below it are exactly the unacceptable ones.
struct AgentOrder {
  std::string agent;
  std::vector<std::string> universe;
  std::vector<std::vector<std::size_t>> levels;

  std::size_t level_of(std::size_t item) const;
  bool weakly_prefers(std::size_t a, std::size_t b) const {
    return level_of(a) <= level_of(b);
  }
  bool acceptable(std::size_t x) const { return level_of(x) < level_of(kOutside); }
};

/// check_ba is enforced (BaViolation); an intransitive result raises
/// IntransitiveOrder.
AgentOrder build_order(const ChoiceTable& table);

/// A strict ranking of X_a ∪ {∅}, best first.
struct StrictOrder {
  std::string agent;
  std::vector<std::size_t> ranking;

  /// Position in ranking; lower is better.
  std::size_t rank(std::size_t item) const;
  /// Contracts ranked above ∅, best first.
  std::vector<std::size_t> acceptable() const;
};

/// Breaks ties inside each class by byte-wise contract id order (the order
/// of the table's universe).
StrictOrder tie_break(const AgentOrder& order);

bool is_one_to_one(const Market& market, const Matching& matching);

struct RStabilityCheck {
  bool stable = true;
  std::optional<IrFailure> ir_failure;
  /// Least blocking contract (global index) with both sides' evaluations.
  std::optional<std::size_t> blocking;
  ContractSet firm_choice;
  ContractSet worker_choice;
};

/// Throws NotOneToOne.
RStabilityCheck is_r_stable(const Market& market, const Matching& matching);

struct DaaRound {
  /// Global contract indices proposed this round, ascending.
  std::vector<std::size_t> proposals;
  /// Global contract indices rejected this round (permanently).
  std::vector<std::size_t> rejections;
  /// Contracts held by the receiving side after the round.
  Matching held;
};

struct DaaOptions {
  bool worker_proposing = false;
};

struct DaaResult {
  Matching matching;
  std::vector<DaaRound> rounds;
  std::map<std::string, AgentOrder> orders;
  std::map<std::string, StrictOrder> strict_orders;
};

/// Classical deferred acceptance on the tie-broken binary orders. Rejections
/// are permanent; unacceptable contracts are never proposed or held.
DaaResult daa(const Market& market, const DaaOptions& options = {});

}  // namespace choicematch
