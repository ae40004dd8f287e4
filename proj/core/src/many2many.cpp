#include "choicematch/many2many.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "choicematch/errors.hpp"
#include "choicematch/individual.hpp"
#include "parallel.hpp"

namespace choicematch {
namespace {

// Flattened per-agent data for the hot loops.
struct AgentView {
  const Market::Agent* agent;
  const ChoiceTable* table;
  Mask universe;
};

class MarketView {
 public:
  explicit MarketView(const Market& m) : market_(m) {
    for (const auto& a : m.agents()) {
      AgentView v{&a, &m.table(a.id), 0};
      for (std::size_t i : a.contracts) v.universe |= Mask{1} << i;
      (a.side == Side::firm ? firms_ : workers_).push_back(v);
      all_.push_back(v);
    }
  }

  const std::vector<AgentView>& firms() const { return firms_; }
  const std::vector<AgentView>& workers() const { return workers_; }
  const std::vector<AgentView>& all() const { return all_; }

  Mask choose(const AgentView& a, Mask global) const {
    return market_.choose(*a.agent, ContractSet(global)).bits();
  }

 private:
  const Market& market_;
  std::vector<AgentView> firms_;
  std::vector<AgentView> workers_;
  std::vector<AgentView> all_;
};

bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

// Bits of `index` scattered onto the set bits of `free`, lowest first.
Mask deposit(std::uint64_t index, Mask free) {
  Mask out = 0;
  for (Mask f = free; f != 0 && index != 0; f &= f - 1, index >>= 1) {
    if (index & 1) out |= f & (~f + 1);
  }
  return out;
}

std::optional<IrFailure> ir_failure(const MarketView& v, Mask matching) {
  for (const auto& a : v.all()) {
    const Mask held = matching & a.universe;
    const Mask chosen = v.choose(a, held);
    if (chosen != held) return IrFailure{a.agent->id, ContractSet(held), ContractSet(chosen)};
  }
  return std::nullopt;
}

bool agent_keeps(const MarketView& v, const AgentView& a, Mask matching, Mask block) {
  const Mask offered = block & a.universe;
  if (offered == 0) return true;
  return subset(offered, v.choose(a, (matching & a.universe) | offered));
}

bool blocks(const MarketView& v, Mask matching, Mask block) {
  for (const auto& a : v.all()) {
    if (!agent_keeps(v, a, matching, block)) return false;
  }
  return true;
}

bool workers_keep(const MarketView& v, Mask matching, Mask block) {
  for (const auto& w : v.workers()) {
    if (!agent_keeps(v, w, matching, block)) return false;
  }
  return true;
}

BlockWitness witness_for(const MarketView& v, Mask matching, Mask block) {
  BlockWitness w;
  w.block = ContractSet(block);
  for (const auto& a : v.all()) {
    const Mask offered = block & a.universe;
    if (offered == 0) continue;
    const Mask held = matching & a.universe;
    w.evaluations.push_back({a.agent->id, a.agent->side, ContractSet(offered), ContractSet(held),
                             ContractSet(v.choose(a, held | offered))});
  }
  return w;
}

std::optional<Mask> find_block(const MarketView& v, Mask all, Mask matching, BlockScan scan,
                               unsigned jobs) {
  const Mask free = all & ~matching;
  if (scan == BlockScan::full) {
    const std::uint64_t count = std::uint64_t{1} << std::popcount(free);
    auto first = detail::parallel_first(count, jobs, [&](std::uint64_t i) {
      return i != 0 && blocks(v, matching, deposit(i, free));
    });
    if (!first) return std::nullopt;
    return deposit(*first, free);
  }
  for (const auto& f : v.firms()) {
    const Mask own = free & f.universe;
    const std::uint64_t count = std::uint64_t{1} << std::popcount(own);
    auto first = detail::parallel_first(count, jobs, [&](std::uint64_t i) {
      if (i == 0) return false;
      const Mask o = deposit(i, own);
      return agent_keeps(v, f, matching, o) && workers_keep(v, matching, o);
    });
    if (first) return deposit(*first, own);
  }
  return std::nullopt;
}

void require_market_cap(const Market& m, std::string_view op) {
  if (m.contract_count() > kMaxMarketContracts) {
    throw UniverseTooLarge(std::string(op) + ": market has " +
                           std::to_string(m.contract_count()) + " contracts; the cap is " +
                           std::to_string(kMaxMarketContracts));
  }
}

bool workers_substitutable(const Market& m) {
  for (const auto& w : m.workers()) {
    if (!check_sub(m.table(w)).holds()) return false;
  }
  return true;
}

// One proposal attempt by firm f at matching mu; fills `round` and returns
// whether every affected worker accepted.
bool attempt(const MarketView& v, const AgentView& f, Mask mu, Mask proposal, GdmaRound& round) {
  const Mask held_f = mu & f.universe;
  round.firm = f.agent->id;
  round.proposal = ContractSet(proposal);
  round.firm_chosen = ContractSet(v.choose(f, held_f | proposal));
  round.before = Matching{ContractSet(mu)};
  round.responses.clear();
  bool all = true;
  for (const auto& w : v.workers()) {
    const Mask offered = proposal & w.universe;
    if (offered == 0) continue;
    const Mask held = mu & w.universe;
    const Mask chosen = v.choose(w, held | offered);
    const bool ok = subset(offered, chosen);
    round.responses.push_back({w.agent->id, ContractSet(offered), ContractSet(held),
                               ContractSet(chosen), ok});
    all = all && ok;
  }
  round.accepted = all;
  if (!all) {
    round.after = round.before;
    return false;
  }
  // Contracts survive if both sides still hold them after the transition.
  Mask next = (mu & ~f.universe) | round.firm_chosen.bits();
  for (const auto& w : v.workers()) {
    const Mask offered = proposal & w.universe;
    if (offered == 0) continue;
    const Mask chosen = v.choose(w, (mu & w.universe) | offered);
    next = (next & ~w.universe) | (next & chosen);
  }
  round.after = Matching{ContractSet(next)};
  return true;
}

}  // namespace

IrCheck is_matching_ir(const Market& market, const Matching& matching) {
  const MarketView v(market);
  IrCheck out;
  out.failure = ir_failure(v, matching.contracts.bits());
  out.holds = !out.failure;
  return out;
}

StabilityCheck is_cy_stable(const Market& market, const Matching& matching, BlockScan scan,
                            const ScanOptions& options) {
  require_market_cap(market, "is_cy_stable");
  const MarketView v(market);
  StabilityCheck out;
  const Mask mu = matching.contracts.bits();
  out.ir_failure = ir_failure(v, mu);
  if (out.ir_failure) {
    out.stable = false;
    return out;
  }
  if (auto b = find_block(v, market.all_contracts().bits(), mu, scan, options.jobs)) {
    out.stable = false;
    out.block = witness_for(v, mu, *b);
  }
  return out;
}

bool block_replays(const Market& market, const Matching& matching, const BlockWitness& block) {
  const MarketView v(market);
  const Mask mu = matching.contracts.bits();
  const Mask b = block.block.bits();
  if (b == 0 || (b & mu) || !subset(b, market.all_contracts().bits())) return false;
  if (!blocks(v, mu, b)) return false;
  std::vector<AgentEvaluation> expected = witness_for(v, mu, b).evaluations;
  if (expected.size() != block.evaluations.size()) return false;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& e = expected[i];
    const auto& g = block.evaluations[i];
    if (e.agent != g.agent || e.offered != g.offered || e.held != g.held || e.chosen != g.chosen) {
      return false;
    }
  }
  return true;
}

std::vector<Matching> enumerate_cy_stable(const Market& market, const ScanOptions& options) {
  require_market_cap(market, "enumerate_cy_stable");
  const MarketView v(market);
  const Mask all = market.all_contracts().bits();
  const BlockScan scan = workers_substitutable(market) ? BlockScan::single_firm : BlockScan::full;
  const std::uint64_t count = std::uint64_t{1} << market.contract_count();
  auto chunks = detail::parallel_chunks(count, options.jobs, [&](std::uint64_t lo,
                                                                 std::uint64_t hi) {
    std::vector<Matching> found;
    for (std::uint64_t m = lo; m < hi; ++m) {
      const Mask mu = static_cast<Mask>(m);
      if (ir_failure(v, mu)) continue;
      if (find_block(v, all, mu, scan, 1)) continue;
      found.push_back(Matching{ContractSet(mu)});
    }
    return found;
  });
  std::vector<Matching> out;
  for (auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

GdmaResult gdma(const Market& market, const GdmaOptions& options) {
  require_market_cap(market, "gdma");
  const MarketView v(market);
  GdmaResult out;

  if (options.require_sub) {
    for (const auto& a : market.agents()) {
      if (!check_sub(market.table(a.id)).holds()) {
        throw PreconditionFailed("gdma: the choice table of '" + a.id +
                                 "' is not substitutable");
      }
    }
  }

  // Step 1: every firm proposes the result of its own grow-or-discard run;
  // each worker keeps its choice from the pooled offers.
  Mask pool = 0;
  for (const auto& f : v.firms()) {
    GdaOptions go;
    go.require_sub = false;
    go.record_rejections = false;
    const GdaResult g = gda(*f.table, go);
    if (!g.terminated()) {
      out.status = GdmaResult::Status::non_terminating;
      out.diagnosis = "firm '" + f.agent->id +
                      "': the grow-or-discard search revisits a set (general acyclicity fails)";
      for (const auto& s : g.cycle) {
        out.cycle.push_back(Matching{market.to_global(*f.agent, s)});
      }
      return out;
    }
    const ContractSet proposal = market.to_global(*f.agent, g.result);
    out.proposals[f.agent->id] = proposal;
    pool |= proposal.bits();
  }
  Mask mu = 0;
  for (const auto& w : v.workers()) mu |= v.choose(w, pool & w.universe);
  out.initial = Matching{ContractSet(mu)};

  const bool assert_ir = options.require_sub;
  const std::uint64_t budget =
      options.round_budget
          ? options.round_budget
          : (std::uint64_t{1} << std::min<std::size_t>(market.contract_count(), 63));

  std::vector<Mask> history{mu};
  std::map<Mask, std::size_t> seen{{mu, 0}};
  std::uint64_t accepted = 0;
  while (true) {
    bool moved = false;
    for (const auto& f : v.firms()) {
      const Mask free = f.universe & ~mu;
      const std::uint64_t count = std::uint64_t{1} << std::popcount(free);
      for (std::uint64_t i = 1; i < count && !moved; ++i) {
        const Mask o = deposit(i, free);
        if (!subset(o, v.choose(f, (mu & f.universe) | o))) continue;
        GdmaRound round;
        if (attempt(v, f, mu, o, round)) {
          mu = round.after.contracts.bits();
          out.rounds.push_back(std::move(round));
          moved = true;
        } else if (options.record_void) {
          out.rounds.push_back(std::move(round));
        }
      }
      if (moved) break;
    }
    if (!moved) break;
    // Only a round beyond the budget trips it.
    if (accepted == budget) {
      out.status = GdmaResult::Status::non_terminating;
      out.diagnosis = "round budget of " + std::to_string(budget) + " exhausted";
      out.matching = Matching{ContractSet(mu)};
      return out;
    }
    ++accepted;
    if (assert_ir) {
      if (auto bad = ir_failure(v, mu)) {
        throw ImplicationFailure("gdma: holding of '" + bad->agent +
                                 "' lost individual rationality under substitutable choices");
      }
    }
    auto [it, fresh] = seen.emplace(mu, history.size());
    if (!fresh) {
      out.status = GdmaResult::Status::non_terminating;
      out.diagnosis = "the tentative matching " + market.format(ContractSet(mu)) +
                      " recurred (general acyclicity fails for some agent)";
      for (std::size_t i = it->second; i < history.size(); ++i) {
        out.cycle.push_back(Matching{ContractSet(history[i])});
      }
      out.matching = Matching{ContractSet(mu)};
      return out;
    }
    history.push_back(mu);
  }
  out.matching = Matching{ContractSet(mu)};
  return out;
}

Matching replay_gdma(const Market& market, const GdmaResult& result) {
  const MarketView v(market);
  Mask mu = result.initial.contracts.bits();
  for (const auto& r : result.rounds) {
    if (!r.accepted) continue;
    const AgentView* f = nullptr;
    for (const auto& a : v.firms()) {
      if (a.agent->id == r.firm) f = &a;
    }
    if (!f) throw ImplicationFailure("replay_gdma: unknown firm '" + r.firm + "'");
    const Mask o = r.proposal.bits();
    if (o == 0 || (o & mu) || !subset(o, f->universe) ||
        !subset(o, v.choose(*f, (mu & f->universe) | o))) {
      throw ImplicationFailure("replay_gdma: recorded proposal is not admissible");
    }
    GdmaRound again;
    if (!attempt(v, *f, mu, o, again)) {
      throw ImplicationFailure("replay_gdma: recorded proposal is refused on replay");
    }
    if (again.after != r.after || again.before != r.before) {
      throw ImplicationFailure("replay_gdma: replay diverged from the trace");
    }
    mu = again.after.contracts.bits();
  }
  return Matching{ContractSet(mu)};
}

}  // namespace choicematch
