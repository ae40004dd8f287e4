#include "choicematch/one2one.hpp"

#include <algorithm>
#include <optional>

namespace choicematch {

namespace {

std::string item_name(const ChoiceTable& table, std::size_t item) {
  return item == kOutside ? std::string("∅") : table.universe()[item];
}

// Containment on the menus the construction reads.
void require_small_menus_contained(const ChoiceTable& table) {
  const std::size_t n = table.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      const ContractSet menu = ContractSet::single(x) | ContractSet::single(y);
      if (!table.choose(menu).subset_of(menu)) {
        throw ContainmentError("build_order: C(" + table.format(menu) + ") of '" + table.agent() +
                               "' is not contained in its menu");
      }
    }
  }
}

}  // namespace

WeakRelation build_relation(const ChoiceTable& table) {
  const std::size_t n = table.size();
  WeakRelation rel;
  rel.n = n;
  rel.cells.assign((n + 1) * (n + 1), false);
  auto cell = [&](std::size_t i, std::size_t j) { return rel.cells[i * (n + 1) + j]; };

  std::vector<bool> acceptable(n);
  for (std::size_t x = 0; x < n; ++x) {
    acceptable[x] = table.choose(ContractSet::single(x)).contains(x);
  }

  // Strict part among acceptable contracts: base pairs, then closure.
  std::vector<bool> strict(n * n, false);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !acceptable[x] || !acceptable[y]) continue;
      const ContractSet c = table.choose(ContractSet::single(x) | ContractSet::single(y));
      if (c == ContractSet::single(x)) strict[x * n + y] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!strict[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (strict[k * n + j]) strict[i * n + j] = true;
      }
    }
  }

  for (std::size_t i = 0; i <= n; ++i) cell(i, i) = true;
  for (std::size_t x = 0; x < n; ++x) {
    cell(x, n) = acceptable[x];
    cell(n, x) = !acceptable[x];
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      if (acceptable[x] != acceptable[y]) {
        cell(x, y) = acceptable[x];
      } else if (!acceptable[x]) {
        cell(x, y) = true;
      } else {
        cell(x, y) = !strict[y * n + x];
      }
    }
  }
  return rel;
}

OrderProperties order_properties(const WeakRelation& relation) {
  OrderProperties out;
  const std::size_t m = relation.carrier();
  out.reflexive = true;
  out.complete = true;
  out.transitive = true;
  for (std::size_t i = 0; i < m; ++i) {
    if (!relation.at(i, i)) out.reflexive = false;
    for (std::size_t j = 0; j < m; ++j) {
      if (!relation.at(i, j) && !relation.at(j, i)) out.complete = false;
      if (!relation.at(i, j)) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (relation.at(j, k) && !relation.at(i, k) && out.transitive) {
          out.transitive = false;
          out.counterexample = std::array<std::size_t, 3>{i, j, k};
        }
      }
    }
  }
  return out;
}

std::size_t AgentOrder::level_of(std::size_t item) const {
  for (std::size_t l = 0; l < levels.size(); ++l) {
    if (std::find(levels[l].begin(), levels[l].end(), item) != levels[l].end()) return l;
  }
  throw Error("AgentOrder: item not in the order of '" + agent + "'");
}

AgentOrder build_order(const ChoiceTable& table) {
  require_small_menus_contained(table);
  const Verdict ba = check_ba(table);
  if (ba.violated()) {
    std::string chain;
    for (std::size_t x : ba.witness->sequence) {
      if (!chain.empty()) chain += ",";
      chain += table.universe()[x];
    }
    throw BaViolation(table.agent(), *ba.witness,
                      "build_order: the choice table of '" + table.agent() +
                          "' violates BA with chain (" + chain + ")");
  }

  const WeakRelation rel = build_relation(table);
  const std::size_t n = rel.n;
  const OrderProperties props = order_properties(rel);
  auto carrier_item = [n](std::size_t i) { return i == n ? kOutside : i; };
  if (!props.weak_order()) {
    std::array<std::size_t, 3> t{0, 0, 0};
    if (props.counterexample) t = *props.counterexample;
    const std::size_t x = carrier_item(t[0]), y = carrier_item(t[1]), z = carrier_item(t[2]);
    throw IntransitiveOrder(table.agent(), x, y, z,
                            "build_order: the binary relation of '" + table.agent() +
                                "' is not transitive: " + item_name(table, x) + " ≿ " +
                                item_name(table, y) + " ≿ " + item_name(table, z) + " but not " +
                                item_name(table, x) + " ≿ " + item_name(table, z));
  }

  // In a weak order the number of items an element weakly beats ranks its
  // class: more is better, equal counts mean indifference.
  std::vector<std::pair<std::size_t, std::size_t>> scored;
  for (std::size_t i = 0; i <= n; ++i) {
    std::size_t score = 0;
    for (std::size_t j = 0; j <= n; ++j) score += rel.at(i, j);
    scored.emplace_back(score, i);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  AgentOrder order;
  order.agent = table.agent();
  order.universe = table.universe();
  for (std::size_t k = 0; k < scored.size(); ++k) {
    if (k == 0 || scored[k].first != scored[k - 1].first) order.levels.emplace_back();
    order.levels.back().push_back(carrier_item(scored[k].second));
  }
  return order;
}

std::size_t StrictOrder::rank(std::size_t item) const {
  auto it = std::find(ranking.begin(), ranking.end(), item);
  if (it == ranking.end()) throw Error("StrictOrder: item not ranked for '" + agent + "'");
  return static_cast<std::size_t>(it - ranking.begin());
}

std::vector<std::size_t> StrictOrder::acceptable() const {
  std::vector<std::size_t> out;
  for (std::size_t item : ranking) {
    if (item == kOutside) break;
    out.push_back(item);
  }
  return out;
}

StrictOrder tie_break(const AgentOrder& order) {
  StrictOrder out;
  out.agent = order.agent;
  for (const auto& level : order.levels) {
    // The universe is sorted byte-wise, so index order is id order.
    std::vector<std::size_t> sorted = level;
    std::sort(sorted.begin(), sorted.end());
    out.ranking.insert(out.ranking.end(), sorted.begin(), sorted.end());
  }
  return out;
}

bool is_one_to_one(const Market& market, const Matching& matching) {
  for (const auto& agent : market.agents()) {
    if (market.project(matching, agent.id).size() > 1) return false;
  }
  return true;
}

RStabilityCheck is_r_stable(const Market& market, const Matching& matching) {
  if (!is_one_to_one(market, matching)) {
    throw NotOneToOne("is_r_stable: some agent holds more than one contract in " +
                      market.format(matching.contracts));
  }
  RStabilityCheck out;
  const IrCheck ir = is_matching_ir(market, matching);
  if (!ir.holds) {
    out.stable = false;
    out.ir_failure = ir.failure;
    return out;
  }
  const ContractSet nu = matching.contracts;
  for (std::size_t x = 0; x < market.contract_count(); ++x) {
    if (nu.contains(x)) continue;
    const ContractSet sx = ContractSet::single(x);
    const Contract& c = market.contracts()[x];
    const auto& firm = market.agent(c.firm);
    const ContractSet fc = market.choose(firm, market.project(matching, c.firm) | sx);
    if (fc != sx) continue;
    const auto& worker = market.agent(c.worker);
    const ContractSet wc = market.choose(worker, market.project(matching, c.worker) | sx);
    if (wc != sx) continue;
    out.stable = false;
    out.blocking = x;
    out.firm_choice = fc;
    out.worker_choice = wc;
    return out;
  }
  return out;
}

DaaResult daa(const Market& market, const DaaOptions& options) {
  DaaResult out;
  for (const auto& agent : market.agents()) {
    AgentOrder order = build_order(market.table(agent.id));
    out.strict_orders.emplace(agent.id, tie_break(order));
    out.orders.emplace(agent.id, std::move(order));
  }

  const Side proposing = options.worker_proposing ? Side::worker : Side::firm;
  struct Proposer {
    const Market::Agent* agent;
    std::vector<std::size_t> list;  // global contracts, best first
    std::size_t next = 0;
    bool engaged = false;
  };
  std::vector<Proposer> proposers;
  for (const auto& agent : market.agents()) {
    if (agent.side != proposing) continue;
    Proposer p{&agent, {}};
    for (std::size_t local : out.strict_orders.at(agent.id).acceptable()) {
      p.list.push_back(agent.contracts[local]);
    }
    proposers.push_back(std::move(p));
  }
  auto proposer_of = [&](std::size_t contract) -> Proposer& {
    const Contract& c = market.contracts()[contract];
    const std::string& id = proposing == Side::firm ? c.firm : c.worker;
    for (auto& p : proposers) {
      if (p.agent->id == id) return p;
    }
    throw Error("daa: contract without a proposer");
  };
  auto receiver_of = [&](std::size_t contract) -> const std::string& {
    const Contract& c = market.contracts()[contract];
    return proposing == Side::firm ? c.worker : c.firm;
  };

  std::map<std::string, std::optional<std::size_t>> held;
  while (true) {
    DaaRound round;
    for (auto& p : proposers) {
      if (p.engaged || p.next >= p.list.size()) continue;
      round.proposals.push_back(p.list[p.next++]);
    }
    if (round.proposals.empty()) break;
    std::sort(round.proposals.begin(), round.proposals.end());

    std::map<std::string, std::vector<std::size_t>> incoming;
    for (std::size_t x : round.proposals) incoming[receiver_of(x)].push_back(x);
    for (auto& [receiver, offers] : incoming) {
      const StrictOrder& order = out.strict_orders.at(receiver);
      const ChoiceTable& table = market.table(receiver);
      const std::size_t outside = order.rank(kOutside);
      std::vector<std::size_t> pool = offers;
      auto& current = held[receiver];
      if (current) pool.push_back(*current);
      std::optional<std::size_t> best;
      std::size_t best_rank = outside;
      for (std::size_t x : pool) {
        const std::size_t r = order.rank(*table.index_of(market.contracts()[x].id));
        if (r < best_rank) {
          best_rank = r;
          best = x;
        }
      }
      for (std::size_t x : pool) {
        if (best && x == *best) continue;
        round.rejections.push_back(x);
        proposer_of(x).engaged = false;
      }
      current = best;
      if (best) proposer_of(*best).engaged = true;
    }
    std::sort(round.rejections.begin(), round.rejections.end());
    for (const auto& [receiver, x] : held) {
      if (x) round.held.contracts |= ContractSet::single(*x);
    }
    out.rounds.push_back(std::move(round));
  }
  for (const auto& [receiver, x] : held) {
    if (x) out.matching.contracts |= ContractSet::single(*x);
  }
  return out;
}

}  // namespace choicematch
