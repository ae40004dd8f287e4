#include "choicematch/axioms.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>

#include "choicematch/errors.hpp"
#include "parallel.hpp"

namespace choicematch {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

void prepare(const ChoiceTable& table, std::string_view op) {
  table.require_cap(kMaxAgentUniverse, op);
  table.require_total();
}

Evaluation eval(const ChoiceTable& t, Mask menu) {
  return {ContractSet(menu), ContractSet(t.raw(menu))};
}

bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

Verdict holds(Axiom a) { return Verdict{a, VerdictKind::holds, std::nullopt, std::nullopt, false}; }

Verdict violated(AxiomWitness w) {
  Axiom a = w.axiom;
  return Verdict{a, VerdictKind::violated, std::move(w), std::nullopt, false};
}

// Some element of C(B) is dropped when one other element leaves the menu.
bool sub_fails_at(const ChoiceTable& t, Mask b) {
  const Mask cb = t.raw(b);
  for (Mask ys = b; ys != 0; ys &= ys - 1) {
    const Mask y = ys & (~ys + 1);
    const Mask keep = cb & ~y;
    if (!subset(keep, t.raw(b & ~y))) return true;
  }
  return false;
}

// Submasks of u ordered by (size ascending, mask descending).
std::vector<Mask> pi_split_order(Mask u) {
  std::vector<Mask> subs;
  for_each_subset(ContractSet(u), [&](ContractSet s) { subs.push_back(s.bits()); });
  std::stable_sort(subs.begin(), subs.end(), [](Mask a, Mask b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return a > b;
  });
  return subs;
}

std::optional<std::pair<Mask, Mask>> pi_witness_in(const ChoiceTable& t, Mask u) {
  const Mask cu = t.raw(u);
  for (Mask b : pi_split_order(u)) {
    const Mask cb = t.raw(b);
    std::optional<std::pair<Mask, Mask>> found;
    any_subset(ContractSet(b), [&](ContractSet extra) {
      const Mask a = (u & ~b) | extra.bits();
      if (t.raw(t.raw(a) | cb) != cu) {
        found = std::make_pair(a, b);
        return true;
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

// R on single contracts: x R y iff x ∈ C({x, y}); x R x iff x ∈ C({x}).
bool ba_rel(const ChoiceTable& t, std::size_t x, std::size_t y) {
  const Mask mx = Mask{1} << x;
  return (t.raw(mx | (Mask{1} << y)) & mx) != 0;
}

// ---- GA chain --------------------------------------------------------------

// Shared transition structure of admissible chain steps. A step from the
// current set `cur` (S_i ∪ D_{i-1}, or S_1 at the start) adds a nonempty
// challenger S disjoint from cur with S ⊆ C(cur ∪ S) and a proper residual
// (C(cur ∪ S) \ S ⊊ cur); the next current set is C(cur ∪ S).
struct ChainGraph {
  std::vector<std::uint32_t> rev_start;
  std::vector<Mask> rev_from;
};

class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  void spend(std::uint64_t n, std::string_view what) {
    used_ += n;
    if (used_ > limit_) {
      throw BudgetExceeded(std::string(what) + ": search exceeded the node budget of " +
                           std::to_string(limit_));
    }
  }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

bool chain_step(const ChoiceTable& t, Mask cur, Mask s, Mask* next) {
  const Mask tval = t.raw(cur | s);
  if (!subset(s, tval)) return false;
  const Mask d = tval & ~s;
  if (!subset(d, cur) || d == cur) return false;
  *next = tval;
  return true;
}

ChainGraph build_chain_graph(const ChoiceTable& t, Budget& budget) {
  const Mask full = t.full().bits();
  const std::size_t states = std::size_t{1} << t.size();
  std::vector<std::pair<Mask, Mask>> edges;  // (to, from)
  for (Mask cur = 1; cur < states; ++cur) {
    const Mask rest = full & ~cur;
    std::uint64_t tried = 0;
    for (Mask s = rest; s != 0; s = (s - 1) & rest) {
      ++tried;
      Mask next;
      if (chain_step(t, cur, s, &next)) edges.emplace_back(next, cur);
    }
    budget.spend(tried + 1, "check_ga_chain");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  ChainGraph g;
  g.rev_start.assign(states + 1, 0);
  for (const auto& e : edges) ++g.rev_start[e.first + 1];
  for (std::size_t i = 0; i < states; ++i) g.rev_start[i + 1] += g.rev_start[i];
  g.rev_from.reserve(edges.size());
  for (const auto& e : edges) g.rev_from.push_back(e.second);
  return g;
}

bool finishes(const ChoiceTable& t, Mask s1, Mask cur, bool strict, Budget& budget) {
  const Mask full = t.full().bits();
  const Mask pool = strict ? full : (full & ~cur);
  std::uint64_t tried = 0;
  bool hit = false;
  for (Mask s = pool; s != 0; s = (s - 1) & pool) {
    ++tried;
    if (subset(s1, t.raw(cur | s))) {
      hit = true;
      break;
    }
  }
  budget.spend(tried + 1, "check_ga_chain");
  return hit;
}

// ---- GA graph ---------------------------------------------------------------

struct GraphAdj {
  // out[s]: (to, challenger, move) sorted by `to`, least challenger per target.
  std::vector<std::vector<GraphEdge>> out;
  std::vector<std::vector<Mask>> in;
  std::vector<bool> node;
};

GraphAdj build_ga_graph(const ChoiceTable& t) {
  const Mask full = t.full().bits();
  const std::size_t states = std::size_t{1} << t.size();
  GraphAdj g;
  g.out.resize(states);
  g.in.resize(states);
  g.node.assign(states, false);
  for (Mask s = 0; s < states; ++s) g.node[s] = t.raw(s) == s;
  for (Mask s = 0; s < states; ++s) {
    if (!g.node[s]) continue;
    const Mask rest = full & ~s;
    std::vector<GraphEdge> edges;
    for_each_subset(ContractSet(rest), [&](ContractSet cs) {
      const Mask c = cs.bits();
      if (c == 0) return;
      const Mask u = s | c;
      const Mask tv = t.raw(u);
      if (tv == u) {
        edges.push_back({ContractSet(s), cs, GraphMove::grow, ContractSet(u)});
      } else if (subset(c, tv) && !subset(s, tv) && g.node[tv]) {
        edges.push_back({ContractSet(s), cs, GraphMove::discard, ContractSet(tv)});
      }
    });
    std::stable_sort(edges.begin(), edges.end(),
                     [](const GraphEdge& a, const GraphEdge& b) { return a.to < b.to; });
    auto& out = g.out[s];
    for (const auto& e : edges) {
      if (out.empty() || out.back().to != e.to) out.push_back(e);
    }
    for (const auto& e : out) g.in[e.to.bits()].push_back(s);
  }
  return g;
}

// Nodes that can lie on a cycle: repeatedly strip nodes with no incoming or
// no outgoing edges among the survivors.
std::vector<bool> cyclic_core(const GraphAdj& g) {
  const std::size_t states = g.node.size();
  std::vector<bool> alive = g.node;
  std::vector<std::uint32_t> indeg(states, 0), outdeg(states, 0);
  for (std::size_t s = 0; s < states; ++s) {
    if (!alive[s]) continue;
    outdeg[s] = static_cast<std::uint32_t>(g.out[s].size());
    indeg[s] = static_cast<std::uint32_t>(g.in[s].size());
  }
  std::deque<Mask> queue;
  for (std::size_t s = 0; s < states; ++s) {
    if (alive[s] && (indeg[s] == 0 || outdeg[s] == 0)) {
      alive[s] = false;
      queue.push_back(static_cast<Mask>(s));
    }
  }
  while (!queue.empty()) {
    const Mask s = queue.front();
    queue.pop_front();
    for (const auto& e : g.out[s]) {
      const Mask v = e.to.bits();
      if (alive[v] && --indeg[v] == 0) {
        alive[v] = false;
        queue.push_back(v);
      }
    }
    for (Mask u : g.in[s]) {
      if (alive[u] && --outdeg[u] == 0) {
        alive[u] = false;
        queue.push_back(u);
      }
    }
  }
  return alive;
}

}  // namespace

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::SUB: return "SUB";
    case Axiom::CON: return "CON";
    case Axiom::PI: return "PI";
    case Axiom::GA: return "GA";
    case Axiom::BA: return "BA";
  }
  return "?";
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::holds: return "holds";
    case VerdictKind::violated: return "violated";
    case VerdictKind::no_violation_up_to: return "no_violation_up_to";
  }
  return "?";
}

Verdict check_sub(const ChoiceTable& t) {
  prepare(t, "check_sub");
  const std::size_t states = t.menu_count();
  for (Mask b = 0; b < states; ++b) {
    if (!sub_fails_at(t, b)) continue;
    const Mask cb = t.raw(b);
    std::optional<AxiomWitness> w;
    any_subset(ContractSet(b), [&](ContractSet as) {
      const Mask a = as.bits();
      const Mask lost = cb & a & ~t.raw(a);
      if (lost == 0) return false;
      AxiomWitness x;
      x.axiom = Axiom::SUB;
      x.sets = {as, ContractSet(b)};
      x.element = static_cast<std::size_t>(std::countr_zero(lost));
      x.evaluations = {eval(t, a), eval(t, b)};
      w = std::move(x);
      return true;
    });
    if (!w) throw ImplicationFailure("check_sub: one-step failure without a witness");
    return violated(std::move(*w));
  }
  return holds(Axiom::SUB);
}

Verdict check_con(const ChoiceTable& t) {
  prepare(t, "check_con");
  const std::size_t states = t.menu_count();
  for (Mask b = 0; b < states; ++b) {
    const Mask cb = t.raw(b);
    const Mask rest = b & ~cb;
    std::optional<AxiomWitness> w;
    any_subset(ContractSet(rest), [&](ContractSet extra) {
      const Mask a = cb | extra.bits();
      if (t.raw(a) == cb) return false;
      AxiomWitness x;
      x.axiom = Axiom::CON;
      x.sets = {ContractSet(a), ContractSet(b)};
      x.evaluations = {eval(t, a), eval(t, b)};
      w = std::move(x);
      return true;
    });
    if (w) return violated(std::move(*w));
  }
  return holds(Axiom::CON);
}

Verdict check_pi(const ChoiceTable& t, const ScanOptions& options) {
  prepare(t, "check_pi");
  const std::uint64_t states = t.menu_count();
  auto first = detail::parallel_first(states, options.jobs, [&](std::uint64_t u) {
    return pi_witness_in(t, static_cast<Mask>(u)).has_value();
  });
  if (!first) return holds(Axiom::PI);
  const auto [a, b] = *pi_witness_in(t, static_cast<Mask>(*first));
  AxiomWitness x;
  x.axiom = Axiom::PI;
  x.sets = {ContractSet(a), ContractSet(b)};
  x.evaluations = {eval(t, a), eval(t, b), eval(t, a | b), eval(t, t.raw(a) | t.raw(b))};
  return violated(std::move(x));
}

Verdict check_ba(const ChoiceTable& t, const BaOptions& options) {
  prepare(t, "check_ba");
  const std::size_t n = t.size();
  auto fails = [&](std::size_t x, std::size_t z) { return !ba_rel(t, x, z); };

  // Shortest chain first: find the minimal edge count over all failing
  // (start, end) pairs, then the lexicographically least chain of that
  // length.
  std::uint32_t best = kUnreached;
  std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, kUnreached));
  auto skip = [&](std::size_t x) { return options.first && *options.first != x; };
  for (std::size_t x = 0; x < n; ++x) {
    if (skip(x)) continue;
    std::deque<std::size_t> q;
    for (std::size_t y = 0; y < n; ++y) {
      if (ba_rel(t, x, y) && dist[x][y] == kUnreached) {
        dist[x][y] = 1;
        q.push_back(y);
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v = 0; v < n; ++v) {
        if (ba_rel(t, u, v) && dist[x][v] == kUnreached) {
          dist[x][v] = dist[x][u] + 1;
          q.push_back(v);
        }
      }
    }
    for (std::size_t z = 0; z < n; ++z) {
      if (dist[x][z] != kUnreached && fails(x, z)) best = std::min(best, dist[x][z]);
    }
  }
  if (best == kUnreached) return holds(Axiom::BA);

  for (std::size_t x = 0; x < n; ++x) {
    if (skip(x)) continue;
    // h[v]: fewest edges from v to an end z that fails for start x.
    std::vector<std::uint32_t> h(n, kUnreached);
    std::deque<std::size_t> q;
    for (std::size_t z = 0; z < n; ++z) {
      if (fails(x, z)) {
        h[z] = 0;
        q.push_back(z);
      }
    }
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop_front();
      for (std::size_t u = 0; u < n; ++u) {
        if (ba_rel(t, u, v) && h[u] == kUnreached) {
          h[u] = h[v] + 1;
          q.push_back(u);
        }
      }
    }
    std::uint32_t via = kUnreached;
    for (std::size_t u = 0; u < n; ++u) {
      if (ba_rel(t, x, u) && h[u] != kUnreached) via = std::min(via, h[u] + 1);
    }
    if (via != best) continue;

    std::vector<std::size_t> seq{x};
    std::size_t cur = x;
    for (std::uint32_t rem = best; rem > 0; --rem) {
      for (std::size_t u = 0; u < n; ++u) {
        if (ba_rel(t, cur, u) && h[u] == rem - 1) {
          cur = u;
          break;
        }
      }
      seq.push_back(cur);
    }
    AxiomWitness w;
    w.axiom = Axiom::BA;
    w.sequence = seq;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      w.evaluations.push_back(eval(t, (Mask{1} << seq[i]) | (Mask{1} << seq[i + 1])));
    }
    w.evaluations.push_back(eval(t, (Mask{1} << seq.front()) | (Mask{1} << seq.back())));
    return violated(std::move(w));
  }
  throw ImplicationFailure("check_ba: shortest chain vanished during reconstruction");
}

Verdict check_ga_chain(const ChoiceTable& t, const GaChainOptions& options) {
  prepare(t, "check_ga_chain");
  const std::size_t n = t.size();
  const std::size_t max_k =
      options.max_k == 0 ? 2 * ((std::size_t{1} << n) - 1) : options.max_k;
  if (max_k < 3) throw PreconditionFailed("check_ga_chain: max_k must be at least 3");

  Verdict none{Axiom::GA, VerdictKind::no_violation_up_to, std::nullopt, max_k, true};
  if (n == 0) return none;

  Budget budget(options.node_budget);
  const ChainGraph g = build_chain_graph(t, budget);
  const Mask full = t.full().bits();
  const std::size_t states = std::size_t{1} << n;

  // Per S_1: h = fewest further steps from a state to one where S_1 can be
  // re-chosen. The chain needs at least one step before finishing, so its
  // length is k = 2 + (1 + min h over the first step's targets).
  std::size_t best_k = std::numeric_limits<std::size_t>::max();
  Mask best_s1 = 0;
  std::vector<std::uint32_t> best_h;
  std::vector<std::uint32_t> h(states);
  for (Mask s1 = 1; s1 < states; ++s1) {
    if (options.first && options.first->bits() != s1) continue;
    std::fill(h.begin(), h.end(), kUnreached);
    std::deque<Mask> q;
    for (Mask cur = 1; cur < states; ++cur) {
      if (finishes(t, s1, cur, options.strict, budget)) {
        h[cur] = 0;
        q.push_back(cur);
      }
    }
    while (!q.empty()) {
      const Mask v = q.front();
      q.pop_front();
      const std::uint32_t lo = g.rev_start[v];
      const std::uint32_t hi = g.rev_start[v + 1];
      budget.spend(hi - lo + 1, "check_ga_chain");
      for (std::uint32_t i = lo; i < hi; ++i) {
        const Mask u = g.rev_from[i];
        if (h[u] == kUnreached) {
          h[u] = h[v] + 1;
          q.push_back(u);
        }
      }
    }
    std::uint32_t first = kUnreached;
    const Mask rest = full & ~s1;
    for (Mask s = rest; s != 0; s = (s - 1) & rest) {
      Mask next;
      if (chain_step(t, s1, s, &next) && h[next] != kUnreached) {
        first = std::min(first, h[next] + 1);
      }
    }
    if (first == kUnreached) continue;
    const std::size_t k = 2 + first;
    if (k < best_k) {
      best_k = k;
      best_s1 = s1;
      best_h = h;
    }
  }

  if (best_k == std::numeric_limits<std::size_t>::max()) return none;
  if (best_k > max_k) {
    none.exhaustive = false;
    return none;
  }

  AxiomWitness w;
  w.axiom = Axiom::GA;
  w.sets.push_back(ContractSet(best_s1));
  Mask cur = best_s1;
  for (std::size_t rem = best_k - 2; rem > 0; --rem) {
    bool stepped = false;
    for_each_subset(ContractSet(full & ~cur), [&](ContractSet cs) {
      if (stepped || cs.empty()) return;
      Mask next;
      if (chain_step(t, cur, cs.bits(), &next) && best_h[next] == rem - 1) {
        w.evaluations.push_back(eval(t, cur | cs.bits()));
        w.sets.push_back(cs);
        w.derived.push_back(ContractSet(next & ~cs.bits()));
        cur = next;
        stepped = true;
      }
    });
    if (!stepped) throw ImplicationFailure("check_ga_chain: lost the shortest chain");
  }
  const Mask pool = options.strict ? full : (full & ~cur);
  bool done = false;
  for_each_subset(ContractSet(pool), [&](ContractSet cs) {
    if (done || cs.empty()) return;
    if (subset(best_s1, t.raw(cur | cs.bits()))) {
      w.evaluations.push_back(eval(t, cur | cs.bits()));
      w.sets.push_back(cs);
      done = true;
    }
  });
  if (!done) throw ImplicationFailure("check_ga_chain: lost the final challenger");
  Verdict v = violated(std::move(w));
  v.bound = max_k;
  return v;
}

Verdict check_ga_graph(const ChoiceTable& t) {
  prepare(t, "check_ga_graph");
  const GraphAdj g = build_ga_graph(t);
  const std::vector<bool> core = cyclic_core(g);
  const std::size_t states = g.node.size();

  // Shortest cycle, rotated to start at its least node, lexicographically
  // least among those. A cycle whose least node is v only uses nodes >= v.
  std::uint32_t best = kUnreached;
  Mask best_v = 0;
  std::vector<std::uint32_t> best_h;
  std::vector<std::uint32_t> h(states);
  for (Mask v = 0; v < states; ++v) {
    if (!core[v]) continue;
    std::fill(h.begin(), h.end(), kUnreached);
    h[v] = 0;
    std::deque<Mask> q{v};
    while (!q.empty()) {
      const Mask x = q.front();
      q.pop_front();
      for (Mask u : g.in[x]) {
        if (u > v && core[u] && h[u] == kUnreached) {
          h[u] = h[x] + 1;
          q.push_back(u);
        }
      }
    }
    std::uint32_t len = kUnreached;
    for (const auto& e : g.out[v]) {
      const Mask u = e.to.bits();
      if (u > v && h[u] != kUnreached) len = std::min(len, h[u] + 1);
    }
    if (len < best) {
      best = len;
      best_v = v;
      best_h = h;
    }
  }
  if (best == kUnreached) return holds(Axiom::GA);

  AxiomWitness w;
  w.axiom = Axiom::GA;
  Mask cur = best_v;
  for (std::uint32_t rem = best; rem > 0; --rem) {
    w.sets.push_back(ContractSet(cur));
    const GraphEdge* pick = nullptr;
    for (const auto& e : g.out[cur]) {
      const Mask u = e.to.bits();
      const bool ok = rem == 1 ? u == best_v : (u > best_v && best_h[u] == rem - 1);
      if (ok) {
        pick = &e;
        break;
      }
    }
    if (!pick) throw ImplicationFailure("check_ga_graph: lost the shortest cycle");
    w.edges.push_back(*pick);
    w.evaluations.push_back(eval(t, cur | pick->challenger.bits()));
    cur = pick->to.bits();
  }
  return violated(std::move(w));
}

bool ba_chain_violates(const ChoiceTable& t, const std::vector<std::size_t>& seq) {
  if (seq.size() < 2) return false;
  for (std::size_t x : seq) {
    if (x >= t.size()) return false;
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!ba_rel(t, seq[i], seq[i + 1])) return false;
  }
  return !ba_rel(t, seq.front(), seq.back());
}

bool ga_chain_violates(const ChoiceTable& t, const std::vector<ContractSet>& chain, bool strict,
                       std::vector<ContractSet>* derived) {
  if (chain.size() < 3) return false;
  const Mask full = t.full().bits();
  for (const auto& s : chain) {
    if (s.empty() || !subset(s.bits(), full)) return false;
  }
  std::vector<ContractSet> ds;
  Mask cur = chain[0].bits();
  for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
    const Mask s = chain[i].bits();
    if (cur & s) return false;
    Mask next;
    if (!chain_step(t, cur, s, &next)) return false;
    ds.push_back(ContractSet(next & ~s));
    cur = next;
  }
  const Mask last = chain.back().bits();
  if (!strict && (cur & last)) return false;
  if (!subset(chain[0].bits(), t.raw(cur | last))) return false;
  if (derived) *derived = std::move(ds);
  return true;
}

bool replay(const ChoiceTable& t, const AxiomWitness& w, bool strict_ga) {
  for (const auto& e : w.evaluations) {
    if (!subset(e.menu.bits(), t.full().bits()) || t.choose(e.menu) != e.chosen) return false;
  }
  auto c = [&](Mask m) { return t.choose(ContractSet(m)).bits(); };
  switch (w.axiom) {
    case Axiom::SUB: {
      if (w.sets.size() != 2 || !w.element) return false;
      const Mask a = w.sets[0].bits();
      const Mask b = w.sets[1].bits();
      const Mask x = Mask{1} << *w.element;
      return subset(a, b) && (a & x) && (c(b) & x) && !(c(a) & x);
    }
    case Axiom::CON: {
      if (w.sets.size() != 2) return false;
      const Mask a = w.sets[0].bits();
      const Mask b = w.sets[1].bits();
      return subset(c(b), a) && subset(a, b) && c(a) != c(b);
    }
    case Axiom::PI: {
      if (w.sets.size() != 2) return false;
      const Mask a = w.sets[0].bits();
      const Mask b = w.sets[1].bits();
      return c(a | b) != c(c(a) | c(b));
    }
    case Axiom::BA:
      return ba_chain_violates(t, w.sequence);
    case Axiom::GA: {
      if (w.edges.empty()) {
        std::vector<ContractSet> ds;
        return ga_chain_violates(t, w.sets, strict_ga, &ds) && ds == w.derived;
      }
      if (w.edges.size() != w.sets.size()) return false;
      for (std::size_t i = 0; i < w.edges.size(); ++i) {
        const GraphEdge& e = w.edges[i];
        const Mask s = e.from.bits();
        const Mask ch = e.challenger.bits();
        const Mask next = w.sets[(i + 1) % w.sets.size()].bits();
        if (e.from != w.sets[i] || e.to.bits() != next) return false;
        if (c(s) != s || ch == 0 || (s & ch)) return false;
        const Mask tv = c(s | ch);
        if (e.move == GraphMove::grow) {
          if (tv != (s | ch) || next != (s | ch)) return false;
        } else {
          if (!subset(ch, tv) || subset(s, tv) || next != tv || c(tv) != tv) return false;
        }
      }
      return true;
    }
  }
  return false;
}

void ImplicationReport::require_consistent() const {
  if (failures.empty()) return;
  std::string msg = "proven implication failed:";
  for (const auto& f : failures) msg += " " + f + ";";
  throw ImplicationFailure(msg);
}

ImplicationReport implication_suite(const ChoiceTable& t, const GaChainOptions& ga,
                                    const ScanOptions& scan) {
  ImplicationReport r;
  r.sub = check_sub(t);
  r.con = check_con(t);
  r.pi = check_pi(t, scan);
  r.ba = check_ba(t);
  r.ga_graph = check_ga_graph(t);
  r.ga_chain = check_ga_chain(t, ga);
  if (r.pi.holds()) {
    if (!r.sub.holds()) r.failures.push_back("PI holds but SUB is violated");
    if (!r.con.holds()) r.failures.push_back("PI holds but CON is violated");
    if (!r.ba.holds()) r.failures.push_back("PI holds but BA is violated");
    if (!r.ga_graph.holds()) r.failures.push_back("PI holds but the GA graph has a cycle");
    if (r.ga_chain.violated()) r.failures.push_back("PI holds but a GA chain violation exists");
  } else if (r.sub.holds() && r.con.holds()) {
    r.failures.push_back("SUB and CON hold but PI is violated");
  }
  r.ga_disagreement = r.ga_graph.violated() != r.ga_chain.violated();
  return r;
}

}  // namespace choicematch
