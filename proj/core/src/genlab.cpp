#include "choicematch/genlab.hpp"

#include <algorithm>
#include <array>

#include "choicematch/errors.hpp"

namespace choicematch {

std::string_view to_string(Profile profile) {
  switch (profile) {
    case Profile::PI: return "PI";
    case Profile::SUB_ONLY: return "SUB_ONLY";
    case Profile::SUB_GA: return "SUB_GA";
    case Profile::BA: return "BA";
    case Profile::UNRESTRICTED: return "UNRESTRICTED";
    case Profile::TRIVIAL: return "TRIVIAL";
  }
  return "?";
}

std::optional<Profile> parse_profile(std::string_view name) {
  static constexpr std::array all{Profile::PI, Profile::SUB_ONLY, Profile::SUB_GA,
                                  Profile::BA, Profile::UNRESTRICTED, Profile::TRIVIAL};
  for (Profile p : all) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the low residue class so every value is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

ContractSet Rng::subset(ContractSet of) {
  const std::uint64_t bits = engine_();
  ContractSet out;
  std::size_t k = 0;
  for (std::size_t i : of.indices()) {
    if ((bits >> k++) & 1) out |= ContractSet::single(i);
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over a Weyl step.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TableVerdicts verify_table(const ChoiceTable& table) {
  return {check_sub(table), check_con(table), check_pi(table), check_ba(table),
          check_ga_graph(table)};
}

bool satisfies(Profile profile, const TableVerdicts& v, bool separating) {
  switch (profile) {
    case Profile::PI:
    case Profile::TRIVIAL: return v.pi.holds();
    case Profile::SUB_ONLY: return v.sub.holds();
    case Profile::SUB_GA:
      return v.sub.holds() && v.ga_graph.holds() && (!separating || v.pi.violated());
    case Profile::BA: return v.ba.holds();
    case Profile::UNRESTRICTED: return true;
  }
  return false;
}

ChoiceTable responsive_table(const std::string& agent, const std::vector<std::string>& universe,
                             const std::vector<std::size_t>& order, std::size_t quota,
                             std::size_t acceptable) {
  return ChoiceTable::from_function(agent, universe, [&](ContractSet menu) {
    ContractSet out;
    std::size_t taken = 0;
    for (std::size_t k = 0; k < acceptable && taken < quota; ++k) {
      if (menu.contains(order[k])) {
        out |= ContractSet::single(order[k]);
        ++taken;
      }
    }
    return out;
  });
}

ChoiceTable gen_pi_table(Rng& rng, const std::string& agent,
                         const std::vector<std::string>& universe) {
  const std::size_t n = universe.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  const std::size_t quota = n ? rng.between(1, n) : 0;
  const std::size_t acceptable = rng.between(0, n);
  return responsive_table(agent, universe, order, quota, acceptable);
}

ChoiceTable gen_ba_table(Rng& rng, const std::string& agent,
                         const std::vector<std::string>& universe) {
  const std::size_t n = universe.size();
  std::vector<std::uint64_t> level(n);
  std::vector<bool> acceptable(n);
  for (std::size_t i = 0; i < n; ++i) {
    level[i] = rng.below(n);
    acceptable[i] = rng.chance(3, 4);
  }
  ChoiceTable table(agent, universe);
  for (Mask m = 1; m < table.menu_count(); ++m) {
    const ContractSet menu(m);
    const auto idx = menu.indices();
    ContractSet chosen;
    if (idx.size() == 1) {
      if (acceptable[idx[0]]) chosen = menu;
    } else if (idx.size() == 2) {
      const std::size_t x = idx[0], y = idx[1];
      if (acceptable[x] && acceptable[y]) {
        if (level[x] <= level[y]) chosen |= ContractSet::single(x);
        if (level[y] <= level[x]) chosen |= ContractSet::single(y);
      } else if (acceptable[x]) {
        chosen = ContractSet::single(x);
      } else if (acceptable[y]) {
        chosen = ContractSet::single(y);
      }
    } else {
      chosen = rng.subset(menu);
    }
    table.set(menu, chosen);
  }
  return table;
}

ChoiceTable gen_unrestricted_table(Rng& rng, const std::string& agent,
                                   const std::vector<std::string>& universe) {
  ChoiceTable table(agent, universe);
  for (Mask m = 1; m < table.menu_count(); ++m) table.set(ContractSet(m), rng.subset(ContractSet(m)));
  return table;
}

namespace {

// Random entry flips starting from a PI table, each kept only if the profile's
// closure property (SUB, plus graph GA for SUB_GA) survives.
GeneratedTable perturb(Rng& rng, const TableSpec& spec, const std::string& agent,
                       const std::vector<std::string>& universe) {
  const bool need_ga = spec.profile == Profile::SUB_GA;
  const bool separating = need_ga && spec.separating;
  const std::size_t n = universe.size();
  if (separating && n < 2) {
    throw BudgetExceeded("gen_table: every substitutable table on fewer than 2 contracts is PI");
  }
  GeneratedTable out;
  out.table = gen_pi_table(rng, agent, universe);
  if (n == 0) return out;
  const std::uint64_t target = rng.between(1, 2 * n);
  while (true) {
    if (out.accepted >= target && (!separating || check_pi(out.table).violated())) return out;
    if (out.attempts >= spec.attempt_budget) {
      throw BudgetExceeded("gen_table: " + std::string(to_string(spec.profile)) + " with n=" +
                           std::to_string(n) + " seed=" + std::to_string(spec.seed) + ": " +
                           std::to_string(out.accepted) + " of " +
                           std::to_string(out.attempts) + " perturbations kept");
    }
    ++out.attempts;
    const ContractSet menu(static_cast<Mask>(rng.between(1, out.table.menu_count() - 1)));
    const ContractSet before = out.table.choose(menu);
    const ContractSet after = rng.subset(menu);
    if (after == before) continue;
    out.table.set(menu, after);
    if (check_sub(out.table).holds() && (!need_ga || check_ga_graph(out.table).holds())) {
      ++out.accepted;
    } else {
      out.table.set(menu, before);
    }
  }
}

}  // namespace

GeneratedTable gen_table(const TableSpec& spec, std::string agent,
                         std::vector<std::string> universe) {
  if (universe.empty()) {
    for (std::size_t i = 0; i < spec.n; ++i) universe.emplace_back(1, static_cast<char>('a' + i));
  }
  if (universe.size() > kMaxGeneratedUniverse) {
    throw UniverseTooLarge("gen_table: " + std::to_string(universe.size()) +
                           " contracts exceed the generator cap of " +
                           std::to_string(kMaxGeneratedUniverse));
  }
  std::sort(universe.begin(), universe.end());
  Rng rng(spec.seed);
  GeneratedTable out;
  switch (spec.profile) {
    case Profile::PI: out.table = gen_pi_table(rng, agent, universe); break;
    case Profile::SUB_ONLY:
    case Profile::SUB_GA: out = perturb(rng, spec, agent, universe); break;
    case Profile::BA: out.table = gen_ba_table(rng, agent, universe); break;
    case Profile::UNRESTRICTED: out.table = gen_unrestricted_table(rng, agent, universe); break;
    case Profile::TRIVIAL:
      out.table = ChoiceTable::from_function(agent, universe, [](ContractSet) { return ContractSet(); });
      break;
  }
  out.profile = spec.profile;
  out.seed = spec.seed;
  out.verdicts = verify_table(out.table);
  if (!satisfies(spec.profile, out.verdicts, spec.separating)) {
    throw ImplicationFailure("gen_table: generated " + std::string(to_string(spec.profile)) +
                             " table (seed " + std::to_string(spec.seed) +
                             ") does not have its promised profile");
  }
  return out;
}

GeneratedMarket gen_market(const MarketSpec& spec) {
  if (spec.max_per_agent > kMaxGeneratedUniverse) {
    throw UniverseTooLarge("gen_market: max_per_agent above the generator cap of " +
                           std::to_string(kMaxGeneratedUniverse));
  }
  if (spec.contracts > kMaxMarketContracts) {
    throw UniverseTooLarge("gen_market: more than " + std::to_string(kMaxMarketContracts) +
                           " contracts");
  }
  Rng rng(spec.seed);
  std::vector<std::string> firms, workers;
  for (std::size_t i = 1; i <= spec.firms; ++i) firms.push_back("f" + std::to_string(i));
  for (std::size_t i = 1; i <= spec.workers; ++i) workers.push_back("w" + std::to_string(i));

  const std::size_t width = std::max<std::size_t>(2, std::to_string(spec.contracts).size());
  std::vector<std::size_t> firm_load(spec.firms), worker_load(spec.workers);
  std::vector<Contract> contracts;
  for (std::size_t i = 0; i < spec.contracts; ++i) {
    std::vector<std::size_t> fs, ws;
    for (std::size_t f = 0; f < spec.firms; ++f) {
      if (firm_load[f] < spec.max_per_agent) fs.push_back(f);
    }
    for (std::size_t w = 0; w < spec.workers; ++w) {
      if (worker_load[w] < spec.max_per_agent) ws.push_back(w);
    }
    if (fs.empty() || ws.empty()) break;
    const std::size_t f = fs[rng.below(fs.size())];
    const std::size_t w = ws[rng.below(ws.size())];
    ++firm_load[f];
    ++worker_load[w];
    std::string id = std::to_string(i + 1);
    id = "x" + std::string(width - id.size(), '0') + id;
    contracts.push_back({id, firms[f], workers[w]});
  }

  // Tables are seeded in agents() order: firms then workers, each by id.
  std::vector<std::string> sorted_firms = firms, sorted_workers = workers;
  std::sort(sorted_firms.begin(), sorted_firms.end());
  std::sort(sorted_workers.begin(), sorted_workers.end());
  GeneratedMarket out;
  out.spec = spec;
  std::map<std::string, ChoiceTable> tables;
  std::uint64_t k = 0;
  auto build = [&](const std::string& agent, Side side) {
    std::vector<std::string> universe;
    for (const auto& c : contracts) {
      if ((side == Side::firm ? c.firm : c.worker) == agent) universe.push_back(c.id);
    }
    TableSpec ts;
    ts.seed = derive_seed(spec.seed, k++);
    ts.n = universe.size();
    ts.profile = side == Side::firm ? spec.firm_profile : spec.worker_profile;
    ts.separating = spec.separating && universe.size() >= 2;
    GeneratedTable g = gen_table(ts, agent, universe);
    out.verdicts.emplace(agent, g.verdicts);
    tables.emplace(agent, std::move(g.table));
  };
  for (const auto& f : sorted_firms) build(f, Side::firm);
  for (const auto& w : sorted_workers) build(w, Side::worker);

  out.market = Market(firms, workers, contracts, std::move(tables));
  const ValidationReport report = validate_market(out.market);
  if (!report.ok()) {
    throw ImplicationFailure("gen_market: generated market is ill-formed: " +
                             report.issues.front().message);
  }
  return out;
}

}  // namespace choicematch
