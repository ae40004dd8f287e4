#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "choicematch/axioms.hpp"
#include "choicematch/choice_table.hpp"
#include "choicematch/market.hpp"

namespace choicematch {

enum class Profile { PI, SUB_ONLY, SUB_GA, BA, UNRESTRICTED, TRIVIAL };

std::string_view to_string(Profile profile);
std::optional<Profile> parse_profile(std::string_view name);

/// Generated tables are verified exhaustively, which bounds their size.
inline constexpr std::size_t kMaxGeneratedUniverse = 10;

/// Deterministic integer-only randomness: std::mt19937_64 for the stream,
/// rejection sampling for bounded draws (the standard distributions are not
/// specified bit-for-bit across library implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  /// Uniform submask of `of`.
  ContractSet subset(ContractSet of);

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent seed for item `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

struct TableSpec {
  std::uint64_t seed = 0;
  std::size_t n = 4;
  Profile profile = Profile::PI;
  /// SUB_GA only: also require PI to fail.
  bool separating = false;
  /// Perturbation attempts before BudgetExceeded (SUB_GA, SUB_ONLY).
  std::uint64_t attempt_budget = 100'000;
};

struct TableVerdicts {
  Verdict sub;
  Verdict con;
  Verdict pi;
  Verdict ba;
  Verdict ga_graph;
};

TableVerdicts verify_table(const ChoiceTable& table);

/// True iff the verdicts satisfy what the profile promises.
bool satisfies(Profile profile, const TableVerdicts& verdicts, bool separating = false);

struct GeneratedTable {
  ChoiceTable table;
  Profile profile = Profile::PI;
  std::uint64_t seed = 0;
  TableVerdicts verdicts;
  /// Perturbations tried and kept (0 for direct constructions).
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
};

/// Universe defaults to "a", "b", ... when empty.
GeneratedTable gen_table(const TableSpec& spec, std::string agent = "the_agent",
                         std::vector<std::string> universe = {});

/// Linear order plus quota q plus the number t of acceptable contracts:
/// C(S) is the best min(q, |S ∩ acceptable|) acceptable members of S.
ChoiceTable gen_pi_table(Rng& rng, const std::string& agent,
                         const std::vector<std::string>& universe);
/// Same family with the parameters fixed; `order` lists contract indices best
/// first and its first `acceptable` entries are acceptable.
ChoiceTable responsive_table(const std::string& agent, const std::vector<std::string>& universe,
                             const std::vector<std::size_t>& order, std::size_t quota,
                             std::size_t acceptable);
/// Random weak order with an outside option, read off on pairs and
/// singletons; larger menus choose arbitrary subsets. Satisfies BA and
/// has no empty pair choice among acceptable contracts.
ChoiceTable gen_ba_table(Rng& rng, const std::string& agent,
                         const std::vector<std::string>& universe);
ChoiceTable gen_unrestricted_table(Rng& rng, const std::string& agent,
                                   const std::vector<std::string>& universe);

struct MarketSpec {
  std::uint64_t seed = 0;
  std::size_t firms = 2;
  std::size_t workers = 2;
  /// Contracts drawn; each names a uniformly drawn firm and worker that are
  /// both still under max_per_agent. Fewer are drawn if every pair is full.
  std::size_t contracts = 4;
  std::size_t max_per_agent = 6;
  Profile firm_profile = Profile::SUB_GA;
  Profile worker_profile = Profile::SUB_GA;
  bool separating = false;
};

struct GeneratedMarket {
  Market market;
  MarketSpec spec;
  std::map<std::string, TableVerdicts> verdicts;
};

/// Firms "f1".., workers "w1".., contracts "x01".. (zero padded to the
/// width of the count). Per-agent tables use derive_seed(spec.seed, k) for
/// the k-th agent in agents() order. validate_market passes.
GeneratedMarket gen_market(const MarketSpec& spec);

}  // namespace choicematch
