#pragma once

// Small hand-rolled generators for property tests. Deliberately separate
// from the library's genlab so the two cannot share a blind spot.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "choicematch/choice_table.hpp"
#include "choicematch/market.hpp"

namespace gen {

using choicematch::ChoiceTable;
using choicematch::ContractSet;
using choicematch::Mask;
using choicematch::Market;

class Rand {
 public:
  explicit Rand(std::uint64_t seed) : e_(seed * 0x9E3779B97F4A7C15ULL + 17) {}
  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(e_() % n); }
  bool coin(unsigned percent = 50) { return below(100) < percent; }
  Mask submask(Mask of) {
    Mask out = 0;
    for (Mask m = of; m; m &= m - 1) {
      if (coin()) out |= m & (~m + 1);
    }
    return out;
  }

 private:
  std::mt19937_64 e_;
};

inline std::vector<std::string> letters(std::size_t n) {
  std::vector<std::string> u;
  for (std::size_t i = 0; i < n; ++i) u.emplace_back(1, static_cast<char>('a' + i));
  return u;
}

/// Every entry an arbitrary subset of its menu.
inline ChoiceTable arbitrary(Rand& r, std::size_t n, std::vector<std::string> u = {}) {
  if (u.empty()) u = letters(n);
  ChoiceTable t("t", u);
  for (Mask m = 1; m < t.menu_count(); ++m) t.set(ContractSet(m), ContractSet(r.submask(m)));
  return t;
}

/// Many menus kept whole, so many IR sets and many grow/discard moves.
inline ChoiceTable ir_rich(Rand& r, std::size_t n, std::vector<std::string> u = {}) {
  if (u.empty()) u = letters(n);
  ChoiceTable t("t", u);
  for (Mask m = 1; m < t.menu_count(); ++m) {
    t.set(ContractSet(m), ContractSet(r.coin(60) ? m : r.submask(m)));
  }
  return t;
}

/// Keep the top q acceptable members of the menu under a random ranking.
inline ChoiceTable responsive(Rand& r, std::size_t n, std::vector<std::string> u = {}) {
  if (u.empty()) u = letters(n);
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(rank[i - 1], rank[r.below(static_cast<std::uint32_t>(i))]);
  const std::size_t q = n ? 1 + r.below(static_cast<std::uint32_t>(n)) : 0;
  std::vector<bool> ok(n);
  for (std::size_t i = 0; i < n; ++i) ok[i] = r.coin(80);
  ChoiceTable t("t", u);
  for (Mask m = 1; m < t.menu_count(); ++m) {
    Mask c = 0;
    std::size_t taken = 0;
    for (std::size_t x : rank) {
      if (taken < q && ((m >> x) & 1) && ok[x]) {
        c |= Mask{1} << x;
        ++taken;
      }
    }
    t.set(ContractSet(m), ContractSet(c));
  }
  return t;
}

/// Pairwise choices from random scores with ties, every pair of acceptable
/// contracts choosing its better member(s); larger menus arbitrary.
inline ChoiceTable binary_scored(Rand& r, std::size_t n, std::vector<std::string> u = {}) {
  if (u.empty()) u = letters(n);
  std::vector<std::uint32_t> score(n);
  std::vector<bool> ok(n);
  for (std::size_t i = 0; i < n; ++i) {
    score[i] = r.below(3);
    ok[i] = r.coin(75);
  }
  ChoiceTable t("t", u);
  for (Mask m = 1; m < t.menu_count(); ++m) {
    const int k = __builtin_popcount(m);
    Mask c = 0;
    if (k == 1) {
      if (ok[__builtin_ctz(m)]) c = m;
    } else if (k == 2) {
      const int x = __builtin_ctz(m), y = 31 - __builtin_clz(m);
      if (ok[x] && ok[y]) {
        if (score[x] >= score[y]) c |= Mask{1} << x;
        if (score[y] >= score[x]) c |= Mask{1} << y;
      } else if (ok[x]) {
        c = Mask{1} << x;
      } else if (ok[y]) {
        c = Mask{1} << y;
      }
    } else {
      c = r.submask(m);
    }
    t.set(ContractSet(m), ContractSet(c));
  }
  return t;
}

using TableMaker = ChoiceTable (*)(Rand&, std::size_t, std::vector<std::string>);

/// Random bipartite market; each agent's table from its side's maker.
inline Market market(Rand& r, std::size_t firms, std::size_t workers, std::size_t contracts,
                     TableMaker firm_table, TableMaker worker_table) {
  std::vector<std::string> fs, ws;
  for (std::size_t i = 0; i < firms; ++i) fs.push_back("F" + std::to_string(i));
  for (std::size_t i = 0; i < workers; ++i) ws.push_back("W" + std::to_string(i));
  std::vector<choicematch::Contract> cs;
  for (std::size_t i = 0; i < contracts; ++i) {
    cs.push_back({"c" + std::string(1, static_cast<char>('a' + i)),
                  fs[r.below(static_cast<std::uint32_t>(firms))],
                  ws[r.below(static_cast<std::uint32_t>(workers))]});
  }
  std::map<std::string, ChoiceTable> tables;
  auto build = [&](const std::string& a, bool firm, TableMaker make) {
    std::vector<std::string> u;
    for (const auto& c : cs) {
      if ((firm ? c.firm : c.worker) == a) u.push_back(c.id);
    }
    std::sort(u.begin(), u.end());
    ChoiceTable t = make(r, u.size(), u);
    ChoiceTable named(a, u);
    for (Mask m = 0; m < t.menu_count(); ++m) named.set(ContractSet(m), t.choose(ContractSet(m)));
    tables.emplace(a, std::move(named));
  };
  for (const auto& f : fs) build(f, true, firm_table);
  for (const auto& w : ws) build(w, false, worker_table);
  return Market(fs, ws, cs, std::move(tables));
}

}  // namespace gen
