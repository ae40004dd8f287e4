#include <gtest/gtest.h>

#include <algorithm>

#include "choicematch/axioms.hpp"
#include "choicematch/errors.hpp"
#include "choicematch/genlab.hpp"
#include "choicematch/individual.hpp"
#include "choicematch/one2one.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace choicematch;

namespace {

std::vector<ChoiceTable> substitutable_tables() {
  std::vector<ChoiceTable> out;
  for (Profile p : {Profile::PI, Profile::SUB_ONLY, Profile::SUB_GA}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      out.push_back(gen_table({seed, 2 + seed % 4, p}).table);
    }
  }
  for (std::uint64_t seed = 0; seed < 2000 && out.size() < 260; ++seed) {
    gen::Rand r(seed);
    ChoiceTable t = gen::ir_rich(r, 3 + seed % 2, {});
    if (oracle::substitutable(oracle::Fn(t))) out.push_back(std::move(t));
  }
  return out;
}

// BA tables in which every pair of acceptable contracts chooses something.
std::vector<ChoiceTable> ba_tables() {
  std::vector<ChoiceTable> out;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    out.push_back(gen_table({seed, 1 + seed % 6, Profile::BA}).table);
  }
  for (std::uint64_t seed = 0; out.size() < 250; ++seed) {
    gen::Rand r(seed);
    ChoiceTable t = gen::binary_scored(r, 1 + seed % 5, {});
    if (oracle::binary_acyclic(oracle::Fn(t))) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

TEST(GdaProperties, EveryHeldSetIsIrUnderSub) {
  for (const auto& t : substitutable_tables()) {
    const GdaResult r = gda(t);
    EXPECT_TRUE(gda_trace_consistent(t, r));
    for (const auto& s : r.trace) EXPECT_TRUE(is_ir(t, s.current));
    EXPECT_TRUE(is_ir(t, r.result));
  }
}

TEST(GdaProperties, TerminatesAtAStronglyMaximalSetUnderGa) {
  for (const auto& t : substitutable_tables()) {
    if (!check_ga_graph(t).holds()) continue;
    const GdaResult r = gda(t);
    ASSERT_TRUE(r.terminated());
    EXPECT_TRUE(is_strongly_maximal_ir(t, r.result).holds);
    const auto all = oracle::strongly_maximal(oracle::Fn(t));
    EXPECT_NE(std::find(all.begin(), all.end(), r.result.bits()), all.end());
    // No state is visited twice.
    std::vector<Mask> states{t.choose(t.full()).bits()};
    for (const auto& s : r.trace) {
      if (s.move != GdaMove::rejected) states.push_back(s.result.bits());
    }
    std::sort(states.begin(), states.end());
    EXPECT_EQ(std::adjacent_find(states.begin(), states.end()), states.end());
  }
}

TEST(GdaProperties, NonTerminationComesWithACycle) {
  for (const auto& t : substitutable_tables()) {
    const GdaResult r = gda(t);
    if (r.terminated()) continue;
    ASSERT_FALSE(r.cycle.empty());
    EXPECT_TRUE(check_ga_graph(t).violated());
    for (ContractSet s : r.cycle) EXPECT_TRUE(is_ir(t, s));
  }
}

TEST(StronglyMaximalProperties, EnumeratorMatchesDefinition) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    gen::Rand r(seed);
    const ChoiceTable t = (seed % 2 ? gen::ir_rich : gen::arbitrary)(r, 1 + seed % 5, {});
    std::vector<Mask> got;
    for (ContractSet s : enumerate_strongly_maximal_ir(t)) got.push_back(s.bits());
    EXPECT_EQ(got, oracle::strongly_maximal(oracle::Fn(t))) << seed;
  }
}

TEST(ClassifyProperties, RelationMatchesContainment) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    gen::Rand r(seed);
    const ChoiceTable t = gen::arbitrary(r, 4, {});
    for (Mask a = 1; a < t.menu_count(); ++a) {
      for (Mask b = 1; b < t.menu_count(); ++b) {
        if (a & b) continue;
        const PairRelation ab = classify_pair(t, ContractSet(a), ContractSet(b));
        const PairRelation ba = classify_pair(t, ContractSet(b), ContractSet(a));
        const Mask c = t.choose(ContractSet(a | b)).bits();
        const bool a_in = oracle::sub(a, c), b_in = oracle::sub(b, c);
        EXPECT_EQ(ab == PairRelation::indifferent, a_in && b_in);
        EXPECT_EQ(ab == PairRelation::first_preferred, a_in && !b_in);
        EXPECT_EQ(ab == PairRelation::incomparable, !a_in && !b_in);
        if (ab == PairRelation::first_preferred) {
          EXPECT_EQ(ba, PairRelation::second_preferred);
        } else if (ab != PairRelation::second_preferred) {
          EXPECT_EQ(ba, ab);
        }
      }
    }
  }
}

TEST(OrderProperties, BuiltOrdersAreWeakOrders) {
  for (const auto& t : ba_tables()) {
    AgentOrder o;
    try {
      o = build_order(t);
    } catch (const IntransitiveOrder&) {
      // Only possible with an empty pair choice among acceptable contracts.
      bool empty_pair = false;
      for (std::size_t x = 0; x < t.size(); ++x) {
        for (std::size_t y = x + 1; y < t.size(); ++y) {
          const ContractSet pair = ContractSet::single(x) | ContractSet::single(y);
          if (t.choose(ContractSet::single(x)).contains(x) &&
              t.choose(ContractSet::single(y)).contains(y) && t.choose(pair).empty()) {
            empty_pair = true;
          }
        }
      }
      EXPECT_TRUE(empty_pair);
      continue;
    }
    const std::size_t n = t.size();
    // Independent look at the stored levels: every item once, ∅ included.
    std::vector<int> count(n + 1, 0);
    for (const auto& level : o.levels) {
      EXPECT_FALSE(level.empty());
      for (std::size_t x : level) count[x == kOutside ? n : x]++;
    }
    for (int c : count) EXPECT_EQ(c, 1);
    // Exhaustive complete / reflexive / transitive on weakly_prefers.
    auto item = [n](std::size_t i) { return i == n ? kOutside : i; };
    for (std::size_t i = 0; i <= n; ++i) {
      EXPECT_TRUE(o.weakly_prefers(item(i), item(i)));
      for (std::size_t j = 0; j <= n; ++j) {
        EXPECT_TRUE(o.weakly_prefers(item(i), item(j)) || o.weakly_prefers(item(j), item(i)));
        for (std::size_t k = 0; k <= n; ++k) {
          if (o.weakly_prefers(item(i), item(j)) && o.weakly_prefers(item(j), item(k))) {
            EXPECT_TRUE(o.weakly_prefers(item(i), item(k)));
          }
        }
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      // Below ∅ exactly when x is not chosen from {x}.
      EXPECT_EQ(o.acceptable(x), t.choose(ContractSet::single(x)).contains(x));
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y || !o.acceptable(x) || !o.acceptable(y)) continue;
        // A strict binary choice between acceptables is a strict preference.
        if (t.choose(ContractSet::single(x) | ContractSet::single(y)) == ContractSet::single(x)) {
          EXPECT_FALSE(o.weakly_prefers(y, x));
        }
      }
    }
    EXPECT_TRUE(order_properties(build_relation(t)).weak_order());
  }
}

TEST(OrderProperties, LargeMenusDoNotMatter) {
  for (const auto& t : ba_tables()) {
    if (t.size() < 3) continue;
    AgentOrder before;
    try {
      before = build_order(t);
    } catch (const IntransitiveOrder&) {
      continue;
    }
    gen::Rand r(t.size() * 7919 + t.choose(t.full()).bits());
    ChoiceTable changed = t;
    for (Mask m = 1; m < t.menu_count(); ++m) {
      if (__builtin_popcount(m) >= 3) changed.set(ContractSet(m), ContractSet(r.submask(m)));
    }
    const AgentOrder after = build_order(changed);
    EXPECT_EQ(after.levels, before.levels);
  }
}

TEST(OrderProperties, TieBreakRefinesTheOrder) {
  for (const auto& t : ba_tables()) {
    AgentOrder o;
    try {
      o = build_order(t);
    } catch (const IntransitiveOrder&) {
      continue;
    }
    const StrictOrder s = tie_break(o);
    ASSERT_EQ(s.ranking.size(), t.size() + 1);
    for (std::size_t i = 0; i + 1 < s.ranking.size(); ++i) {
      const std::size_t a = s.ranking[i], b = s.ranking[i + 1];
      EXPECT_TRUE(o.weakly_prefers(a, b));
      if (o.level_of(a) == o.level_of(b)) {
        EXPECT_LT(a, b);  // universe order is byte-wise id order
      }
    }
    for (std::size_t x : s.acceptable()) EXPECT_TRUE(o.acceptable(x));
  }
}
