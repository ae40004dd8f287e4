#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "choicematch/genlab.hpp"
#include "choicematch/many2many.hpp"
#include "choicematch/market_io.hpp"
#include "choicematch/one2one.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace choicematch;

namespace {

Market random_market(std::uint64_t seed, gen::TableMaker firms, gen::TableMaker workers,
                     std::size_t max_contracts = 7) {
  gen::Rand r(seed);
  const std::size_t f = 1 + r.below(3), w = 1 + r.below(3);
  const std::size_t c = r.below(static_cast<std::uint32_t>(max_contracts + 1));
  return gen::market(r, f, w, c, firms, workers);
}

std::vector<Matching> probe_matchings(const Market& m, gen::Rand& r) {
  std::vector<Matching> out{Matching{}};
  const Mask all = m.all_contracts().bits();
  for (int i = 0; i < 6; ++i) out.push_back(Matching{ContractSet(r.submask(all))});
  for (Mask nu : oracle::all_cy_stable(m)) out.push_back(Matching{ContractSet(nu)});
  return out;
}

MarketSpec sub_ga_spec(std::uint64_t seed) {
  gen::Rand r(seed);
  MarketSpec s;
  s.seed = seed;
  s.firms = 1 + r.below(3);
  s.workers = 1 + r.below(3);
  s.contracts = 1 + r.below(6);
  return s;
}

}  // namespace

TEST(MarketProperties, SaveLoadIsIdentity) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Market m = seed % 2 ? random_market(seed, gen::arbitrary, gen::responsive)
                              : gen_market(sub_ga_spec(seed)).market;
    const std::string text = save_market(m);
    const Market back = load_market(text);
    EXPECT_EQ(back, m) << seed;
    EXPECT_EQ(save_market(back), text) << seed;
    gen::Rand r(seed);
    const Matching nu{ContractSet(r.submask(m.all_contracts().bits()))};
    EXPECT_EQ(load_matching(save_matching(nu, m), m), nu);
  }
}

TEST(MarketProperties, StabilityMatchesTheDefinition) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Market m = random_market(seed, seed % 2 ? gen::ir_rich : gen::arbitrary, gen::ir_rich);
    gen::Rand r(seed + 1000);
    for (const Matching& nu : probe_matchings(m, r)) {
      const StabilityCheck c = is_cy_stable(m, nu);
      EXPECT_EQ(c.stable, oracle::cy_stable(m, nu.contracts.bits())) << seed;
      EXPECT_EQ(is_matching_ir(m, nu).holds, oracle::matching_ir(m, nu.contracts.bits()));
      if (c.block) {
        EXPECT_TRUE(block_replays(m, nu, *c.block));
        EXPECT_TRUE(oracle::blocks(m, nu.contracts.bits(), c.block->block.bits()));
      }
    }
  }
}

TEST(MarketProperties, SingleFirmScanAgreesUnderWorkerSub) {
  int unstable = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Market m = random_market(seed, gen::ir_rich, gen::responsive);
    gen::Rand r(seed + 7);
    for (const Matching& nu : probe_matchings(m, r)) {
      const StabilityCheck full = is_cy_stable(m, nu, BlockScan::full);
      const StabilityCheck single = is_cy_stable(m, nu, BlockScan::single_firm);
      ASSERT_EQ(full.stable, single.stable) << seed;
      if (full.block) {
        ++unstable;
        EXPECT_TRUE(block_replays(m, nu, *full.block));
        ASSERT_TRUE(single.block);
        EXPECT_TRUE(block_replays(m, nu, *single.block));
      }
    }
  }
  EXPECT_GT(unstable, 100);
}

TEST(MarketProperties, EnumeratorMatchesTheDefinition) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Market m = random_market(seed, gen::ir_rich, seed % 3 ? gen::responsive : gen::arbitrary, 6);
    std::vector<Mask> got;
    for (const Matching& nu : enumerate_cy_stable(m)) got.push_back(nu.contracts.bits());
    EXPECT_EQ(got, oracle::all_cy_stable(m)) << seed;
    EXPECT_EQ(enumerate_cy_stable(m, {3}), enumerate_cy_stable(m, {1})) << seed;
  }
}

TEST(MarketProperties, GdmaReachesAStableMatchingUnderSubAndGa) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Market m = seed % 3 ? gen_market(sub_ga_spec(seed)).market
                              : random_market(seed, gen::responsive, gen::responsive, 6);
    const GdmaResult r = gdma(m);
    ASSERT_TRUE(r.terminated()) << seed;
    EXPECT_TRUE(oracle::cy_stable(m, r.matching.contracts.bits())) << seed;
    const auto all = oracle::all_cy_stable(m);
    EXPECT_NE(std::find(all.begin(), all.end(), r.matching.contracts.bits()), all.end());
    EXPECT_EQ(replay_gdma(m, r), r.matching);
    EXPECT_TRUE(oracle::matching_ir(m, r.initial.contracts.bits()));
    for (const auto& round : r.rounds) {
      EXPECT_TRUE(oracle::matching_ir(m, round.after.contracts.bits()));
      if (round.accepted) {
        EXPECT_NE(round.after, round.before);
      } else {
        EXPECT_EQ(round.after, round.before);
      }
    }
    // Each firm's opening proposal is strongly maximal for that firm.
    for (const auto& [firm, proposal] : r.proposals) {
      const auto mine = oracle::strongly_maximal(oracle::Fn(m.table(firm)));
      const Mask local = m.to_local(m.agent(firm), proposal).bits();
      EXPECT_NE(std::find(mine.begin(), mine.end(), local), mine.end());
    }
  }
}

TEST(MarketProperties, GdmaIsDeterministic) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Market m = gen_market(sub_ga_spec(seed)).market;
    const GdmaResult a = gdma(m), b = gdma(m);
    EXPECT_EQ(a.matching, b.matching);
    EXPECT_EQ(a.rounds.size(), b.rounds.size());
  }
}

TEST(MarketProperties, DaaIsRStableWithPermanentRejections) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    gen::Rand r(seed);
    MarketSpec s;
    s.seed = seed;
    s.firms = 1 + r.below(4);
    s.workers = 1 + r.below(4);
    s.contracts = r.below(9);
    s.firm_profile = Profile::BA;
    s.worker_profile = Profile::BA;
    const Market m = seed % 2 ? gen_market(s).market
                              : gen::market(r, s.firms, s.workers, s.contracts, gen::binary_scored,
                                            gen::responsive);
    bool every_agent_ba = true;
    for (const auto& a : m.agents()) every_agent_ba &= oracle::binary_acyclic(oracle::Fn(m.table(a.id)));
    if (!every_agent_ba) continue;
    for (bool workers_propose : {false, true}) {
      DaaOptions o;
      o.worker_proposing = workers_propose;
      const DaaResult d = daa(m, o);
      const Mask nu = d.matching.contracts.bits();
      EXPECT_TRUE(oracle::one_to_one(m, nu)) << seed;
      EXPECT_TRUE(oracle::r_stable(m, nu)) << seed;
      EXPECT_TRUE(is_r_stable(m, d.matching).stable) << seed;
      std::set<std::size_t> rejected;
      for (const auto& round : d.rounds) {
        for (std::size_t x : round.proposals) EXPECT_FALSE(rejected.count(x)) << seed;
        for (std::size_t x : round.rejections) EXPECT_TRUE(rejected.insert(x).second) << seed;
      }
      for (std::size_t x : rejected) EXPECT_FALSE(d.matching.contracts.contains(x));
      EXPECT_LE(d.rounds.size(), m.contract_count() + 1);
    }
  }
}

TEST(MarketProperties, RStabilityMatchesTheDefinition) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Market m = random_market(seed, gen::binary_scored, gen::arbitrary);
    gen::Rand r(seed);
    for (Mask nu = 0; nu <= m.all_contracts().bits(); ++nu) {
      if (!oracle::one_to_one(m, nu)) {
        EXPECT_THROW(is_r_stable(m, Matching{ContractSet(nu)}), NotOneToOne);
        continue;
      }
      EXPECT_EQ(is_r_stable(m, Matching{ContractSet(nu)}).stable, oracle::r_stable(m, nu));
    }
  }
}

TEST(MarketProperties, GeneratorIsDeterministicAndValid) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    MarketSpec s = sub_ga_spec(seed);
    s.worker_profile = seed % 2 ? Profile::PI : Profile::SUB_GA;
    const GeneratedMarket a = gen_market(s), b = gen_market(s);
    EXPECT_EQ(save_market(a.market), save_market(b.market));
    EXPECT_TRUE(validate_market(a.market).ok());
    for (const auto& [agent, v] : a.verdicts) {
      const bool firm = a.market.agent(agent).side == Side::firm;
      EXPECT_TRUE(satisfies(firm ? s.firm_profile : s.worker_profile, v)) << agent;
    }
  }
}
