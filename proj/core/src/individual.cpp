#include "choicematch/individual.hpp"

#include <algorithm>
#include <unordered_map>

#include "choicematch/axioms.hpp"
#include "choicematch/errors.hpp"

namespace choicematch {

std::string_view to_string(PairRelation relation) {
  switch (relation) {
    case PairRelation::first_preferred: return "first_preferred";
    case PairRelation::second_preferred: return "second_preferred";
    case PairRelation::indifferent: return "indifferent";
    case PairRelation::incomparable: return "incomparable";
  }
  return "?";
}

std::string_view to_string(GdaMove move) {
  switch (move) {
    case GdaMove::grow: return "grow";
    case GdaMove::discard: return "discard";
    case GdaMove::rejected: return "rejected";
  }
  return "?";
}

PairRelation classify_pair(const ChoiceTable& table, ContractSet a, ContractSet b) {
  if (a.empty() || b.empty()) throw EmptySet("classify_pair: both sets must be nonempty");
  if (a.intersects(b)) throw NotDisjoint("classify_pair: sets must be disjoint");
  const ContractSet c = table.choose(a | b);
  const bool ab = a.subset_of(c);
  const bool ba = b.subset_of(c);
  if (ab && ba) return PairRelation::indifferent;
  if (ab) return PairRelation::first_preferred;
  if (ba) return PairRelation::second_preferred;
  return PairRelation::incomparable;
}

bool is_ir(const ChoiceTable& table, ContractSet s) { return table.choose(s) == s; }

MaximalityCheck is_strongly_maximal_ir(const ChoiceTable& table, ContractSet s) {
  MaximalityCheck out;
  const ContractSet cs = table.choose(s);
  if (cs != s) {
    out.failure = MaximalityCheck::Failure::not_ir;
    out.chosen = cs;
    return out;
  }
  const ContractSet rest = table.full() - s;
  any_subset(rest, [&](ContractSet challenger) {
    if (challenger.empty()) return false;
    const ContractSet c = table.choose(s | challenger);
    if (!challenger.subset_of(c)) return false;
    out.failure = MaximalityCheck::Failure::challenger;
    out.challenger = challenger;
    out.chosen = c;
    return true;
  });
  out.holds = out.failure == MaximalityCheck::Failure::none;
  return out;
}

std::vector<ContractSet> enumerate_strongly_maximal_ir(const ChoiceTable& table) {
  table.require_cap(kMaxAgentUniverse, "enumerate_strongly_maximal_ir");
  table.require_total();
  std::vector<ContractSet> out;
  for (Mask m = 0; m < table.menu_count(); ++m) {
    if (is_strongly_maximal_ir(table, ContractSet(m)).holds) out.push_back(ContractSet(m));
  }
  return out;
}

GdaResult gda(const ChoiceTable& table, const GdaOptions& options) {
  table.require_cap(kMaxAgentUniverse, "gda");
  table.require_total();
  GdaResult out;
  if (table.is_trivial()) return out;
  if (options.require_sub) {
    const Verdict sub = check_sub(table);
    if (!sub.holds()) {
      throw PreconditionFailed("gda: the choice table of '" + table.agent() +
                               "' is not substitutable");
    }
  }
  const std::uint64_t budget =
      options.move_budget ? options.move_budget : (std::uint64_t{2} << table.size());

  ContractSet s = table.choose(table.full());
  std::vector<ContractSet> history{s};
  std::unordered_map<Mask, std::size_t> seen{{s.bits(), 0}};
  std::uint64_t moves = 0;
  while (true) {
    bool moved = false;
    any_subset(table.full() - s, [&](ContractSet challenger) {
      if (challenger.empty()) return false;
      const ContractSet u = s | challenger;
      const ContractSet c = table.choose(u);
      GdaStep step{s, challenger, GdaMove::rejected, c, s};
      if (c == u) {
        step.move = GdaMove::grow;
        step.result = u;
      } else if (challenger.subset_of(c) && !s.subset_of(c)) {
        step.move = GdaMove::discard;
        step.result = c;
      }
      if (step.move != GdaMove::rejected || options.record_rejections) out.trace.push_back(step);
      if (step.move == GdaMove::rejected) return false;
      s = step.result;
      moved = true;
      return true;
    });
    if (!moved) break;
    if (moves == budget) {
      out.status = GdaResult::Status::non_terminating;
      out.result = s;
      return out;
    }
    ++moves;
    auto [it, fresh] = seen.emplace(s.bits(), history.size());
    if (!fresh) {
      out.status = GdaResult::Status::non_terminating;
      out.cycle.assign(history.begin() + static_cast<std::ptrdiff_t>(it->second), history.end());
      out.result = s;
      return out;
    }
    history.push_back(s);
  }
  out.result = s;
  return out;
}

bool gda_trace_consistent(const ChoiceTable& table, const GdaResult& result) {
  if (result.trace.empty()) {
    return result.terminated() ? (table.is_trivial() ? result.result.empty()
                                                     : result.result == table.choose(table.full()))
                               : false;
  }
  ContractSet cur = table.choose(table.full());
  for (const auto& step : result.trace) {
    if (step.current != cur || step.challenger.empty() || step.challenger.intersects(cur)) {
      return false;
    }
    const ContractSet u = cur | step.challenger;
    const ContractSet c = table.choose(u);
    if (c != step.chosen) return false;
    switch (step.move) {
      case GdaMove::grow:
        if (c != u || step.result != u) return false;
        break;
      case GdaMove::discard:
        if (c == u || !step.challenger.subset_of(c) || cur.subset_of(c) || step.result != c) {
          return false;
        }
        break;
      case GdaMove::rejected:
        if (c == u || (step.challenger.subset_of(c) && !cur.subset_of(c)) || step.result != cur) {
          return false;
        }
        break;
    }
    cur = step.result;
  }
  return cur == result.result;
}

}  // namespace choicematch
