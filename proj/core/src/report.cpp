#include "choicematch/report.hpp"

namespace choicematch {

Json set_json(const ChoiceTable& table, ContractSet set) {
  Json out = Json::array();
  for (const auto& id : table.ids(set)) out.push_back(id);
  return out;
}

Json set_json(const Market& market, ContractSet global) {
  Json out = Json::array();
  for (const auto& id : market.ids(global)) out.push_back(id);
  return out;
}

namespace {

Json sets_json(const ChoiceTable& table, const std::vector<ContractSet>& sets) {
  Json out = Json::array();
  for (ContractSet s : sets) out.push_back(set_json(table, s));
  return out;
}

Json sets_json(const Market& market, const std::vector<Matching>& sets) {
  Json out = Json::array();
  for (const Matching& s : sets) out.push_back(set_json(market, s.contracts));
  return out;
}

std::string_view move_name(GraphMove move) { return move == GraphMove::grow ? "grow" : "discard"; }

Json witness_json(const ChoiceTable& table, const AxiomWitness& w) {
  Json out = Json::object();
  if (!w.sets.empty()) out["sets"] = sets_json(table, w.sets);
  if (!w.derived.empty()) out["derived"] = sets_json(table, w.derived);
  if (w.element) out["element"] = table.universe()[*w.element];
  if (!w.sequence.empty()) {
    Json seq = Json::array();
    for (std::size_t x : w.sequence) seq.push_back(table.universe()[x]);
    out["sequence"] = seq;
  }
  if (!w.edges.empty()) {
    Json edges = Json::array();
    for (const auto& e : w.edges) {
      edges.push_back({{"from", set_json(table, e.from)},
                       {"challenger", set_json(table, e.challenger)},
                       {"move", move_name(e.move)},
                       {"to", set_json(table, e.to)}});
    }
    out["edges"] = edges;
  }
  Json evals = Json::array();
  for (const auto& e : w.evaluations) {
    evals.push_back({{"menu", set_json(table, e.menu)}, {"chosen", set_json(table, e.chosen)}});
  }
  out["evaluations"] = evals;
  return out;
}

Json ir_failure_json(const Market& market, const std::optional<IrFailure>& failure) {
  if (!failure) return nullptr;
  return {{"agent", failure->agent},
          {"held", set_json(market, failure->held)},
          {"chosen", set_json(market, failure->chosen)}};
}

std::string_view side_name(Side side) { return side == Side::firm ? "firm" : "worker"; }

}  // namespace

Json verdict_json(const ChoiceTable& table, const Verdict& verdict) {
  Json out = Json::object();
  out["axiom"] = to_string(verdict.axiom);
  out["verdict"] = to_string(verdict.kind);
  out["witness"] = verdict.witness ? witness_json(table, *verdict.witness) : Json(nullptr);
  out["bound"] = verdict.bound ? Json(*verdict.bound) : Json(nullptr);
  if (verdict.kind == VerdictKind::no_violation_up_to) out["exhaustive"] = verdict.exhaustive;
  return out;
}

Json verdicts_json(const ChoiceTable& table, const TableVerdicts& v) {
  return Json::array({verdict_json(table, v.sub), verdict_json(table, v.con),
                      verdict_json(table, v.pi), verdict_json(table, v.ba),
                      verdict_json(table, v.ga_graph)});
}

Json order_json(const AgentOrder& order) {
  Json out = Json::array();
  for (const auto& level : order.levels) {
    Json l = Json::array();
    for (std::size_t x : level) l.push_back(x == kOutside ? std::string("∅") : order.universe[x]);
    out.push_back(l);
  }
  return out;
}

Json order_json(const StrictOrder& order, const ChoiceTable& table) {
  Json out = Json::array();
  for (std::size_t x : order.ranking) {
    out.push_back(Json::array({x == kOutside ? std::string("∅") : table.universe()[x]}));
  }
  return out;
}

Json gda_json(const ChoiceTable& table, const GdaResult& result, bool trace) {
  Json out = Json::object();
  out["agent"] = table.agent();
  out["status"] = result.terminated() ? "terminated" : "non_terminating";
  out["result"] = set_json(table, result.result);
  if (!result.terminated()) out["cycle"] = sets_json(table, result.cycle);
  if (trace) {
    Json steps = Json::array();
    for (const auto& s : result.trace) {
      steps.push_back({{"current", set_json(table, s.current)},
                       {"challenger", set_json(table, s.challenger)},
                       {"move", to_string(s.move)},
                       {"chosen", set_json(table, s.chosen)},
                       {"result", set_json(table, s.result)}});
    }
    out["trace"] = steps;
  }
  return out;
}

Json gdma_json(const Market& market, const GdmaResult& result, bool trace) {
  Json out = Json::object();
  out["status"] = result.terminated() ? "terminated" : "non_terminating";
  out["matching"] = set_json(market, result.matching.contracts);
  out["initial"] = set_json(market, result.initial.contracts);
  Json proposals = Json::object();
  for (const auto& [firm, set] : result.proposals) proposals[firm] = set_json(market, set);
  out["proposals"] = proposals;
  std::size_t accepted = 0;
  for (const auto& r : result.rounds) accepted += r.accepted;
  out["accepted_rounds"] = accepted;
  if (!result.terminated()) {
    out["cycle"] = sets_json(market, result.cycle);
    out["diagnosis"] = result.diagnosis;
  }
  if (trace) {
    Json rounds = Json::array();
    for (const auto& r : result.rounds) {
      Json responses = Json::array();
      for (const auto& w : r.responses) {
        responses.push_back({{"worker", w.worker},
                             {"offered", set_json(market, w.offered)},
                             {"held", set_json(market, w.held)},
                             {"chosen", set_json(market, w.chosen)},
                             {"accepted", w.accepted}});
      }
      rounds.push_back({{"firm", r.firm},
                        {"proposal", set_json(market, r.proposal)},
                        {"firm_chosen", set_json(market, r.firm_chosen)},
                        {"accepted", r.accepted},
                        {"responses", responses},
                        {"after", set_json(market, r.after.contracts)}});
    }
    out["trace"] = rounds;
  }
  return out;
}

Json daa_json(const Market& market, const DaaResult& result, bool trace) {
  Json out = Json::object();
  out["matching"] = set_json(market, result.matching.contracts);
  out["rounds"] = result.rounds.size();
  Json orders = Json::object();
  for (const auto& agent : market.agents()) orders[agent.id] = order_json(result.orders.at(agent.id));
  out["orders"] = orders;
  if (trace) {
    Json rounds = Json::array();
    auto ids = [&](const std::vector<std::size_t>& xs) {
      Json a = Json::array();
      for (std::size_t x : xs) a.push_back(market.contracts()[x].id);
      return a;
    };
    for (const auto& r : result.rounds) {
      rounds.push_back({{"proposals", ids(r.proposals)},
                        {"rejections", ids(r.rejections)},
                        {"held", set_json(market, r.held.contracts)}});
    }
    out["trace"] = rounds;
  }
  return out;
}

Json ir_json(const Market& market, const IrCheck& check) {
  return {{"ir", check.holds}, {"failure", ir_failure_json(market, check.failure)}};
}

Json cy_json(const Market& market, const StabilityCheck& check) {
  Json out = Json::object();
  out["stable"] = check.stable;
  out["ir_failure"] = ir_failure_json(market, check.ir_failure);
  if (check.block) {
    Json evals = Json::array();
    for (const auto& e : check.block->evaluations) {
      evals.push_back({{"agent", e.agent},
                       {"side", side_name(e.side)},
                       {"offered", set_json(market, e.offered)},
                       {"held", set_json(market, e.held)},
                       {"chosen", set_json(market, e.chosen)}});
    }
    out["block"] = {{"contracts", set_json(market, check.block->block)}, {"evaluations", evals}};
  } else {
    out["block"] = nullptr;
  }
  return out;
}

Json r_json(const Market& market, const RStabilityCheck& check) {
  Json out = Json::object();
  out["stable"] = check.stable;
  out["ir_failure"] = ir_failure_json(market, check.ir_failure);
  if (check.blocking) {
    out["blocking"] = {{"contract", market.contracts()[*check.blocking].id},
                       {"firm_choice", set_json(market, check.firm_choice)},
                       {"worker_choice", set_json(market, check.worker_choice)}};
  } else {
    out["blocking"] = nullptr;
  }
  return out;
}

Json validation_json(const ValidationReport& report) {
  Json issues = Json::array();
  for (const auto& i : report.issues) {
    issues.push_back({{"kind", to_string(i.kind)}, {"agent", i.agent}, {"message", i.message}});
  }
  return {{"ok", report.ok()}, {"issues", issues}};
}

namespace {

bool is_set(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (!e.is_string()) return false;
  }
  return true;
}

bool is_inline(const Json& j) {
  if (j.is_object()) return false;
  if (!j.is_array() || is_set(j)) return true;
  for (const auto& e : j) {
    if (!is_set(e)) return false;
  }
  return true;
}

std::string scalar(const Json& j) {
  if (j.is_null()) return "none";
  if (j.is_string()) return j.get<std::string>();
  if (is_set(j)) {
    std::string s = "{";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) s += ",";
      s += j[i].get<std::string>();
    }
    return s + "}";
  }
  if (j.is_array()) {
    if (j.empty()) return "[]";
    std::string s;
    for (const auto& e : j) {
      if (!s.empty()) s += " ";
      s += scalar(e);
    }
    return s;
  }
  return j.dump();
}

void emit(std::string& out, const Json& obj, std::size_t indent);

void emit_value(std::string& out, const std::string& key, const Json& v, std::size_t indent) {
  const std::string pad(indent, ' ');
  if (is_inline(v)) {
    std::string text = scalar(v);
    // Ordered sequences read as tuples rather than sets.
    if (key == "sequence" && text.size() >= 2) text = "(" + text.substr(1, text.size() - 2) + ")";
    out += pad + key + ": " + text + "\n";
    return;
  }
  if (v.is_object() && v.empty()) {
    out += pad + key + ": (none)\n";
    return;
  }
  out += pad + key + ":\n";
  if (v.is_object()) {
    emit(out, v, indent + 2);
    return;
  }
  for (const auto& e : v) {
    if (e.is_object()) {
      std::string item;
      emit(item, e, indent + 4);
      if (item.size() > indent + 2) item[indent + 2] = '-';
      out += item;
    } else {
      out += std::string(indent + 2, ' ') + "- " + scalar(e) + "\n";
    }
  }
}

void emit(std::string& out, const Json& obj, std::size_t indent) {
  for (const auto& [k, v] : obj.items()) emit_value(out, k, v, indent);
}

}  // namespace

std::string render_text(const Json& report) {
  std::string out;
  if (report.is_object()) {
    emit(out, report, 0);
  } else if (report.is_array() && !is_inline(report)) {
    for (const auto& e : report) {
      if (e.is_object()) {
        emit(out, e, 0);
        out += "\n";
      } else {
        out += scalar(e) + "\n";
      }
    }
    if (!out.empty() && out.back() == '\n' && out.size() > 1 && out[out.size() - 2] == '\n') {
      out.pop_back();
    }
  } else {
    out = scalar(report) + "\n";
  }
  return out;
}

}  // namespace choicematch
