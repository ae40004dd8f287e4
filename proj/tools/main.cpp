#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "choicematch/axioms.hpp"
#include "choicematch/errors.hpp"
#include "choicematch/genlab.hpp"
#include "choicematch/individual.hpp"
#include "choicematch/many2many.hpp"
#include "choicematch/market_io.hpp"
#include "choicematch/one2one.hpp"
#include "choicematch/report.hpp"

namespace cm = choicematch;
using cm::Json;

namespace {

enum Exit : int { kOk = 0, kViolated = 1, kUsage = 2, kBudget = 3 };

struct Options {
  std::string format = "text";
  std::string input;
  std::string matching;
  std::string agent;
  std::vector<std::string> axioms;
  std::size_t max_k = 0;
  std::uint64_t budget = 0;
  unsigned jobs = 1;
  bool trace = false;
  bool strict = false;
  bool no_sub_check = false;
  bool worker_proposing = false;
  std::string scan = "full";

  // gen
  std::optional<std::uint64_t> seed;
  std::string profile = "SUB_GA";
  std::string worker_profile;
  bool table = false;
  bool separating = false;
  std::size_t n = 4;
  std::size_t firms = 2;
  std::size_t workers = 2;
  std::size_t contracts = 4;
  std::size_t max_per_agent = 6;
  std::string output;
  std::string verdicts;
};

void emit(const Options& o, const Json& report) {
  if (o.format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << cm::render_text(report);
  }
}

bool is_table_file(const std::string& path) {
  return path.size() >= 6 && path.compare(path.size() - 6, 6, ".table") == 0;
}

cm::Market load_market_file(const std::string& path) {
  return cm::load_market(cm::read_file(path));
}

/// The tables an agent-level command works on: the table file itself, the
/// chosen agent of a market, or every agent of a market when allowed.
std::vector<cm::ChoiceTable> select_tables(const Options& o, bool allow_all) {
  if (is_table_file(o.input)) {
    cm::ChoiceTable t = cm::load_table(cm::read_file(o.input));
    if (!o.agent.empty() && o.agent != t.agent()) {
      throw cm::UnknownAgent("table file describes '" + t.agent() + "', not '" + o.agent + "'");
    }
    return {t};
  }
  const cm::Market m = load_market_file(o.input);
  if (!o.agent.empty()) return {m.table(o.agent)};
  if (!allow_all) throw CLI::ValidationError("--agent", "required for a market input");
  std::vector<cm::ChoiceTable> out;
  for (const auto& a : m.agents()) out.push_back(m.table(a.id));
  return out;
}

Json tagged(const cm::ChoiceTable& t, const cm::Verdict& v, const char* method) {
  const Json base = cm::verdict_json(t, v);
  Json out = Json::object();
  out["axiom"] = base["axiom"];
  out["method"] = method;
  for (const auto& [k, val] : base.items()) {
    if (k != "axiom") out[k] = val;
  }
  return out;
}

int run_axioms(const Options& o) {
  std::vector<cm::Axiom> selected;
  for (const auto& name : o.axioms) {
    bool found = false;
    for (cm::Axiom a : {cm::Axiom::SUB, cm::Axiom::CON, cm::Axiom::PI, cm::Axiom::BA,
                        cm::Axiom::GA}) {
      if (cm::to_string(a) == name) {
        selected.push_back(a);
        found = true;
      }
    }
    if (!found) throw CLI::ValidationError("--axiom", "unknown axiom '" + name + "'");
  }
  if (selected.empty()) {
    selected = {cm::Axiom::SUB, cm::Axiom::CON, cm::Axiom::PI, cm::Axiom::BA, cm::Axiom::GA};
  }
  cm::GaChainOptions ga;
  ga.max_k = o.max_k;
  ga.strict = o.strict;
  if (o.budget) ga.node_budget = o.budget;
  const cm::ScanOptions scan{o.jobs};

  int code = kOk;
  Json agents = Json::array();
  for (const auto& t : select_tables(o, true)) {
    Json verdicts = Json::array();
    auto add = [&](const cm::Verdict& v, const char* method) {
      verdicts.push_back(method ? tagged(t, v, method) : cm::verdict_json(t, v));
      if (v.violated()) code = kViolated;
    };
    for (cm::Axiom a : selected) {
      switch (a) {
        case cm::Axiom::SUB: add(cm::check_sub(t), nullptr); break;
        case cm::Axiom::CON: add(cm::check_con(t), nullptr); break;
        case cm::Axiom::PI: add(cm::check_pi(t, scan), nullptr); break;
        case cm::Axiom::BA: add(cm::check_ba(t), nullptr); break;
        case cm::Axiom::GA:
          add(cm::check_ga_graph(t), "graph");
          add(cm::check_ga_chain(t, ga), "chain");
          break;
      }
    }
    agents.push_back({{"agent", t.agent()}, {"verdicts", verdicts}});
  }
  emit(o, {{"agents", agents}});
  return code;
}

int run_validate(const Options& o) {
  Json report = Json::object();
  if (is_table_file(o.input)) {
    const cm::ChoiceTable t = cm::load_table(cm::read_file(o.input));
    report["ok"] = true;
    report["agent"] = t.agent();
    report["contracts"] = t.size();
  } else {
    const cm::Market m = load_market_file(o.input);
    report["ok"] = true;
    report["firms"] = m.firms().size();
    report["workers"] = m.workers().size();
    report["contracts"] = m.contract_count();
    report["singletons"] =
        m.singleton_default() == cm::SingletonDefault::identity ? "identity" : "explicit";
    Json universes = Json::object();
    for (const auto& a : m.agents()) universes[a.id] = a.contracts.size();
    report["universe_sizes"] = universes;
  }
  emit(o, report);
  return kOk;
}

int run_gda(const Options& o) {
  const auto tables = select_tables(o, false);
  const cm::ChoiceTable& t = tables.front();
  cm::GdaOptions opts;
  opts.require_sub = !o.no_sub_check;
  opts.move_budget = o.budget;
  cm::GdaResult r;
  try {
    r = cm::gda(t, opts);
  } catch (const cm::PreconditionFailed& e) {
    emit(o, {{"error", "precondition"},
             {"message", e.what()},
             {"agent", t.agent()},
             {"verdict", cm::verdict_json(t, cm::check_sub(t))}});
    return kViolated;
  }
  Json report = cm::gda_json(t, r, o.trace);
  if (r.terminated()) {
    report["strongly_maximal"] = cm::is_strongly_maximal_ir(t, r.result).holds;
  }
  emit(o, report);
  return r.terminated() ? kOk : kBudget;
}

int run_gdma(const Options& o) {
  const cm::Market m = load_market_file(o.input);
  cm::GdmaOptions opts;
  opts.require_sub = !o.no_sub_check;
  opts.round_budget = o.budget;
  cm::GdmaResult r;
  try {
    r = cm::gdma(m, opts);
  } catch (const cm::PreconditionFailed& e) {
    Json report = {{"error", "precondition"}, {"message", e.what()}};
    for (const auto& a : m.agents()) {
      const cm::Verdict v = cm::check_sub(m.table(a.id));
      if (v.violated()) {
        report["agent"] = a.id;
        report["verdict"] = cm::verdict_json(m.table(a.id), v);
        break;
      }
    }
    emit(o, report);
    return kViolated;
  }
  Json report = cm::gdma_json(m, r, o.trace);
  if (r.terminated()) report["cy_stable"] = cm::is_cy_stable(m, r.matching).stable;
  emit(o, report);
  return r.terminated() ? kOk : kBudget;
}

int run_daa(const Options& o) {
  const cm::Market m = load_market_file(o.input);
  cm::DaaResult r;
  try {
    r = cm::daa(m, {o.worker_proposing});
  } catch (const cm::BaViolation& e) {
    cm::Verdict v;
    v.axiom = cm::Axiom::BA;
    v.kind = cm::VerdictKind::violated;
    v.witness = e.witness();
    emit(o, {{"error", "precondition"},
             {"message", e.what()},
             {"agent", e.agent()},
             {"verdict", cm::verdict_json(m.table(e.agent()), v)}});
    return kViolated;
  } catch (const cm::IntransitiveOrder& e) {
    emit(o, {{"error", "intransitive"}, {"message", e.what()}, {"agent", e.agent()}});
    return kViolated;
  }
  Json report = cm::daa_json(m, r, o.trace);
  report["r_stable"] = cm::is_r_stable(m, r.matching).stable;
  emit(o, report);
  return kOk;
}

int run_verify(const Options& o, const std::string& what) {
  const cm::Market m = load_market_file(o.input);
  const cm::Matching mu = cm::load_matching(cm::read_file(o.matching), m);
  Json report = Json::object();
  report["check"] = what;
  report["matching"] = cm::set_json(m, mu.contracts);
  bool ok = false;
  if (what == "ir") {
    const cm::IrCheck c = cm::is_matching_ir(m, mu);
    ok = c.holds;
    report.update(cm::ir_json(m, c));
  } else if (what == "cy") {
    const auto scan = o.scan == "single-firm" ? cm::BlockScan::single_firm : cm::BlockScan::full;
    const cm::StabilityCheck c = cm::is_cy_stable(m, mu, scan, {o.jobs});
    ok = c.stable;
    report.update(cm::cy_json(m, c));
  } else {
    const cm::RStabilityCheck c = cm::is_r_stable(m, mu);
    ok = c.stable;
    report.update(cm::r_json(m, c));
  }
  emit(o, report);
  return ok ? kOk : kViolated;
}

int run_enumerate(const Options& o, const std::string& what) {
  if (what == "cy") {
    const cm::Market m = load_market_file(o.input);
    const auto all = cm::enumerate_cy_stable(m, {o.jobs});
    Json list = Json::array();
    for (const auto& mu : all) list.push_back(cm::set_json(m, mu.contracts));
    emit(o, {{"count", all.size()}, {"matchings", list}});
    return kOk;
  }
  Json agents = Json::array();
  for (const auto& t : select_tables(o, true)) {
    Json sets = Json::array();
    for (auto s : cm::enumerate_strongly_maximal_ir(t)) sets.push_back(cm::set_json(t, s));
    agents.push_back({{"agent", t.agent()}, {"count", sets.size()}, {"sets", sets}});
  }
  emit(o, {{"agents", agents}});
  return kOk;
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw cm::LoadError("cannot write '" + path + "'");
  f << text;
}

int run_gen(const Options& o) {
  const auto profile = cm::parse_profile(o.profile);
  if (!profile) throw CLI::ValidationError("--profile", "unknown profile '" + o.profile + "'");
  std::optional<cm::Profile> wprofile = profile;
  if (!o.worker_profile.empty()) {
    wprofile = cm::parse_profile(o.worker_profile);
    if (!wprofile) {
      throw CLI::ValidationError("--worker-profile", "unknown profile '" + o.worker_profile + "'");
    }
  }
  const std::uint64_t seed = *o.seed;
  Json sidecar = {{"generator", "mt19937_64"}, {"seed", seed}};
  if (o.table) {
    cm::TableSpec spec;
    spec.seed = seed;
    spec.n = o.n;
    spec.profile = *profile;
    spec.separating = o.separating;
    if (o.budget) spec.attempt_budget = o.budget;
    const cm::GeneratedTable g = cm::gen_table(spec);
    write_out(o.output, cm::save_table(g.table));
    sidecar["profile"] = cm::to_string(*profile);
    sidecar["n"] = o.n;
    sidecar["verdicts"] = cm::verdicts_json(g.table, g.verdicts);
  } else {
    cm::MarketSpec spec;
    spec.seed = seed;
    spec.firms = o.firms;
    spec.workers = o.workers;
    spec.contracts = o.contracts;
    spec.max_per_agent = o.max_per_agent;
    spec.firm_profile = *profile;
    spec.worker_profile = *wprofile;
    spec.separating = o.separating;
    const cm::GeneratedMarket g = cm::gen_market(spec);
    write_out(o.output, cm::save_market(g.market));
    sidecar["firm_profile"] = cm::to_string(*profile);
    sidecar["worker_profile"] = cm::to_string(*wprofile);
    Json agents = Json::object();
    for (const auto& a : g.market.agents()) {
      agents[a.id] = cm::verdicts_json(g.market.table(a.id), g.verdicts.at(a.id));
    }
    sidecar["agents"] = agents;
  }
  if (!o.verdicts.empty()) write_out(o.verdicts, sidecar.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Choice-table axioms and matching algorithms over contract markets"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--jobs", o.jobs, "Threads for the exhaustive scans")->capture_default_str();

  auto input = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "Market (.market) or table (.table) file")->required();
  };

  auto* validate = app.add_subcommand("validate", "Load a market or table file and check it");
  input(validate);

  auto* axioms = app.add_subcommand("axioms", "Check SUB, CON, PI, BA and GA");
  input(axioms);
  axioms->add_option("--agent", o.agent, "Agent of a market (default: all)");
  axioms->add_option("--axiom", o.axioms, "Restrict to these axioms");
  axioms->add_option("--max-k", o.max_k, "Longest GA chain searched (0: 2(2^n-1))");
  axioms->add_option("--budget", o.budget, "GA chain search node budget");
  axioms->add_flag("--strict", o.strict, "Literal GA chains (last challenger may overlap)");

  auto* gda = app.add_subcommand("gda", "Grow-or-discard search for one agent");
  input(gda);
  gda->add_option("--agent", o.agent, "Agent of a market");
  gda->add_option("--budget", o.budget, "Moves before declaring non-termination");
  gda->add_flag("--trace", o.trace, "Print every step");
  gda->add_flag("--no-sub-check", o.no_sub_check, "Run without enforcing SUB");

  auto* gdma = app.add_subcommand("gdma", "Grow-or-discard matching algorithm");
  input(gdma);
  gdma->add_option("--budget", o.budget, "Accepted rounds before declaring non-termination");
  gdma->add_flag("--trace", o.trace, "Print every round");
  gdma->add_flag("--no-sub-check", o.no_sub_check, "Run without enforcing SUB");

  auto* daa = app.add_subcommand("daa", "Deferred acceptance on binary orders");
  input(daa);
  daa->add_flag("--trace", o.trace, "Print every round");
  daa->add_flag("--worker-proposing", o.worker_proposing, "Workers propose");

  auto* verify = app.add_subcommand("verify", "Check a matching");
  verify->require_subcommand(1);
  verify->fallthrough();
  std::string verify_what;
  for (const char* what : {"cy", "r", "ir"}) {
    auto* sub = verify->add_subcommand(what, std::string(what) + " check");
    input(sub);
    sub->add_option("--matching", o.matching, "Matching file")->required();
    if (std::string(what) == "cy") {
      sub->add_option("--scan", o.scan, "Blocking-set scan")
          ->check(CLI::IsMember({"full", "single-firm"}))
          ->capture_default_str();
    }
    sub->callback([&verify_what, what] { verify_what = what; });
  }

  auto* enumerate = app.add_subcommand("enumerate", "List stable matchings or maximal sets");
  enumerate->require_subcommand(1);
  enumerate->fallthrough();
  std::string enum_what;
  auto* ecy = enumerate->add_subcommand("cy", "Every CY-stable matching");
  input(ecy);
  ecy->callback([&] { enum_what = "cy"; });
  auto* esmir = enumerate->add_subcommand("smir", "Every strongly maximal IR set");
  input(esmir);
  esmir->add_option("--agent", o.agent, "Agent of a market (default: all)");
  esmir->callback([&] { enum_what = "smir"; });

  auto* gen = app.add_subcommand("gen", "Generate a table or market with a known profile");
  gen->add_option("--seed", o.seed, "Seed (required)")->required();
  gen->add_option("--profile", o.profile, "PI, SUB_ONLY, SUB_GA, BA, UNRESTRICTED or TRIVIAL")
      ->capture_default_str();
  gen->add_option("--worker-profile", o.worker_profile, "Worker profile (default: --profile)");
  gen->add_flag("--table", o.table, "Generate a single table instead of a market");
  gen->add_flag("--separating", o.separating, "SUB_GA tables that are not PI");
  gen->add_option("--n", o.n, "Table size")->capture_default_str();
  gen->add_option("--firms", o.firms)->capture_default_str();
  gen->add_option("--workers", o.workers)->capture_default_str();
  gen->add_option("--contracts", o.contracts)->capture_default_str();
  gen->add_option("--max-per-agent", o.max_per_agent)->capture_default_str();
  gen->add_option("--budget", o.budget, "Perturbation attempts");
  gen->add_option("--output", o.output, "Write the file here instead of stdout");
  gen->add_option("--verdicts", o.verdicts, "Write the verified verdicts here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) return run_validate(o);
    if (axioms->parsed()) return run_axioms(o);
    if (gda->parsed()) return run_gda(o);
    if (gdma->parsed()) return run_gdma(o);
    if (daa->parsed()) return run_daa(o);
    if (verify->parsed()) return run_verify(o, verify_what);
    if (enumerate->parsed()) return run_enumerate(o, enum_what);
    if (gen->parsed()) return run_gen(o);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const cm::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
