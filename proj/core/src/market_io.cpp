#include "choicematch/market_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "choicematch/errors.hpp"

namespace choicematch {
namespace {

using Json = nlohmann::ordered_json;

// Maps parsed nodes back to byte offsets in the source text so semantic
// errors can carry a line and column. The text has already been accepted by
// the JSON parser, so a minimal lexer is enough to walk it in step with the
// parsed tree.
class Locator {
 public:
  Locator(std::string_view text, const Json& root) : text_(text) {
    walk(root);
  }

  ParseError error(const Json* node, const std::string& what) const {
    auto it = offsets_.find(node);
    if (it == offsets_.end()) return ParseError(what, 0, 0);
    return error_at(it->second, what);
  }

  ParseError error_at(std::size_t offset, const std::string& what) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return ParseError(what, line, column);
  }

  /// Offset of `key` inside `object`, recorded during the walk.
  std::size_t key_offset(const Json* object, const std::string& key) const {
    auto it = keys_.find(object);
    if (it != keys_.end()) {
      auto k = it->second.find(key);
      if (k != it->second.end()) return k->second;
    }
    auto o = offsets_.find(object);
    return o == offsets_.end() ? 0 : o->second;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == ':') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view raw_string() {
    const std::size_t start = pos_;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void walk(const Json& node) {
    skip();
    offsets_.emplace(&node, pos_);
    if (node.is_object()) {
      ++pos_;
      std::set<std::string> seen;
      while (true) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] == '}') break;
        const std::size_t key_at = pos_;
        const std::string key = Json::parse(raw_string()).get<std::string>();
        if (!seen.insert(key).second) {
          throw error_at(key_at, "duplicate key \"" + key + "\"");
        }
        keys_[&node][key] = key_at;
        walk(node.at(key));
      }
      ++pos_;
    } else if (node.is_array()) {
      ++pos_;
      for (const auto& child : node) walk(child);
      skip();
      ++pos_;
    } else if (node.is_string()) {
      raw_string();
    } else {
      while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (c == ',' || c == ']' || c == '}' || c == ' ' || c == '\n' || c == '\r' ||
            c == '\t') {
          break;
        }
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::unordered_map<const Json*, std::size_t> offsets_;
  std::unordered_map<const Json*, std::unordered_map<std::string, std::size_t>> keys_;
};

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    std::string what = e.what();
    if (auto colon = what.find("syntax error"); colon != std::string::npos) {
      what = what.substr(colon);
    }
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(what, line, column);
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) : root_(parse_json(text)), loc_(text, root_) {}

  const Json& root() const { return root_; }
  const Locator& loc() const { return loc_; }

  const Json& object(const Json& node, std::string_view what) const {
    if (!node.is_object()) throw loc_.error(&node, std::string(what) + " must be an object");
    return node;
  }
  const Json& array(const Json& node, std::string_view what) const {
    if (!node.is_array()) throw loc_.error(&node, std::string(what) + " must be an array");
    return node;
  }
  std::string string(const Json& node, std::string_view what) const {
    if (!node.is_string()) throw loc_.error(&node, std::string(what) + " must be a string");
    return node.get<std::string>();
  }
  void only_keys(const Json& node, std::initializer_list<std::string_view> allowed) const {
    for (auto it = node.begin(); it != node.end(); ++it) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == it.key();
      if (!ok) {
        throw loc_.error_at(loc_.key_offset(&node, it.key()), "unknown field \"" + it.key() + "\"");
      }
    }
  }
  const Json& require(const Json& node, const std::string& key) const {
    auto it = node.find(key);
    if (it == node.end()) throw loc_.error(&node, "missing field \"" + key + "\"");
    return *it;
  }

  SingletonDefault defaults(const Json& node) const {
    auto it = node.find("defaults");
    if (it == node.end()) return SingletonDefault::explicit_entries;
    object(*it, "\"defaults\"");
    only_keys(*it, {"singletons"});
    auto s = it->find("singletons");
    if (s == it->end()) return SingletonDefault::explicit_entries;
    const std::string v = string(*s, "\"singletons\"");
    if (v == "identity") return SingletonDefault::identity;
    if (v == "explicit") return SingletonDefault::explicit_entries;
    throw loc_.error(&*s, "\"singletons\" must be \"identity\" or \"explicit\"");
  }

  /// Reads the menu/chosen list of one agent into `table`.
  void entries(const Json& list, ChoiceTable& table) const {
    array(list, "choice list");
    std::set<Mask> seen;
    for (const auto& entry : list) {
      object(entry, "choice entry");
      only_keys(entry, {"menu", "chosen"});
      const Json& menu_node = require(entry, "menu");
      const Json& chosen_node = require(entry, "chosen");
      const ContractSet menu = set_of(menu_node, table);
      const ContractSet chosen = set_of(chosen_node, table);
      if (!seen.insert(menu.bits()).second) {
        throw LoadError(where(&menu_node) + "agent '" + table.agent() + "' lists menu " +
                        table.format(menu) + " more than once");
      }
      if (!chosen.subset_of(menu)) {
        throw LoadError(where(&chosen_node) + "agent '" + table.agent() + "': chosen set " +
                        table.format(chosen) + " is not a subset of menu " +
                        table.format(menu));
      }
      table.set(menu, chosen);
    }
  }

  ContractSet set_of(const Json& node, const ChoiceTable& table) const {
    array(node, "contract list");
    Mask m = 0;
    for (const auto& item : node) {
      const std::string id = string(item, "contract id");
      auto index = table.index_of(id);
      if (!index) {
        throw loc_.error(&item, "contract '" + id + "' is not in the universe of agent '" +
                                    table.agent() + "'");
      }
      const Mask bit = Mask{1} << *index;
      if (m & bit) {
        throw LoadError(where(&item) + "contract '" + id + "' repeated in one set");
      }
      m |= bit;
    }
    return ContractSet(m);
  }

  std::string where(const Json* node) const {
    ParseError e = loc_.error(node, "");
    if (e.line() == 0) return "";
    return std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": ";
  }

 private:
  Json root_;
  Locator loc_;
};

std::string json_quote(std::string_view s) { return Json(std::string(s)).dump(); }

std::string id_list(const std::vector<std::string>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += json_quote(ids[i]);
  }
  return out + "]";
}

void write_entries(std::ostringstream& out, const ChoiceTable& table, SingletonDefault singletons,
                   std::string_view indent) {
  std::vector<std::string> lines;
  const auto entries = table.entries();
  for (Mask m = 1; m < entries.size(); ++m) {
    const Mask e = entries[m];
    if (e == ChoiceTable::kMissing) continue;
    if (singletons == SingletonDefault::identity && std::has_single_bit(m) && e == m) continue;
    lines.push_back(std::string(indent) + "{\"menu\": " + id_list(table.ids(ContractSet(m))) +
                    ", \"chosen\": " + id_list(table.ids(ContractSet(e))) + "}");
  }
  if (lines.empty()) {
    out << "[]";
    return;
  }
  out << "[\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out << lines[i] << (i + 1 < lines.size() ? ",\n" : "\n");
  }
  out << indent.substr(0, indent.size() - 2) << "]";
}

std::string_view defaults_text(SingletonDefault s) {
  return s == SingletonDefault::identity ? "identity" : "explicit";
}

std::string issues_text(const ValidationReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.issues.size(); ++i) {
    const auto& issue = report.issues[i];
    if (i) out += "; ";
    out += std::string(to_string(issue.kind)) + ": ";
    if (!issue.agent.empty()) out += issue.agent + ": ";
    out += issue.message;
  }
  return out;
}

}  // namespace

Market load_market(std::string_view text) {
  Reader r(text);
  const Json& root = r.object(r.root(), "market file");
  r.only_keys(root, {"comment", "firms", "workers", "contracts", "defaults", "choices"});

  auto names = [&](const std::string& key) {
    std::vector<std::string> out;
    for (const auto& item : r.array(r.require(root, key), "\"" + key + "\"")) {
      out.push_back(r.string(item, "agent id"));
    }
    return out;
  };
  const std::vector<std::string> firms = names("firms");
  const std::vector<std::string> workers = names("workers");
  const std::set<std::string> firm_set(firms.begin(), firms.end());
  const std::set<std::string> worker_set(workers.begin(), workers.end());

  std::vector<Contract> contracts;
  for (const auto& item : r.array(r.require(root, "contracts"), "\"contracts\"")) {
    r.object(item, "contract");
    r.only_keys(item, {"id", "firm", "worker"});
    Contract c{r.string(r.require(item, "id"), "\"id\""),
               r.string(r.require(item, "firm"), "\"firm\""),
               r.string(r.require(item, "worker"), "\"worker\"")};
    if (!firm_set.contains(c.firm)) {
      throw r.loc().error(&item.at("firm"), "contract '" + c.id + "' names undeclared firm '" +
                                                c.firm + "'");
    }
    if (!worker_set.contains(c.worker)) {
      throw r.loc().error(&item.at("worker"), "contract '" + c.id +
                                                  "' names undeclared worker '" + c.worker + "'");
    }
    contracts.push_back(std::move(c));
  }
  const SingletonDefault singletons = r.defaults(root);

  std::map<std::string, ChoiceTable> tables;
  auto universe = [&](const std::string& agent, bool firm) {
    std::vector<std::string> ids;
    for (const auto& c : contracts) {
      if ((firm ? c.firm : c.worker) == agent) ids.push_back(c.id);
    }
    return ids;
  };
  for (const auto& f : firms) tables.try_emplace(f, f, universe(f, true));
  for (const auto& w : workers) tables.try_emplace(w, w, universe(w, false));

  if (auto it = root.find("choices"); it != root.end()) {
    const Json& choices = r.object(*it, "\"choices\"");
    for (auto a = choices.begin(); a != choices.end(); ++a) {
      auto t = tables.find(a.key());
      if (t == tables.end()) {
        throw r.loc().error_at(r.loc().key_offset(&choices, a.key()),
                               "choices given for undeclared agent '" + a.key() + "'");
      }
      r.entries(a.value(), t->second);
    }
  }
  if (singletons == SingletonDefault::identity) {
    for (auto& [id, table] : tables) table.fill_singleton_identity();
  }

  Market market(firms, workers, std::move(contracts), std::move(tables), singletons);
  if (auto it = root.find("comment"); it != root.end()) {
    market.set_comment(r.string(*it, "\"comment\""));
  }
  const ValidationReport report = validate_market(market);
  if (!report.ok()) throw LoadError("ill-formed market: " + issues_text(report));
  return market;
}

std::string save_market(const Market& market) {
  std::ostringstream out;
  out << "{\n";
  if (!market.comment().empty()) out << "  \"comment\": " << json_quote(market.comment()) << ",\n";
  out << "  \"firms\": " << id_list(market.firms()) << ",\n";
  out << "  \"workers\": " << id_list(market.workers()) << ",\n";
  out << "  \"contracts\": ";
  if (market.contracts().empty()) {
    out << "[]";
  } else {
    out << "[\n";
    const auto& cs = market.contracts();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      out << "    {\"id\": " << json_quote(cs[i].id) << ", \"firm\": " << json_quote(cs[i].firm)
          << ", \"worker\": " << json_quote(cs[i].worker) << "}" << (i + 1 < cs.size() ? ",\n" : "\n");
    }
    out << "  ]";
  }
  out << ",\n";
  out << "  \"defaults\": {\"singletons\": \"" << defaults_text(market.singleton_default())
      << "\"},\n";
  out << "  \"choices\": {";
  const auto& agents = market.agents();
  if (agents.empty()) {
    out << "}\n";
  } else {
    out << "\n";
    for (std::size_t i = 0; i < agents.size(); ++i) {
      out << "    " << json_quote(agents[i].id) << ": ";
      write_entries(out, market.table(agents[i].id), market.singleton_default(), "      ");
      out << (i + 1 < agents.size() ? ",\n" : "\n");
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

ChoiceTable load_table(std::string_view text) {
  Reader r(text);
  const Json& root = r.object(r.root(), "table file");
  r.only_keys(root, {"agent", "universe", "defaults", "choices"});
  const std::string agent = r.string(r.require(root, "agent"), "\"agent\"");
  std::vector<std::string> universe;
  std::set<std::string> seen;
  for (const auto& item : r.array(r.require(root, "universe"), "\"universe\"")) {
    std::string id = r.string(item, "contract id");
    if (!seen.insert(id).second) {
      throw LoadError(r.where(&item) + "contract '" + id + "' repeated in the universe");
    }
    universe.push_back(std::move(id));
  }
  const SingletonDefault singletons = r.defaults(root);
  ChoiceTable table(agent, std::move(universe));
  if (auto it = root.find("choices"); it != root.end()) r.entries(*it, table);
  if (singletons == SingletonDefault::identity) table.fill_singleton_identity();

  std::vector<ValidationIssue> issues;
  validate_table(table, issues);
  if (!issues.empty()) throw LoadError("ill-formed table: " + issues_text({issues}));
  return table;
}

std::string save_table(const ChoiceTable& table, SingletonDefault singletons) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"agent\": " << json_quote(table.agent()) << ",\n";
  out << "  \"universe\": " << id_list(table.universe()) << ",\n";
  out << "  \"defaults\": {\"singletons\": \"" << defaults_text(singletons) << "\"},\n";
  out << "  \"choices\": ";
  write_entries(out, table, singletons, "    ");
  out << "\n}\n";
  return out.str();
}

Matching load_matching(std::string_view text, const Market& market) {
  Reader r(text);
  Mask m = 0;
  for (const auto& item : r.array(r.root(), "matching file")) {
    const std::string id = r.string(item, "contract id");
    auto index = market.contract_index(id);
    if (!index) throw r.loc().error(&item, "unknown contract '" + id + "'");
    const Mask bit = Mask{1} << *index;
    if (m & bit) throw LoadError(r.where(&item) + "contract '" + id + "' listed twice");
    m |= bit;
  }
  return Matching{ContractSet(m)};
}

std::string save_matching(const Matching& matching, const Market& market) {
  return id_list(market.ids(matching.contracts)) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace choicematch
