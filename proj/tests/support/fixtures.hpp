#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "choicematch/choice_table.hpp"
#include "choicematch/market.hpp"
#include "choicematch/market_io.hpp"

#ifndef CHOICEMATCH_FIXTURE_DIR
#error "CHOICEMATCH_FIXTURE_DIR must be defined"
#endif

namespace fx {

inline std::string path(const std::string& name) {
  return std::string(CHOICEMATCH_FIXTURE_DIR) + "/" + name;
}

inline std::string text(const std::string& name) { return choicematch::read_file(path(name)); }

inline choicematch::ChoiceTable table(const std::string& name) {
  return choicematch::load_table(text(name));
}

inline choicematch::Market market(const std::string& name) {
  return choicematch::load_market(text(name));
}

inline choicematch::Matching matching(const std::string& name, const choicematch::Market& m) {
  return choicematch::load_matching(text(name), m);
}

inline std::vector<std::string> split(const std::string& ids) {
  std::vector<std::string> out;
  std::stringstream ss(ids);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (!id.empty()) out.push_back(id);
  }
  return out;
}

/// "a,b" over a table's universe.
inline choicematch::ContractSet set(const choicematch::ChoiceTable& t, const std::string& ids) {
  choicematch::ContractSet s;
  for (const auto& id : split(ids)) {
    auto i = t.index_of(id);
    if (!i) throw std::invalid_argument("unknown id " + id);
    s |= choicematch::ContractSet::single(*i);
  }
  return s;
}

/// "f1w2,f3w1" over a market's contracts.
inline choicematch::ContractSet set(const choicematch::Market& m, const std::string& ids) {
  choicematch::ContractSet s;
  for (const auto& id : split(ids)) {
    auto i = m.contract_index(id);
    if (!i) throw std::invalid_argument("unknown id " + id);
    s |= choicematch::ContractSet::single(*i);
  }
  return s;
}

}  // namespace fx
