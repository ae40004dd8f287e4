#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "choicematch/choice_table.hpp"
#include "choicematch/market.hpp"

namespace choicematch {

/// Parses a market file. Syntax problems and references to undeclared ids
/// raise ParseError with a 1-based line/column; a syntactically valid file
/// describing an ill-formed market (duplicate menu, chosen set outside its
/// menu, missing entries, ...) raises LoadError.
Market load_market(std::string_view text);

/// Canonical text: fixed field order, contracts and menus in canonical
/// order, C(empty) omitted, singleton entries omitted when the market uses
/// the identity default and the entry is the identity.
std::string save_market(const Market& market);

/// A single-agent choice table file:
/// {"agent": ..., "universe": [...], "defaults": {...}, "choices": [...]}.
ChoiceTable load_table(std::string_view text);
std::string save_table(const ChoiceTable& table,
                       SingletonDefault singletons = SingletonDefault::explicit_entries);

/// A matching file is a JSON array of contract ids.
Matching load_matching(std::string_view text, const Market& market);
std::string save_matching(const Matching& matching, const Market& market);

std::string read_file(const std::filesystem::path& path);

}  // namespace choicematch
