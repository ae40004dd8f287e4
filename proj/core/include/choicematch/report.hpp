#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "choicematch/axioms.hpp"
#include "choicematch/genlab.hpp"
#include "choicematch/individual.hpp"
#include "choicematch/many2many.hpp"
#include "choicematch/market.hpp"
#include "choicematch/one2one.hpp"

namespace choicematch {

/// Reports keep insertion order so the emitted text is stable.
using Json = nlohmann::ordered_json;

/// Sets are arrays of contract ids in canonical order.
Json set_json(const ChoiceTable& table, ContractSet set);
Json set_json(const Market& market, ContractSet global);

/// {"axiom", "verdict", "witness", "bound"}; "exhaustive" is added for
/// no_violation_up_to.
Json verdict_json(const ChoiceTable& table, const Verdict& verdict);
Json verdicts_json(const ChoiceTable& table, const TableVerdicts& verdicts);

/// [["x1"], ["x3", "x4"], ["∅"], ["x2"]]
Json order_json(const AgentOrder& order);
Json order_json(const StrictOrder& order, const ChoiceTable& table);

Json gda_json(const ChoiceTable& table, const GdaResult& result, bool trace);
Json gdma_json(const Market& market, const GdmaResult& result, bool trace);
Json daa_json(const Market& market, const DaaResult& result, bool trace);

Json ir_json(const Market& market, const IrCheck& check);
Json cy_json(const Market& market, const StabilityCheck& check);
Json r_json(const Market& market, const RStabilityCheck& check);
Json validation_json(const ValidationReport& report);

/// Plain-text rendering of any report above: one "key: value" per line,
/// nested objects indented, id arrays written as {a,b}.
std::string render_text(const Json& report);

}  // namespace choicematch
