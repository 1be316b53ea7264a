#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "wefsub/envy.hpp"
#include "wefsub/instance.hpp"

namespace wefsub {

using Json = nlohmann::ordered_json;

// Instance files:
//   {"agents": [{"id": "a1", "weight": "1/2"}, ...],
//    "items": ["g1", ...],
//    "valuations": [{"kind": "additive", "values": ["3", "1/2"]}, ...]}
// Payloads by kind:
//   table            "values": {"": "0", "g1": "1", "g1,g2": "3", ...}  (every non-empty subset)
//   additive         "values": [rational per item]
//   binary_additive  "values": [0 or 1 per item]
//   identical_items  "value": rational
//   capped_additive  "values": [0 or 1 per item], "cap": integer
// Any valuation may carry "bounded": true and "supermodular": true.
// Rationals are strings "p/q" or JSON integers; floats are refused.
Instance parse_instance(const Json& doc);
Json emit_instance(const Instance& instance);

// {"bundles": [["g1"], [], ...]}; item ids or labels.
Allocation parse_allocation(const Instance& instance, const Json& doc);
Json emit_allocation(const Instance& instance, const Allocation& allocation);

// {"bundles": [...], "payments": ["0", "65", ...]}
Outcome parse_outcome(const Instance& instance, const Json& doc);
Json emit_outcome(const Instance& instance, const Outcome& outcome);

// {"lengths": [[...]], "payment_adjusted": false}
Json emit_graph(const WeightedEnvyGraph& graph);
Json emit_rationals(const std::vector<Rational>& values);

Rational parse_rational_json(const Json& value, const std::string& where);

// File helpers; parse failures and unreadable files throw Error(Parse).
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

Instance load_instance(const std::string& path);
Allocation load_allocation(const Instance& instance, const std::string& path);

}  // namespace wefsub
