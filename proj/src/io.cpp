#include "wefsub/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "wefsub/errors.hpp"

namespace wefsub {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::Parse, message); }

const Json& require(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + ": missing \"" + key + "\"");
    return *it;
}

const Json& require_array(const Json& obj, const char* key, const std::string& where) {
    const Json& v = require(obj, key, where);
    if (!v.is_array()) fail(where + ": \"" + key + "\" must be a list");
    return v;
}

bool parse_flag(const Json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) return false;
    if (!it->is_boolean()) fail(where + ": \"" + key + "\" must be true or false");
    return it->get<bool>();
}

std::vector<Rational> parse_rational_list(const Json& list, std::size_t expected, const std::string& where) {
    if (list.size() != expected) {
        fail(where + ": expected " + std::to_string(expected) + " values, got " + std::to_string(list.size()));
    }
    std::vector<Rational> out;
    for (std::size_t k = 0; k < list.size(); ++k) out.push_back(parse_rational_json(list[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

std::vector<bool> parse_approvals(const Json& list, std::size_t expected, const std::string& where) {
    if (list.size() != expected) {
        fail(where + ": expected " + std::to_string(expected) + " values, got " + std::to_string(list.size()));
    }
    std::vector<bool> out;
    for (const auto& x : list) {
        if (x.is_boolean()) {
            out.push_back(x.get<bool>());
        } else if (x.is_number_integer() && (x.get<long long>() == 0 || x.get<long long>() == 1)) {
            out.push_back(x.get<long long>() == 1);
        } else {
            fail(where + ": approvals must be 0 or 1");
        }
    }
    return out;
}

std::map<std::string, ItemId> item_index(const std::vector<std::string>& labels, const std::string& where) {
    std::map<std::string, ItemId> index;
    for (ItemId g = 0; g < labels.size(); ++g) {
        if (labels[g].empty() || labels[g].find(',') != std::string::npos)
            fail(where + ": item id '" + labels[g] + "' must be non-empty and contain no comma");
        if (!index.emplace(labels[g], g).second) fail(where + ": duplicate item id '" + labels[g] + "'");
    }
    return index;
}

std::string subset_key(const std::vector<std::string>& labels, ItemMask mask) {
    std::string key;
    for (ItemId g : from_mask(mask)) key += (key.empty() ? "" : ",") + labels[g];
    return key;
}

Valuation parse_table(const Json& entry, const std::vector<std::string>& labels, const std::string& where) {
    const Json& values = require(entry, "values", where);
    if (!values.is_object()) fail(where + ": table \"values\" must map subset keys to rationals");
    const std::size_t m = labels.size();
    if (m > 16) throw Error(ErrorKind::TooLarge, where + ": table valuations support at most 16 items");
    const auto index = item_index(labels, where);

    std::vector<std::optional<Rational>> table(std::size_t{1} << m);
    for (const auto& [key, raw] : values.items()) {
        ItemMask mask = 0;
        std::stringstream parts(key);
        std::string part;
        while (!key.empty() && std::getline(parts, part, ',')) {
            auto it = index.find(part);
            if (it == index.end()) fail(where + ": unknown item '" + part + "' in subset key '" + key + "'");
            if (mask & (ItemMask{1} << it->second)) fail(where + ": item repeated in subset key '" + key + "'");
            mask |= ItemMask{1} << it->second;
        }
        if (!key.empty() && key.back() == ',') fail(where + ": malformed subset key '" + key + "'");
        if (table[mask]) fail(where + ": subset '" + key + "' listed twice");
        table[mask] = parse_rational_json(raw, where + "[\"" + key + "\"]");
    }
    std::vector<Rational> out(table.size());
    out[0] = table[0] ? *table[0] : Rational(0);
    for (ItemMask mask = 1; mask < table.size(); ++mask) {
        if (!table[mask]) fail(where + ": missing value for subset '" + subset_key(labels, mask) + "'");
        out[mask] = *table[mask];
    }
    return make_table(std::move(out));
}

Valuation parse_valuation(const Json& entry, const std::vector<std::string>& items, const std::string& where) {
    const Json& kind_json = require(entry, "kind", where);
    if (!kind_json.is_string()) fail(where + ": \"kind\" must be a string");
    const auto kind = parse_valuation_kind(kind_json.get<std::string>());
    if (!kind) fail(where + ": unknown valuation kind '" + kind_json.get<std::string>() + "'");
    const std::size_t m = items.size();

    Valuation base;
    switch (*kind) {
        case ValuationKind::Table: base = parse_table(entry, items, where); break;
        case ValuationKind::Additive:
            base = make_additive(parse_rational_list(require_array(entry, "values", where), m, where + ".values"));
            break;
        case ValuationKind::BinaryAdditive:
            base = make_binary_additive(parse_approvals(require_array(entry, "values", where), m, where + ".values"));
            break;
        case ValuationKind::IdenticalItems:
            base = make_identical_items(parse_rational_json(require(entry, "value", where), where + ".value"));
            break;
        case ValuationKind::CappedAdditive: {
            const Json& cap = require(entry, "cap", where);
            if (!cap.is_number_integer() || cap.get<long long>() < 0) fail(where + ": \"cap\" must be a non-negative integer");
            base = make_capped_additive(parse_approvals(require_array(entry, "values", where), m, where + ".values"),
                                        static_cast<std::size_t>(cap.get<long long>()));
            break;
        }
    }
    return Valuation(base.payload(), parse_flag(entry, "bounded", where), parse_flag(entry, "supermodular", where));
}

Json valuation_json(const Valuation& v, const std::vector<std::string>& items) {
    Json out;
    out["kind"] = valuation_kind_name(v.kind());
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TableValuation>) {
                Json values = Json::object();
                for (ItemMask mask = 0; mask < p.values.size(); ++mask) values[subset_key(items, mask)] = to_string(p.values[mask]);
                out["values"] = std::move(values);
            } else if constexpr (std::is_same_v<T, AdditiveValuation>) {
                out["values"] = emit_rationals(p.item_values);
            } else if constexpr (std::is_same_v<T, BinaryAdditiveValuation>) {
                Json values = Json::array();
                for (bool a : p.approved) values.push_back(a ? 1 : 0);
                out["values"] = std::move(values);
            } else if constexpr (std::is_same_v<T, IdenticalItemsValuation>) {
                out["value"] = to_string(p.per_item);
            } else {
                Json values = Json::array();
                for (bool a : p.approved) values.push_back(a ? 1 : 0);
                out["values"] = std::move(values);
                out["cap"] = p.cap;
            }
        },
        v.payload());
    if (v.bounded()) out["bounded"] = true;
    if (v.declared_supermodular()) out["supermodular"] = true;
    return out;
}

}  // namespace

Rational parse_rational_json(const Json& value, const std::string& where) {
    if (value.is_number_integer()) {
        return value.is_number_unsigned() ? Rational(std::to_string(value.get<unsigned long long>()))
                                          : Rational(std::to_string(value.get<long long>()));
    }
    if (value.is_number_float()) fail(where + ": floating-point numbers are not accepted; write \"p/q\"");
    if (!value.is_string()) fail(where + ": expected a rational string \"p/q\"");
    try {
        return parse_rational(value.get<std::string>());
    } catch (const Error& e) {
        fail(where + ": " + e.what());
    }
}

Json emit_rationals(const std::vector<Rational>& values) {
    Json out = Json::array();
    for (const auto& x : values) out.push_back(to_string(x));
    return out;
}

Instance parse_instance(const Json& doc) {
    const Json& agents = require_array(doc, "agents", "instance");
    const Json& items = require_array(doc, "items", "instance");
    const Json& valuations = require_array(doc, "valuations", "instance");

    InstanceDescription raw;
    for (const auto& item : items) {
        if (!item.is_string()) fail("instance.items: item ids must be strings");
        raw.item_labels.push_back(item.get<std::string>());
    }
    raw.item_count = raw.item_labels.size();
    item_index(raw.item_labels, "instance.items");

    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string where = "instance.agents[" + std::to_string(i) + "]";
        const Json& id = require(agents[i], "id", where);
        if (!id.is_string()) fail(where + ": \"id\" must be a string");
        raw.agent_labels.push_back(id.get<std::string>());
        raw.weights.push_back(parse_rational_json(require(agents[i], "weight", where), where + ".weight"));
    }
    if (valuations.size() != agents.size()) {
        fail("instance: " + std::to_string(agents.size()) + " agents but " + std::to_string(valuations.size()) +
             " valuations");
    }
    for (std::size_t i = 0; i < valuations.size(); ++i) {
        raw.valuations.push_back(parse_valuation(valuations[i], raw.item_labels, "instance.valuations[" + std::to_string(i) + "]"));
    }
    return validate_instance(std::move(raw));
}

Json emit_instance(const Instance& instance) {
    Json doc;
    Json agents = Json::array();
    for (AgentId i = 0; i < instance.agent_count(); ++i) {
        agents.push_back({{"id", instance.agent_labels[i]}, {"weight", to_string(instance.weight(i))}});
    }
    doc["agents"] = std::move(agents);
    doc["items"] = instance.item_labels;
    Json valuations = Json::array();
    for (const auto& v : instance.valuations) valuations.push_back(valuation_json(v, instance.item_labels));
    doc["valuations"] = std::move(valuations);
    return doc;
}

namespace {

Allocation parse_bundles(const Instance& instance, const Json& doc, const std::string& where) {
    const Json& bundles = require_array(doc, "bundles", where);
    const auto index = item_index(instance.item_labels, where);
    Allocation out;
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        if (!bundles[i].is_array()) fail(where + ".bundles[" + std::to_string(i) + "]: expected a list of item ids");
        ItemSet bundle;
        for (const auto& item : bundles[i]) {
            if (!item.is_string()) fail(where + ": item ids must be strings");
            auto it = index.find(item.get<std::string>());
            if (it == index.end()) fail(where + ": unknown item '" + item.get<std::string>() + "'");
            bundle.push_back(it->second);
        }
        std::sort(bundle.begin(), bundle.end());
        out.bundles.push_back(std::move(bundle));
    }
    validate_allocation(instance, out);
    return out;
}

Json bundles_json(const Instance& instance, const Allocation& allocation) {
    Json bundles = Json::array();
    for (const auto& bundle : allocation.bundles) {
        Json ids = Json::array();
        for (ItemId g : bundle) ids.push_back(instance.item_labels[g]);
        bundles.push_back(std::move(ids));
    }
    return bundles;
}

}  // namespace

Allocation parse_allocation(const Instance& instance, const Json& doc) {
    return parse_bundles(instance, doc, "allocation");
}

Json emit_allocation(const Instance& instance, const Allocation& allocation) {
    Json doc;
    doc["bundles"] = bundles_json(instance, allocation);
    return doc;
}

Outcome parse_outcome(const Instance& instance, const Json& doc) {
    Outcome out;
    out.allocation = parse_bundles(instance, doc, "outcome");
    out.payments = parse_rational_list(require_array(doc, "payments", "outcome"), instance.agent_count(),
                                       "outcome.payments");
    validate_outcome(instance, out);
    return out;
}

Json emit_outcome(const Instance& instance, const Outcome& outcome) {
    Json doc;
    doc["bundles"] = bundles_json(instance, outcome.allocation);
    doc["payments"] = emit_rationals(outcome.payments);
    return doc;
}

Json emit_graph(const WeightedEnvyGraph& graph) {
    Json lengths = Json::array();
    for (const auto& row : graph.lengths) lengths.push_back(emit_rationals(row));
    Json doc;
    doc["lengths"] = std::move(lengths);
    doc["payment_adjusted"] = graph.payment_adjusted;
    return doc;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& doc) {
    std::ofstream out(path);
    if (!out) fail("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
}

Instance load_instance(const std::string& path) { return parse_instance(read_json_file(path)); }

Allocation load_allocation(const Instance& instance, const std::string& path) {
    return parse_allocation(instance, read_json_file(path));
}

}  // namespace wefsub
