// Python bindings. Instances, allocations and results cross the boundary as
// JSON text in the same layout as the CLI files; rationals stay strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wefsub/allocators.hpp"
#include "wefsub/envy.hpp"
#include "wefsub/errors.hpp"
#include "wefsub/fairness.hpp"
#include "wefsub/io.hpp"
#include "wefsub/mechanisms.hpp"
#include "wefsub/mef.hpp"
#include "wefsub/oracle.hpp"

namespace py = pybind11;
using namespace wefsub;

namespace {

Instance instance_from(const std::string& text) { return parse_instance(Json::parse(text)); }

Allocation allocation_from(const Instance& in, const std::string& text) {
    return parse_allocation(in, Json::parse(text));
}

std::string dump(const Json& doc) { return doc.dump(); }

Json agents_json(const Instance& in, const std::vector<AgentId>& agents) {
    Json out = Json::array();
    for (AgentId a : agents) out.push_back(agent_label(in, a));
    return out;
}

std::string check(const std::string& instance_text, const std::string& allocation_text) {
    const Instance in = instance_from(instance_text);
    const Allocation a = allocation_from(in, allocation_text);
    Json doc = emit_allocation(in, a);
    const auto cycle = find_positive_cycle(build_envy_graph(in, a));
    doc["envy_freeable"] = !cycle.has_value();
    if (cycle) {
        doc["cycle"] = agents_json(in, *cycle);
    } else {
        doc["subsidies"] = emit_rationals(min_subsidies(in, a).payments);
    }
    const FairnessReport r = evaluate_fairness(in, a);
    doc["wef1"] = r.wef1.holds();
    doc["wwef1"] = r.wwef1.holds();
    doc["wef1_t"] = r.wef1_t.holds();
    doc["non_wasteful"] = r.non_wasteful.holds();
    const auto optional = [](const OptionalVerdict<Allocation>& v) -> Json {
        if (!v.verdict) return nullptr;
        return v.verdict->holds();
    };
    doc["pareto_efficient"] = optional(r.pareto_efficient);
    doc["nonzero_welfare"] = optional(r.nonzero_social_welfare);
    doc["weighted_welfare_max"] = optional(r.weighted_welfare_maximizing);
    return dump(doc);
}

std::string solve(const std::string& instance_text, const std::string& algorithm) {
    const Instance in = instance_from(instance_text);
    const auto which = parse_algorithm(algorithm);
    if (!which) throw Error(ErrorKind::Parse, "unknown algorithm '" + algorithm + "'");
    const AllocatorResult r = run_allocator(in, *which);
    Json doc = emit_allocation(in, r.allocation);
    doc["algorithm"] = r.algorithm;
    doc["subsidies"] = r.subsidy ? emit_rationals(r.subsidy->payments) : Json(nullptr);
    doc["guarantee"] = r.guarantee ? Json(to_string(*r.guarantee)) : Json(nullptr);
    return dump(doc);
}

std::string vcg(const std::string& instance_text, std::optional<std::string> upfront) {
    const Instance in = instance_from(instance_text);
    std::optional<Rational> c;
    if (upfront) c = parse_rational(*upfront);
    const VcgOutcome out = vcg_with_upfront_subsidy(in, c);
    Json doc = emit_outcome(in, out.outcome());
    doc["vcg_payments"] = emit_rationals(out.vcg_payments);
    doc["upfront_constant"] = to_string(out.upfront_constant);
    return dump(doc);
}

std::string adjusted_winner(const std::string& instance_text) {
    const Instance in = instance_from(instance_text);
    const AdjustedWinnerResult r = biased_weighted_adjusted_winner(in);
    Json doc = emit_allocation(in, r.allocation);
    Json order = Json::array();
    for (ItemId g : r.order) order.push_back(in.item_labels[g]);
    doc["order"] = std::move(order);
    doc["boundary"] = r.boundary;
    doc["contested"] = r.contested ? Json(in.item_labels[*r.contested]) : Json(nullptr);
    doc["split"] = to_string(r.split);
    return dump(doc);
}

std::string mef(const std::string& instance_text, const std::string& allocation_text, const std::string& budget) {
    const Instance in = instance_from(instance_text);
    const Allocation a = allocation_from(in, allocation_text);
    const MefResult r = allocate_budget_mef(in, a, parse_rational(budget));
    Json doc = emit_outcome(in, Outcome{a, r.payments});
    doc["regime"] = budget_regime_name(r.regime);
    doc["water_level"] = to_string(r.water_level);
    return dump(doc);
}

std::string fixture(const std::string& name) { return dump(emit_instance(fixture_instance(name))); }

py::tuple verify(const std::string& name) {
    const FixtureReport r = verify_fixture(name);
    return py::make_tuple(r.passed(), r.claim);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weighted envy-freeness with subsidies (exact rational arithmetic)";

    static py::exception<Error> error(m, "WefsubError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            // Attach the kind name so callers can branch on it.
            PyErr_SetObject(error.ptr(), py::make_tuple(e.what(), error_kind_name(e.kind())).ptr());
        } catch (const Json::exception& e) {
            PyErr_SetObject(error.ptr(), py::make_tuple(e.what(), error_kind_name(ErrorKind::Parse)).ptr());
        }
    });

    m.def("check", &check);
    m.def("solve", &solve);
    m.def("vcg", &vcg, py::arg("instance"), py::arg("upfront") = py::none());
    m.def("adjusted_winner", &adjusted_winner);
    m.def("mef", &mef);
    m.def("fixture_instance", &fixture);
    m.def("fixture_names", &fixture_names);
    m.def("verify_fixture", &verify);
}
