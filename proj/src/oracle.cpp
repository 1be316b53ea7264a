#include "wefsub/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "wefsub/allocators.hpp"
#include "wefsub/envy.hpp"
#include "wefsub/errors.hpp"
#include "wefsub/fairness.hpp"
#include "wefsub/mechanisms.hpp"

namespace wefsub {

bool oracle_envy_freeable(const Instance& instance, const Allocation& allocation) {
    const std::size_t n = instance.agent_count();
    if (n > 8) throw Error(ErrorKind::TooLarge, "permutation oracle limited to n <= 8");
    std::vector<std::vector<Rational>> scaled(n, std::vector<Rational>(n));
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = 0; j < n; ++j) scaled[i][j] = value(instance, i, allocation[j]) / instance.weight(j);
    }
    std::vector<AgentId> perm(n);
    std::iota(perm.begin(), perm.end(), AgentId{0});
    Rational identity = 0;
    for (AgentId i = 0; i < n; ++i) identity += scaled[i][i];
    do {
        Rational total = 0;
        for (AgentId i = 0; i < n; ++i) total += scaled[i][perm[i]];
        if (total > identity) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

std::optional<MinMaxSubsidy> oracle_min_max_subsidy(const Instance& instance, const AllocationFilter& filter) {
    std::optional<MinMaxSubsidy> best;
    for_each_allocation(instance, [&](const Allocation& a) {
        if (filter && !filter(instance, a)) return true;
        if (!oracle_envy_freeable(instance, a)) return true;
        Rational worst = min_subsidies(instance, a).max_payment();
        if (!best || worst < best->value) best = MinMaxSubsidy{worst, a};
        return true;
    });
    return best;
}

// ---------------------------------------------------------------------------
// Fixture instances

namespace fixtures {

namespace {

Instance build(std::vector<Rational> weights, std::vector<Valuation> valuations, std::size_t items) {
    InstanceDescription raw;
    raw.item_count = items;
    raw.weights = std::move(weights);
    raw.valuations = std::move(valuations);
    return validate_instance(std::move(raw));
}

std::vector<Rational> ints(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

// v(A) = unit if A is non-empty: substitutes.
Valuation unit_demand(std::size_t items, const Rational& unit) {
    std::vector<Rational> table(std::size_t{1} << items, unit);
    table[0] = 0;
    return make_table(std::move(table));
}

Valuation all_or_nothing(std::size_t items, const Rational& full) {
    std::vector<Rational> table(std::size_t{1} << items, Rational(0));
    table.back() = full;
    return make_table(std::move(table), true);
}

}  // namespace

Instance example1_inheritance() {
    Instance in = build({rational(1, 2), rational(1, 4), rational(1, 4)},
                        {make_additive(ints({100, 40})), make_additive(ints({70, 60})), make_additive(ints({0, 0}))}, 2);
    in.agent_labels = {"spouse", "child1", "child2"};
    in.item_labels = {"house", "car"};
    return in;
}

Allocation example1_all_to_spouse() { return Allocation{{{0, 1}, {}, {}}}; }
Allocation example1_house_and_car() { return Allocation{{{0}, {1}, {}}}; }

Instance example_incompatibility() {
    return build({rational(3, 4), rational(1, 4)}, {unit_demand(2, Rational(90)), unit_demand(2, Rational(30))}, 2);
}

Instance prop_lb_general(const FixtureParams& params, std::size_t agents, std::size_t items) {
    // w_1 = w_min, everybody else w_max = 2 w_min.
    const Rational w_min(1, static_cast<unsigned long>(2 * agents - 1));
    std::vector<Rational> weights(agents, Rational(2 * w_min));
    weights[0] = w_min;
    const Rational m(static_cast<unsigned long>(items));
    std::vector<Valuation> valuations{all_or_nothing(items, m)};
    for (std::size_t i = 1; i < agents; ++i) valuations.push_back(all_or_nothing(items, Rational(m - params.epsilon)));
    return build(std::move(weights), std::move(valuations), items);
}

Instance thm_lb_identical_additive() {
    return build({rational(1, 2), rational(1, 2)}, {make_additive(ints({1})), make_additive(ints({1}))}, 1);
}

Instance thm_lb_binary_additive() {
    return build({rational(1, 2), rational(1, 4), rational(1, 4)},
                 {make_binary_additive({false}), make_binary_additive({true}), make_binary_additive({true})}, 1);
}

Instance thm_lb_matroidal(const FixtureParams& params) {
    const std::size_t items = 2 * params.cap;
    return build({rational(3, 4), rational(1, 4)},
                 {make_capped_additive(std::vector<bool>(items, true), params.cap),
                  make_capped_additive(std::vector<bool>(items, true), params.cap)},
                 items);
}

Instance thm_lb_identical_items(const FixtureParams& params, std::size_t agents) {
    // Relative weights 2, 1, (1+delta), (1+delta)^2, ... normalized to sum 1.
    std::vector<Rational> relative{Rational(2), Rational(1)};
    for (std::size_t i = 3; i <= agents; ++i) relative.push_back(relative.back() * (1 + params.delta));
    relative.resize(agents);
    const Rational total = std::accumulate(relative.begin(), relative.end(), Rational(0));
    std::vector<Rational> weights;
    std::vector<Valuation> valuations;
    for (std::size_t i = 1; i <= agents; ++i) {
        weights.push_back(relative[i - 1] / total);
        valuations.push_back(make_identical_items(Rational(1 - static_cast<unsigned long>(agents - i) * params.delta)));
    }
    return build(std::move(weights), std::move(valuations), agents * (agents - 1) / 2);
}

Instance thm_additive_incompat() {
    return build({rational(3, 5), rational(2, 5)}, {make_additive(ints({120, 120})), make_additive(ints({60, 60}))}, 2);
}

Instance sec6_picking_sequence() {
    return build({rational(4, 5), rational(1, 5)}, {make_additive(ints({1})), make_additive(ints({2}))}, 1);
}

Instance sec5_greedy_tightness(const FixtureParams& params) {
    const Rational almost = 1 - params.epsilon;
    return build({rational(1, 3), rational(2, 3)},
                 {make_additive(ints({1, 1, 1})), make_additive({almost, almost, almost})}, 3);
}

}  // namespace fixtures

// ---------------------------------------------------------------------------
// Verification

bool FixtureReport::passed() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const FixtureCheck& c) { return c.passed; });
}

namespace {

class Checker {
public:
    explicit Checker(FixtureReport& report) : report_(report) {}

    void equal(std::string what, const std::string& expected, const std::string& actual) {
        report_.checks.push_back({std::move(what), expected, actual, expected == actual});
    }
    void equal(std::string what, const Rational& expected, const Rational& actual) {
        equal(std::move(what), to_string(expected), to_string(actual));
    }
    void equal(std::string what, const std::vector<Rational>& expected, const std::vector<Rational>& actual) {
        equal(std::move(what), "(" + join(expected) + ")", "(" + join(actual) + ")");
    }
    void truth(std::string what, bool expected, bool actual) {
        equal(std::move(what), expected ? "true" : "false", actual ? "true" : "false");
    }
    void at_least(std::string what, const Rational& bound, const Rational& actual) {
        report_.checks.push_back({std::move(what), ">= " + to_string(bound), to_string(actual), actual >= bound});
    }

private:
    FixtureReport& report_;
};

std::string describe(const Instance& in, const Allocation& a) {
    std::string out = "(";
    for (AgentId i = 0; i < a.agent_count(); ++i) out += (i ? ", " : "") + format_bundle(in, a[i]);
    return out + ")";
}

Rational ratio(const Instance& in) { return Rational(in.weights.max() / in.weights.min()); }

std::vector<Rational> ints(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

void verify_example1(Checker& c) {
    const Instance in = fixtures::example1_inheritance();
    const Allocation a = fixtures::example1_all_to_spouse();
    const Allocation b = fixtures::example1_house_and_car();
    c.equal("min subsidies for ({house,car}, {}, {})", ints({0, 65, 65}), min_subsidies(in, a).payments);
    c.equal("min subsidies for ({house}, {car}, {})", ints({0, 0, 0}), min_subsidies(in, b).payments);
    std::vector<std::string> freeable;
    for_each_allocation(in, [&](const Allocation& x) {
        if (oracle_envy_freeable(in, x)) freeable.push_back(describe(in, x));
        return true;
    });
    std::string listed;
    for (const auto& s : freeable) listed += (listed.empty() ? "" : " ") + s;
    c.equal("envy-freeable allocations", describe(in, a) + " " + describe(in, b), listed);
}

void verify_incompatibility(Checker& c) {
    const Instance in = fixtures::example_incompatibility();
    const Allocation sw_max = brute_force_weighted_sw_max(in);
    c.equal("weighted welfare maximizer", "({g1}, {g2})", describe(in, sw_max));
    c.equal("its weighted welfare", Rational(75), weighted_social_welfare(in, sw_max));
    c.truth("weighted welfare maximizer is envy-freeable", false, oracle_envy_freeable(in, sw_max));

    std::vector<std::string> non_wasteful;
    bool any_freeable = false;
    for_each_allocation(in, [&](const Allocation& x) {
        if (is_non_wasteful(in, x)) {
            non_wasteful.push_back(describe(in, x));
            any_freeable = any_freeable || oracle_envy_freeable(in, x);
        }
        return true;
    });
    c.equal("non-wasteful allocations", "({g1}, {g2}) ({g2}, {g1})",
            non_wasteful.size() == 2 ? non_wasteful[0] + " " + non_wasteful[1] : std::to_string(non_wasteful.size()));
    c.truth("some non-wasteful allocation is envy-freeable", false, any_freeable);

    const Allocation one_each{{{0}, {1}}};
    c.equal("sum v_i(X_i)/w_i for one item each", Rational(240), reassignment_value(in, one_each, {0, 1}));
    c.equal("same sum after swapping bundles", Rational(400), reassignment_value(in, one_each, {1, 0}));
}

void verify_prop_lb_general(Checker& c, const FixtureParams& p) {
    const Instance in = fixtures::prop_lb_general(p);
    const Rational m(static_cast<unsigned long>(in.item_count));
    const Rational expected = (m - p.epsilon) * ratio(in);
    auto nonzero = [](const Instance& inst, const Allocation& a) { return is_nonzero_social_welfare(inst, a); };
    const auto best = oracle_min_max_subsidy(in, nonzero);
    c.equal("min over non-zero-welfare envy-freeable allocations of max subsidy", expected,
            best ? best->value : Rational(-1));
    c.equal("attained by", "({g1,g2,g3}, {}, {})", best ? describe(in, best->allocation) : "none");
    const auto all_to_max = allocate_all_to_max(in);
    c.equal("all-to-max max subsidy", expected, all_to_max.subsidy->max_payment());
}

void verify_lb_identical_additive(Checker& c) {
    const auto best = oracle_min_max_subsidy(fixtures::thm_lb_identical_additive());
    c.equal("min-max subsidy", Rational(1), best ? best->value : Rational(-1));
}

void verify_lb_binary_additive(Checker& c) {
    const Instance in = fixtures::thm_lb_binary_additive();
    const auto best = oracle_min_max_subsidy(in);
    c.equal("min-max subsidy = w_max/w_min", ratio(in), best ? best->value : Rational(-1));
    c.equal("subsidies with the item at agent 2", ints({2, 0, 1}), min_subsidies(in, Allocation{{{}, {0}, {}}}).payments);
}

void verify_lb_matroidal(Checker& c, const FixtureParams& p) {
    const Instance in = fixtures::thm_lb_matroidal(p);
    auto non_wasteful = [](const Instance& inst, const Allocation& a) { return is_non_wasteful(inst, a); };
    const Rational k(static_cast<unsigned long>(p.cap));
    const auto best = oracle_min_max_subsidy(in, non_wasteful);
    c.equal("min-max subsidy over non-wasteful allocations = k(w_max/w_min - 1)", Rational(k * (ratio(in) - 1)),
            best ? best->value : Rational(-1));
    bool balanced = true;
    for_each_allocation(in, [&](const Allocation& a) {
        if (is_non_wasteful(in, a)) balanced = balanced && a[0].size() == p.cap && a[1].size() == p.cap;
        return true;
    });
    c.truth("every non-wasteful allocation gives k items each", true, balanced);
}

void verify_lb_identical_items(Checker& c, const FixtureParams& p) {
    const std::size_t n = 3;
    const Instance in = fixtures::thm_lb_identical_items(p, n);
    const Rational n_minus_1(static_cast<unsigned long>(n - 1));
    // The single edge 1 -> n already forces w_1/w_n * v_1 * (n-1); epsilon is the gap to (n-1) w_max/w_min.
    const Rational v1 = std::get<IdenticalItemsValuation>(in.valuations[0].payload()).per_item;
    const Rational forced = in.weight(0) / in.weight(n - 1) * v1 * n_minus_1;
    const Rational epsilon = n_minus_1 * ratio(in) - forced;
    const auto best = oracle_min_max_subsidy(in);
    c.at_least("min-max subsidy vs (n-1) w_max/w_min - eps, eps = " + to_string(epsilon),
               Rational(n_minus_1 * ratio(in) - epsilon), best ? best->value : Rational(-1));

    bool shape = true;
    for_each_allocation(in, [&](const Allocation& a) {
        if (oracle_envy_freeable(in, a)) shape = shape && a[0].empty() && a[n - 1].size() >= n - 1;
        return true;
    });
    c.truth("envy-freeable allocations have m_1 = 0 and m_n >= n-1", true, shape);
}

void verify_additive_incompat(Checker& c) {
    const Instance in = fixtures::thm_additive_incompat();
    bool found = false;
    for_each_allocation(in, [&](const Allocation& a) {
        found = found || (oracle_envy_freeable(in, a) && is_wwef1(in, a));
        return true;
    });
    c.truth("some allocation is envy-freeable and WWEF1", false, found);

    const Allocation one_each{{{0}, {1}}};
    c.equal("sum v_i(X_i)/w_i for one item each", Rational(350), reassignment_value(in, one_each, {0, 1}));
    c.equal("same sum after swapping bundles", Rational(400), reassignment_value(in, one_each, {1, 0}));

    const Allocation all_to_1{{{0, 1}, {}}};
    const Allocation all_to_2{{{}, {0, 1}}};
    c.equal("v_2(X_2 + g)/w_2 under (M, {})", Rational(150), value(in, 1, {0}) / in.weight(1));
    c.equal("v_2(X_1)/w_1 under (M, {})", Rational(200), value(in, 1, all_to_1[0]) / in.weight(0));
    c.equal("v_1(X'_1 + g)/w_1 under ({}, M)", Rational(200), value(in, 0, {0}) / in.weight(0));
    c.equal("v_1(X'_2)/w_2 under ({}, M)", Rational(600), value(in, 0, all_to_2[1]) / in.weight(1));
    c.truth("(M, {}) is WWEF1", false, is_wwef1(in, all_to_1));
    c.truth("({}, M) is WWEF1", false, is_wwef1(in, all_to_2));
}

void verify_picking_sequence(Checker& c) {
    const Instance in = fixtures::sec6_picking_sequence();
    c.truth("picking-sequence allocation ({g}, {}) is envy-freeable", false,
            oracle_envy_freeable(in, Allocation{{{0}, {}}}));
    const auto aw = biased_weighted_adjusted_winner(in);
    c.equal("adjusted winner allocation", "({}, {g1})", describe(in, aw.allocation));
    c.truth("adjusted winner allocation is envy-freeable", true, oracle_envy_freeable(in, aw.allocation));
    c.truth("adjusted winner allocation is WEF1-T", true, is_wef1_t(in, aw.allocation));
}

void verify_greedy_tightness(Checker& c, const FixtureParams& p) {
    const Instance in = fixtures::sec5_greedy_tightness(p);
    const auto result = greedy_additive_welfare_max(in);
    const Rational m(static_cast<unsigned long>(in.item_count));
    c.equal("greedy allocation", "({g1,g2,g3}, {})", describe(in, result.allocation));
    c.equal("subsidy of agent 2 = m(1-eps) w_max/w_min", Rational(m * (1 - p.epsilon) * ratio(in)),
            result.subsidy->payments[1]);
}

struct Entry {
    const char* claim;
    void (*run)(Checker&, const FixtureParams&);
};

const std::map<std::string, Entry>& registry() {
    static const std::map<std::string, Entry> entries{
        {"example-1-inheritance",
         {"paying 65 to agents 2 and 3 makes ({house,car},{},{}) weighted envy-free; ({house},{car},{}) needs nothing",
          [](Checker& c, const FixtureParams&) { verify_example1(c); }}},
        {"example-incompatibility",
         {"weighted welfare maximization and non-wastefulness both rule out envy-freeability",
          [](Checker& c, const FixtureParams&) { verify_incompatibility(c); }}},
        {"prop-lb-general",
         {"with all-or-nothing valuations and non-zero welfare some agent needs (m - eps) w_max/w_min",
          verify_prop_lb_general}},
        {"thm-lb-identical-additive",
         {"identical additive valuations can force a subsidy of one",
          [](Checker& c, const FixtureParams&) { verify_lb_identical_additive(c); }}},
        {"thm-lb-binary-additive",
         {"binary additive valuations can force a subsidy of w_max/w_min",
          [](Checker& c, const FixtureParams&) { verify_lb_binary_additive(c); }}},
        {"thm-lb-matroidal",
         {"capped valuations with non-wastefulness can force k (w_max/w_min - 1)", verify_lb_matroidal}},
        {"thm-lb-identical-items",
         {"identical items can force (n-1) w_max/w_min - eps", verify_lb_identical_items}},
        {"thm-additive-incompat",
         {"no allocation is both weighted envy-freeable and WWEF1",
          [](Checker& c, const FixtureParams&) { verify_additive_incompat(c); }}},
        {"sec6-picking-sequence-counterexample",
         {"picking sequences break envy-freeability; the biased adjusted winner does not",
          [](Checker& c, const FixtureParams&) { verify_picking_sequence(c); }}},
        {"sec5-greedy-tightness",
         {"the greedy allocator's m w_max/w_min bound is tight", verify_greedy_tightness}},
    };
    return entries;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, entry] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

Instance fixture_instance(const std::string& name) {
    static const std::map<std::string, Instance (*)()> builders{
        {"example-1-inheritance", [] { return fixtures::example1_inheritance(); }},
        {"example-incompatibility", [] { return fixtures::example_incompatibility(); }},
        {"prop-lb-general", [] { return fixtures::prop_lb_general(); }},
        {"thm-lb-identical-additive", [] { return fixtures::thm_lb_identical_additive(); }},
        {"thm-lb-binary-additive", [] { return fixtures::thm_lb_binary_additive(); }},
        {"thm-lb-matroidal", [] { return fixtures::thm_lb_matroidal(); }},
        {"thm-lb-identical-items", [] { return fixtures::thm_lb_identical_items(); }},
        {"thm-additive-incompat", [] { return fixtures::thm_additive_incompat(); }},
        {"sec6-picking-sequence-counterexample", [] { return fixtures::sec6_picking_sequence(); }},
        {"sec5-greedy-tightness", [] { return fixtures::sec5_greedy_tightness(); }},
    };
    auto it = builders.find(name);
    if (it == builders.end()) throw Error(ErrorKind::UnknownFixture, "no fixture named '" + name + "'");
    return it->second();
}

FixtureReport verify_fixture(const std::string& name, const FixtureParams& params) {
    auto it = registry().find(name);
    if (it == registry().end()) throw Error(ErrorKind::UnknownFixture, "no fixture named '" + name + "'");
    FixtureReport report;
    report.name = name;
    report.claim = it->second.claim;
    Checker checker(report);
    it->second.run(checker, params);
    return report;
}

FixtureReport require_fixture(const std::string& name, const FixtureParams& params) {
    FixtureReport report = verify_fixture(name, params);
    for (const auto& check : report.checks) {
        if (!check.passed) {
            throw Error(ErrorKind::FixtureMismatch, name + ": " + check.description + ": expected " + check.expected +
                                                        ", got " + check.actual);
        }
    }
    return report;
}

}  // namespace wefsub
