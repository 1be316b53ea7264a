#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wefsub/enumerate.hpp"
#include "wefsub/instance.hpp"

namespace wefsub {

// Envy-freeability straight from the reassignment-stability definition: the
// identity must be optimal among all n! bundle permutations. n <= 8.
bool oracle_envy_freeable(const Instance& instance, const Allocation& allocation);

using AllocationFilter = std::function<bool(const Instance&, const Allocation&)>;

struct MinMaxSubsidy {
    Rational value;         // min over admissible allocations of max_i p_i
    Allocation allocation;  // lexicographically first allocation attaining it
};

// Minimum, over envy-freeable allocations passing `filter`, of the largest
// per-agent minimum subsidy. nullopt when no allocation qualifies.
std::optional<MinMaxSubsidy> oracle_min_max_subsidy(const Instance& instance, const AllocationFilter& filter = {});

// ---------------------------------------------------------------------------
// Fixtures: small instances that certify each bound and counterexample.

struct FixtureParams {
    Rational epsilon = rational(1, 10);
    Rational delta = rational(1, 100);
    std::size_t cap = 3;
};

namespace fixtures {

// Inheritance: spouse (1/2) and two children (1/4 each); house and car.
Instance example1_inheritance();
Allocation example1_all_to_spouse();    // ({house,car}, {}, {})
Allocation example1_house_and_car();    // ({house}, {car}, {})

// Two substitute items, weights (3/4, 1/4), unit values 90 and 30.
Instance example_incompatibility();

// All-or-nothing valuations; agent 1 (w_min) values M at m, the rest at m - eps.
Instance prop_lb_general(const FixtureParams& params = {}, std::size_t agents = 3, std::size_t items = 3);

// Two agents, equal weights, one item worth 1 to both.
Instance thm_lb_identical_additive();

// Weights (1/2, 1/4, 1/4), one item valued (0, 1, 1).
Instance thm_lb_binary_additive();

// Two agents with weights (3/4, 1/4), 2k items, each valuing min(k, |X|).
Instance thm_lb_matroidal(const FixtureParams& params = {});

// n agents, v_i = 1 - (n-i) delta, w_1 = 2 w_min, w_2 = w_min, w_i = (1+delta)^(i-2) w_min.
Instance thm_lb_identical_items(const FixtureParams& params = {}, std::size_t agents = 3);

// Weights (3/5, 2/5), two identical items worth 120 and 60 each.
Instance thm_additive_incompat();

// Weights (4/5, 1/5), one item valued (1, 2).
Instance sec6_picking_sequence();

// Agent 1 (w_min = 1/3) values each of 3 items at 1, agent 2 (2/3) at 1 - eps.
Instance sec5_greedy_tightness(const FixtureParams& params = {});

}  // namespace fixtures

struct FixtureCheck {
    std::string description;
    std::string expected;
    std::string actual;
    bool passed = false;
};

struct FixtureReport {
    std::string name;
    std::string claim;
    std::vector<FixtureCheck> checks;

    bool passed() const;
};

const std::vector<std::string>& fixture_names();

// Instance behind a registered fixture (default parameters).
Instance fixture_instance(const std::string& name);

// Re-derives every claimed quantity by enumeration. Throws UnknownFixture.
FixtureReport verify_fixture(const std::string& name, const FixtureParams& params = {});

// As verify_fixture, but throws FixtureMismatch naming expected and actual values.
FixtureReport require_fixture(const std::string& name, const FixtureParams& params = {});

}  // namespace wefsub
