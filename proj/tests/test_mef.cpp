#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "support/generators.hpp"
#include "wefsub/errors.hpp"
#include "wefsub/mef.hpp"
#include "wefsub/oracle.hpp"

using namespace wefsub;
using namespace wefsub::testing;

namespace {

std::vector<Rational> ints(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

Rational sum(const std::vector<Rational>& xs) { return std::accumulate(xs.begin(), xs.end(), Rational(0)); }

}  // namespace

TEST_CASE("MEF predicate on the inheritance example") {
    const Instance in = fixtures::example1_inheritance();
    const Allocation a = fixtures::example1_all_to_spouse();
    CHECK(is_mef(in, Outcome{a, ints({0, 65, 65})}));
    CHECK(is_mef(in, Outcome{a, {Rational(0), rational(65, 2), rational(65, 2)}}));
    const auto violation = find_mef_violation(in, Outcome{a, ints({65, 0, 0})});
    REQUIRE(violation);
    CHECK(violation->envied == 0);
}

TEST_CASE("budget regimes on the inheritance example") {
    const Instance in = fixtures::example1_inheritance();
    const Allocation a = fixtures::example1_all_to_spouse();

    const MefResult exact = allocate_budget_mef(in, a, Rational(130));
    CHECK(exact.regime == BudgetRegime::Exact);
    CHECK(exact.payments == ints({0, 65, 65}));
    CHECK(is_weighted_envy_free(in, Outcome{a, exact.payments}));

    const MefResult half = allocate_budget_mef(in, a, Rational(65));
    CHECK(half.regime == BudgetRegime::Deficit);
    CHECK(half.water_level == 130);
    CHECK(half.payments == std::vector<Rational>{Rational(0), rational(65, 2), rational(65, 2)});
    CHECK(is_mef(in, Outcome{a, half.payments}));
    CHECK_FALSE(is_weighted_envy_free(in, Outcome{a, half.payments}));

    const MefResult none = allocate_budget_mef(in, a, Rational(0));
    CHECK(none.payments == ints({0, 0, 0}));
    CHECK(is_mef(in, Outcome{a, none.payments}));

    const MefResult extra = allocate_budget_mef(in, a, Rational(134));
    CHECK(extra.regime == BudgetRegime::Surplus);
    CHECK(extra.payments == ints({2, 66, 66}));
    CHECK(extra.water_level == -4);

    CHECK_THROWS_AS(allocate_budget_mef(in, a, Rational(-1)), Error);
    CHECK_THROWS_AS(allocate_budget_mef(fixtures::example_incompatibility(), Allocation{{{0}, {1}}}, Rational(1)),
                    NotEnvyFreeableError);
}

TEST_CASE("already weighted envy-free: any budget is surplus") {
    const Instance in = fixtures::example1_inheritance();
    const MefResult r = allocate_budget_mef(in, fixtures::example1_house_and_car(), Rational(8));
    CHECK(r.regime == BudgetRegime::Surplus);
    CHECK(r.payments == ints({4, 2, 2}));
}

TEST_CASE("budget splits on random envy-freeable allocations") {
    Rng rng(909);
    int tested = 0;
    while (tested < 200) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 4));
        const std::size_t m = static_cast<std::size_t>(uniform(rng, 0, 5));
        const Instance in = random_additive(rng, n, m, 6);
        const Allocation a = random_allocation(rng, n, m);
        if (!is_weighted_envy_freeable(in, a)) continue;
        ++tested;
        const SubsidyVector base = min_subsidies(in, a);
        const Rational total = base.total();
        std::vector<Rational> previous(n, Rational(0));
        std::vector<Rational> budgets{Rational(0), Rational(total / 4), Rational(total / 2), total, Rational(total * 2),
                                      Rational(total + 1)};
        std::sort(budgets.begin(), budgets.end());
        for (const Rational& d : budgets) {
            const MefResult r = allocate_budget_mef(in, a, d);
            CHECK(sum(r.payments) == d);
            const Outcome out{a, r.payments};
            CHECK(is_mef(in, out));
            for (AgentId i = 0; i < n; ++i) {
                CHECK(r.payments[i] >= 0);
                CHECK(r.payments[i] >= previous[i]);
            }
            if (d == total) CHECK(r.payments == base.payments);
            if (d > total) CHECK(is_weighted_envy_free(in, out));
            // No paid agent is envied.
            const auto graph = build_envy_graph_with_payments(in, out);
            for (AgentId i = 0; i < n; ++i) {
                for (AgentId j = 0; j < n; ++j) {
                    if (r.payments[j] > 0) CHECK(graph.lengths[i][j] <= 0);
                }
            }
            previous = r.payments;
        }
    }
}
