#include "wefsub/mef.hpp"

#include <algorithm>

#include "wefsub/errors.hpp"

namespace wefsub {

const char* budget_regime_name(BudgetRegime regime) {
    switch (regime) {
        case BudgetRegime::Exact: return "exact";
        case BudgetRegime::Surplus: return "surplus";
        case BudgetRegime::Deficit: return "deficit";
    }
    return "?";
}

std::optional<EnvyPair> find_mef_violation(const Instance& instance, const Outcome& outcome) {
    const auto graph = build_envy_graph_with_payments(instance, outcome);
    bool envy_free = true;
    std::optional<EnvyPair> paid_and_envied;
    for (AgentId i = 0; i < graph.agent_count(); ++i) {
        for (AgentId j = 0; j < graph.agent_count(); ++j) {
            if (graph.lengths[i][j] <= 0) continue;
            envy_free = false;
            if (outcome.payments[j] != 0 && !paid_and_envied) paid_and_envied = EnvyPair{i, j};
        }
    }
    if (envy_free) return std::nullopt;
    return paid_and_envied;
}

MefResult allocate_budget_mef(const Instance& instance, const Allocation& allocation, const Rational& budget) {
    if (budget < 0) throw Error(ErrorKind::NegativeBudget, "budget " + to_string(budget) + " is negative");
    const SubsidyVector base = min_subsidies(instance, allocation);
    const std::vector<Rational>& lengths = base.path_lengths;
    const Rational needed = base.total();
    const std::size_t n = instance.agent_count();

    MefResult out;
    out.budget = budget;
    if (budget >= needed) {
        out.regime = budget == needed ? BudgetRegime::Exact : BudgetRegime::Surplus;
        out.water_level = needed - budget;
    } else {
        // Budget spent as a function of the level is piecewise linear and decreasing;
        // walk the distinct path lengths from the top until the segment containing
        // `budget` is found, then solve that linear piece exactly.
        out.regime = BudgetRegime::Deficit;
        std::vector<Rational> levels = lengths;
        levels.push_back(Rational(0));
        std::sort(levels.begin(), levels.end(), std::greater<>());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

        Rational weight_above = 0;  // sum of w_i with l_i >= current level
        Rational mass_above = 0;    // sum of w_i * l_i over the same agents
        std::size_t next_agent = 0;
        std::vector<AgentId> by_length(n);
        for (AgentId i = 0; i < n; ++i) by_length[i] = i;
        std::sort(by_length.begin(), by_length.end(),
                  [&](AgentId a, AgentId b) { return lengths[a] > lengths[b]; });

        for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
            while (next_agent < n && lengths[by_length[next_agent]] >= levels[k]) {
                weight_above += instance.weight(by_length[next_agent]);
                mass_above += instance.weight(by_length[next_agent]) * lengths[by_length[next_agent]];
                ++next_agent;
            }
            Rational spent_at_next = mass_above - weight_above * levels[k + 1];
            if (spent_at_next >= budget) {
                out.water_level = (mass_above - budget) / weight_above;
                break;
            }
        }
    }

    for (AgentId i = 0; i < n; ++i) {
        Rational excess = lengths[i] - out.water_level;
        out.payments.push_back(instance.weight(i) * std::max(Rational(0), excess));
    }
    return out;
}

}  // namespace wefsub
