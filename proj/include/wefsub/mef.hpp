#pragma once

#include <optional>
#include <vector>

#include "wefsub/envy.hpp"
#include "wefsub/instance.hpp"

namespace wefsub {

enum class BudgetRegime { Exact, Surplus, Deficit };

const char* budget_regime_name(BudgetRegime regime);

struct MefResult {
    std::vector<Rational> payments;
    // p_i = w_i * max(l_i - water_level, 0). Zero in the exact regime and
    // negative (minus the surplus) in the surplus regime.
    Rational water_level;
    BudgetRegime regime = BudgetRegime::Exact;
    Rational budget;
};

// Monetary envy-freeness: the outcome is weighted envy-free, or no agent with
// a positive payment is weighted-envied. Witness: an envied agent that is paid.
std::optional<EnvyPair> find_mef_violation(const Instance& instance, const Outcome& outcome);
inline bool is_mef(const Instance& instance, const Outcome& outcome) {
    return !find_mef_violation(instance, outcome).has_value();
}

// Spends exactly `budget` on an envy-freeable allocation so the outcome is MEF.
// Throws NotEnvyFreeableError or NegativeBudget.
MefResult allocate_budget_mef(const Instance& instance, const Allocation& allocation, const Rational& budget);

}  // namespace wefsub
