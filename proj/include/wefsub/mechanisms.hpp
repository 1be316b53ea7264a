#pragma once

#include <optional>
#include <vector>

#include "wefsub/instance.hpp"

namespace wefsub {

struct VcgOutcome {
    Allocation allocation;
    std::vector<Rational> vcg_payments;  // q_i, paid by agent i
    Rational upfront_constant;           // C; agent i first receives C * w_i
    std::vector<Rational> net_payments;  // C * w_i - q_i, received by agent i

    Outcome outcome() const { return {allocation, net_payments}; }
};

// max over allocations of `items` among `agents` of sum v_i(X_i). Brute force.
Rational max_unweighted_welfare(const Instance& instance, const std::vector<AgentId>& agents, const ItemSet& items);

// VCG on the unweighted welfare maximizer, funded by an up-front transfer of
// C * w_i to each agent. Default C = max(m, max_i v_i(M)) / w_min, which is
// m / w_min for bounded valuations.
// Throws NotSupermodular (with witness) or TooLarge.
VcgOutcome vcg_with_upfront_subsidy(const Instance& instance, std::optional<Rational> upfront = std::nullopt);

struct AdjustedWinnerResult {
    Allocation allocation;
    std::vector<ItemId> order;       // items by descending v1/v2
    std::size_t boundary = 0;        // d, 1-based position in `order`; 0 when agent 1 values nothing
    std::optional<ItemId> contested;  // g_d when it had to be cut
    Rational split;                  // share x of g_d given to agent 1 in the fractional solution
    std::vector<std::vector<Rational>> normalized;  // [agent][item], each row sums to 1 (or is all zero)
};

// Two agents with additive valuations. A contested item goes to the agent with
// the larger raw value, agent 1 on ties. Throws WrongAgentCount,
// WrongValuationKind, DegenerateInstance.
AdjustedWinnerResult biased_weighted_adjusted_winner(const Instance& instance);

}  // namespace wefsub
