#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wefsub/envy.hpp"
#include "wefsub/instance.hpp"

namespace wefsub {

struct TraceStep {
    ItemId item;
    std::vector<AgentId> candidates;
    AgentId chosen;
    std::string note;
};

struct AllocatorResult {
    std::string algorithm;
    Allocation allocation;
    // Minimum subsidies; empty only for an unweighted welfare maximizer that is
    // not envy-freeable (possible when valuations are not super-modular).
    std::optional<SubsidyVector> subsidy;
    // Worst-case per-agent subsidy bound for the valuation class, when the
    // instance satisfies the bound's hypotheses (bounded valuations).
    std::optional<Rational> guarantee;
    std::vector<TraceStep> trace;
};

// Every item to the agent with the largest v_i(M); ties to the smallest index.
AllocatorResult allocate_all_to_max(const Instance& instance);

// Additive valuations: each item to an agent valuing it most.
AllocatorResult greedy_additive_welfare_max(const Instance& instance);

// Identical additive valuations: item g goes to argmin_i v(X_i + g) / w_i.
AllocatorResult alg1_identical_additive(const Instance& instance);

// Binary additive valuations: augment along positive paths so that the
// receiving agent minimizes (v_i(X_i)+1)/w_i among agents that can reach a
// bidder for the item.
AllocatorResult alg2_binary_additive(const Instance& instance);

// Identical items (agent i values each item at v_i): agents sorted by v_i,
// item goes to the first agent whose (m_i+1)/w_i does not overtake its successor.
AllocatorResult alg3_identical_items(const Instance& instance);

// Exhaustive argmax of sum_i v_i(X_i); lexicographically smallest owner vector on ties.
AllocatorResult brute_force_unweighted_sw_max(const Instance& instance);

// Exhaustive argmax of sum_i w_i v_i(X_i); lexicographically smallest owner vector on ties.
Allocation brute_force_weighted_sw_max(const Instance& instance);

enum class Algorithm { Auto, AllToMax, Greedy, Alg1, Alg2, Alg3, SwMax };

std::optional<Algorithm> parse_algorithm(std::string_view name);
const char* algorithm_name(Algorithm algorithm);

// Auto dispatch: all binary_additive -> Alg2; all identical_items -> Alg3;
// additive and identical across agents -> Alg1; additive -> Greedy; otherwise AllToMax.
Algorithm detect_algorithm(const Instance& instance);

AllocatorResult run_allocator(const Instance& instance, Algorithm algorithm);

// Helpers shared with the mechanisms and the oracle.
std::optional<std::vector<std::vector<Rational>>> additive_matrix(const Instance& instance);
bool has_identical_additive_valuations(const Instance& instance);

}  // namespace wefsub
