#pragma once

#include <optional>
#include <vector>

#include "wefsub/instance.hpp"

namespace wefsub {

// Complete digraph on agents; lengths[i][j] is how much i weighted-envies j:
//   l(i,j) = v_i(X_j)/w_j - v_i(X_i)/w_i          (payment_adjusted = false)
//   l(i,j) = (v_i(X_j)+p_j)/w_j - (v_i(X_i)+p_i)/w_i  (payment_adjusted = true)
struct WeightedEnvyGraph {
    std::vector<std::vector<Rational>> lengths;
    bool payment_adjusted = false;

    std::size_t agent_count() const { return lengths.size(); }
    const Rational& length(AgentId i, AgentId j) const { return lengths[i][j]; }
};

struct SubsidyVector {
    std::vector<Rational> payments;      // p_i = w_i * l_i
    std::vector<Rational> path_lengths;  // l_i, longest path from i (empty path included)

    Rational max_payment() const;
    Rational total() const;
};

// Cycle i0 -> i1 -> ... -> ik-1 -> i0, rotated to start at its smallest agent.
using AgentCycle = std::vector<AgentId>;

// Bundle permutation: agent i would receive bundle perm[i].
using Permutation = std::vector<AgentId>;

struct EnvyPair {
    AgentId envious;
    AgentId envied;
};

WeightedEnvyGraph build_envy_graph(const Instance& instance, const Allocation& allocation);
WeightedEnvyGraph build_envy_graph_with_payments(const Instance& instance, const Outcome& outcome);

// Positive-length cycle, found as a negative cycle of the negated graph by
// Bellman-Ford relaxation. nullopt when no such cycle exists.
std::optional<AgentCycle> find_positive_cycle(const WeightedEnvyGraph& graph);
inline bool has_positive_cycle(const WeightedEnvyGraph& graph) { return find_positive_cycle(graph).has_value(); }

Rational cycle_length(const WeightedEnvyGraph& graph, const AgentCycle& cycle);

// Solves the assignment problem on v_i(X_j)/w_j exactly (Hungarian method).
// Returns nullopt when the identity is a maximum-weight assignment, otherwise a
// strictly better permutation.
std::optional<Permutation> find_improving_reassignment(const Instance& instance, const Allocation& allocation);
inline bool is_reassignment_stable(const Instance& instance, const Allocation& allocation) {
    return !find_improving_reassignment(instance, allocation).has_value();
}

// Same question answered over all n! permutations (n <= 8).
std::optional<Permutation> find_improving_reassignment_brute_force(const Instance& instance,
                                                                   const Allocation& allocation);

// sum_i v_i(X_perm(i)) / w_perm(i)
Rational reassignment_value(const Instance& instance, const Allocation& allocation, const Permutation& perm);

enum class Verify { Off, On };

// No positive cycle. With Verify::On the reassignment-stability route (and, for
// n <= 8, the permutation brute force) is also evaluated; any disagreement
// throws InternalInconsistency.
bool is_weighted_envy_freeable(const Instance& instance, const Allocation& allocation,
                               Verify verify = Verify::Off);

// Longest path lengths from every agent; requires no positive cycle.
std::vector<Rational> longest_path_lengths(const WeightedEnvyGraph& graph);

// Minimum payments making the allocation weighted envy-free.
// Throws NotEnvyFreeableError (with the positive cycle) otherwise.
SubsidyVector min_subsidies(const Instance& instance, const Allocation& allocation);

// Smallest (i, j) in lexicographic order with a strictly positive adjusted edge.
std::optional<EnvyPair> find_weighted_envy(const Instance& instance, const Outcome& outcome);
inline bool is_weighted_envy_free(const Instance& instance, const Outcome& outcome) {
    return !find_weighted_envy(instance, outcome).has_value();
}

}  // namespace wefsub
