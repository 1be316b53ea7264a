#include "wefsub/envy.hpp"

#include <algorithm>
#include <numeric>

#include "wefsub/errors.hpp"

namespace wefsub {

Rational SubsidyVector::max_payment() const {
    Rational best = 0;
    for (const auto& p : payments) best = std::max(best, p);
    return best;
}

Rational SubsidyVector::total() const {
    Rational sum = 0;
    for (const auto& p : payments) sum += p;
    return sum;
}

namespace {

WeightedEnvyGraph graph_from(const Instance& instance, const Allocation& allocation,
                             const std::vector<Rational>* payments) {
    const std::size_t n = instance.agent_count();
    const auto values = bundle_value_matrix(instance, allocation);
    WeightedEnvyGraph g;
    g.payment_adjusted = payments != nullptr;
    g.lengths.assign(n, std::vector<Rational>(n));
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = 0; j < n; ++j) {
            if (i == j) continue;
            Rational theirs = values[i][j];
            Rational mine = values[i][i];
            if (payments) {
                theirs += (*payments)[j];
                mine += (*payments)[i];
            }
            g.lengths[i][j] = theirs / instance.weight(j) - mine / instance.weight(i);
        }
    }
    return g;
}

AgentCycle canonical_rotation(AgentCycle cycle) {
    auto smallest = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), smallest, cycle.end());
    return cycle;
}

}  // namespace

WeightedEnvyGraph build_envy_graph(const Instance& instance, const Allocation& allocation) {
    return graph_from(instance, allocation, nullptr);
}

WeightedEnvyGraph build_envy_graph_with_payments(const Instance& instance, const Outcome& outcome) {
    return graph_from(instance, outcome.allocation, &outcome.payments);
}

std::optional<AgentCycle> find_positive_cycle(const WeightedEnvyGraph& graph) {
    const std::size_t n = graph.agent_count();
    // Shortest paths on negated lengths from a virtual source joined to every agent.
    std::vector<Rational> dist(n, Rational(0));
    std::vector<AgentId> pred(n, n);
    std::optional<AgentId> last_relaxed;
    for (std::size_t round = 0; round < n; ++round) {
        last_relaxed.reset();
        for (AgentId u = 0; u < n; ++u) {
            for (AgentId v = 0; v < n; ++v) {
                if (u == v) continue;
                Rational candidate = dist[u] - graph.lengths[u][v];
                if (candidate < dist[v]) {
                    dist[v] = candidate;
                    pred[v] = u;
                    last_relaxed = v;
                }
            }
        }
        if (!last_relaxed) return std::nullopt;
    }

    // Still relaxing after n rounds: walking back n predecessors lands on the cycle.
    AgentId x = *last_relaxed;
    for (std::size_t k = 0; k < n; ++k) x = pred[x];
    AgentCycle reversed{x};
    for (AgentId y = pred[x]; y != x; y = pred[y]) reversed.push_back(y);
    std::reverse(reversed.begin(), reversed.end());
    return canonical_rotation(std::move(reversed));
}

Rational cycle_length(const WeightedEnvyGraph& graph, const AgentCycle& cycle) {
    Rational total = 0;
    for (std::size_t k = 0; k < cycle.size(); ++k) total += graph.lengths[cycle[k]][cycle[(k + 1) % cycle.size()]];
    return total;
}

Rational reassignment_value(const Instance& instance, const Allocation& allocation, const Permutation& perm) {
    Rational total = 0;
    for (AgentId i = 0; i < perm.size(); ++i)
        total += value(instance, i, allocation[perm[i]]) / instance.weight(perm[i]);
    return total;
}

namespace {

// Minimum-cost perfect assignment (Kuhn-Munkres with potentials), exact over rationals.
// cost is n x n; returns row -> column.
Permutation hungarian_min_cost(const std::vector<std::vector<Rational>>& cost) {
    const std::size_t n = cost.size();
    std::vector<Rational> u(n + 1, Rational(0)), v(n + 1, Rational(0));
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);  // match[col] = row, 1-based

    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::vector<std::optional<Rational>> minv(n + 1);
        std::vector<bool> used(n + 1, false);
        do {
            used[col0] = true;
            const std::size_t row0 = match[col0];
            std::optional<Rational> delta;
            std::size_t col1 = 0;
            for (std::size_t col = 1; col <= n; ++col) {
                if (used[col]) continue;
                Rational reduced = cost[row0 - 1][col - 1] - u[row0] - v[col];
                if (!minv[col] || reduced < *minv[col]) {
                    minv[col] = reduced;
                    way[col] = col0;
                }
                if (!delta || *minv[col] < *delta) {
                    delta = *minv[col];
                    col1 = col;
                }
            }
            for (std::size_t col = 0; col <= n; ++col) {
                if (used[col]) {
                    u[match[col]] += *delta;
                    v[col] -= *delta;
                } else if (minv[col]) {
                    *minv[col] -= *delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    Permutation assignment(n);
    for (std::size_t col = 1; col <= n; ++col) assignment[match[col] - 1] = col - 1;
    return assignment;
}

Permutation identity(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), AgentId{0});
    return p;
}

}  // namespace

std::optional<Permutation> find_improving_reassignment(const Instance& instance, const Allocation& allocation) {
    const std::size_t n = instance.agent_count();
    const auto values = bundle_value_matrix(instance, allocation);
    std::vector<std::vector<Rational>> cost(n, std::vector<Rational>(n));
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = 0; j < n; ++j) cost[i][j] = -values[i][j] / instance.weight(j);
    }
    Permutation best = hungarian_min_cost(cost);
    if (reassignment_value(instance, allocation, best) > reassignment_value(instance, allocation, identity(n))) {
        return best;
    }
    return std::nullopt;
}

std::optional<Permutation> find_improving_reassignment_brute_force(const Instance& instance,
                                                                   const Allocation& allocation) {
    const std::size_t n = instance.agent_count();
    if (n > 8) throw Error(ErrorKind::TooLarge, "permutation brute force limited to n <= 8");
    Permutation perm = identity(n);
    const Rational base = reassignment_value(instance, allocation, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        if (reassignment_value(instance, allocation, perm) > base) return perm;
    }
    return std::nullopt;
}

bool is_weighted_envy_freeable(const Instance& instance, const Allocation& allocation, Verify verify) {
    const bool freeable = !has_positive_cycle(build_envy_graph(instance, allocation));
    if (verify == Verify::On) {
        const bool stable = is_reassignment_stable(instance, allocation);
        if (stable != freeable) {
            throw Error(ErrorKind::InternalInconsistency,
                        "positive-cycle test and reassignment-stability disagree");
        }
        if (instance.agent_count() <= 8 &&
            find_improving_reassignment_brute_force(instance, allocation).has_value() == stable) {
            throw Error(ErrorKind::InternalInconsistency,
                        "assignment solve and permutation brute force disagree");
        }
    }
    return freeable;
}

std::vector<Rational> longest_path_lengths(const WeightedEnvyGraph& graph) {
    const std::size_t n = graph.agent_count();
    std::vector<Rational> longest(n, Rational(0));
    // Simple paths have at most n-1 edges; a change in round n means a positive cycle.
    for (std::size_t round = 0; round <= n; ++round) {
        bool changed = false;
        for (AgentId i = 0; i < n; ++i) {
            for (AgentId j = 0; j < n; ++j) {
                if (i == j) continue;
                Rational candidate = graph.lengths[i][j] + longest[j];
                if (candidate > longest[i]) {
                    longest[i] = candidate;
                    changed = true;
                }
            }
        }
        if (!changed) return longest;
    }
    throw Error(ErrorKind::InternalInconsistency, "longest paths did not converge; graph has a positive cycle");
}

SubsidyVector min_subsidies(const Instance& instance, const Allocation& allocation) {
    const auto graph = build_envy_graph(instance, allocation);
    if (auto cycle = find_positive_cycle(graph)) throw NotEnvyFreeableError(std::move(*cycle));
    SubsidyVector out;
    out.path_lengths = longest_path_lengths(graph);
    for (AgentId i = 0; i < instance.agent_count(); ++i)
        out.payments.push_back(instance.weight(i) * out.path_lengths[i]);
    return out;
}

std::optional<EnvyPair> find_weighted_envy(const Instance& instance, const Outcome& outcome) {
    const auto graph = build_envy_graph_with_payments(instance, outcome);
    for (AgentId i = 0; i < graph.agent_count(); ++i) {
        for (AgentId j = 0; j < graph.agent_count(); ++j) {
            if (graph.lengths[i][j] > 0) return EnvyPair{i, j};
        }
    }
    return std::nullopt;
}

}  // namespace wefsub
