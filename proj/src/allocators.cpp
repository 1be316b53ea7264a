#include "wefsub/allocators.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "wefsub/enumerate.hpp"
#include "wefsub/errors.hpp"

namespace wefsub {

std::optional<std::vector<std::vector<Rational>>> additive_matrix(const Instance& instance) {
    std::vector<std::vector<Rational>> values;
    for (const auto& v : instance.valuations) {
        auto row = v.additive_values(instance.item_count);
        if (!row) return std::nullopt;
        values.push_back(std::move(*row));
    }
    return values;
}

bool has_identical_additive_valuations(const Instance& instance) {
    const auto values = additive_matrix(instance);
    if (!values) return false;
    return std::all_of(values->begin(), values->end(), [&](const auto& row) { return row == values->front(); });
}

namespace {

Rational bound_ratio(const Instance& instance) {
    return Rational(instance.weights.max() / instance.weights.min());
}

Rational general_bound(const Instance& instance) {
    return Rational(static_cast<unsigned long>(instance.item_count)) * bound_ratio(instance);
}

// Computes minimum subsidies and checks them against the declared guarantee.
void finish(const Instance& instance, AllocatorResult& result) {
    try {
        result.subsidy = min_subsidies(instance, result.allocation);
    } catch (const NotEnvyFreeableError& e) {
        throw Error(ErrorKind::InternalInconsistency, result.algorithm + " produced a non-envy-freeable allocation (" +
                                                          std::string(e.what()) + ")");
    }
    if (result.guarantee && result.subsidy->max_payment() > *result.guarantee) {
        throw Error(ErrorKind::InternalInconsistency, result.algorithm + " exceeded its subsidy guarantee: " +
                                                          to_string(result.subsidy->max_payment()) + " > " +
                                                          to_string(*result.guarantee));
    }
}

AgentId argmax_smallest(const std::vector<Rational>& xs) {
    return static_cast<AgentId>(std::max_element(xs.begin(), xs.end()) - xs.begin());
}

std::vector<AgentId> all_agents(std::size_t n) {
    std::vector<AgentId> v(n);
    std::iota(v.begin(), v.end(), AgentId{0});
    return v;
}

ItemSet full_set(std::size_t m) {
    ItemSet s(m);
    std::iota(s.begin(), s.end(), ItemId{0});
    return s;
}

std::vector<std::vector<bool>> binary_matrix(const Instance& instance) {
    std::vector<std::vector<bool>> approved;
    const auto values = additive_matrix(instance);
    if (!values) throw Error(ErrorKind::WrongValuationKind, "alg2 needs binary additive valuations");
    for (const auto& row : *values) {
        std::vector<bool> bits;
        for (const auto& x : row) {
            if (x != 0 && x != 1) throw Error(ErrorKind::WrongValuationKind, "alg2 needs item values in {0, 1}");
            bits.push_back(x == 1);
        }
        approved.push_back(std::move(bits));
    }
    return approved;
}

}  // namespace

AllocatorResult allocate_all_to_max(const Instance& instance) {
    const std::size_t n = instance.agent_count();
    AllocatorResult result;
    result.algorithm = "all-to-max";

    const ItemSet everything = full_set(instance.item_count);
    std::vector<Rational> totals;
    for (AgentId i = 0; i < n; ++i) totals.push_back(value(instance, i, everything));
    const AgentId winner = argmax_smallest(totals);

    result.allocation.bundles.assign(n, ItemSet{});
    result.allocation.bundles[winner] = everything;
    result.trace.push_back({0, all_agents(n), winner, "v(M) = " + to_string(totals[winner]) + " is largest"});
    if (all_bounded(instance)) result.guarantee = general_bound(instance);
    finish(instance, result);
    return result;
}

AllocatorResult greedy_additive_welfare_max(const Instance& instance) {
    const auto values = additive_matrix(instance);
    if (!values) throw Error(ErrorKind::WrongValuationKind, "greedy needs additive valuations");
    const std::size_t n = instance.agent_count();

    AllocatorResult result;
    result.algorithm = "greedy";
    std::vector<AgentId> owners(instance.item_count);
    for (ItemId g = 0; g < instance.item_count; ++g) {
        std::vector<Rational> column;
        for (AgentId i = 0; i < n; ++i) column.push_back((*values)[i][g]);
        owners[g] = argmax_smallest(column);
        result.trace.push_back({g, all_agents(n), owners[g], "largest v_i(g) = " + to_string(column[owners[g]])});
    }
    result.allocation = Allocation::from_owners(n, owners);
    if (all_bounded(instance)) result.guarantee = general_bound(instance);
    finish(instance, result);
    return result;
}

AllocatorResult alg1_identical_additive(const Instance& instance) {
    if (!has_identical_additive_valuations(instance))
        throw Error(ErrorKind::WrongValuationKind, "alg1 needs one additive valuation shared by all agents");
    const auto item_values = *instance.valuations.front().additive_values(instance.item_count);
    const std::size_t n = instance.agent_count();

    AllocatorResult result;
    result.algorithm = "alg1";
    std::vector<Rational> held(n, Rational(0));  // v(X_i)
    std::vector<AgentId> owners(instance.item_count, 0);
    for (ItemId g = 0; g < instance.item_count; ++g) {
        if (item_values[g] == 0) {
            result.trace.push_back({g, {}, 0, "zero-value item, outside the run"});
            continue;
        }
        std::vector<Rational> after;
        for (AgentId i = 0; i < n; ++i) after.push_back((held[i] + item_values[g]) / instance.weight(i));
        const AgentId u = static_cast<AgentId>(std::min_element(after.begin(), after.end()) - after.begin());
        owners[g] = u;
        held[u] += item_values[g];
        result.trace.push_back({g, all_agents(n), u, "min v(X_i+g)/w_i = " + to_string(after[u])});
    }
    result.allocation = Allocation::from_owners(n, owners);
    if (all_bounded(instance)) result.guarantee = Rational(1);
    finish(instance, result);
    return result;
}

AllocatorResult alg2_binary_additive(const Instance& instance) {
    const auto approved = binary_matrix(instance);
    const std::size_t n = instance.agent_count();
    const std::size_t m = instance.item_count;

    AllocatorResult result;
    result.algorithm = "alg2";
    std::vector<ItemSet> bundles(n);

    auto count_valued = [&](AgentId i) {
        return static_cast<unsigned long>(
            std::count_if(bundles[i].begin(), bundles[i].end(), [&](ItemId h) { return approved[i][h]; }));
    };
    // Positive edge i -> k: i values some item in X_k.
    auto positive_edge = [&](AgentId i, AgentId k) {
        return std::any_of(bundles[k].begin(), bundles[k].end(), [&](ItemId h) { return approved[i][h]; });
    };

    for (ItemId g = 0; g < m; ++g) {
        std::vector<bool> bidder(n, false);
        bool anyone = false;
        for (AgentId i = 0; i < n; ++i) {
            bidder[i] = approved[i][g];
            anyone = anyone || bidder[i];
        }
        if (!anyone) {
            bundles[0].push_back(g);
            result.trace.push_back({g, {}, 0, "valued by nobody, outside the run"});
            continue;
        }

        // R: agents with a positive path into the bidders (reverse BFS).
        std::vector<bool> in_r = bidder;
        std::deque<AgentId> queue;
        for (AgentId i = 0; i < n; ++i) {
            if (in_r[i]) queue.push_back(i);
        }
        while (!queue.empty()) {
            const AgentId k = queue.front();
            queue.pop_front();
            for (AgentId i = 0; i < n; ++i) {
                if (!in_r[i] && positive_edge(i, k)) {
                    in_r[i] = true;
                    queue.push_back(i);
                }
            }
        }

        std::vector<AgentId> candidates;
        std::optional<AgentId> u;
        Rational best;
        for (AgentId i = 0; i < n; ++i) {
            if (!in_r[i]) continue;
            candidates.push_back(i);
            Rational score = Rational(count_valued(i) + 1) / instance.weight(i);
            if (!u || score < best) {
                u = i;
                best = score;
            }
        }

        // BFS-first positive path from u to a bidder.
        std::vector<std::optional<AgentId>> parent(n);
        std::vector<bool> seen(n, false);
        seen[*u] = true;
        queue.assign(1, *u);
        std::optional<AgentId> target;
        while (!queue.empty()) {
            const AgentId k = queue.front();
            queue.pop_front();
            if (bidder[k]) {
                target = k;
                break;
            }
            for (AgentId next = 0; next < n; ++next) {
                if (!seen[next] && positive_edge(k, next)) {
                    seen[next] = true;
                    parent[next] = k;
                    queue.push_back(next);
                }
            }
        }
        if (!target) {
            throw Error(ErrorKind::InternalPathError,
                        "no positive path from agent " + std::to_string(*u + 1) + " to a bidder for item " +
                            instance.item_labels[g]);
        }
        std::vector<AgentId> path{*target};
        while (parent[path.back()]) path.push_back(*parent[path.back()]);
        std::reverse(path.begin(), path.end());

        auto& last = bundles[*target];
        last.insert(std::upper_bound(last.begin(), last.end(), g), g);
        std::string note = "path";
        for (AgentId a : path) note += " " + std::to_string(a + 1);
        for (std::size_t t = 0; t + 1 < path.size(); ++t) {
            auto& from = bundles[path[t + 1]];
            auto it = std::find_if(from.begin(), from.end(), [&](ItemId h) { return approved[path[t]][h]; });
            if (it == from.end()) {
                throw Error(ErrorKind::InternalPathError, "agent " + std::to_string(path[t + 1] + 1) +
                                                              " holds nothing agent " + std::to_string(path[t] + 1) +
                                                              " values");
            }
            const ItemId moved = *it;
            from.erase(it);
            auto& to = bundles[path[t]];
            to.insert(std::upper_bound(to.begin(), to.end(), moved), moved);
            note += "; move " + instance.item_labels[moved] + " to " + std::to_string(path[t] + 1);
        }
        result.trace.push_back({g, candidates, *u, note});
    }

    result.allocation.bundles = std::move(bundles);
    result.guarantee = bound_ratio(instance);
    finish(instance, result);
    return result;
}

AllocatorResult alg3_identical_items(const Instance& instance) {
    const std::size_t n = instance.agent_count();
    std::vector<Rational> per_item;
    for (const auto& v : instance.valuations) {
        if (v.kind() != ValuationKind::IdenticalItems)
            throw Error(ErrorKind::WrongValuationKind, "alg3 needs identical_items valuations");
        per_item.push_back(std::get<IdenticalItemsValuation>(v.payload()).per_item);
    }

    // Stable sort keeps input order among equal values.
    std::vector<AgentId> order = all_agents(n);
    std::stable_sort(order.begin(), order.end(), [&](AgentId a, AgentId b) { return per_item[a] < per_item[b]; });

    AllocatorResult result;
    result.algorithm = "alg3";
    std::vector<unsigned long> counts(n, 0);  // by sorted position
    std::vector<AgentId> owners(instance.item_count);
    for (ItemId g = 0; g < instance.item_count; ++g) {
        std::vector<AgentId> candidates;
        std::optional<std::size_t> chosen;
        for (std::size_t s = 0; s < n; ++s) {
            const bool last = s + 1 == n;
            if (last || Rational(counts[s] + 1) / instance.weight(order[s]) <=
                            Rational(counts[s + 1]) / instance.weight(order[s + 1])) {
                candidates.push_back(order[s]);
                if (!chosen) chosen = s;
            }
        }
        ++counts[*chosen];
        owners[g] = order[*chosen];
        result.trace.push_back({g, candidates, owners[g], "first sorted agent in N'"});
    }
    result.allocation = Allocation::from_owners(n, owners);
    if (all_bounded(instance)) {
        result.guarantee = Rational(static_cast<unsigned long>(n - 1)) * bound_ratio(instance) + 1;
    }
    finish(instance, result);
    return result;
}

AllocatorResult brute_force_unweighted_sw_max(const Instance& instance) {
    AllocatorResult result;
    result.algorithm = "sw-max";
    std::optional<Rational> best;
    for_each_allocation(instance, [&](const Allocation& a) {
        Rational sw = unweighted_social_welfare(instance, a);
        if (!best || sw > *best) {
            best = sw;
            result.allocation = a;
        }
        return true;
    });

    bool supermodular = true;
    try {
        for (const auto& v : instance.valuations) supermodular = supermodular && is_supermodular(v, instance.item_count);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::CheckTooLarge) throw;
        supermodular = false;
    }

    if (supermodular) {
        if (all_bounded(instance)) result.guarantee = general_bound(instance);
        finish(instance, result);
    } else if (is_weighted_envy_freeable(instance, result.allocation)) {
        result.subsidy = min_subsidies(instance, result.allocation);
    }
    return result;
}

Allocation brute_force_weighted_sw_max(const Instance& instance) {
    Allocation best_allocation;
    std::optional<Rational> best;
    for_each_allocation(instance, [&](const Allocation& a) {
        Rational sw = weighted_social_welfare(instance, a);
        if (!best || sw > *best) {
            best = sw;
            best_allocation = a;
        }
        return true;
    });
    return best_allocation;
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::Auto, Algorithm::AllToMax, Algorithm::Greedy, Algorithm::Alg1, Algorithm::Alg2,
                   Algorithm::Alg3, Algorithm::SwMax}) {
        if (name == algorithm_name(a)) return a;
    }
    return std::nullopt;
}

const char* algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::Auto: return "auto";
        case Algorithm::AllToMax: return "all-to-max";
        case Algorithm::Greedy: return "greedy";
        case Algorithm::Alg1: return "alg1";
        case Algorithm::Alg2: return "alg2";
        case Algorithm::Alg3: return "alg3";
        case Algorithm::SwMax: return "sw-max";
    }
    return "?";
}

Algorithm detect_algorithm(const Instance& instance) {
    auto all_kind = [&](ValuationKind k) {
        return std::all_of(instance.valuations.begin(), instance.valuations.end(),
                           [&](const Valuation& v) { return v.kind() == k; });
    };
    if (all_kind(ValuationKind::BinaryAdditive)) return Algorithm::Alg2;
    if (all_kind(ValuationKind::IdenticalItems)) return Algorithm::Alg3;
    if (additive_matrix(instance)) {
        return has_identical_additive_valuations(instance) ? Algorithm::Alg1 : Algorithm::Greedy;
    }
    return Algorithm::AllToMax;
}

AllocatorResult run_allocator(const Instance& instance, Algorithm algorithm) {
    switch (algorithm == Algorithm::Auto ? detect_algorithm(instance) : algorithm) {
        case Algorithm::AllToMax: return allocate_all_to_max(instance);
        case Algorithm::Greedy: return greedy_additive_welfare_max(instance);
        case Algorithm::Alg1: return alg1_identical_additive(instance);
        case Algorithm::Alg2: return alg2_binary_additive(instance);
        case Algorithm::Alg3: return alg3_identical_items(instance);
        case Algorithm::SwMax: return brute_force_unweighted_sw_max(instance);
        case Algorithm::Auto: break;
    }
    throw Error(ErrorKind::InternalInconsistency, "unreachable algorithm dispatch");
}

}  // namespace wefsub
