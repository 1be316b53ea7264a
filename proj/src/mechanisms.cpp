#include "wefsub/mechanisms.hpp"

#include <algorithm>
#include <numeric>

#include "wefsub/allocators.hpp"
#include "wefsub/envy.hpp"
#include "wefsub/enumerate.hpp"
#include "wefsub/errors.hpp"

namespace wefsub {

Rational max_unweighted_welfare(const Instance& instance, const std::vector<AgentId>& agents, const ItemSet& items) {
    if (agents.empty()) return Rational(0);
    require_enumerable(agents.size(), items.size(), "welfare maximization");
    std::optional<Rational> best;
    std::vector<ItemSet> bundles(agents.size());
    for_each_owner_vector(agents.size(), items.size(), [&](const std::vector<AgentId>& owners) {
        for (auto& b : bundles) b.clear();
        for (std::size_t k = 0; k < items.size(); ++k) bundles[owners[k]].push_back(items[k]);
        Rational total = 0;
        for (std::size_t s = 0; s < agents.size(); ++s) total += value(instance, agents[s], bundles[s]);
        if (!best || total > *best) best = total;
        return true;
    });
    return *best;
}

VcgOutcome vcg_with_upfront_subsidy(const Instance& instance, std::optional<Rational> upfront) {
    const std::size_t n = instance.agent_count();
    const std::size_t m = instance.item_count;
    for (AgentId i = 0; i < n; ++i) {
        const auto& v = instance.valuations[i];
        if (v.kind() == ValuationKind::Table) {
            if (auto w = find_supermodularity_violation(v, m, 16)) {
                throw Error(ErrorKind::NotSupermodular, "agent " + std::to_string(i + 1) + ": A = " +
                                                            format_bundle(instance, w->a) +
                                                            ", B = " + format_bundle(instance, w->b));
            }
        } else if (!is_supermodular(v, m)) {
            throw Error(ErrorKind::NotSupermodular, "agent " + std::to_string(i + 1) + " has a binding cap");
        }
    }

    VcgOutcome out;
    out.allocation = brute_force_unweighted_sw_max(instance).allocation;

    ItemSet everything(m);
    std::iota(everything.begin(), everything.end(), ItemId{0});
    for (AgentId i = 0; i < n; ++i) {
        if (out.allocation[i].empty()) {
            out.vcg_payments.emplace_back(0);
            continue;
        }
        std::vector<AgentId> others;
        for (AgentId k = 0; k < n; ++k) {
            if (k != i) others.push_back(k);
        }
        ItemSet rest;
        std::set_difference(everything.begin(), everything.end(), out.allocation[i].begin(),
                            out.allocation[i].end(), std::back_inserter(rest));
        out.vcg_payments.push_back(max_unweighted_welfare(instance, others, everything) -
                                   max_unweighted_welfare(instance, others, rest));
    }

    if (upfront) {
        out.upfront_constant = *upfront;
    } else {
        Rational scale(static_cast<unsigned long>(m));
        for (AgentId i = 0; i < n; ++i) scale = std::max(scale, value(instance, i, everything));
        out.upfront_constant = scale / instance.weights.min();
    }
    for (AgentId i = 0; i < n; ++i) {
        Rational net = out.upfront_constant * instance.weight(i) - out.vcg_payments[i];
        if (net < 0) {
            throw Error(ErrorKind::InvalidOutcome, "up-front constant " + to_string(out.upfront_constant) +
                                                       " leaves agent " + std::to_string(i + 1) +
                                                       " with a negative net payment");
        }
        out.net_payments.push_back(std::move(net));
    }
    return out;
}

AdjustedWinnerResult biased_weighted_adjusted_winner(const Instance& instance) {
    if (instance.agent_count() != 2)
        throw Error(ErrorKind::WrongAgentCount, "adjusted winner needs exactly two agents");
    const auto raw = additive_matrix(instance);
    if (!raw) throw Error(ErrorKind::WrongValuationKind, "adjusted winner needs additive valuations");
    const std::size_t m = instance.item_count;
    const Rational& w1 = instance.weight(0);
    const Rational& w2 = instance.weight(1);

    AdjustedWinnerResult out;
    out.normalized = *raw;
    for (auto& row : out.normalized) {
        Rational total = std::accumulate(row.begin(), row.end(), Rational(0));
        if (total > 0) {
            for (auto& x : row) x /= total;
        }
    }
    const auto& a1 = out.normalized[0];
    const auto& a2 = out.normalized[1];
    const bool agent1_values_something = std::any_of(a1.begin(), a1.end(), [](const Rational& x) { return x > 0; });
    const bool agent2_values_something = std::any_of(a2.begin(), a2.end(), [](const Rational& x) { return x > 0; });
    if (!agent1_values_something && !agent2_values_something)
        throw Error(ErrorKind::DegenerateInstance, "both agents value every item at 0");

    // Descending v1/v2 by cross-multiplication; v2 = 0 sorts first, both-zero items last.
    std::vector<ItemId> valued, ignored;
    for (ItemId g = 0; g < m; ++g) (a1[g] == 0 && a2[g] == 0 ? ignored : valued).push_back(g);
    std::stable_sort(valued.begin(), valued.end(),
                     [&](ItemId x, ItemId y) { return a1[x] * a2[y] > a1[y] * a2[x]; });
    out.order = valued;
    out.order.insert(out.order.end(), ignored.begin(), ignored.end());

    std::vector<AgentId> owners(m, 1);
    if (!agent1_values_something) {
        out.allocation = Allocation::from_owners(2, owners);
        return out;
    }

    // Smallest d with prefix_{d}/w1 >= (1 - prefix_{d})/w2; minimality gives the strict
    // companion inequality at d-1.
    Rational prefix = 0;
    std::size_t d = 0;
    for (std::size_t k = 0; k < m; ++k) {
        prefix += a1[out.order[k]];
        if (prefix / w1 >= (Rational(1) - prefix) / w2) {
            d = k + 1;
            break;
        }
    }
    if (d == 0) throw Error(ErrorKind::InternalInconsistency, "adjusted winner boundary does not exist");
    out.boundary = d;

    for (std::size_t k = 0; k < d; ++k) owners[out.order[k]] = 0;
    out.allocation = Allocation::from_owners(2, owners);
    const Outcome integral{out.allocation, {Rational(0), Rational(0)}};
    if (is_weighted_envy_free(instance, integral)) return out;

    // Cut g_d: agent 1 takes the smallest share x reaching weighted proportionality.
    const ItemId g = out.order[d - 1];
    Rational left = 0;
    for (std::size_t k = 0; k + 1 < d; ++k) left += a1[out.order[k]];
    out.contested = g;
    out.split = std::max(Rational(0), Rational((w1 - left) / a1[g]));
    if (out.split > 1) throw Error(ErrorKind::InternalInconsistency, "contested share exceeds the item");

    Rational right2 = 0;
    for (std::size_t k = d; k < m; ++k) right2 += a2[out.order[k]];
    const Rational total2 = agent2_values_something ? Rational(1) : Rational(0);
    if (right2 + (Rational(1) - out.split) * a2[g] < w2 * total2) {
        throw Error(ErrorKind::InternalInconsistency, "fractional split violates agent 2's weighted proportionality");
    }

    // Raw values decide: envy-freeability is not invariant under per-agent rescaling.
    owners[g] = (*raw)[0][g] >= (*raw)[1][g] ? 0 : 1;
    out.allocation = Allocation::from_owners(2, owners);
    return out;
}

}  // namespace wefsub
