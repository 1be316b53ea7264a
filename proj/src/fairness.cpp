#include "wefsub/fairness.hpp"

#include <algorithm>

#include "wefsub/enumerate.hpp"
#include "wefsub/errors.hpp"

namespace wefsub {

namespace {

ItemSet without(const ItemSet& bundle, ItemId g) {
    ItemSet out;
    out.reserve(bundle.size());
    for (ItemId h : bundle) {
        if (h != g) out.push_back(h);
    }
    return out;
}

ItemSet with(const ItemSet& bundle, ItemId g) {
    ItemSet out = bundle;
    out.insert(std::upper_bound(out.begin(), out.end(), g), g);
    return out;
}

// Runs pair_ok(i, j) for every ordered pair with X_j non-empty; first failure wins.
template <class PairOk>
Verdict<PairViolation> scan_pairs(const Instance& instance, const Allocation& allocation, PairOk pair_ok) {
    for (AgentId i = 0; i < instance.agent_count(); ++i) {
        for (AgentId j = 0; j < instance.agent_count(); ++j) {
            if (i == j || allocation[j].empty()) continue;
            if (!pair_ok(i, j)) return {PairViolation{i, j}};
        }
    }
    return {};
}

}  // namespace

Verdict<PairViolation> check_wef1(const Instance& instance, const Allocation& allocation) {
    return scan_pairs(instance, allocation, [&](AgentId i, AgentId j) {
        const Rational mine = value(instance, i, allocation[i]) / instance.weight(i);
        return std::any_of(allocation[j].begin(), allocation[j].end(), [&](ItemId g) {
            return mine >= value(instance, i, without(allocation[j], g)) / instance.weight(j);
        });
    });
}

Verdict<PairViolation> check_wwef1(const Instance& instance, const Allocation& allocation) {
    return scan_pairs(instance, allocation, [&](AgentId i, AgentId j) {
        const Rational mine = value(instance, i, allocation[i]) / instance.weight(i);
        const Rational theirs = value(instance, i, allocation[j]) / instance.weight(j);
        return std::any_of(allocation[j].begin(), allocation[j].end(), [&](ItemId g) {
            return mine >= value(instance, i, without(allocation[j], g)) / instance.weight(j) ||
                   value(instance, i, with(allocation[i], g)) / instance.weight(i) >= theirs;
        });
    });
}

Verdict<PairViolation> check_wef1_t(const Instance& instance, const Allocation& allocation) {
    return scan_pairs(instance, allocation, [&](AgentId i, AgentId j) {
        const Rational mine = value(instance, i, allocation[i]) / instance.weight(i);
        if (mine >= value(instance, i, allocation[j]) / instance.weight(j)) return true;
        return std::any_of(allocation[j].begin(), allocation[j].end(), [&](ItemId g) {
            return value(instance, i, with(allocation[i], g)) / instance.weight(i) >=
                   value(instance, i, without(allocation[j], g)) / instance.weight(j);
        });
    });
}

Verdict<WasteViolation> check_non_wasteful(const Instance& instance, const Allocation& allocation) {
    for (AgentId i = 0; i < instance.agent_count(); ++i) {
        const Rational own = value(instance, i, allocation[i]);
        for (ItemId g : allocation[i]) {
            if (value(instance, i, without(allocation[i], g)) != own) continue;
            for (AgentId j = 0; j < instance.agent_count(); ++j) {
                if (j == i) continue;
                if (value(instance, j, with(allocation[j], g)) != value(instance, j, allocation[j]))
                    return {WasteViolation{i, g, j}};
            }
        }
    }
    return {};
}

Verdict<Allocation> check_pareto_efficient(const Instance& instance, const Allocation& allocation) {
    const std::size_t n = instance.agent_count();
    std::vector<Rational> base(n);
    for (AgentId i = 0; i < n; ++i) base[i] = value(instance, i, allocation[i]);

    Verdict<Allocation> result;
    for_each_allocation(instance, [&](const Allocation& other) {
        bool weakly_better = true;
        bool strictly_better = false;
        for (AgentId i = 0; i < n && weakly_better; ++i) {
            const Rational v = value(instance, i, other[i]);
            if (v < base[i]) weakly_better = false;
            if (v > base[i]) strictly_better = true;
        }
        if (weakly_better && strictly_better) {
            result.violation = other;
            return false;
        }
        return true;
    });
    return result;
}

Verdict<Allocation> check_nonzero_social_welfare(const Instance& instance, const Allocation& allocation) {
    if (weighted_social_welfare(instance, allocation) > 0) return {};
    Verdict<Allocation> result;
    for_each_allocation(instance, [&](const Allocation& other) {
        if (weighted_social_welfare(instance, other) > 0) {
            result.violation = other;
            return false;
        }
        return true;
    });
    return result;
}

Verdict<Allocation> check_weighted_welfare_maximizing(const Instance& instance, const Allocation& allocation) {
    const Rational base = weighted_social_welfare(instance, allocation);
    Verdict<Allocation> result;
    for_each_allocation(instance, [&](const Allocation& other) {
        if (weighted_social_welfare(instance, other) > base) {
            result.violation = other;
            return false;
        }
        return true;
    });
    return result;
}

namespace {

template <class Check>
OptionalVerdict<Allocation> guarded(Check check) {
    OptionalVerdict<Allocation> out;
    try {
        out.verdict = check();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::TooLarge) throw;
        out.skipped_reason = e.what();
    }
    return out;
}

}  // namespace

FairnessReport evaluate_fairness(const Instance& instance, const Allocation& allocation) {
    FairnessReport r;
    r.wef1 = check_wef1(instance, allocation);
    r.wwef1 = check_wwef1(instance, allocation);
    r.wef1_t = check_wef1_t(instance, allocation);
    r.non_wasteful = check_non_wasteful(instance, allocation);
    r.pareto_efficient = guarded([&] { return check_pareto_efficient(instance, allocation); });
    r.nonzero_social_welfare = guarded([&] { return check_nonzero_social_welfare(instance, allocation); });
    r.weighted_welfare_maximizing = guarded([&] { return check_weighted_welfare_maximizing(instance, allocation); });
    return r;
}

}  // namespace wefsub
