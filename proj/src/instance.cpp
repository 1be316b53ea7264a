#include "wefsub/instance.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "wefsub/errors.hpp"

namespace wefsub {

ItemMask to_mask(const ItemSet& items) {
    ItemMask mask = 0;
    for (ItemId g : items) mask |= ItemMask{1} << g;
    return mask;
}

ItemSet from_mask(ItemMask mask) {
    ItemSet items;
    while (mask) {
        items.push_back(static_cast<ItemId>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return items;
}

const char* valuation_kind_name(ValuationKind kind) {
    switch (kind) {
        case ValuationKind::Table: return "table";
        case ValuationKind::Additive: return "additive";
        case ValuationKind::BinaryAdditive: return "binary_additive";
        case ValuationKind::IdenticalItems: return "identical_items";
        case ValuationKind::CappedAdditive: return "capped_additive";
    }
    return "?";
}

std::optional<ValuationKind> parse_valuation_kind(std::string_view name) {
    for (auto kind : {ValuationKind::Table, ValuationKind::Additive, ValuationKind::BinaryAdditive,
                      ValuationKind::IdenticalItems, ValuationKind::CappedAdditive}) {
        if (name == valuation_kind_name(kind)) return kind;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Valuation

ValuationKind Valuation::kind() const {
    return static_cast<ValuationKind>(payload_.index());
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t count_approved(const std::vector<bool>& approved, const ItemSet& bundle) {
    return static_cast<std::size_t>(
        std::count_if(bundle.begin(), bundle.end(), [&](ItemId g) { return approved[g]; }));
}

}  // namespace

Rational Valuation::value(const ItemSet& bundle) const {
    return std::visit(
        overloaded{
            [&](const TableValuation& t) { return t.values[to_mask(bundle)]; },
            [&](const AdditiveValuation& a) {
                Rational sum = 0;
                for (ItemId g : bundle) sum += a.item_values[g];
                return sum;
            },
            [&](const BinaryAdditiveValuation& b) {
                return Rational(static_cast<unsigned long>(count_approved(b.approved, bundle)));
            },
            [&](const IdenticalItemsValuation& id) {
                return Rational(id.per_item * static_cast<unsigned long>(bundle.size()));
            },
            [&](const CappedAdditiveValuation& c) {
                return Rational(static_cast<unsigned long>(
                    std::min(c.cap, count_approved(c.approved, bundle))));
            },
        },
        payload_);
}

Rational Valuation::value_of_item(ItemId item) const {
    return value(ItemSet{item});
}

std::optional<std::vector<Rational>> Valuation::additive_values(std::size_t item_count) const {
    auto from_bits = [](const std::vector<bool>& bits) {
        std::vector<Rational> out;
        out.reserve(bits.size());
        for (bool b : bits) out.emplace_back(b ? 1 : 0);
        return out;
    };
    switch (kind()) {
        case ValuationKind::Additive: return std::get<AdditiveValuation>(payload_).item_values;
        case ValuationKind::BinaryAdditive:
            return from_bits(std::get<BinaryAdditiveValuation>(payload_).approved);
        case ValuationKind::IdenticalItems:
            return std::vector<Rational>(item_count, std::get<IdenticalItemsValuation>(payload_).per_item);
        case ValuationKind::CappedAdditive: {
            const auto& c = std::get<CappedAdditiveValuation>(payload_);
            if (c.cap >= static_cast<std::size_t>(std::count(c.approved.begin(), c.approved.end(), true))) {
                return from_bits(c.approved);
            }
            return std::nullopt;
        }
        case ValuationKind::Table: return std::nullopt;
    }
    return std::nullopt;
}

bool Valuation::operator==(const Valuation& other) const {
    if (bounded_ != other.bounded_ || supermodular_ != other.supermodular_) return false;
    if (kind() != other.kind()) return false;
    return std::visit(
        overloaded{
            [&](const TableValuation& t) { return t.values == std::get<TableValuation>(other.payload_).values; },
            [&](const AdditiveValuation& a) {
                return a.item_values == std::get<AdditiveValuation>(other.payload_).item_values;
            },
            [&](const BinaryAdditiveValuation& b) {
                return b.approved == std::get<BinaryAdditiveValuation>(other.payload_).approved;
            },
            [&](const IdenticalItemsValuation& id) {
                return id.per_item == std::get<IdenticalItemsValuation>(other.payload_).per_item;
            },
            [&](const CappedAdditiveValuation& c) {
                const auto& o = std::get<CappedAdditiveValuation>(other.payload_);
                return c.approved == o.approved && c.cap == o.cap;
            },
        },
        payload_);
}

Valuation make_table(std::vector<Rational> values, bool supermodular) {
    return Valuation(TableValuation{std::move(values)}, false, supermodular);
}
Valuation make_additive(std::vector<Rational> item_values) {
    return Valuation(AdditiveValuation{std::move(item_values)});
}
Valuation make_binary_additive(std::vector<bool> approved) {
    return Valuation(BinaryAdditiveValuation{std::move(approved)});
}
Valuation make_identical_items(Rational per_item) {
    return Valuation(IdenticalItemsValuation{std::move(per_item)});
}
Valuation make_capped_additive(std::vector<bool> approved, std::size_t cap) {
    return Valuation(CappedAdditiveValuation{std::move(approved), cap});
}

// ---------------------------------------------------------------------------
// WeightProfile, Allocation

WeightProfile::WeightProfile(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (!weights_.empty()) {
        min_ = *std::min_element(weights_.begin(), weights_.end());
        max_ = *std::max_element(weights_.begin(), weights_.end());
    }
}

Allocation Allocation::from_owners(std::size_t agent_count, const std::vector<AgentId>& owners) {
    Allocation a;
    a.bundles.resize(agent_count);
    for (ItemId g = 0; g < owners.size(); ++g) a.bundles[owners[g]].push_back(g);
    return a;
}

std::vector<AgentId> Allocation::owners(std::size_t item_count) const {
    std::vector<AgentId> out(item_count, 0);
    for (AgentId i = 0; i < bundles.size(); ++i) {
        for (ItemId g : bundles[i]) out[g] = i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive structural checks

namespace {

void require_check_size(std::size_t item_count, std::size_t limit, const char* what) {
    if (item_count > limit || item_count >= 63) {
        throw Error(ErrorKind::CheckTooLarge, std::string(what) + " check needs 2^" +
                                                  std::to_string(item_count) + " bundles; limit is m <= " +
                                                  std::to_string(limit));
    }
}

Rational mask_value(const Valuation& v, ItemMask mask) {
    if (v.kind() == ValuationKind::Table) return std::get<TableValuation>(v.payload()).values[mask];
    return v.value(from_mask(mask));
}

std::vector<Rational> all_bundle_values(const Valuation& v, std::size_t item_count) {
    std::vector<Rational> values(std::size_t{1} << item_count);
    for (ItemMask s = 0; s < values.size(); ++s) values[s] = mask_value(v, s);
    return values;
}

}  // namespace

// Single-item extensions suffice: A subset of B is reached by adding items one at a time.
std::optional<SetPairWitness> find_monotonicity_violation(const Valuation& v, std::size_t item_count,
                                                          std::size_t item_limit) {
    require_check_size(item_count, item_limit, "monotonicity");
    const auto values = all_bundle_values(v, item_count);
    for (ItemMask s = 0; s < values.size(); ++s) {
        for (std::size_t a = 0; a < item_count; ++a) {
            const ItemMask bit = ItemMask{1} << a;
            if (s & bit) continue;
            if (values[s] > values[s | bit]) return SetPairWitness{from_mask(s), from_mask(s | bit)};
        }
    }
    return std::nullopt;
}

std::optional<ItemSet> find_boundedness_violation(const Valuation& v, std::size_t item_count,
                                                  std::size_t item_limit) {
    require_check_size(item_count, item_limit, "boundedness");
    for (ItemMask s = 0; s < (ItemMask{1} << item_count); ++s) {
        if (mask_value(v, s) > static_cast<unsigned long>(std::popcount(s))) return from_mask(s);
    }
    return std::nullopt;
}

// Super-modularity is equivalent to v(S+a+b) + v(S) >= v(S+a) + v(S+b) for all S and
// distinct a, b outside S; the witness pair is (S+a, S+b).
std::optional<SetPairWitness> find_supermodularity_violation(const Valuation& v,
                                                             std::size_t item_count,
                                                             std::size_t item_limit) {
    require_check_size(item_count, item_limit, "super-modularity");
    const auto values = all_bundle_values(v, item_count);
    for (ItemMask s = 0; s < values.size(); ++s) {
        for (std::size_t a = 0; a < item_count; ++a) {
            const ItemMask ba = ItemMask{1} << a;
            if (s & ba) continue;
            for (std::size_t b = a + 1; b < item_count; ++b) {
                const ItemMask bb = ItemMask{1} << b;
                if (s & bb) continue;
                if (values[s | ba | bb] + values[s] < values[s | ba] + values[s | bb]) {
                    return SetPairWitness{from_mask(s | ba), from_mask(s | bb)};
                }
            }
        }
    }
    return std::nullopt;
}

bool is_supermodular(const Valuation& v, std::size_t item_count, std::size_t item_limit) {
    switch (v.kind()) {
        case ValuationKind::Additive:
        case ValuationKind::BinaryAdditive:
        case ValuationKind::IdenticalItems: return true;
        case ValuationKind::CappedAdditive: {
            const auto& c = std::get<CappedAdditiveValuation>(v.payload());
            const auto approved = static_cast<std::size_t>(std::count(c.approved.begin(), c.approved.end(), true));
            return c.cap == 0 || c.cap >= approved;
        }
        case ValuationKind::Table: return !find_supermodularity_violation(v, item_count, item_limit);
    }
    return false;
}

bool is_bounded(const Valuation& v, std::size_t item_count, std::size_t item_limit) {
    switch (v.kind()) {
        case ValuationKind::BinaryAdditive:
        case ValuationKind::CappedAdditive: return true;
        case ValuationKind::IdenticalItems: return std::get<IdenticalItemsValuation>(v.payload()).per_item <= 1;
        case ValuationKind::Additive: {
            const auto& vals = std::get<AdditiveValuation>(v.payload()).item_values;
            return std::all_of(vals.begin(), vals.end(), [](const Rational& x) { return x <= 1; });
        }
        case ValuationKind::Table: return !find_boundedness_violation(v, item_count, item_limit);
    }
    return false;
}

bool all_bounded(const Instance& instance) {
    return std::all_of(instance.valuations.begin(), instance.valuations.end(), [&](const Valuation& v) {
        return is_bounded(v, instance.item_count, 16);
    });
}

// ---------------------------------------------------------------------------
// Validation

namespace {

using Violation = ValidationError::Violation;

std::string bundle_text(const ItemSet& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
    return out + "}";
}

void check_payload(const Valuation& v, std::size_t m, const ValidationLimits& limits, const std::string& who,
                   std::vector<Violation>& out) {
    auto bad = [&](ErrorKind k, const std::string& d) { out.push_back({k, who + ": " + d}); };
    auto non_negative = [&](const std::vector<Rational>& xs) {
        for (const auto& x : xs) {
            if (x < 0) {
                bad(ErrorKind::InvalidInstance, "negative value " + to_string(x));
                return false;
            }
        }
        return true;
    };

    switch (v.kind()) {
        case ValuationKind::Table: {
            const auto& t = std::get<TableValuation>(v.payload());
            if (m > limits.table_item_limit) {
                bad(ErrorKind::CheckTooLarge, "table valuation over " + std::to_string(m) + " items exceeds limit " +
                                                  std::to_string(limits.table_item_limit));
                return;
            }
            if (t.values.size() != (std::size_t{1} << m)) {
                bad(ErrorKind::InvalidInstance, "table must list all 2^m bundles");
                return;
            }
            if (!non_negative(t.values)) return;
            if (t.values[0] != 0) bad(ErrorKind::InvalidInstance, "value of the empty bundle must be 0");
            if (auto w = find_monotonicity_violation(v, m, limits.table_item_limit)) {
                bad(ErrorKind::NonMonotoneValuation, "v(" + bundle_text(w->a) + ") = " + to_string(v.value(w->a)) +
                                                         " > v(" + bundle_text(w->b) + ") = " + to_string(v.value(w->b)));
            }
            break;
        }
        case ValuationKind::Additive: {
            const auto& a = std::get<AdditiveValuation>(v.payload());
            if (a.item_values.size() != m) bad(ErrorKind::InvalidInstance, "expected one value per item");
            else non_negative(a.item_values);
            break;
        }
        case ValuationKind::BinaryAdditive:
            if (std::get<BinaryAdditiveValuation>(v.payload()).approved.size() != m)
                bad(ErrorKind::InvalidInstance, "expected one value per item");
            break;
        case ValuationKind::IdenticalItems:
            if (std::get<IdenticalItemsValuation>(v.payload()).per_item < 0)
                bad(ErrorKind::InvalidInstance, "negative per-item value");
            break;
        case ValuationKind::CappedAdditive:
            if (std::get<CappedAdditiveValuation>(v.payload()).approved.size() != m)
                bad(ErrorKind::InvalidInstance, "expected one value per item");
            break;
    }
}

void check_flags(const Valuation& v, std::size_t m, const ValidationLimits& limits, const std::string& who,
                 std::vector<Violation>& out) {
    const bool needs_exhaustive = v.kind() == ValuationKind::Table;
    if ((v.bounded() || v.declared_supermodular()) && needs_exhaustive && m > limits.exhaustive_item_limit) {
        out.push_back({ErrorKind::CheckTooLarge, who + ": exhaustive flag check requested with m = " +
                                                     std::to_string(m) + " above limit " +
                                                     std::to_string(limits.exhaustive_item_limit)});
        return;
    }
    if (v.bounded()) {
        if (needs_exhaustive) {
            if (auto w = find_boundedness_violation(v, m, limits.exhaustive_item_limit)) {
                out.push_back({ErrorKind::UnboundedValuation,
                               who + ": v(" + bundle_text(*w) + ") = " + to_string(v.value(*w)) + " > |A|"});
            }
        } else if (!is_bounded(v, m)) {
            out.push_back({ErrorKind::UnboundedValuation, who + ": some item is worth more than 1"});
        }
    }
    if (v.declared_supermodular()) {
        if (needs_exhaustive) {
            if (auto w = find_supermodularity_violation(v, m, limits.exhaustive_item_limit)) {
                out.push_back({ErrorKind::NotSupermodular,
                               who + ": violated for A = " + bundle_text(w->a) + ", B = " + bundle_text(w->b)});
            }
        } else if (!is_supermodular(v, m)) {
            out.push_back({ErrorKind::NotSupermodular, who + ": capped valuation is not super-modular"});
        }
    }
}

}  // namespace

Instance validate_instance(InstanceDescription raw, const ValidationLimits& limits) {
    std::vector<Violation> violations;
    const std::size_t n = raw.valuations.size();
    const std::size_t m = raw.item_count;

    if (n == 0) violations.push_back({ErrorKind::InvalidInstance, "at least one agent is required"});
    if (raw.weights.size() != n) {
        violations.push_back({ErrorKind::InvalidInstance, "expected " + std::to_string(n) + " weights, got " +
                                                              std::to_string(raw.weights.size())});
    }
    if (m >= 63) violations.push_back({ErrorKind::InvalidInstance, "at most 62 items are supported"});

    Rational total = 0;
    for (std::size_t i = 0; i < raw.weights.size(); ++i) {
        if (raw.weights[i] <= 0) {
            violations.push_back({ErrorKind::NonPositiveWeight,
                                  "weight of agent " + std::to_string(i + 1) + " is " + to_string(raw.weights[i])});
        }
        total += raw.weights[i];
    }
    if (!raw.weights.empty() && total != 1) {
        violations.push_back({ErrorKind::WeightSum, "weights sum to " + to_string(total) + ", not 1"});
    }

    if (m < 63) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::string who = "agent " + std::to_string(i + 1);
            const std::size_t before = violations.size();
            check_payload(raw.valuations[i], m, limits, who, violations);
            if (violations.size() == before) check_flags(raw.valuations[i], m, limits, who, violations);
        }
    }

    if (!raw.agent_labels.empty() && raw.agent_labels.size() != n)
        violations.push_back({ErrorKind::InvalidInstance, "agent label count mismatch"});
    if (!raw.item_labels.empty() && raw.item_labels.size() != m)
        violations.push_back({ErrorKind::InvalidInstance, "item label count mismatch"});

    if (!violations.empty()) throw ValidationError(std::move(violations));

    Instance inst;
    inst.item_count = m;
    inst.weights = WeightProfile(std::move(raw.weights));
    inst.valuations = std::move(raw.valuations);
    inst.agent_labels = std::move(raw.agent_labels);
    inst.item_labels = std::move(raw.item_labels);
    if (inst.agent_labels.empty()) {
        for (std::size_t i = 0; i < n; ++i) inst.agent_labels.push_back("a" + std::to_string(i + 1));
    }
    if (inst.item_labels.empty()) {
        for (std::size_t g = 0; g < m; ++g) inst.item_labels.push_back("g" + std::to_string(g + 1));
    }
    return inst;
}

void validate_allocation(const Instance& instance, const Allocation& allocation) {
    if (allocation.agent_count() != instance.agent_count()) {
        throw Error(ErrorKind::InvalidAllocation, "expected " + std::to_string(instance.agent_count()) +
                                                      " bundles, got " + std::to_string(allocation.agent_count()));
    }
    std::vector<int> seen(instance.item_count, 0);
    for (const auto& bundle : allocation.bundles) {
        if (!std::is_sorted(bundle.begin(), bundle.end()))
            throw Error(ErrorKind::InvalidAllocation, "bundle items must be sorted");
        for (ItemId g : bundle) {
            if (g >= instance.item_count)
                throw Error(ErrorKind::InvalidAllocation, "unknown item index " + std::to_string(g));
            if (seen[g]++)
                throw Error(ErrorKind::InvalidAllocation, "item " + instance.item_labels[g] + " allocated twice");
        }
    }
    for (ItemId g = 0; g < instance.item_count; ++g) {
        if (!seen[g]) throw Error(ErrorKind::InvalidAllocation, "item " + instance.item_labels[g] + " is unallocated");
    }
}

void validate_outcome(const Instance& instance, const Outcome& outcome) {
    validate_allocation(instance, outcome.allocation);
    if (outcome.payments.size() != instance.agent_count())
        throw Error(ErrorKind::InvalidOutcome, "expected one payment per agent");
    for (const auto& p : outcome.payments) {
        if (p < 0) throw Error(ErrorKind::InvalidOutcome, "negative payment " + to_string(p));
    }
}

// ---------------------------------------------------------------------------
// Evaluation

Rational value(const Instance& instance, AgentId agent, const ItemSet& bundle) {
    return instance.valuations[agent].value(bundle);
}

Rational weighted_social_welfare(const Instance& instance, const Allocation& allocation) {
    Rational sw = 0;
    for (AgentId i = 0; i < instance.agent_count(); ++i)
        sw += instance.weight(i) * value(instance, i, allocation[i]);
    return sw;
}

Rational unweighted_social_welfare(const Instance& instance, const Allocation& allocation) {
    Rational sw = 0;
    for (AgentId i = 0; i < instance.agent_count(); ++i) sw += value(instance, i, allocation[i]);
    return sw;
}

std::vector<std::vector<Rational>> bundle_value_matrix(const Instance& instance, const Allocation& allocation) {
    const std::size_t n = instance.agent_count();
    std::vector<std::vector<Rational>> values(n, std::vector<Rational>(n));
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = 0; j < n; ++j) values[i][j] = value(instance, i, allocation[j]);
    }
    return values;
}

std::string format_bundle(const Instance& instance, const ItemSet& bundle) {
    std::string out = "{";
    for (std::size_t k = 0; k < bundle.size(); ++k) {
        if (k) out += ",";
        out += bundle[k] < instance.item_labels.size() ? instance.item_labels[bundle[k]]
                                                       : "g" + std::to_string(bundle[k] + 1);
    }
    return out + "}";
}

std::string agent_label(const Instance& instance, AgentId i) {
    return i < instance.agent_labels.size() ? instance.agent_labels[i] : "a" + std::to_string(i + 1);
}

}  // namespace wefsub
