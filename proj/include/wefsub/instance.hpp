#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wefsub/rational.hpp"

namespace wefsub {

using AgentId = std::size_t;
using ItemId = std::size_t;

// Sorted, duplicate-free list of item indices.
using ItemSet = std::vector<ItemId>;

// Bitmask over items; only used where m is small enough (table valuations, checks).
using ItemMask = std::uint64_t;

ItemMask to_mask(const ItemSet& items);
ItemSet from_mask(ItemMask mask);

// ---------------------------------------------------------------------------
// Valuations

enum class ValuationKind { Table, Additive, BinaryAdditive, IdenticalItems, CappedAdditive };

const char* valuation_kind_name(ValuationKind kind);
std::optional<ValuationKind> parse_valuation_kind(std::string_view name);

// Explicit value for every bundle, indexed by item bitmask.
struct TableValuation {
    std::vector<Rational> values;
};

struct AdditiveValuation {
    std::vector<Rational> item_values;
};

struct BinaryAdditiveValuation {
    std::vector<bool> approved;
};

// Every item is worth the same constant to this agent.
struct IdenticalItemsValuation {
    Rational per_item;
};

// min(cap, number of approved items held): the uniform-matroid rank.
struct CappedAdditiveValuation {
    std::vector<bool> approved;
    std::size_t cap = 0;
};

class Valuation {
public:
    using Payload = std::variant<TableValuation, AdditiveValuation, BinaryAdditiveValuation,
                                 IdenticalItemsValuation, CappedAdditiveValuation>;

    Valuation() = default;
    Valuation(Payload payload, bool bounded = false, bool supermodular = false)
        : payload_(std::move(payload)), bounded_(bounded), supermodular_(supermodular) {}

    ValuationKind kind() const;
    const Payload& payload() const { return payload_; }

    // Declared flags; validate_instance verifies them.
    bool bounded() const { return bounded_; }
    bool declared_supermodular() const { return supermodular_; }

    Rational value(const ItemSet& bundle) const;
    Rational value_of_item(ItemId item) const;

    // Per-item values when the valuation is additive (Additive, BinaryAdditive,
    // IdenticalItems, or CappedAdditive with a cap that never binds).
    std::optional<std::vector<Rational>> additive_values(std::size_t item_count) const;

    bool operator==(const Valuation& other) const;

private:
    Payload payload_;
    bool bounded_ = false;
    bool supermodular_ = false;
};

Valuation make_table(std::vector<Rational> values, bool supermodular = false);
Valuation make_additive(std::vector<Rational> item_values);
Valuation make_binary_additive(std::vector<bool> approved);
Valuation make_identical_items(Rational per_item);
Valuation make_capped_additive(std::vector<bool> approved, std::size_t cap);

// ---------------------------------------------------------------------------
// Weights, instances, allocations, outcomes

class WeightProfile {
public:
    WeightProfile() = default;
    explicit WeightProfile(std::vector<Rational> weights);

    std::size_t size() const { return weights_.size(); }
    const Rational& operator[](AgentId i) const { return weights_[i]; }
    const std::vector<Rational>& values() const { return weights_; }
    const Rational& min() const { return min_; }
    const Rational& max() const { return max_; }

    bool operator==(const WeightProfile& other) const { return weights_ == other.weights_; }

private:
    std::vector<Rational> weights_;
    Rational min_;
    Rational max_;
};

struct Instance {
    std::size_t item_count = 0;
    WeightProfile weights;
    std::vector<Valuation> valuations;
    std::vector<std::string> agent_labels;
    std::vector<std::string> item_labels;

    std::size_t agent_count() const { return valuations.size(); }
    const Rational& weight(AgentId i) const { return weights[i]; }

    bool operator==(const Instance& other) const = default;
};

struct Allocation {
    std::vector<ItemSet> bundles;

    std::size_t agent_count() const { return bundles.size(); }
    const ItemSet& operator[](AgentId i) const { return bundles[i]; }

    // owners[g] = agent holding item g
    static Allocation from_owners(std::size_t agent_count, const std::vector<AgentId>& owners);
    std::vector<AgentId> owners(std::size_t item_count) const;

    bool operator==(const Allocation& other) const = default;
};

struct Outcome {
    Allocation allocation;
    std::vector<Rational> payments;

    bool operator==(const Outcome& other) const = default;
};

// ---------------------------------------------------------------------------
// Validation and evaluation

struct ValidationLimits {
    // Exhaustive (2^m) checks of monotonicity, boundedness and super-modularity.
    std::size_t exhaustive_item_limit = 12;
    // Explicit table valuations store 2^m entries.
    std::size_t table_item_limit = 16;
};

// Raw description prior to validation; io.cpp fills this from the file format.
struct InstanceDescription {
    std::size_t item_count = 0;
    std::vector<Rational> weights;
    std::vector<Valuation> valuations;
    std::vector<std::string> agent_labels;
    std::vector<std::string> item_labels;
};

// Throws ValidationError listing every violation.
Instance validate_instance(InstanceDescription raw, const ValidationLimits& limits = {});

// Throws Error(InvalidAllocation) unless bundles partition the item set.
void validate_allocation(const Instance& instance, const Allocation& allocation);
void validate_outcome(const Instance& instance, const Outcome& outcome);

Rational value(const Instance& instance, AgentId agent, const ItemSet& bundle);

// SW(X) = sum_i w_i * v_i(X_i)
Rational weighted_social_welfare(const Instance& instance, const Allocation& allocation);
// V(X) = sum_i v_i(X_i)
Rational unweighted_social_welfare(const Instance& instance, const Allocation& allocation);

// values[i][j] = v_i(X_j)
std::vector<std::vector<Rational>> bundle_value_matrix(const Instance& instance,
                                                       const Allocation& allocation);

// Exhaustive structural checks over all 2^m bundles; each returns a witness
// pair (A, B) on failure. Throws CheckTooLarge above the item limit.
struct SetPairWitness {
    ItemSet a;
    ItemSet b;
};
std::optional<SetPairWitness> find_monotonicity_violation(const Valuation& v, std::size_t item_count,
                                                          std::size_t item_limit = 12);
std::optional<ItemSet> find_boundedness_violation(const Valuation& v, std::size_t item_count,
                                                  std::size_t item_limit = 12);
std::optional<SetPairWitness> find_supermodularity_violation(const Valuation& v,
                                                             std::size_t item_count,
                                                             std::size_t item_limit = 12);

// Structural shortcut first, exhaustive check otherwise.
bool is_supermodular(const Valuation& v, std::size_t item_count, std::size_t item_limit = 12);
bool is_bounded(const Valuation& v, std::size_t item_count, std::size_t item_limit = 12);
bool all_bounded(const Instance& instance);

std::string format_bundle(const Instance& instance, const ItemSet& bundle);
std::string agent_label(const Instance& instance, AgentId i);

}  // namespace wefsub
