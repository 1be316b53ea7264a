#pragma once

#include <optional>
#include <string>

#include "wefsub/instance.hpp"

namespace wefsub {

// Witness for a failed pairwise criterion: agent i, envied agent j.
struct PairViolation {
    AgentId i;
    AgentId j;
};

// Agent `holder` has an item with zero marginal value that `beneficiary` values.
struct WasteViolation {
    AgentId holder;
    ItemId item;
    AgentId beneficiary;
};

template <class Witness>
struct Verdict {
    std::optional<Witness> violation;

    bool holds() const { return !violation.has_value(); }
    explicit operator bool() const { return holds(); }
};

// All three criteria skip i == j and pairs with X_j empty (v(empty) = 0 makes them vacuous).
Verdict<PairViolation> check_wef1(const Instance& instance, const Allocation& allocation);
Verdict<PairViolation> check_wwef1(const Instance& instance, const Allocation& allocation);
Verdict<PairViolation> check_wef1_t(const Instance& instance, const Allocation& allocation);

Verdict<WasteViolation> check_non_wasteful(const Instance& instance, const Allocation& allocation);

// Brute force over all n^m allocations; throw TooLarge above the enumeration limit.
// The witness is the lexicographically first allocation that beats the input.
Verdict<Allocation> check_pareto_efficient(const Instance& instance, const Allocation& allocation);
Verdict<Allocation> check_nonzero_social_welfare(const Instance& instance, const Allocation& allocation);
Verdict<Allocation> check_weighted_welfare_maximizing(const Instance& instance, const Allocation& allocation);

inline bool is_wef1(const Instance& in, const Allocation& a) { return check_wef1(in, a).holds(); }
inline bool is_wwef1(const Instance& in, const Allocation& a) { return check_wwef1(in, a).holds(); }
inline bool is_wef1_t(const Instance& in, const Allocation& a) { return check_wef1_t(in, a).holds(); }
inline bool is_non_wasteful(const Instance& in, const Allocation& a) { return check_non_wasteful(in, a).holds(); }
inline bool is_pareto_efficient(const Instance& in, const Allocation& a) {
    return check_pareto_efficient(in, a).holds();
}
inline bool is_nonzero_social_welfare(const Instance& in, const Allocation& a) {
    return check_nonzero_social_welfare(in, a).holds();
}

// A predicate that may be skipped because brute force would exceed the limit.
template <class Witness>
struct OptionalVerdict {
    std::optional<Verdict<Witness>> verdict;
    std::string skipped_reason;
};

struct FairnessReport {
    Verdict<PairViolation> wef1;
    Verdict<PairViolation> wwef1;
    Verdict<PairViolation> wef1_t;
    Verdict<WasteViolation> non_wasteful;
    OptionalVerdict<Allocation> pareto_efficient;
    OptionalVerdict<Allocation> nonzero_social_welfare;
    OptionalVerdict<Allocation> weighted_welfare_maximizing;
};

FairnessReport evaluate_fairness(const Instance& instance, const Allocation& allocation);

}  // namespace wefsub
