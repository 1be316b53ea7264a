#pragma once

#include <cstdint>
#include <vector>

#include "wefsub/instance.hpp"

namespace wefsub {

// Upper bound on n^m for brute-force loops. Defaults to 2,000,000 and can be
// overridden with the WEFSUB_ENUM_LIMIT environment variable.
std::uint64_t enumeration_limit();

// n^m, saturating at UINT64_MAX.
std::uint64_t allocation_count(std::size_t agents, std::size_t items);

// Throws TooLarge when agents^items exceeds the enumeration limit.
void require_enumerable(std::size_t agents, std::size_t items, const char* what);

// Visits every owner vector in lexicographic order (item 0 most significant).
// fn(const std::vector<AgentId>& owners) returns false to stop early.
template <class Fn>
void for_each_owner_vector(std::size_t agents, std::size_t items, Fn&& fn) {
    if (agents == 0) {
        if (items == 0) fn(std::vector<AgentId>{});
        return;
    }
    std::vector<AgentId> owners(items, 0);
    while (true) {
        if (!fn(static_cast<const std::vector<AgentId>&>(owners))) return;
        std::size_t pos = items;
        while (pos > 0) {
            --pos;
            if (++owners[pos] < agents) break;
            owners[pos] = 0;
            if (pos == 0) return;
        }
        if (items == 0) return;
    }
}

// Every complete allocation of the instance, lexicographic by owner vector.
// fn(const Allocation&) returns false to stop early. Throws TooLarge.
template <class Fn>
void for_each_allocation(const Instance& instance, Fn&& fn) {
    require_enumerable(instance.agent_count(), instance.item_count, "allocation enumeration");
    for_each_owner_vector(instance.agent_count(), instance.item_count, [&](const std::vector<AgentId>& owners) {
        return fn(Allocation::from_owners(instance.agent_count(), owners));
    });
}

std::vector<Allocation> enumerate_allocations(const Instance& instance);

}  // namespace wefsub
