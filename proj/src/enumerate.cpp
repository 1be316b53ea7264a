#include "wefsub/enumerate.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "wefsub/errors.hpp"

namespace wefsub {

std::uint64_t enumeration_limit() {
    if (const char* env = std::getenv("WEFSUB_ENUM_LIMIT")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && parsed > 0) return parsed;
    }
    return 2'000'000;
}

std::uint64_t allocation_count(std::size_t agents, std::size_t items) {
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < items; ++k) {
        if (agents != 0 && total > std::numeric_limits<std::uint64_t>::max() / agents)
            return std::numeric_limits<std::uint64_t>::max();
        total *= agents;
    }
    return total;
}

void require_enumerable(std::size_t agents, std::size_t items, const char* what) {
    const std::uint64_t count = allocation_count(agents, items);
    if (count > enumeration_limit()) {
        throw Error(ErrorKind::TooLarge, std::string(what) + " needs " + std::to_string(agents) + "^" +
                                             std::to_string(items) + " allocations; limit is " +
                                             std::to_string(enumeration_limit()));
    }
}

std::vector<Allocation> enumerate_allocations(const Instance& instance) {
    std::vector<Allocation> out;
    for_each_allocation(instance, [&](const Allocation& a) {
        out.push_back(a);
        return true;
    });
    return out;
}

}  // namespace wefsub
