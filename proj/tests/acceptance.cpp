// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "support/generators.hpp"
#include "wefsub/allocators.hpp"
#include "wefsub/envy.hpp"
#include "wefsub/errors.hpp"
#include "wefsub/fairness.hpp"
#include "wefsub/mechanisms.hpp"
#include "wefsub/mef.hpp"
#include "wefsub/oracle.hpp"

using namespace wefsub;
using namespace wefsub::testing;

namespace {

struct Tally {
    long checked = 0;
    long failed = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        ++checked;
        if (!ok && failed++ == 0) first_failure = what;
    }
};

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(Tally&)> body;
};

std::vector<Rational> ints(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

Rational ratio(const Instance& in) { return Rational(in.weights.max() / in.weights.min()); }
Rational count(std::size_t k) { return Rational(static_cast<unsigned long>(k)); }

std::string describe(const Instance& in, const Allocation& a) {
    std::string out = "(";
    for (AgentId i = 0; i < a.agent_count(); ++i) out += (i ? ", " : "") + format_bundle(in, a[i]);
    return out + ")";
}

// Suite 2: random (instance, allocation) pairs; envy-freeable ones keep their subsidies for criterion 8.
struct SuitePair {
    Instance instance;
    Allocation allocation;
    std::optional<SubsidyVector> subsidy;
};

std::vector<SuitePair>& suite2() {
    static std::vector<SuitePair> pairs = [] {
        std::vector<SuitePair> out;
        Rng rng(20240601);
        for (int k = 0; k < 10000; ++k) {
            const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 4));
            const std::size_t m = static_cast<std::size_t>(uniform(rng, 0, 5));
            Instance in = random_additive(rng, n, m, 6);
            Allocation a = random_allocation(rng, n, m);
            out.push_back({std::move(in), std::move(a), std::nullopt});
        }
        return out;
    }();
    return pairs;
}

void ac1(Tally& t) {
    const Instance in = fixtures::example1_inheritance();
    const Allocation a = fixtures::example1_all_to_spouse();
    const Allocation b = fixtures::example1_house_and_car();
    t.expect(is_weighted_envy_freeable(in, a, Verify::On), "allocation A envy-freeable");
    t.expect(is_weighted_envy_freeable(in, b, Verify::On), "allocation B envy-freeable");
    t.expect(min_subsidies(in, a).payments == ints({0, 65, 65}), "subsidies for A = (0, 65, 65)");
    t.expect(min_subsidies(in, b).payments == ints({0, 0, 0}), "subsidies for B = (0, 0, 0)");
}

void ac2(Tally& t) {
    for (auto& pair : suite2()) {
        const Instance& in = pair.instance;
        const Allocation& a = pair.allocation;
        const bool no_cycle = !has_positive_cycle(build_envy_graph(in, a));
        const bool stable = is_reassignment_stable(in, a);
        const bool brute = oracle_envy_freeable(in, a);
        t.expect(no_cycle == stable && stable == brute, "routes disagree on " + describe(in, a));
        if (no_cycle) {
            pair.subsidy = min_subsidies(in, a);
            t.expect(is_weighted_envy_free(in, Outcome{a, pair.subsidy->payments}), "subsidies not WEF");
        }
    }
}

void ac3(Tally& t) {
    Rng rng(31337);
    for (int k = 0; k < 1000; ++k) {
        const Instance in = random_identical_additive(rng, static_cast<std::size_t>(uniform(rng, 1, 5)),
                                                      static_cast<std::size_t>(uniform(rng, 0, 12)));
        const auto r = alg1_identical_additive(in);
        t.expect(is_weighted_envy_freeable(in, r.allocation, Verify::On), "alg1 output not envy-freeable");
        t.expect(r.subsidy->max_payment() <= 1, "alg1 pays more than 1");
    }
    for (int k = 0; k < 1000; ++k) {
        const Instance in = random_binary(rng, static_cast<std::size_t>(uniform(rng, 1, 5)),
                                          static_cast<std::size_t>(uniform(rng, 0, 12)));
        const auto r = alg2_binary_additive(in);
        t.expect(is_weighted_envy_freeable(in, r.allocation, Verify::On), "alg2 output not envy-freeable");
        t.expect(is_non_wasteful(in, r.allocation), "alg2 output wasteful");
        t.expect(r.subsidy->max_payment() <= ratio(in), "alg2 pays more than w_max/w_min");
        for (AgentId i = 0; i < in.agent_count(); ++i) {
            if (value(in, i, r.allocation[i]) >= in.weight(i) / in.weights.min() - 1) {
                t.expect(r.subsidy->payments[i] <= 1, "alg2 corollary violated");
            }
        }
    }
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 5));
        const Instance in = random_identical_items(rng, n, static_cast<std::size_t>(uniform(rng, 0, 12)));
        const auto r = alg3_identical_items(in);
        t.expect(is_weighted_envy_freeable(in, r.allocation, Verify::On), "alg3 output not envy-freeable");
        t.expect(r.subsidy->max_payment() <= count(n - 1) * ratio(in) + 1, "alg3 bound exceeded");
    }
}

void ac4(Tally& t) {
    const auto value_of = [](const std::optional<MinMaxSubsidy>& best) { return best ? best->value : Rational(-1); };
    const auto non_wasteful = [](const Instance& in, const Allocation& a) { return is_non_wasteful(in, a); };
    const auto nonzero = [](const Instance& in, const Allocation& a) { return is_nonzero_social_welfare(in, a); };

    t.expect(value_of(oracle_min_max_subsidy(fixtures::thm_lb_identical_additive())) == 1, "identical additive != 1");

    const Instance binary = fixtures::thm_lb_binary_additive();
    t.expect(ratio(binary) == 2 && value_of(oracle_min_max_subsidy(binary)) == 2, "binary additive != 2");

    const FixtureParams p;
    const Instance matroidal = fixtures::thm_lb_matroidal(p);
    t.expect(value_of(oracle_min_max_subsidy(matroidal, non_wasteful)) == count(p.cap) * (ratio(matroidal) - 1) &&
                 count(p.cap) * (ratio(matroidal) - 1) == 6,
             "matroidal != 6");

    const Instance general = fixtures::prop_lb_general(p);
    t.expect(value_of(oracle_min_max_subsidy(general, nonzero)) == (count(general.item_count) - p.epsilon) * ratio(general),
             "general != (m - eps) w_max/w_min");

    const Instance items = fixtures::thm_lb_identical_items(p, 3);
    const Rational v1 = std::get<IdenticalItemsValuation>(items.valuations[0].payload()).per_item;
    const Rational forced = items.weight(0) / items.weight(2) * v1 * 2;
    const Rational epsilon = 2 * ratio(items) - forced;
    t.expect(value_of(oracle_min_max_subsidy(items)) >= 2 * ratio(items) - epsilon, "identical items below bound");

    for (const char* name : {"thm-lb-identical-additive", "thm-lb-binary-additive", "thm-lb-matroidal",
                             "prop-lb-general", "thm-lb-identical-items"}) {
        t.expect(verify_fixture(name).passed(), std::string("fixture ") + name);
    }
}

void ac5(Tally& t) {
    const Instance in = fixtures::example_incompatibility();
    t.expect(!is_weighted_envy_freeable(in, brute_force_weighted_sw_max(in), Verify::On), "SW-max allocation envy-freeable");
    int non_wasteful = 0;
    for (const auto& a : enumerate_allocations(in)) {
        if (!is_non_wasteful(in, a)) continue;
        ++non_wasteful;
        t.expect(!is_weighted_envy_freeable(in, a, Verify::On), "non-wasteful allocation envy-freeable");
    }
    t.expect(non_wasteful == 2, "one-item-each partition has two assignments");
    t.expect(!oracle_envy_freeable(in, Allocation{{{0}, {1}}}) && !oracle_envy_freeable(in, Allocation{{{1}, {0}}}),
             "a permutation of the one-each partition is envy-freeable");

    const Instance two = fixtures::thm_additive_incompat();
    for (const auto& a : enumerate_allocations(two)) {
        t.expect(!(is_weighted_envy_freeable(two, a, Verify::On) && is_wwef1(two, a)), "envy-freeable and WWEF1");
    }
    t.expect(value(two, 1, {0, 1}) / two.weight(1) - value(two, 1, {0}) / two.weight(1) == 150 &&
                 value(two, 1, {0}) / two.weight(1) == 150,
             "150");
    t.expect(value(two, 1, {0, 1}) / two.weight(0) == 200, "200 (agent 2 view of M held by agent 1)");
    t.expect(value(two, 0, {0}) / two.weight(0) == 200, "200 (agent 1 after one transfer)");
    t.expect(value(two, 0, {0, 1}) / two.weight(1) == 600, "600");
    t.expect(Rational(150) < 200 && Rational(200) < 600, "strict inequalities");
    t.expect(verify_fixture("example-incompatibility").passed() && verify_fixture("thm-additive-incompat").passed(),
             "incompatibility fixtures");
}

void ac6(Tally& t) {
    Rng rng(4242);
    for (int k = 0; k < 200; ++k) {
        const Instance in = random_supermodular(rng, static_cast<std::size_t>(uniform(rng, 1, 3)),
                                                static_cast<std::size_t>(uniform(rng, 0, 6)), 5);
        const VcgOutcome out = vcg_with_upfront_subsidy(in);
        t.expect(is_weighted_envy_free(in, out.outcome()), "VCG outcome not WEF");
        for (AgentId i = 0; i < in.agent_count(); ++i) {
            t.expect(value(in, i, out.allocation[i]) >= out.vcg_payments[i], "VCG individual rationality");
            for (AgentId j = 0; j < in.agent_count(); ++j) {
                if (j != i) t.expect(out.vcg_payments[i] >= value(in, j, out.allocation[i]), "q_i >= v_j(X_i)");
            }
        }
    }
    int done = 0;
    while (done < 1000) {
        const std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 8));
        const Instance in = random_additive(rng, 2, m, 9);
        const ItemSet all = from_mask((ItemMask{1} << m) - 1);
        if (value(in, 0, all) == 0 && value(in, 1, all) == 0) continue;
        ++done;
        const auto r = biased_weighted_adjusted_winner(in);
        t.expect(is_wef1_t(in, r.allocation), "adjusted winner not WEF1-T");
        t.expect(is_weighted_envy_freeable(in, r.allocation, Verify::On), "adjusted winner not envy-freeable");
    }
    const Instance picking = fixtures::sec6_picking_sequence();
    const auto r = biased_weighted_adjusted_winner(picking);
    t.expect(r.allocation == Allocation{{{}, {0}}}, "picking counterexample: item not with agent 2");
    t.expect(is_weighted_envy_freeable(picking, r.allocation, Verify::On), "picking counterexample not envy-freeable");
    t.expect(!is_weighted_envy_freeable(picking, Allocation{{{0}, {}}}), "picking-sequence allocation envy-freeable");
}

void ac7(Tally& t) {
    Rng rng(777);
    int done = 0;
    int regimes[3] = {0, 0, 0};
    while (done < 500) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 4));
        const std::size_t m = static_cast<std::size_t>(uniform(rng, 0, 5));
        const Instance in = random_additive(rng, n, m, 6);
        const Allocation a = random_allocation(rng, n, m);
        if (!is_weighted_envy_freeable(in, a)) continue;
        const SubsidyVector base = min_subsidies(in, a);
        const Rational total = base.total();
        Rational budget;
        switch (done % 3) {
            case 0: budget = total * rational(uniform(rng, 0, 9), 10); break;
            case 1: budget = total; break;
            default: budget = total + rational(uniform(rng, 1, 20), uniform(rng, 1, 4)); break;
        }
        ++done;
        const MefResult r = allocate_budget_mef(in, a, budget);
        ++regimes[static_cast<int>(r.regime)];
        const Outcome out{a, r.payments};
        t.expect(std::accumulate(r.payments.begin(), r.payments.end(), Rational(0)) == budget, "payments != budget");
        t.expect(is_mef(in, out), "not MEF");
        if (r.regime == BudgetRegime::Exact) t.expect(r.payments == base.payments, "exact regime != min subsidies");
        if (r.regime == BudgetRegime::Surplus) t.expect(is_weighted_envy_free(in, out), "surplus outcome not WEF");
    }
    t.expect(regimes[0] > 0 && regimes[1] > 0 && regimes[2] > 0, "not every regime exercised");
}

void ac8(Tally& t) {
    auto& pairs = suite2();
    if (!pairs.front().subsidy && std::none_of(pairs.begin(), pairs.end(), [](const SuitePair& p) { return p.subsidy; })) {
        for (auto& p : pairs) {
            if (is_weighted_envy_freeable(p.instance, p.allocation)) p.subsidy = min_subsidies(p.instance, p.allocation);
        }
    }
    for (const auto& p : pairs) {
        if (!p.subsidy) continue;
        for (AgentId i = 0; i < p.instance.agent_count(); ++i) {
            if (p.subsidy->payments[i] == 0) continue;
            Outcome less{p.allocation, p.subsidy->payments};
            less.payments[i] /= 2;
            t.expect(!is_weighted_envy_free(p.instance, less), "halved payment still WEF");
        }
    }
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "inheritance example subsidies (0,65,65) and (0,0,0), both envy-freeable", 1, ac1},
        {2, "three envy-freeability routes agree on 10000 random pairs", 60, ac2},
        {3, "Alg1/Alg2/Alg3 subsidy upper bounds on 3x1000 random instances", 120, ac3},
        {4, "lower-bound fixtures reproduced by exhaustive min-max subsidy", 30, ac4},
        {5, "incompatibility results and their arithmetic witnesses", 1, ac5},
        {6, "VCG on 200 super-modular instances; adjusted winner on 1000 instances", 120, ac6},
        {7, "MEF budget splits on 500 pairs across all regimes", 60, ac7},
        {8, "halving any positive minimum subsidy breaks weighted envy-freeness", 60, ac8},
    };
    bool all_passed = true;
    for (const auto& c : criteria) {
        Tally tally;
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.body(tally);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < c.budget_seconds;
        const bool passed = error.empty() && tally.failed == 0 && tally.checked > 0 && in_time;
        all_passed = all_passed && passed;
        std::ostringstream line;
        line << "AC" << c.id << ' ' << (passed ? "PASS" : "FAIL") << "  " << c.title << "  [" << tally.checked
             << " checks, " << tally.failed << " failed, " << seconds << " s / " << c.budget_seconds << " s]";
        if (!error.empty()) line << "  error: " << error;
        if (tally.failed) line << "  first failure: " << tally.first_failure;
        if (!in_time) line << "  over time budget";
        std::puts(line.str().c_str());
    }
    return all_passed ? 0 : 1;
}
