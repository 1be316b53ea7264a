#include "doctest.h"

#include "support/generators.hpp"
#include "wefsub/envy.hpp"
#include "wefsub/errors.hpp"
#include "wefsub/fairness.hpp"
#include "wefsub/mechanisms.hpp"
#include "wefsub/oracle.hpp"

using namespace wefsub;
using namespace wefsub::testing;

namespace {

std::vector<Rational> ints(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

ErrorKind error_kind(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error");
    return ErrorKind::InternalInconsistency;
}

void check_vcg(const Instance& in, const VcgOutcome& out) {
    const std::size_t n = in.agent_count();
    for (AgentId i = 0; i < n; ++i) {
        const Rational own = value(in, i, out.allocation[i]);
        CHECK(own >= out.vcg_payments[i]);
        for (AgentId j = 0; j < n; ++j) {
            if (j != i) CHECK(out.vcg_payments[i] >= value(in, j, out.allocation[i]));
        }
        CHECK(out.net_payments[i] >= 0);
        CHECK(out.net_payments[i] == out.upfront_constant * in.weight(i) - out.vcg_payments[i]);
    }
    CHECK(is_weighted_envy_free(in, out.outcome()));
}

Instance with_valuation(const Instance& in, AgentId i, Valuation v) {
    InstanceDescription raw;
    raw.item_count = in.item_count;
    raw.weights = in.weights.values();
    raw.valuations = in.valuations;
    raw.valuations[i] = std::move(v);
    return validate_instance(std::move(raw));
}

// Agent 1's share of g_d and each side's normalized value in the fractional split.
void check_fractional_wprop(const Instance& in, const AdjustedWinnerResult& r) {
    const auto& a = r.normalized;
    const std::size_t d = r.boundary;
    if (d == 0) return;
    Rational left1 = 0, right2 = 0;
    for (std::size_t k = 0; k < r.order.size(); ++k) {
        if (k + 1 < d) left1 += a[0][r.order[k]];
        if (k + 1 > d) right2 += a[1][r.order[k]];
    }
    const ItemId g = r.order[d - 1];
    Rational share1 = left1 + r.split * a[0][g];
    Rational share2 = right2 + (1 - r.split) * a[1][g];
    if (!r.contested) {
        share1 = left1 + a[0][g];
        share2 = right2;
    }
    Rational total2 = 0;
    for (const auto& x : a[1]) total2 += x;
    CHECK(share1 >= in.weight(0));
    CHECK(share2 >= in.weight(1) * total2);
}

}  // namespace

TEST_CASE("VCG examples") {
    const Instance general = fixtures::prop_lb_general();
    const VcgOutcome out = vcg_with_upfront_subsidy(general);
    CHECK(out.allocation == Allocation{{{0, 1, 2}, {}, {}}});
    CHECK(out.vcg_payments == std::vector<Rational>{Rational(3) - rational(1, 10), Rational(0), Rational(0)});
    CHECK(out.upfront_constant == Rational(3) / rational(1, 5));
    check_vcg(general, out);

    const Instance single = build_instance({Rational(1)}, {make_additive(ints({2, 3}))}, 2);
    CHECK(vcg_with_upfront_subsidy(single).vcg_payments == ints({0}));

    std::vector<Rational> table{Rational(0), Rational(0), Rational(0), Rational(5)};
    const Instance twins = build_instance({rational(1, 2), rational(1, 2)}, {make_table(table, true), make_table(table, true)}, 2);
    const VcgOutcome t = vcg_with_upfront_subsidy(twins, Rational(10));
    CHECK(t.allocation == Allocation{{{0, 1}, {}}});
    CHECK(t.vcg_payments == ints({5, 0}));
    CHECK(t.net_payments == ints({0, 5}));
    check_vcg(twins, t);
}

TEST_CASE("VCG preconditions") {
    CHECK(error_kind([] { vcg_with_upfront_subsidy(fixtures::example_incompatibility()); }) == ErrorKind::NotSupermodular);
    CHECK(error_kind([] { vcg_with_upfront_subsidy(fixtures::thm_lb_matroidal()); }) == ErrorKind::NotSupermodular);
    CHECK(error_kind([] { vcg_with_upfront_subsidy(fixtures::prop_lb_general(), Rational(1)); }) == ErrorKind::InvalidOutcome);
}

TEST_CASE("VCG inequalities on random super-modular instances") {
    Rng rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance in = random_supermodular(rng, static_cast<std::size_t>(uniform(rng, 1, 3)),
                                                static_cast<std::size_t>(uniform(rng, 0, 4)), 4);
        check_vcg(in, vcg_with_upfront_subsidy(in));
    }
}

TEST_CASE("VCG truthfulness spot-check") {
    Rng rng(707);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2;
        const std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 3));
        const Instance truth = random_supermodular(rng, n, m, 4);
        const VcgOutcome honest = vcg_with_upfront_subsidy(truth);
        const Rational c = honest.upfront_constant;
        for (AgentId i = 0; i < n; ++i) {
            const Rational honest_utility = value(truth, i, honest.allocation[i]) + honest.net_payments[i];
            for (int lie = 0; lie < 6; ++lie) {
                const Instance reported = with_valuation(truth, i, random_supermodular_table(rng, m, 6));
                const VcgOutcome out = vcg_with_upfront_subsidy(reported, Rational(c * 4));
                const Rational utility = value(truth, i, out.allocation[i]) + c * truth.weight(i) - out.vcg_payments[i];
                CHECK(utility <= honest_utility);
            }
        }
    }
}

TEST_CASE("adjusted winner examples") {
    const Instance crossed = build_instance({rational(1, 2), rational(1, 2)}, {make_additive(ints({3, 1})), make_additive(ints({1, 3}))}, 2);
    const auto a = biased_weighted_adjusted_winner(crossed);
    CHECK(a.boundary == 1);
    CHECK_FALSE(a.contested);
    CHECK(a.allocation == Allocation{{{0}, {1}}});
    CHECK(is_weighted_envy_free(crossed, Outcome{a.allocation, ints({0, 0})}));

    const Instance one = build_instance({rational(1, 2), rational(1, 2)}, {make_additive(ints({1})), make_additive(ints({1}))}, 1);
    const auto b = biased_weighted_adjusted_winner(one);
    REQUIRE(b.contested);
    CHECK(*b.contested == 0);
    CHECK(b.split == rational(1, 2));
    CHECK(b.allocation == Allocation{{{0}, {}}});
    CHECK(is_wef1_t(one, b.allocation));
    CHECK(is_weighted_envy_freeable(one, b.allocation));

    const Instance picking = fixtures::sec6_picking_sequence();
    const auto c = biased_weighted_adjusted_winner(picking);
    CHECK(c.allocation == Allocation{{{}, {0}}});
    CHECK(is_weighted_envy_freeable(picking, c.allocation));
    CHECK_FALSE(is_weighted_envy_freeable(picking, Allocation{{{0}, {}}}));
}

TEST_CASE("adjusted winner preconditions") {
    CHECK(error_kind([] { biased_weighted_adjusted_winner(fixtures::example1_inheritance()); }) == ErrorKind::WrongAgentCount);
    CHECK(error_kind([] { biased_weighted_adjusted_winner(fixtures::example_incompatibility()); }) ==
          ErrorKind::WrongValuationKind);
    const Instance zeros = build_instance({rational(1, 2), rational(1, 2)}, {make_additive(ints({0, 0})), make_additive(ints({0, 0}))}, 2);
    CHECK(error_kind([&] { biased_weighted_adjusted_winner(zeros); }) == ErrorKind::DegenerateInstance);
}

TEST_CASE("adjusted winner ordering puts v2 = 0 first and both-zero last") {
    const Instance in = build_instance({rational(1, 2), rational(1, 2)},
                                       {make_additive(ints({0, 2, 1, 1})), make_additive(ints({0, 2, 0, 4}))}, 4);
    const auto r = biased_weighted_adjusted_winner(in);
    CHECK(r.order == std::vector<ItemId>{2, 1, 3, 0});
}

TEST_CASE("adjusted winner properties on random instances") {
    Rng rng(808);
    int contested = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 8));
        const Instance in = random_additive(rng, 2, m, 9);
        const ItemSet all = from_mask((ItemMask{1} << m) - 1);
        if (value(in, 0, all) == 0 && value(in, 1, all) == 0) continue;
        const auto r = biased_weighted_adjusted_winner(in);
        CHECK(is_wef1_t(in, r.allocation));
        CHECK(is_weighted_envy_freeable(in, r.allocation, Verify::On));
        CHECK(r.split >= 0);
        CHECK(r.split <= 1);
        check_fractional_wprop(in, r);
        contested += r.contested.has_value();
    }
    CHECK(contested > 50);
}
