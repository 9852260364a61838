#include <doctest.h>

#include "repalloc/worked_examples.hpp"
#include "support/properties.hpp"

using namespace repalloc;
using namespace repalloc::testing;

namespace {

void require_ok(const PropertyReport& r)
{
	INFO(r.summary());
	INFO(r.first_failure);
	CHECK(r.ok());
}

Rational q(const char* text)
{
	return Rational::parse(text);
}

} // namespace

TEST_CASE("greedy subset is maximal and its reverse is feasible")
{
	Rng rng(11);
	require_ok(greedy_subset_is_maximal(rng, 150));
}

TEST_CASE("feasible orderings are exactly the fully repairable sets")
{
	Rng rng(12);
	require_ok(feasibility_matches_single_entity_oracle(rng, 60));
}

TEST_CASE("least-modified-health is optimal per allocation in the fast-repair regime")
{
	Rng rng(13);
	require_ok(least_modified_health_is_optimal_per_allocation(rng, 150));
}

TEST_CASE("healthiest-first is optimal per set in the integral regime")
{
	Rng rng(14);
	require_ok(healthiest_first_is_optimal_per_set(rng, 150));
}

TEST_CASE("budgeted allocation matches the oracle")
{
	Rng rng(15);
	require_ok(budgeted_allocation_is_optimal(rng, 150));
}

TEST_CASE("online policy bounds")
{
	Rng rng(16);
	auto r = online_policy_bounds(rng, 150);
	require_ok(r.half);
	require_ok(r.single);
}

TEST_CASE("moving one node to a free entity loses at most one repair")
{
	Rng rng(17);
	auto r = moving_one_node_loses_at_most_one(rng, 60, 5000);
	require_ok(r);
	CHECK(r.cases == 60);
}

TEST_CASE("healthiest-first equals the decreasing-initial-health schedule")
{
	Rng rng(18);
	require_ok(healthiest_first_matches_static_order(rng, 200));
}

TEST_CASE("entity order within a step does not matter")
{
	Rng rng(19);
	require_ok(entity_order_does_not_matter(rng, 150));
}

TEST_CASE("memoized, joint and plain searches agree")
{
	Rng rng(20);
	require_ok(searches_agree(rng, 80));
}

TEST_CASE("regime invariants that hold")
{
	Rng rng(21);
	auto r = regime_invariants(rng, 100);
	require_ok(r.replay);
	require_ok(r.budget);
	require_ok(r.monotone_sizes);
	require_ok(r.jumps_online);
	require_ok(r.jumps_healthiest);
	Rng other(22);
	require_ok(over_budget_is_rejected(other, 80));
}

TEST_CASE("oracle witnesses replay on random scenarios")
{
	Rng rng(23);
	for (int i = 0; i < 40; ++i) {
		Scenario s = arbitrary_scenario(rng, 3, 2);
		auto r = oracle_optimal(s);
		CHECK_NOTHROW(replay_trace(s, r.witness_trace, &r.witness_allocation));
		CHECK(summarize(r.witness_trace).reward == r.optimal_reward);
		CHECK(s.budget.allows(r.witness_allocation.total_cost));
	}
}

// Counterexamples found by the generators, kept as fixed regressions.

TEST_CASE("least-modified-health tie-break can miss a fourth repair")
{
	Scenario s = make_scenario(
	    {{"a", q("0.4"), q("0.1")}, {"b", q("0.6"), q("0.2")}, {"c", q("0.6"), q("0.2")}, {"d", q("0.2"), q("0.1")}},
	    {EntitySpec{"p", Rational(1), {q("0.7"), Rational(1), Rational(1), q("0.6")}},
	     EntitySpec{"q", Rational(4), {q("0.6"), q("0.7"), q("0.8"), q("0.8")}}},
	    Budget::infinite());
	REQUIRE(check_assumption1(s).holds);
	auto allocation = allocate_budgeted(s);
	CHECK(describe(s, allocation) == "p:{a,b,c,d} q:{}");
	auto run = simulate(s, allocation, least_modified_health_policy());
	CHECK(run.outcome.reward == 3);
	// at t = 1 nodes a, b and c tie on modified health; taking b instead of a
	// repairs all four
	CHECK(run.trace.steps[1].actions[0] == s.node_index("a"));
	CHECK(oracle_optimal(s).optimal_reward == 4);
}

TEST_CASE("least-modified-health can take longer than the min-rate absorption bound")
{
	Scenario s = make_scenario({{"a", q("0.25"), q("0.2")}, {"b", q("0.4"), q("0.2")}},
	                           {EntitySpec{"p", Rational(5), {q("0.35"), q("0.25")}},
	                            EntitySpec{"q", Rational(1), {q("0.25"), q("0.35")}}},
	                           Budget::of(Rational(5)));
	REQUIRE(check_assumption1(s).holds);
	auto run = simulate(s, allocate_budgeted(s), least_modified_health_policy());
	CHECK(run.outcome.reward == 2);
	CHECK(run.outcome.jumps == 10);
	CHECK(run.outcome.terminal_step == 13);
	CHECK(absorption_bound(s) == 8);
}
