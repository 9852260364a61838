#ifndef REPALLOC_TEST_PROPERTIES_HPP
#define REPALLOC_TEST_PROPERTIES_HPP

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>

#include "repalloc/allocation.hpp"
#include "repalloc/assumptions.hpp"
#include "repalloc/oracle.hpp"
#include "repalloc/policies.hpp"
#include "repalloc/scenario_io.hpp"
#include "support/generators.hpp"

namespace repalloc::testing {

/// Tally for one property over many generated cases. Only the first
/// counterexample is kept.
struct PropertyReport {
	std::size_t cases = 0;
	std::size_t skipped = 0;
	std::size_t failures = 0;
	std::string first_failure;

	bool ok() const { return failures == 0 && cases > 0; }

	void fail(const std::string& why, const Scenario& s)
	{
		if (failures++ == 0)
			first_failure = why + "\n" + serialize_scenario(s);
	}

	std::string summary() const
	{
		std::ostringstream out;
		out << cases << " cases, " << failures << " failures";
		if (skipped)
			out << ", " << skipped << " skipped";
		return out.str();
	}
};

inline std::size_t reward_of(const Scenario& s, const Allocation& a, const SequencingPolicy& p)
{
	return simulate(s, a, p).outcome.reward;
}

inline std::size_t absorption_bound(const Scenario& s)
{
	Rational slowest = s.min_rate();
	std::int64_t down = 0, up = 0;
	for (const auto& n : s.nodes) {
		down = std::max(down, (n.v0 / slowest).ceil());
		up = std::max(up, ((Rational(1) - n.v0) / slowest).ceil());
	}
	return static_cast<std::size_t>(down + up) + s.node_count();
}

/// Largest z for which some ordering of some z-subset of the candidates
/// passes feasible_ordered_set, by trying every ordering.
inline std::size_t exhaustive_feasible_size(const Scenario& s, std::vector<NodeIndex> candidates)
{
	std::size_t n = candidates.size();
	std::size_t best = 0;
	for (unsigned mask = 1; mask < (1u << n); ++mask) {
		std::vector<NodeIndex> subset;
		for (std::size_t i = 0; i < n; ++i)
			if (mask & (1u << i))
				subset.push_back(candidates[i]);
		if (subset.size() <= best)
			continue;
		std::sort(subset.begin(), subset.end());
		do {
			if (feasible_ordered_set(s, subset)) {
				best = subset.size();
				break;
			}
		} while (std::next_permutation(subset.begin(), subset.end()));
	}
	return best;
}

inline bool some_order_feasible(const Scenario& s, std::vector<NodeIndex> subset)
{
	std::sort(subset.begin(), subset.end());
	do {
		if (feasible_ordered_set(s, subset))
			return true;
	} while (std::next_permutation(subset.begin(), subset.end()));
	return false;
}

// Optimality ------------------------------------------------------------------

/// Budgeted allocation plus least-modified-health matches the oracle on
/// fast-repair scenarios.
inline PropertyReport budgeted_allocation_is_optimal(Rng& rng, std::size_t count)
{
	PropertyReport r;
	for (std::size_t i = 0; i < count; ++i) {
		Scenario s = fast_repair_scenario(rng);
		++r.cases;
		auto got = reward_of(s, allocate_budgeted(s), least_modified_health_policy());
		auto best = oracle_optimal(s).optimal_reward;
		if (got != best)
			r.fail("budgeted allocation " + std::to_string(got) + " vs optimal " + std::to_string(best), s);
	}
	return r;
}

/// Online policy is within a factor two of the oracle on integral
/// scenarios, and exact when there is one entity.
struct OnlineReports {
	PropertyReport half;
	PropertyReport single;
};

inline OnlineReports online_policy_bounds(Rng& rng, std::size_t count)
{
	OnlineReports r;
	for (std::size_t i = 0; i < count; ++i) {
		IntegralOptions options;
		// every third case is single-entity
		if (i % 3 == 0)
			options.max_entities = 1;
		Scenario s = integral_scenario(rng, options);
		auto online = run_online_policy(s).outcome.reward;
		auto best = oracle_optimal(s).optimal_reward;
		++r.half.cases;
		if (2 * online < best)
			r.half.fail("online " + std::to_string(online) + " vs optimal " + std::to_string(best), s);
		if (s.entity_count() == 1) {
			++r.single.cases;
			if (online != best)
				r.single.fail("online " + std::to_string(online) + " vs optimal " + std::to_string(best), s);
		}
	}
	return r;
}

/// Least-modified-health is optimal for every allocation of a fast-repair
/// scenario.
inline PropertyReport least_modified_health_is_optimal_per_allocation(Rng& rng, std::size_t count)
{
	PropertyReport r;
	for (std::size_t i = 0; i < count; ++i) {
		Scenario s = fast_repair_scenario(rng);
		s.budget = Budget::infinite();
		Allocation a = random_allocation(rng, s);
		++r.cases;
		auto got = reward_of(s, a, least_modified_health_policy());
		auto best = optimal_sequencing_reward(s, a).reward;
		if (got != best)
			r.fail("least-modified-health " + std::to_string(got) + " vs " + std::to_string(best) + " for " +
			           describe(s, a),
			       s);
	}
	return r;
}

/// Healthiest-first is optimal for a single entity's set in the integral
/// regime.
inline PropertyReport healthiest_first_is_optimal_per_set(Rng& rng, std::size_t count)
{
	PropertyReport r;
	for (std::size_t i = 0; i < count; ++i) {
		IntegralOptions options;
		options.max_entities = 1;
		options.infinite_budget = true;
		Scenario s = integral_scenario(rng, options);
		Allocation a = random_allocation(rng, s);
		++r.cases;
		auto got = reward_of(s, a, healthiest_first_policy());
		auto best = optimal_sequencing_reward(s, a).reward;
		if (got != best)
			r.fail("healthiest-first " + std::to_string(got) + " vs " + std::to_string(best) + " for " +
			           describe(s, a),
			       s);
	}
	return r;
}

// Greedy subset ---------------------------------------------------------------

/// The greedy subset is as large as the best feasible ordering found by
/// brute force, and reversed it passes the feasibility test.
inline PropertyReport greedy_subset_is_maximal(Rng& rng, std::size_t count)
{
	PropertyReport r;
	for (std::size_t i = 0; i < count; ++i) {
		Scenario s = arbitrary_scenario(rng, 6, 1);
		std::vector<NodeIndex> all(s.node_count());
		for (NodeIndex j = 0; j < all.size(); ++j)
			all[j] = j;
		auto y = largest_repairable_subset(s, all);
		std::vector<NodeIndex> reversed(y.rbegin(), y.rend());
		++r.cases;
		auto brute = exhaustive_feasible_size(s, all);
		if (y.size() != brute)
			r.fail("greedy " + std::to_string(y.size()) + " vs exhaustive " + std::to_string(brute), s);
		else if (!y.empty() && !feasible_ordered_set(s, reversed))
			r.fail("reversed greedy order is not feasible", s);
	}
	return r;
}

/// In the fast-repair regime a single entity can repair all of a set iff
/// some ordering of it is feasible; checked subset by subset against the
/// oracle.
inline PropertyReport feasibility_matches_single_entity_oracle(Rng& rng, std::size_t count)
{
	PropertyReport r;
	for (std::size_t i = 0; i < count; ++i) {
		Scenario s = fast_repair_scenario(rng, 5, 1);
		s.budget = Budget::infinite();
		std::size_t n = s.node_count();
		bool bad = false;
		for (unsigned mask = 1; mask < (1u << n) && !bad; ++mask) {
			std::vector<NodeIndex> subset;
			for (NodeIndex j = 0; j < n; ++j)
				if (mask & (1u << j))
					subset.push_back(j);
			bool feasible = some_order_feasible(s, subset);
			bool all_repaired = optimal_sequencing_reward(s, make_allocation(s, {subset})).reward == subset.size();
			if (feasible != all_repaired) {
				bad = true;
				std::string which;
				for (NodeIndex j : subset)
					which += s.nodes[j].id;
				r.fail("subset " + which + ": feasible=" + std::to_string(feasible) +
				           " fully repairable=" + std::to_string(all_repaired),
				       s);
			}
		}
		++r.cases;
	}
	return r;
}

// Lemma on moving one node ------------------------------------------------------

struct OneNodeSwap {
	bool applicable = false;
	std::size_t before = 0;
	std::size_t after = 0;
};

/// Starting from the decreasing-initial-health schedule A, picks the
/// smallest p such that the p-th healthiest node k idles at t = 0 while
/// the p-1 healthier ones are all targeted, and the smallest-id entity a
/// that targets none of those p-1 nodes and repairs every node it
/// touches. Policy B hands k to a first, then a's old order minus its last
/// node; the rest keep their order with k removed.
inline OneNodeSwap swap_one_node(const Scenario& s, const Allocation& allocation)
{
	OneNodeSwap out;
	auto orders = decreasing_initial_health_order(s, allocation);
	auto run_a = simulate(s, allocation, static_schedule_policy(orders));
	out.before = run_a.outcome.reward;
	const Actions& first = run_a.trace.steps.front().actions;

	std::vector<NodeIndex> rank(s.node_count());
	for (NodeIndex j = 0; j < rank.size(); ++j)
		rank[j] = j;
	std::stable_sort(rank.begin(), rank.end(), [&](NodeIndex x, NodeIndex y) {
		if (s.nodes[x].v0 != s.nodes[y].v0)
			return s.nodes[x].v0 > s.nodes[y].v0;
		return s.node_before(x, y);
	});
	auto targeted_at_start = [&](NodeIndex j) { return std::find(first.begin(), first.end(), j) != first.end(); };

	std::size_t p = 0;
	for (std::size_t cand = 1; cand <= std::min(s.entity_count(), s.node_count()); ++cand) {
		bool top_targeted = true;
		for (std::size_t i = 0; i + 1 < cand; ++i)
			top_targeted = top_targeted && targeted_at_start(rank[i]);
		if (top_targeted && !targeted_at_start(rank[cand - 1])) {
			p = cand;
			break;
		}
	}
	if (p == 0)
		return out;
	NodeIndex k = rank[p - 1];

	// nodes each entity actually targets under A, in order
	std::vector<std::vector<NodeIndex>> touched(s.entity_count());
	for (const auto& step : run_a.trace.steps)
		for (EntityIndex h = 0; h < s.entity_count(); ++h)
			if (step.actions[h] && (touched[h].empty() || touched[h].back() != *step.actions[h]))
				touched[h].push_back(*step.actions[h]);
	const auto& final_health = run_a.trace.steps.back().health;

	std::optional<EntityIndex> a;
	for (EntityIndex h = 0; h < s.entity_count() && !a; ++h) {
		bool hits_top = false;
		for (std::size_t i = 0; i + 1 < p; ++i)
			hits_top = hits_top || (first[h] && *first[h] == rank[i]);
		bool repairs_all = !touched[h].empty();
		for (NodeIndex j : touched[h])
			repairs_all = repairs_all && final_health[j] == Rational(1);
		if (!hits_top && repairs_all)
			a = h;
	}
	if (!a)
		return out;

	auto sets = allocation.sets;
	for (auto& set : sets)
		set.erase(std::remove(set.begin(), set.end(), k), set.end());
	sets[*a].push_back(k);
	std::sort(sets[*a].begin(), sets[*a].end());
	Allocation moved = make_allocation(s, std::move(sets));

	std::vector<std::vector<NodeIndex>> b_orders = orders;
	for (auto& order : b_orders)
		order.erase(std::remove(order.begin(), order.end(), k), order.end());
	std::vector<NodeIndex> mine{k};
	mine.insert(mine.end(), touched[*a].begin(), touched[*a].end() - 1);
	b_orders[*a] = mine;

	out.applicable = true;
	out.after = simulate(s, moved, static_schedule_policy(b_orders)).outcome.reward;
	return out;
}

inline PropertyReport moving_one_node_loses_at_most_one(Rng& rng, std::size_t wanted, std::size_t max_attempts)
{
	PropertyReport r;
	for (std::size_t attempt = 0; attempt < max_attempts && r.cases < wanted; ++attempt) {
		IntegralOptions options;
		options.infinite_budget = true;
		options.max_entities = 3;
		Scenario s = integral_scenario(rng, options);
		Allocation a = random_allocation(rng, s);
		auto swap = swap_one_node(s, a);
		if (!swap.applicable) {
			++r.skipped;
			continue;
		}
		++r.cases;
		if (swap.after + 1 < swap.before)
			r.fail("policy A " + std::to_string(swap.before) + ", policy B " + std::to_string(swap.after) + " from " +
			           describe(s, a),
			       s);
	}
	return r;
}

// Invariants ------------------------------------------------------------------

/// Every trace row after absorption keeps the absorbed value, the trace
/// replays exactly, and absorption happens within the step bound.
inline void check_trace(PropertyReport& replay, PropertyReport& bound, const Scenario& s, const Allocation& a,
                        const Trace& trace, const std::string& label)
{
	++replay.cases;
	try {
		replay_trace(s, trace, &a);
		for (std::size_t t = 1; t < trace.steps.size(); ++t)
			for (NodeIndex j = 0; j < s.node_count(); ++j) {
				const Rational& prev = trace.steps[t - 1].health[j];
				if ((prev == Rational(0) || prev == Rational(1)) && trace.steps[t].health[j] != prev)
					throw std::logic_error("absorbed node " + s.nodes[j].id + " changed at t=" + std::to_string(t));
			}
		std::istringstream csv(trace_to_csv(s, trace));
		if (read_trace_csv(csv, s) != trace)
			throw std::logic_error("CSV round trip changed the trace");
	} catch (const std::exception& e) {
		replay.fail(label + ": " + e.what(), s);
	}
	++bound.cases;
	if (trace.terminal_step() > absorption_bound(s))
		bound.fail(label + ": absorbed at t=" + std::to_string(trace.terminal_step()) + ", bound " +
		               std::to_string(absorption_bound(s)),
		           s);
}

struct InvariantReports {
	PropertyReport bound;
	PropertyReport replay;
	PropertyReport budget;
	PropertyReport monotone_sizes;
	PropertyReport jumps_budgeted;
	PropertyReport jumps_online;
	PropertyReport jumps_healthiest;
};

inline InvariantReports regime_invariants(Rng& rng, std::size_t count)
{
	InvariantReports r;
	for (std::size_t i = 0; i < count; ++i) {
		{
			Scenario s = fast_repair_scenario(rng);
			Allocation a = allocate_budgeted(s);
			auto run = simulate(s, a, least_modified_health_policy());
			check_trace(r.replay, r.bound, s, a, run.trace, "budgeted allocation");

			++r.budget.cases;
			if (!s.budget.allows(a.total_cost) || a.total_cost != allocation_cost(s, a.sets))
				r.budget.fail("budgeted allocation charges " + a.total_cost.to_string(), s);

			++r.monotone_sizes.cases;
			for (EntityIndex k = 0; k < s.entity_count(); ++k)
				for (EntityIndex l = 0; l < s.entity_count(); ++l)
					if (s.entities[k].cost < s.entities[l].cost && a.sets[k].size() < a.sets[l].size()) {
						r.monotone_sizes.fail("cheaper entity got fewer nodes: " + describe(s, a), s);
						k = l = s.entity_count();
					}

			++r.jumps_budgeted.cases;
			if (run.outcome.jumps != 0)
				r.jumps_budgeted.fail(std::to_string(run.outcome.jumps) + " jumps for " + describe(s, a), s);
		}
		{
			Scenario s = integral_scenario(rng);
			auto run = run_online_policy(s);
			check_trace(r.replay, r.bound, s, run.allocation, run.trace, "online");

			++r.budget.cases;
			bool repaired_all = true;
			for (const auto& set : run.allocation.sets)
				for (NodeIndex j : set)
					repaired_all = repaired_all && run.trace.steps.back().health[j] == Rational(1);
			Rational charged = allocation_cost(s, run.allocation.sets);
			bool remaining_ok = s.budget.is_infinite() ? !run.budget_remaining
			                                           : run.budget_remaining == *s.budget.limit - charged;
			if (!s.budget.allows(charged) || !repaired_all || !remaining_ok)
				r.budget.fail("online charged " + charged.to_string() + " for " + describe(s, run.allocation), s);

			++r.jumps_online.cases;
			if (run.outcome.jumps != 0)
				r.jumps_online.fail(std::to_string(run.outcome.jumps) + " jumps", s);

			Allocation a = random_feasible_allocation(rng, s);
			auto healthiest = simulate(s, a, healthiest_first_policy());
			check_trace(r.replay, r.bound, s, a, healthiest.trace, "healthiest-first");
			++r.jumps_healthiest.cases;
			if (healthiest.outcome.jumps != 0)
				r.jumps_healthiest.fail(std::to_string(healthiest.outcome.jumps) + " jumps for " + describe(s, a), s);
		}
		{
			Scenario s = arbitrary_scenario(rng);
			Allocation a = random_feasible_allocation(rng, s);
			auto run = simulate(s, a, static_schedule_policy(decreasing_initial_health_order(s, a)));
			check_trace(r.replay, r.bound, s, a, run.trace, "static schedule");
		}
	}
	return r;
}

/// Simulating an over-budget allocation is refused.
inline PropertyReport over_budget_is_rejected(Rng& rng, std::size_t count)
{
	PropertyReport r;
	for (std::size_t i = 0; r.cases < count && i < count * 20; ++i) {
		Scenario s = arbitrary_scenario(rng);
		Allocation a = random_allocation(rng, s);
		if (s.budget.allows(a.total_cost))
			continue;
		++r.cases;
		try {
			simulate(s, a, healthiest_first_policy());
			r.fail("over-budget allocation " + describe(s, a) + " was simulated", s);
		} catch (const BudgetExceeded&) {
		}
	}
	return r;
}

/// Applying the same actions with the entities listed in a different order
/// gives the same next health vector.
inline PropertyReport entity_order_does_not_matter(Rng& rng, std::size_t count)
{
	PropertyReport r;
	for (std::size_t i = 0; i < count; ++i) {
		Scenario s = arbitrary_scenario(rng, 5, 3);
		s.budget = Budget::infinite();
		Allocation a = random_allocation(rng, s);
		auto run = simulate(s, a, healthiest_first_policy());

		std::vector<EntityIndex> perm(s.entity_count());
		for (EntityIndex h = 0; h < perm.size(); ++h)
			perm[h] = h;
		std::shuffle(perm.begin(), perm.end(), rng);
		Scenario shuffled = s;
		std::vector<std::vector<NodeIndex>> sets(perm.size());
		for (EntityIndex h = 0; h < perm.size(); ++h) {
			shuffled.entities[h] = s.entities[perm[h]];
			sets[h] = a.sets[perm[h]];
		}
		Allocation b = make_allocation(shuffled, std::move(sets));

		++r.cases;
		for (const auto& step : run.trace.steps) {
			Actions permuted(perm.size());
			for (EntityIndex h = 0; h < perm.size(); ++h)
				permuted[h] = step.actions[perm[h]];
			auto states = states_from_health(step.health);
			auto x = advance(s, a, states, step.actions);
			auto y = advance(shuffled, b, states, permuted);
			if (x != y) {
				r.fail("entity order changed a step", s);
				break;
			}
		}
	}
	return r;
}

/// Healthiest-first equals the static decreasing-initial-health schedule
/// in the integral regime.
inline PropertyReport healthiest_first_matches_static_order(Rng& rng, std::size_t count)
{
	PropertyReport r;
	for (std::size_t i = 0; i < count; ++i) {
		Scenario s = integral_scenario(rng, {.max_nodes = 5, .min_entities = 1, .max_entities = 2, .infinite_budget = true});
		Allocation a = random_allocation(rng, s);
		++r.cases;
		auto dynamic = simulate(s, a, healthiest_first_policy()).trace;
		auto fixed = simulate(s, a, static_schedule_policy(decreasing_initial_health_order(s, a))).trace;
		if (dynamic != fixed)
			r.fail("traces differ for " + describe(s, a), s);
	}
	return r;
}

// Oracle self-checks ----------------------------------------------------------

/// The memoized search, the joint search and the plain path search agree.
inline PropertyReport searches_agree(Rng& rng, std::size_t count)
{
	PropertyReport r;
	OracleOptions joint;
	joint.decompose = false;
	for (std::size_t i = 0; r.cases < count && i < count * 10; ++i) {
		Scenario s = uniform(rng, 0, 1) == 0 ? fast_repair_scenario(rng, 4, 2) : arbitrary_scenario(rng, 3, 2);
		s.budget = Budget::infinite();
		Allocation a = random_allocation(rng, s);
		auto memo = optimal_sequencing_reward(s, a);
		auto together = optimal_sequencing_reward(s, a, joint);
		std::size_t plain = 0;
		try {
			plain = optimal_sequencing_reward_unmemoized(s, a, 200'000);
		} catch (const InstanceTooLarge&) {
			++r.skipped;
			continue;
		}
		++r.cases;
		if (memo.reward != together.reward || memo.reward != plain)
			r.fail("memoized " + std::to_string(memo.reward) + ", joint " + std::to_string(together.reward) +
			           ", plain " + std::to_string(plain) + " for " + describe(s, a),
			       s);
		else if (summarize(memo.witness).reward != memo.reward)
			r.fail("witness does not reach the claimed reward", s);
	}
	return r;
}

} // namespace repalloc::testing

#endif
