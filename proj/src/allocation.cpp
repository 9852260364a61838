#include "repalloc/allocation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "repalloc/assumptions.hpp"

namespace repalloc {

LifetimeIndex lifetime_index(const Scenario& scenario, NodeIndex node)
{
	const auto& spec = scenario.nodes[node];
	return {node, (spec.v0 / spec.delta_dec).ceil()};
}

bool feasible_ordered_set(std::span<const NodeSpec> ordered_nodes)
{
	const auto z = static_cast<std::int64_t>(ordered_nodes.size());
	for (std::int64_t j = 1; j <= z; ++j) {
		const auto& n = ordered_nodes[static_cast<std::size_t>(j - 1)];
		if (!(n.v0 > Rational(z - j) * n.delta_dec))
			return false;
	}
	return true;
}

bool feasible_ordered_set(const Scenario& scenario, std::span<const NodeIndex> ordered_nodes)
{
	std::vector<NodeSpec> specs;
	specs.reserve(ordered_nodes.size());
	for (NodeIndex j : ordered_nodes)
		specs.push_back(scenario.nodes[j]);
	return feasible_ordered_set(specs);
}

std::vector<NodeIndex> largest_repairable_subset(const Scenario& scenario, std::span<const NodeIndex> candidates)
{
	std::vector<LifetimeIndex> pool;
	pool.reserve(candidates.size());
	for (NodeIndex j : candidates)
		pool.push_back(lifetime_index(scenario, j));

	std::vector<NodeIndex> picked;
	std::int64_t z = 0;
	for (;;) {
		auto best = pool.end();
		for (auto it = pool.begin(); it != pool.end(); ++it) {
			if (it->steps <= z)
				continue;
			if (best == pool.end() || it->steps < best->steps ||
			    (it->steps == best->steps && scenario.node_before(it->node, best->node)))
				best = it;
		}
		if (best == pool.end())
			break;
		picked.push_back(best->node);
		pool.erase(best);
		++z;
	}
	return picked;
}

Allocation allocate_budgeted(const Scenario& scenario, AllocateOptions options)
{
	if (!options.force) {
		auto report = check_assumption1(scenario);
		if (!report.holds)
			throw AssumptionViolated("budgeted allocation needs repair rates above (N-1)x and the summed decay of other nodes");
	}

	std::vector<NodeIndex> remaining(scenario.node_count());
	std::iota(remaining.begin(), remaining.end(), NodeIndex{0});

	std::vector<EntityIndex> by_cost(scenario.entity_count());
	std::iota(by_cost.begin(), by_cost.end(), EntityIndex{0});
	std::sort(by_cost.begin(), by_cost.end(), [&](EntityIndex a, EntityIndex b) {
		const auto& ca = scenario.entities[a].cost;
		const auto& cb = scenario.entities[b].cost;
		if (ca != cb)
			return ca < cb;
		return scenario.entity_before(a, b);
	});

	std::optional<Rational> budget = scenario.budget.limit;
	std::vector<std::vector<NodeIndex>> sets(scenario.entity_count());

	for (EntityIndex s : by_cost) {
		if (remaining.empty())
			break;
		// by_cost is sorted, so the cheapest remaining entity is s itself
		const Rational& cost = scenario.entities[s].cost;
		if (budget && *budget < cost)
			break;

		auto chosen = largest_repairable_subset(scenario, remaining);
		if (budget && !cost.is_zero()) {
			auto affordable = static_cast<std::size_t>((*budget / cost).floor());
			if (affordable < chosen.size())
				chosen.resize(affordable);
		}
		if (budget)
			*budget -= cost * Rational(static_cast<std::int64_t>(chosen.size()));

		for (NodeIndex j : chosen)
			remaining.erase(std::find(remaining.begin(), remaining.end(), j));
		sets[s] = std::move(chosen);
	}
	return make_allocation(scenario, std::move(sets));
}

OnlineRunResult run_online_policy(const Scenario& scenario, AllocateOptions options)
{
	if (!options.force) {
		auto report = check_assumption2(scenario);
		if (!report.holds)
			throw AssumptionViolated("online policy needs the integral homogeneous regime: " + report.violations.front());
	}

	OnlineRunResult result;
	result.budget_remaining = scenario.budget.limit;
	result.assignment_order.resize(scenario.entity_count());

	std::vector<EntityIndex> entity_order(scenario.entity_count());
	std::iota(entity_order.begin(), entity_order.end(), EntityIndex{0});
	std::sort(entity_order.begin(), entity_order.end(),
	          [&](EntityIndex a, EntityIndex b) { return scenario.entity_before(a, b); });

	std::vector<std::optional<NodeIndex>> working(scenario.entity_count());
	std::vector<bool> assigned(scenario.node_count(), false);
	std::vector<std::vector<NodeIndex>> sets(scenario.entity_count());
	auto states = initial_states(scenario);

	auto health_row = [&] {
		std::vector<Rational> row;
		for (const auto& s : states)
			row.push_back(s.health);
		return row;
	};

	for (std::size_t t = 0;; ++t) {
		if (!any_active(states)) {
			result.trace.steps.push_back({health_row(), Actions(scenario.entity_count())});
			break;
		}

		for (auto& w : working)
			if (w && !states[*w].active())
				w.reset();

		std::vector<NodeIndex> unassigned;
		for (NodeIndex j = 0; j < states.size(); ++j)
			if (states[j].active() && !assigned[j])
				unassigned.push_back(j);
		std::sort(unassigned.begin(), unassigned.end(), [&](NodeIndex a, NodeIndex b) {
			if (states[a].health != states[b].health)
				return states[a].health > states[b].health;
			return scenario.node_before(a, b);
		});

		auto next_node = unassigned.begin();
		for (EntityIndex h : entity_order) {
			if (next_node == unassigned.end())
				break;
			if (working[h])
				continue;
			const Rational& cost = scenario.entities[h].cost;
			if (result.budget_remaining && *result.budget_remaining < cost)
				continue;
			NodeIndex j = *next_node++;
			working[h] = j;
			assigned[j] = true;
			sets[h].push_back(j);
			result.assignment_order[h].push_back(j);
			result.assignment_times[j] = t;
			if (result.budget_remaining)
				*result.budget_remaining -= cost;
		}

		Actions actions(scenario.entity_count());
		for (EntityIndex h = 0; h < actions.size(); ++h)
			actions[h] = working[h];

		auto current = make_allocation(scenario, sets);
		auto next = advance(scenario, current, states, actions);
		result.trace.steps.push_back({health_row(), std::move(actions)});
		states = std::move(next);
	}

	result.allocation = make_allocation(scenario, std::move(sets));
	result.outcome = summarize(result.trace);
	return result;
}

} // namespace repalloc
