#include "repalloc/policies.hpp"

#include <algorithm>
#include <memory>

namespace repalloc {

std::optional<NodeIndex> least_modified_health_target(std::span<const NodeState> active_allocated,
                                                      const Scenario& scenario)
{
	std::optional<NodeIndex> best;
	Rational best_key;
	for (const auto& s : active_allocated) {
		Rational key = s.health - scenario.nodes[s.node].delta_dec;
		if (!best || key < best_key || (key == best_key && scenario.node_before(s.node, *best))) {
			best = s.node;
			best_key = key;
		}
	}
	return best;
}

std::optional<NodeIndex> healthiest_target(std::span<const NodeState> active_allocated, const Scenario& scenario)
{
	std::optional<NodeIndex> best;
	Rational best_health;
	for (const auto& s : active_allocated) {
		if (!best || s.health > best_health || (s.health == best_health && scenario.node_before(s.node, *best))) {
			best = s.node;
			best_health = s.health;
		}
	}
	return best;
}

std::vector<NodeState> active_in_set(const PolicyView& view, EntityIndex entity)
{
	std::vector<NodeState> out;
	for (NodeIndex j : view.allocation.sets[entity])
		if (view.states[j].active())
			out.push_back(view.states[j]);
	return out;
}

SequencingPolicy least_modified_health_policy()
{
	return SequencingPolicy("least-modified-health", [](const PolicyView& view) {
		Actions actions(view.scenario.entity_count());
		for (EntityIndex h = 0; h < actions.size(); ++h)
			actions[h] = least_modified_health_target(active_in_set(view, h), view.scenario);
		return actions;
	});
}

SequencingPolicy healthiest_first_policy()
{
	return SequencingPolicy("healthiest-first", [](const PolicyView& view) {
		Actions actions(view.scenario.entity_count());
		for (EntityIndex h = 0; h < actions.size(); ++h)
			actions[h] = healthiest_target(active_in_set(view, h), view.scenario);
		return actions;
	});
}

SequencingPolicy static_schedule_policy(std::vector<std::vector<NodeIndex>> order_per_entity)
{
	auto order = std::make_shared<const std::vector<std::vector<NodeIndex>>>(std::move(order_per_entity));
	return SequencingPolicy("static-schedule", [order](const PolicyView& view) {
		Actions actions(view.scenario.entity_count());
		for (EntityIndex h = 0; h < actions.size() && h < order->size(); ++h) {
			for (NodeIndex j : (*order)[h]) {
				if (view.states[j].active()) {
					actions[h] = j;
					break;
				}
			}
		}
		return actions;
	});
}

std::vector<std::vector<NodeIndex>> decreasing_initial_health_order(const Scenario& scenario,
                                                                    const Allocation& allocation)
{
	auto order = allocation.sets;
	for (auto& set : order) {
		std::sort(set.begin(), set.end(), [&](NodeIndex a, NodeIndex b) {
			const auto& va = scenario.nodes[a].v0;
			const auto& vb = scenario.nodes[b].v0;
			if (va != vb)
				return va > vb;
			return scenario.node_before(a, b);
		});
	}
	return order;
}

SequencingPolicy scripted_policy(std::vector<Actions> script)
{
	auto steps = std::make_shared<const std::vector<Actions>>(std::move(script));
	return SequencingPolicy("scripted", [steps](const PolicyView& view) {
		if (view.step < steps->size())
			return (*steps)[view.step];
		return Actions(view.scenario.entity_count());
	});
}

} // namespace repalloc
