#include "repalloc/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace repalloc {

std::string to_string(const Budget& budget)
{
	return budget.limit ? budget.limit->to_string() : std::string("inf");
}

std::optional<NodeIndex> Scenario::find_node(std::string_view id) const
{
	for (NodeIndex i = 0; i < nodes.size(); ++i)
		if (nodes[i].id == id)
			return i;
	return std::nullopt;
}

std::optional<EntityIndex> Scenario::find_entity(std::string_view id) const
{
	for (EntityIndex i = 0; i < entities.size(); ++i)
		if (entities[i].id == id)
			return i;
	return std::nullopt;
}

NodeIndex Scenario::node_index(std::string_view id) const
{
	if (auto i = find_node(id))
		return *i;
	throw InvalidInput("unknown node id \"" + std::string(id) + "\"");
}

EntityIndex Scenario::entity_index(std::string_view id) const
{
	if (auto i = find_entity(id))
		return *i;
	throw InvalidInput("unknown entity id \"" + std::string(id) + "\"");
}

Rational Scenario::min_rate() const
{
	Rational lowest = nodes.front().delta_dec;
	for (const auto& n : nodes)
		lowest = min(lowest, n.delta_dec);
	for (const auto& e : entities)
		for (const auto& r : e.repair_rate)
			lowest = min(lowest, r);
	return lowest;
}

Scenario make_scenario(std::vector<NodeSpec> nodes, std::vector<EntitySpec> entities, Budget budget)
{
	if (nodes.size() < 2)
		throw InvalidInput("a scenario needs at least two nodes");
	if (entities.empty())
		throw InvalidInput("a scenario needs at least one entity");
	if (entities.size() > nodes.size())
		throw InvalidInput("more entities than nodes");

	std::set<std::string> seen;
	for (const auto& n : nodes) {
		if (n.id.empty())
			throw InvalidInput("empty node id");
		if (!seen.insert(n.id).second)
			throw InvalidInput("duplicate node id \"" + n.id + "\"");
		if (n.v0 <= Rational(0) || n.v0 >= Rational(1))
			throw InvalidInput("node \"" + n.id + "\": v0 must lie in (0,1)");
		if (n.delta_dec <= Rational(0))
			throw InvalidInput("node \"" + n.id + "\": delta_dec must be positive");
	}
	seen.clear();
	for (const auto& e : entities) {
		if (e.id.empty())
			throw InvalidInput("empty entity id");
		if (!seen.insert(e.id).second)
			throw InvalidInput("duplicate entity id \"" + e.id + "\"");
		if (e.cost < Rational(0))
			throw InvalidInput("entity \"" + e.id + "\": cost must be non-negative");
		if (e.repair_rate.size() != nodes.size())
			throw InvalidInput("entity \"" + e.id + "\": repair rate missing for some node");
		for (const auto& r : e.repair_rate)
			if (r <= Rational(0))
				throw InvalidInput("entity \"" + e.id + "\": repair rates must be positive");
	}
	if (budget.limit && *budget.limit < Rational(0))
		throw InvalidInput("budget must be non-negative");

	return Scenario{std::move(nodes), std::move(entities), std::move(budget)};
}

EntitySpec uniform_entity(std::string id, Rational cost, Rational rate, std::size_t node_count)
{
	return EntitySpec{std::move(id), cost, std::vector<Rational>(node_count, rate)};
}

const char* to_string(Status status)
{
	switch (status) {
	case Status::Active:
		return "active";
	case Status::Repaired:
		return "repaired";
	case Status::Failed:
		return "failed";
	}
	return "?";
}

Status status_of(const Rational& health)
{
	if (health >= Rational(1))
		return Status::Repaired;
	if (health <= Rational(0))
		return Status::Failed;
	return Status::Active;
}

NodeState step_health(const NodeState& state, TargetedBy action, const Scenario& scenario)
{
	if (!state.active())
		return state;
	const Rational one(1);
	const Rational zero(0);
	if (action)
		return NodeState::at(state.node, min(one, state.health + scenario.repair_rate(state.node, *action)));
	return NodeState::at(state.node, max(zero, state.health - scenario.nodes[state.node].delta_dec));
}

std::optional<EntityIndex> Allocation::owner_of(NodeIndex node) const
{
	for (EntityIndex h = 0; h < sets.size(); ++h)
		if (std::binary_search(sets[h].begin(), sets[h].end(), node))
			return h;
	return std::nullopt;
}

std::size_t Allocation::allocated_count() const
{
	std::size_t n = 0;
	for (const auto& s : sets)
		n += s.size();
	return n;
}

Rational allocation_cost(const Scenario& scenario, const std::vector<std::vector<NodeIndex>>& sets)
{
	Rational total;
	for (EntityIndex h = 0; h < sets.size(); ++h)
		total += scenario.entities[h].cost * Rational(static_cast<std::int64_t>(sets[h].size()));
	return total;
}

Allocation make_allocation(const Scenario& scenario, std::vector<std::vector<NodeIndex>> sets)
{
	if (sets.size() != scenario.entity_count())
		throw InvalidInput("allocation must list one set per entity");
	std::vector<bool> used(scenario.node_count(), false);
	for (auto& s : sets) {
		std::sort(s.begin(), s.end());
		for (NodeIndex j : s) {
			if (j >= scenario.node_count())
				throw InvalidInput("allocation references an unknown node");
			if (used[j])
				throw InvalidInput("node \"" + scenario.nodes[j].id + "\" allocated more than once");
			used[j] = true;
		}
	}
	Rational cost = allocation_cost(scenario, sets);
	return Allocation{std::move(sets), cost};
}

Allocation allocation_by_id(const Scenario& scenario,
                            const std::vector<std::pair<std::string, std::vector<std::string>>>& sets)
{
	std::vector<std::vector<NodeIndex>> by_index(scenario.entity_count());
	for (const auto& [entity, nodes] : sets) {
		auto& target = by_index[scenario.entity_index(entity)];
		for (const auto& n : nodes)
			target.push_back(scenario.node_index(n));
	}
	return make_allocation(scenario, std::move(by_index));
}

Allocation empty_allocation(const Scenario& scenario)
{
	return Allocation{std::vector<std::vector<NodeIndex>>(scenario.entity_count()), Rational(0)};
}

void require_within_budget(const Scenario& scenario, const Allocation& allocation)
{
	if (!scenario.budget.allows(allocation.total_cost))
		throw BudgetExceeded("allocation costs " + allocation.total_cost.to_string() + " but the budget is " +
		                     to_string(scenario.budget));
}

std::string describe(const Scenario& scenario, const Allocation& allocation)
{
	std::ostringstream out;
	for (EntityIndex h = 0; h < scenario.entity_count(); ++h) {
		if (h > 0)
			out << ' ';
		std::vector<std::string> ids;
		for (NodeIndex j : allocation.sets[h])
			ids.push_back(scenario.nodes[j].id);
		std::sort(ids.begin(), ids.end());
		out << scenario.entities[h].id << ":{";
		for (std::size_t i = 0; i < ids.size(); ++i)
			out << (i ? "," : "") << ids[i];
		out << '}';
	}
	return out.str();
}

std::optional<Rational> remaining_budget(const Scenario& scenario, const Allocation& allocation)
{
	if (!scenario.budget.limit)
		return std::nullopt;
	return *scenario.budget.limit - allocation.total_cost;
}

} // namespace repalloc
