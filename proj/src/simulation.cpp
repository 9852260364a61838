#include "repalloc/simulation.hpp"

#include <algorithm>

namespace repalloc {

std::vector<NodeState> initial_states(const Scenario& scenario)
{
	std::vector<NodeState> out;
	out.reserve(scenario.node_count());
	for (NodeIndex j = 0; j < scenario.node_count(); ++j)
		out.push_back(NodeState::at(j, scenario.nodes[j].v0));
	return out;
}

std::vector<NodeState> states_from_health(std::span<const Rational> health)
{
	std::vector<NodeState> out;
	out.reserve(health.size());
	for (NodeIndex j = 0; j < health.size(); ++j)
		out.push_back(NodeState::at(j, health[j]));
	return out;
}

bool any_active(std::span<const NodeState> states)
{
	return std::any_of(states.begin(), states.end(), [](const NodeState& s) { return s.active(); });
}

namespace {

std::vector<Rational> health_of(std::span<const NodeState> states)
{
	std::vector<Rational> out;
	out.reserve(states.size());
	for (const auto& s : states)
		out.push_back(s.health);
	return out;
}

std::vector<TargetedBy> targets_from(const Scenario& scenario, const Allocation* allocation,
                                     std::span<const NodeState> states, const Actions& actions)
{
	if (actions.size() != scenario.entity_count())
		throw PolicyViolation("policy must return one action per entity");
	std::vector<TargetedBy> targeted(scenario.node_count());
	for (EntityIndex h = 0; h < actions.size(); ++h) {
		if (!actions[h])
			continue;
		NodeIndex j = *actions[h];
		const std::string& who = scenario.entities[h].id;
		if (j >= scenario.node_count())
			throw PolicyViolation("entity \"" + who + "\" targets an unknown node");
		const std::string& what = scenario.nodes[j].id;
		if (allocation && !std::binary_search(allocation->sets[h].begin(), allocation->sets[h].end(), j))
			throw PolicyViolation("entity \"" + who + "\" targets node \"" + what + "\" outside its set");
		if (!states[j].active())
			throw PolicyViolation("entity \"" + who + "\" targets " + to_string(states[j].status) + " node \"" +
			                      what + "\"");
		if (targeted[j])
			throw PolicyViolation("node \"" + what + "\" targeted by two entities");
		targeted[j] = h;
	}
	return targeted;
}

} // namespace

std::vector<NodeState> advance(const Scenario& scenario, const Allocation& allocation,
                               std::span<const NodeState> states, const Actions& actions)
{
	auto targeted = targets_from(scenario, &allocation, states, actions);
	std::vector<NodeState> next;
	next.reserve(states.size());
	for (NodeIndex j = 0; j < states.size(); ++j)
		next.push_back(step_health(states[j], targeted[j], scenario));
	return next;
}

SimulationResult simulate(const Scenario& scenario, const Allocation& allocation,
                          const SequencingPolicy& policy, SimulateOptions options)
{
	if (allocation.sets.size() != scenario.entity_count())
		throw InvalidInput("allocation must list one set per entity");
	require_within_budget(scenario, allocation);

	Trace trace;
	auto states = initial_states(scenario);
	const Actions idle(scenario.entity_count());
	for (std::size_t t = 0;; ++t) {
		if (!any_active(states)) {
			trace.steps.push_back({health_of(states), idle});
			break;
		}
		if (t >= options.max_steps)
			throw SimulationDiverged("policy \"" + policy.name() + "\" did not absorb within " +
			                         std::to_string(options.max_steps) + " steps");
		Actions actions = policy(PolicyView{t, scenario, allocation, states});
		auto next = advance(scenario, allocation, states, actions);
		trace.steps.push_back({health_of(states), std::move(actions)});
		states = std::move(next);
	}
	Outcome outcome = summarize(trace);
	return {std::move(trace), std::move(outcome)};
}

std::size_t count_jumps(const Trace& trace)
{
	std::size_t jumps = 0;
	for (std::size_t t = 1; t < trace.steps.size(); ++t) {
		const auto& prev = trace.steps[t - 1].actions;
		const auto& cur = trace.steps[t].actions;
		for (std::size_t h = 0; h < prev.size(); ++h) {
			if (!prev[h])
				continue;
			NodeIndex j = *prev[h];
			if (trace.steps[t].health[j] < Rational(1) && cur[h] != prev[h])
				++jumps;
		}
	}
	return jumps;
}

Outcome summarize(const Trace& trace)
{
	Outcome out;
	if (trace.steps.empty())
		return out;
	const auto& last = trace.steps.back().health;
	for (NodeIndex j = 0; j < last.size(); ++j) {
		Status s = status_of(last[j]);
		if (s == Status::Repaired)
			out.repaired.push_back(j);
		else if (s == Status::Failed)
			out.failed.push_back(j);
	}
	out.reward = out.repaired.size();
	out.jumps = count_jumps(trace);
	out.terminal_step = trace.terminal_step();
	return out;
}

void replay_trace(const Scenario& scenario, const Trace& trace, const Allocation* allocation)
{
	if (trace.steps.empty())
		throw InvalidInput("empty trace");
	for (std::size_t t = 0; t < trace.steps.size(); ++t) {
		const auto& row = trace.steps[t];
		if (row.health.size() != scenario.node_count() || row.actions.size() != scenario.entity_count())
			throw InvalidInput("trace row " + std::to_string(t) + " has the wrong width");
	}
	if (trace.steps.front().health != health_of(initial_states(scenario)))
		throw InvalidInput("trace row 0 does not match the initial health");
	for (std::size_t t = 0; t + 1 < trace.steps.size(); ++t) {
		auto states = states_from_health(trace.steps[t].health);
		auto targeted = targets_from(scenario, allocation, states, trace.steps[t].actions);
		for (NodeIndex j = 0; j < states.size(); ++j) {
			if (step_health(states[j], targeted[j], scenario).health != trace.steps[t + 1].health[j])
				throw InvalidInput("trace row " + std::to_string(t + 1) + ": node \"" + scenario.nodes[j].id +
				                   "\" does not follow from row " + std::to_string(t));
		}
	}
	const auto& last = trace.steps.back();
	if (any_active(states_from_health(last.health)))
		throw InvalidInput("trace ends with an active node");
	for (const auto& a : last.actions)
		if (a)
			throw InvalidInput("final trace row must be idle");
}

} // namespace repalloc
