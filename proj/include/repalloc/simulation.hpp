#ifndef REPALLOC_SIMULATION_HPP
#define REPALLOC_SIMULATION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repalloc/model.hpp"

namespace repalloc {

/// Per-entity choice for one step; nullopt is Idle.
using Actions = std::vector<std::optional<NodeIndex>>;

/// Row t holds the health vector v_t and the actions applied to it to get
/// v_{t+1}. The last row (t = terminal_step) has no active node and all
/// entities idle.
struct TraceStep {
	std::vector<Rational> health;
	Actions actions;

	friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Trace {
	std::vector<TraceStep> steps;

	std::size_t terminal_step() const { return steps.empty() ? 0 : steps.size() - 1; }

	friend bool operator==(const Trace&, const Trace&) = default;
};

struct Outcome {
	std::size_t reward = 0;
	std::vector<NodeIndex> repaired;
	std::vector<NodeIndex> failed;
	std::size_t jumps = 0;
	std::size_t terminal_step = 0;
};

struct SimulationResult {
	Trace trace;
	Outcome outcome;
};

/// What a sequencing policy can see at one step.
struct PolicyView {
	std::size_t step;
	const Scenario& scenario;
	const Allocation& allocation;
	std::span<const NodeState> states;
};

/// Deterministic map from the visible state to one action per entity.
class SequencingPolicy {
public:
	using Select = std::function<Actions(const PolicyView&)>;

	SequencingPolicy(std::string name, Select select) : name_(std::move(name)), select_(std::move(select)) {}

	const std::string& name() const noexcept { return name_; }
	Actions operator()(const PolicyView& view) const { return select_(view); }

private:
	std::string name_;
	Select select_;
};

std::vector<NodeState> initial_states(const Scenario& scenario);
std::vector<NodeState> states_from_health(std::span<const Rational> health);

/// Applies one synchronous step: every action reads the same health vector.
/// Throws PolicyViolation when a target is outside the entity's set or not
/// active, or when two entities name the same node.
std::vector<NodeState> advance(const Scenario& scenario, const Allocation& allocation,
                               std::span<const NodeState> states, const Actions& actions);

bool any_active(std::span<const NodeState> states);

struct SimulateOptions {
	/// Hard stop for policies that never let the system absorb.
	std::size_t max_steps = 1'000'000;
};

/// Drives the scenario under an allocation and sequencing policy until no
/// node is active. Rejects allocations above budget.
SimulationResult simulate(const Scenario& scenario, const Allocation& allocation,
                          const SequencingPolicy& policy, SimulateOptions options = {});

/// Jumps per the usual definition: an entity that targeted j at t-1 targets
/// something else (or idles) at t while j is still below 1.
std::size_t count_jumps(const Trace& trace);

/// Tallies reward, repaired/failed sets and jumps from a finished trace.
Outcome summarize(const Trace& trace);

/// Re-runs every recorded step through step_health and checks exact
/// equality with the next row. When an allocation is supplied, also checks
/// that every target belongs to the acting entity's set. Throws
/// PolicyViolation or InvalidInput describing the first mismatch.
void replay_trace(const Scenario& scenario, const Trace& trace, const Allocation* allocation = nullptr);

} // namespace repalloc

#endif
