#ifndef REPALLOC_ALLOCATION_HPP
#define REPALLOC_ALLOCATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "repalloc/model.hpp"
#include "repalloc/simulation.hpp"

namespace repalloc {

/// Number of untargeted steps a node survives: ceil(v0 / delta_dec).
struct LifetimeIndex {
	NodeIndex node;
	std::int64_t steps;
};

LifetimeIndex lifetime_index(const Scenario& scenario, NodeIndex node);

/// True iff v0 of the j-th listed node (1-based) strictly exceeds
/// (z - j) * delta_dec, for all j. The last listed node is the one a single
/// entity repairs first.
bool feasible_ordered_set(std::span<const NodeSpec> ordered_nodes);
bool feasible_ordered_set(const Scenario& scenario, std::span<const NodeIndex> ordered_nodes);

/// Greedy largest single-entity repairable subset. Starting from z = 0,
/// repeatedly moves the candidate with the lowest lifetime index strictly
/// above z (ties to the smallest id) into the result. Returned in pick
/// order, i.e. the order the entity repairs them; reversed, it satisfies
/// feasible_ordered_set.
std::vector<NodeIndex> largest_repairable_subset(const Scenario& scenario, std::span<const NodeIndex> candidates);

struct AllocateOptions {
	/// Run even when the fast-repair regime does not hold.
	bool force = false;
};

/// Budgeted multi-entity allocation: entities in increasing cost order
/// (ties by id) each take the greedy subset of what is left, truncated to
/// floor(remaining budget / cost) nodes in pick order.
Allocation allocate_budgeted(const Scenario& scenario, AllocateOptions options = {});

struct OnlineRunResult {
	Allocation allocation;
	/// Step at which each assigned node was handed to its entity.
	std::map<NodeIndex, std::size_t> assignment_times;
	/// Nodes in the order they were assigned, per entity.
	std::vector<std::vector<NodeIndex>> assignment_order;
	Trace trace;
	Outcome outcome;
	/// Empty when the budget is infinite.
	std::optional<Rational> budget_remaining;
};

/// Online policy: at every step each free entity (smallest id first) is
/// handed the healthiest active node nobody has been assigned, as long as
/// the remaining budget covers that entity's cost. Entities then repair
/// their node without switching until it reaches full health.
OnlineRunResult run_online_policy(const Scenario& scenario, AllocateOptions options = {});

} // namespace repalloc

#endif
