#ifndef REPALLOC_MODEL_HPP
#define REPALLOC_MODEL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "repalloc/rational.hpp"

namespace repalloc {

// Errors ---------------------------------------------------------------------

class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Scenario or allocation breaks a structural invariant.
class InvalidInput : public Error {
public:
	using Error::Error;
};

/// Allocation charges more than the budget allows.
class BudgetExceeded : public InvalidInput {
public:
	using InvalidInput::InvalidInput;
};

/// A sequencing policy asked for an action the dynamics do not permit.
class PolicyViolation : public Error {
public:
	using Error::Error;
};

/// The regime a guarantee depends on does not hold for this scenario.
class AssumptionViolated : public Error {
public:
	using Error::Error;
};

/// Exhaustive search would exceed a configured cap.
class InstanceTooLarge : public Error {
public:
	using Error::Error;
};

/// Simulation did not reach absorption within its step limit.
class SimulationDiverged : public Error {
public:
	using Error::Error;
};

// Instance -------------------------------------------------------------------

using NodeIndex = std::size_t;
using EntityIndex = std::size_t;

struct NodeSpec {
	std::string id;
	Rational v0;
	Rational delta_dec;

	friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

struct EntitySpec {
	std::string id;
	Rational cost;
	/// Indexed by node position in the owning scenario.
	std::vector<Rational> repair_rate;

	friend bool operator==(const EntitySpec&, const EntitySpec&) = default;
};

/// Budget in [0, inf]; an empty limit means unconstrained.
struct Budget {
	std::optional<Rational> limit;

	static Budget infinite() { return {}; }
	static Budget of(Rational value) { return Budget{value}; }

	bool is_infinite() const noexcept { return !limit.has_value(); }
	bool allows(const Rational& cost) const { return !limit || cost <= *limit; }

	friend bool operator==(const Budget&, const Budget&) = default;
};

std::string to_string(const Budget& budget);

/// A full problem instance. Construct through make_scenario so the
/// invariants (ids unique, 0 < v0 < 1, rates positive, 1 <= M <= N, N >= 2)
/// are checked once.
struct Scenario {
	std::vector<NodeSpec> nodes;
	std::vector<EntitySpec> entities;
	Budget budget;

	std::size_t node_count() const noexcept { return nodes.size(); }
	std::size_t entity_count() const noexcept { return entities.size(); }

	const Rational& repair_rate(NodeIndex node, EntityIndex entity) const
	{
		return entities[entity].repair_rate[node];
	}

	std::optional<NodeIndex> find_node(std::string_view id) const;
	std::optional<EntityIndex> find_entity(std::string_view id) const;
	NodeIndex node_index(std::string_view id) const;
	EntityIndex entity_index(std::string_view id) const;

	/// Id order used for every tie-break.
	bool node_before(NodeIndex a, NodeIndex b) const { return nodes[a].id < nodes[b].id; }
	bool entity_before(EntityIndex a, EntityIndex b) const { return entities[a].id < entities[b].id; }

	/// Smallest deterioration or repair rate anywhere in the instance.
	Rational min_rate() const;

	friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario make_scenario(std::vector<NodeSpec> nodes, std::vector<EntitySpec> entities, Budget budget);

/// Entity whose repair rate is the same for every node.
EntitySpec uniform_entity(std::string id, Rational cost, Rational rate, std::size_t node_count);

// State ----------------------------------------------------------------------

enum class Status { Active, Repaired, Failed };

const char* to_string(Status status);

Status status_of(const Rational& health);

struct NodeState {
	NodeIndex node = 0;
	Rational health;
	Status status = Status::Active;

	static NodeState at(NodeIndex node, Rational health)
	{
		Status s = status_of(health);
		return NodeState{node, std::move(health), s};
	}
	bool active() const noexcept { return status == Status::Active; }

	friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// Which entity, if any, targets a node during one step.
using TargetedBy = std::optional<EntityIndex>;

/// One step of the health dynamics for a single node. Repaired and failed
/// nodes are absorbing; a targeted active node gains its repair rate capped
/// at 1; an untargeted active node loses its deterioration rate floored at 0.
NodeState step_health(const NodeState& state, TargetedBy action, const Scenario& scenario);

// Allocation -----------------------------------------------------------------

/// Disjoint node sets per entity (indexed like Scenario::entities), each set
/// sorted by node index, plus the total charge.
struct Allocation {
	std::vector<std::vector<NodeIndex>> sets;
	Rational total_cost;

	std::optional<EntityIndex> owner_of(NodeIndex node) const;
	std::size_t allocated_count() const;

	friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Builds an allocation, checking disjointness and node bounds. Budget is
/// not checked here (see require_within_budget).
Allocation make_allocation(const Scenario& scenario, std::vector<std::vector<NodeIndex>> sets);

/// Same as make_allocation but keyed by ids: {entity-id, {node-id...}}.
Allocation allocation_by_id(const Scenario& scenario,
                            const std::vector<std::pair<std::string, std::vector<std::string>>>& sets);

Allocation empty_allocation(const Scenario& scenario);

Rational allocation_cost(const Scenario& scenario, const std::vector<std::vector<NodeIndex>>& sets);

/// Throws BudgetExceeded when total_cost exceeds the budget.
void require_within_budget(const Scenario& scenario, const Allocation& allocation);

/// "e:{a,b} f:{}" in entity order.
std::string describe(const Scenario& scenario, const Allocation& allocation);

/// Budget minus charged cost; empty when the budget is infinite.
std::optional<Rational> remaining_budget(const Scenario& scenario, const Allocation& allocation);

} // namespace repalloc

#endif
