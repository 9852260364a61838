#ifndef REPALLOC_ORACLE_HPP
#define REPALLOC_ORACLE_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "repalloc/model.hpp"
#include "repalloc/simulation.hpp"

namespace repalloc {

struct OracleOptions {
	/// Upper bound on (M+1)^N candidate assignments.
	std::size_t allocation_cap = 1'000'000;
	/// Upper bound on distinct health vectors held by one search.
	std::size_t memo_cap = 1'000'000;
	/// Solve each entity's set on its own and add the results. Entities never
	/// touch each other's nodes, so this equals the joint search; turning it
	/// off forces a joint search per allocation.
	bool decompose = true;
};

/// Calls visit for every budget-feasible assignment of nodes to entities
/// or to nobody. Assignments are enumerated as base-(M+1) numbers with node
/// 0 as the most significant digit (0 = unassigned), so the all-unassigned
/// allocation comes first. Throws InstanceTooLarge above allocation_cap.
void for_each_feasible_allocation(const Scenario& scenario, const OracleOptions& options,
                                  const std::function<void(const Allocation&)>& visit);

std::vector<Allocation> enumerate_feasible_allocations(const Scenario& scenario, const OracleOptions& options = {});

struct SequencingOptimum {
	std::size_t reward = 0;
	/// Full-scenario trace of one optimal targeting sequence.
	Trace witness;
	/// Distinct health vectors visited.
	std::size_t states = 0;
};

/// Exact best reward for a fixed allocation, searching every joint per-step
/// action (any active node of the entity's set, or idle; jumps allowed).
/// States are the health vectors of allocated nodes; the search runs over the
/// strongly connected components of the state graph because jumping can
/// revisit a vector.
SequencingOptimum optimal_sequencing_reward(const Scenario& scenario, const Allocation& allocation,
                                            const OracleOptions& options = {});

/// Same value without memoization: a plain depth-first search over
/// simple paths. Exponential; only for cross-checking tiny instances.
/// Throws InstanceTooLarge after visit_cap search nodes.
std::size_t optimal_sequencing_reward_unmemoized(const Scenario& scenario, const Allocation& allocation,
                                                 std::size_t visit_cap = 5'000'000);

struct OracleResult {
	std::size_t optimal_reward = 0;
	Allocation witness_allocation;
	Trace witness_trace;
	std::size_t allocations_examined = 0;
};

/// Best reward over every feasible allocation; the witness is the first
/// maximizer in enumeration order.
OracleResult oracle_optimal(const Scenario& scenario, const OracleOptions& options = {});

} // namespace repalloc

#endif
