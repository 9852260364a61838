#ifndef REPALLOC_POLICIES_HPP
#define REPALLOC_POLICIES_HPP

#include <optional>
#include <span>
#include <vector>

#include "repalloc/model.hpp"
#include "repalloc/simulation.hpp"

namespace repalloc {

/// Argmin of health - delta_dec over the given active nodes, ties to the
/// smallest node id. nullopt (Idle) for an empty set.
std::optional<NodeIndex> least_modified_health_target(std::span<const NodeState> active_allocated,
                                                      const Scenario& scenario);

/// Argmax of health over the given active nodes, ties to the smallest node
/// id. nullopt (Idle) for an empty set.
std::optional<NodeIndex> healthiest_target(std::span<const NodeState> active_allocated, const Scenario& scenario);

/// Active nodes of one entity's set, in set order.
std::vector<NodeState> active_in_set(const PolicyView& view, EntityIndex entity);

/// Each entity targets the allocated node with the least modified health.
SequencingPolicy least_modified_health_policy();

/// Each entity targets its healthiest allocated node.
SequencingPolicy healthiest_first_policy();

/// Each entity works through a fixed node order without jumping: it targets
/// the first node in its list that is still active. Nodes that absorb before
/// their turn are skipped.
SequencingPolicy static_schedule_policy(std::vector<std::vector<NodeIndex>> order_per_entity);

/// Orders every entity's set by decreasing initial health (ties by id).
std::vector<std::vector<NodeIndex>> decreasing_initial_health_order(const Scenario& scenario,
                                                                    const Allocation& allocation);

/// Replays a recorded list of actions; idles once the list is exhausted.
SequencingPolicy scripted_policy(std::vector<Actions> script);

} // namespace repalloc

#endif
