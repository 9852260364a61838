#ifndef REPALLOC_ASSUMPTIONS_HPP
#define REPALLOC_ASSUMPTIONS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "repalloc/model.hpp"

namespace repalloc {

/// Fast-repair regime: every repair rate beats (N-1) times the node's own
/// deterioration rate and the sum of every other node's deterioration rate.
struct FastRepairReport {
	struct Violation {
		NodeIndex node;
		EntityIndex entity;
		std::string condition;
	};

	bool holds = true;
	std::vector<Violation> violations;
};

FastRepairReport check_assumption1(const Scenario& scenario);

/// Integral slow-repair regime: rates uniform, decay an integer multiple n_h
/// of each entity's repair rate, every repair gap 1 - v0 an integer multiple
/// m_j^h of that rate, and all costs equal.
struct IntegralRegimeReport {
	bool holds = true;
	/// n_h per entity; only filled for entities where it exists.
	std::map<EntityIndex, std::int64_t> n;
	/// m_j^h per (node, entity); only filled where it exists.
	std::map<std::pair<NodeIndex, EntityIndex>, std::int64_t> m;
	std::vector<std::string> violations;
};

IntegralRegimeReport check_assumption2(const Scenario& scenario);

} // namespace repalloc

#endif
