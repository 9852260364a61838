#include "repalloc/assumptions.hpp"

namespace repalloc {

FastRepairReport check_assumption1(const Scenario& scenario)
{
	FastRepairReport report;
	const auto n = static_cast<std::int64_t>(scenario.node_count());

	Rational total_decay;
	for (const auto& node : scenario.nodes)
		total_decay += node.delta_dec;

	for (NodeIndex j = 0; j < scenario.node_count(); ++j) {
		const Rational& dec = scenario.nodes[j].delta_dec;
		const Rational others = total_decay - dec;
		for (EntityIndex h = 0; h < scenario.entity_count(); ++h) {
			const Rational& inc = scenario.repair_rate(j, h);
			if (!(inc > Rational(n - 1) * dec))
				report.violations.push_back({j, h, "repair rate " + inc.to_string() + " <= (N-1)*" + dec.to_string()});
			if (!(inc > others))
				report.violations.push_back(
				    {j, h, "repair rate " + inc.to_string() + " <= sum of other decay " + others.to_string()});
		}
	}
	report.holds = report.violations.empty();
	return report;
}

IntegralRegimeReport check_assumption2(const Scenario& scenario)
{
	IntegralRegimeReport report;
	auto fail = [&](std::string why) { report.violations.push_back(std::move(why)); };

	const Rational& dec = scenario.nodes.front().delta_dec;
	for (const auto& node : scenario.nodes)
		if (node.delta_dec != dec)
			fail("deterioration rate of \"" + node.id + "\" differs from \"" + scenario.nodes.front().id + "\"");

	const Rational& cost = scenario.entities.front().cost;
	for (const auto& e : scenario.entities)
		if (e.cost != cost)
			fail("cost of \"" + e.id + "\" differs from \"" + scenario.entities.front().id + "\"");

	for (EntityIndex h = 0; h < scenario.entity_count(); ++h) {
		const auto& entity = scenario.entities[h];
		const Rational& inc = entity.repair_rate.front();
		bool uniform = true;
		for (const auto& r : entity.repair_rate)
			uniform = uniform && r == inc;
		if (!uniform) {
			fail("repair rate of \"" + entity.id + "\" varies across nodes");
			continue;
		}
		if (dec < inc)
			fail("deterioration rate below repair rate of \"" + entity.id + "\"");

		// With non-uniform decay n_h is measured against the first node;
		// the mismatch itself is reported above.
		const Rational n_ratio = dec / inc;
		if (n_ratio.is_integer() && n_ratio.numerator() >= 1)
			report.n[h] = n_ratio.numerator();
		else
			fail("deterioration rate is not a positive integer multiple of the repair rate of \"" + entity.id + "\"");

		for (NodeIndex j = 0; j < scenario.node_count(); ++j) {
			const Rational m_ratio = (Rational(1) - scenario.nodes[j].v0) / inc;
			if (m_ratio.is_integer() && m_ratio.numerator() >= 1)
				report.m[{j, h}] = m_ratio.numerator();
			else
				fail("1 - v0 of \"" + scenario.nodes[j].id + "\" is not a positive integer multiple of the repair rate of \"" +
				     entity.id + "\"");
		}
	}
	report.holds = report.violations.empty();
	return report;
}

} // namespace repalloc
