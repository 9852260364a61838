#include "repalloc/worked_examples.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "embedded_examples.hpp"
#include "repalloc/allocation.hpp"
#include "repalloc/policies.hpp"
#include "repalloc/scenario_io.hpp"

namespace repalloc {

std::vector<std::string> example_names()
{
	std::vector<std::string> out;
	for (const auto& [name, doc] : detail::embedded_examples())
		out.emplace_back(name);
	return out;
}

std::string_view example_document(std::string_view name)
{
	for (const auto& [n, doc] : detail::embedded_examples())
		if (n == name)
			return doc;
	throw InvalidInput("no bundled example named \"" + std::string(name) + "\"");
}

Scenario example_scenario(std::string_view name)
{
	return parse_scenario(example_document(name));
}

namespace {

/// Calls visit(combination) for each k-subset of items in lexicographic
/// order until visit returns true.
bool first_combination(const std::vector<NodeIndex>& items, std::size_t k,
                       const std::function<bool(const std::vector<NodeIndex>&)>& visit)
{
	if (k > items.size())
		return false;
	std::vector<std::size_t> pick(k);
	std::iota(pick.begin(), pick.end(), std::size_t{0});
	std::vector<NodeIndex> chosen(k);
	for (;;) {
		for (std::size_t i = 0; i < k; ++i)
			chosen[i] = items[pick[i]];
		if (visit(chosen))
			return true;
		std::size_t i = k;
		while (i > 0 && pick[i - 1] == items.size() - k + (i - 1))
			--i;
		if (i == 0)
			return false;
		++pick[i - 1];
		for (std::size_t j = i; j < k; ++j)
			pick[j] = pick[j - 1] + 1;
	}
}

} // namespace

Allocation largest_subset_first_allocation(const Scenario& scenario, const OracleOptions& options)
{
	std::vector<EntityIndex> order(scenario.entity_count());
	std::iota(order.begin(), order.end(), EntityIndex{0});
	std::sort(order.begin(), order.end(), [&](EntityIndex a, EntityIndex b) { return scenario.entity_before(a, b); });

	std::vector<NodeIndex> remaining(scenario.node_count());
	std::iota(remaining.begin(), remaining.end(), NodeIndex{0});
	std::vector<std::vector<NodeIndex>> sets(scenario.entity_count());
	std::optional<Rational> budget = scenario.budget.limit;

	for (EntityIndex h : order) {
		const Rational& cost = scenario.entities[h].cost;
		std::size_t limit = remaining.size();
		if (budget && !cost.is_zero())
			limit = std::min(limit, static_cast<std::size_t>(std::max<std::int64_t>(0, (*budget / cost).floor())));

		for (std::size_t k = limit; k > 0; --k) {
			bool found = first_combination(remaining, k, [&](const std::vector<NodeIndex>& subset) {
				std::vector<std::vector<NodeIndex>> trial(scenario.entity_count());
				trial[h] = subset;
				Allocation single{trial, cost * Rational(static_cast<std::int64_t>(k))};
				if (optimal_sequencing_reward(scenario, single, options).reward != k)
					return false;
				sets[h] = subset;
				return true;
			});
			if (found)
				break;
		}
		for (NodeIndex j : sets[h])
			remaining.erase(std::find(remaining.begin(), remaining.end(), j));
		if (budget)
			*budget -= cost * Rational(static_cast<std::int64_t>(sets[h].size()));
	}
	return make_allocation(scenario, std::move(sets));
}

namespace {

std::string join_ids(const Scenario& scenario, std::vector<NodeIndex> nodes)
{
	std::sort(nodes.begin(), nodes.end(), [&](NodeIndex a, NodeIndex b) { return scenario.node_before(a, b); });
	std::string out;
	for (std::size_t i = 0; i < nodes.size(); ++i)
		out += (i ? "," : "") + scenario.nodes[nodes[i]].id;
	return out;
}

std::string row_text(const Scenario& scenario, const Trace& trace, std::size_t t,
                     const std::vector<std::string>& columns)
{
	if (t >= trace.steps.size())
		return "<trace ends at t=" + std::to_string(trace.terminal_step()) + ">";
	std::string out;
	for (std::size_t i = 0; i < columns.size(); ++i) {
		NodeIndex j = scenario.node_index(columns[i]);
		out += (i ? " " : "") + columns[i] + "=" + trace.steps[t].health[j].to_string();
	}
	return out;
}

std::string budget_text(const std::optional<Rational>& remaining)
{
	return remaining ? remaining->to_string() : std::string("inf");
}

std::string count(std::size_t n)
{
	return std::to_string(n);
}

SimulationResult heterogeneous_rates_schedule(const Scenario& s)
{
	// f works through e, c, a and g through d, b without switching early
	auto allocation = allocation_by_id(s, {{"f", {"a", "c", "e"}}, {"g", {"b", "d"}}});
	std::vector<std::vector<NodeIndex>> order(s.entity_count());
	order[s.entity_index("f")] = {s.node_index("e"), s.node_index("c"), s.node_index("a")};
	order[s.entity_index("g")] = {s.node_index("d"), s.node_index("b")};
	return simulate(s, allocation, static_schedule_policy(order));
}

} // namespace

std::map<std::string, std::string> observe(std::string_view check_name)
{
	std::map<std::string, std::string> out;

	if (check_name == "budgeted-two-entity") {
		auto s = example_scenario("budgeted_two_entity");
		auto allocation = allocate_budgeted(s);
		auto run = simulate(s, allocation, least_modified_health_policy());
		out["allocation"] = describe(s, allocation);
		out["total cost"] = allocation.total_cost.to_string();
		out["budget remaining"] = budget_text(remaining_budget(s, allocation));
		out["reward"] = count(run.outcome.reward);
		out["repaired"] = join_ids(s, run.outcome.repaired);
	} else if (check_name == "online-four-nodes") {
		auto s = example_scenario("online_four_nodes");
		auto run = run_online_policy(s);
		std::map<std::size_t, std::vector<NodeIndex>> by_time;
		std::vector<NodeIndex> never;
		for (NodeIndex j = 0; j < s.node_count(); ++j) {
			if (auto it = run.assignment_times.find(j); it != run.assignment_times.end())
				by_time[it->second].push_back(j);
			else
				never.push_back(j);
		}
		out["assigned at t=0"] = join_ids(s, by_time[0]);
		out["assigned at t=1"] = join_ids(s, by_time[1]);
		out["never assigned"] = join_ids(s, never);
		out["budget remaining"] = budget_text(run.budget_remaining);
		out["reward"] = count(run.outcome.reward);
	} else if (check_name == "online-vs-split") {
		auto s = example_scenario("online_vs_split");
		auto online = run_online_policy(s);
		auto split = simulate(s, allocation_by_id(s, {{"d", {"a", "b"}}, {"e", {"c"}}}), healthiest_first_policy());
		auto oracle = oracle_optimal(s);
		out["online reward"] = count(online.outcome.reward);
		out["split allocation reward"] = count(split.outcome.reward);
		out["optimal reward"] = count(oracle.optimal_reward);
		out["half-optimality bound"] = 2 * online.outcome.reward >= oracle.optimal_reward ? "holds" : "violated";
	} else if (check_name == "online-vs-largest-subset") {
		auto s = example_scenario("online_vs_largest_subset");
		auto online = run_online_policy(s);
		auto allocation = largest_subset_first_allocation(s);
		auto greedy = simulate(s, allocation, healthiest_first_policy());
		out["online reward"] = count(online.outcome.reward);
		out["largest-subset allocation"] = describe(s, allocation);
		out["largest-subset reward"] = count(greedy.outcome.reward);
	} else if (check_name == "heterogeneous-rates") {
		auto s = example_scenario("heterogeneous_rates");
		auto online = run_online_policy(s, {.force = true});
		auto manual = heterogeneous_rates_schedule(s);
		auto oracle = oracle_optimal(s);
		out["online reward"] = count(online.outcome.reward);
		out["split schedule reward"] = count(manual.outcome.reward);
		out["optimal reward"] = count(oracle.optimal_reward);
		out["online / optimal"] = (Rational(static_cast<std::int64_t>(online.outcome.reward)) /
		                           Rational(static_cast<std::int64_t>(oracle.optimal_reward)))
		                              .to_string();
	} else if (check_name == "heterogeneous-costs") {
		auto s = example_scenario("heterogeneous_costs");
		auto online = run_online_policy(s, {.force = true});
		auto all_cheap = allocation_by_id(s, {{"f", {"a", "b", "c", "d", "e"}}});
		out["online reward"] = count(online.outcome.reward);
		out["online budget remaining"] = budget_text(online.budget_remaining);
		out["all nodes to f, best sequencing"] = count(optimal_sequencing_reward(s, all_cheap).reward);
	} else if (check_name == "table-online-heterogeneous") {
		auto s = example_scenario("heterogeneous_rates");
		auto online = run_online_policy(s, {.force = true});
		const std::vector<std::string> cols{"a", "b", "c", "d", "e"};
		out["t=0"] = row_text(s, online.trace, 0, cols);
		out["t=4"] = row_text(s, online.trace, 4, cols);
	} else if (check_name == "table-entity-f") {
		auto s = example_scenario("heterogeneous_rates");
		auto run = heterogeneous_rates_schedule(s);
		const std::vector<std::string> cols{"a", "c", "e"};
		for (std::size_t t : {0, 1, 4, 12})
			out["t=" + std::to_string(t)] = row_text(s, run.trace, t, cols);
	} else if (check_name == "table-entity-g") {
		auto s = example_scenario("heterogeneous_rates");
		auto run = heterogeneous_rates_schedule(s);
		const std::vector<std::string> cols{"b", "d"};
		for (std::size_t t : {0, 2, 8})
			out["t=" + std::to_string(t)] = row_text(s, run.trace, t, cols);
	} else {
		throw InvalidInput("no reproduction check named \"" + std::string(check_name) + "\"");
	}
	return out;
}

std::vector<ReproductionCheck> reproduction_checks()
{
	return {
	    {"budgeted-two-entity",
	     "budgeted allocation hands {a,b} to the cheaper entity and repairs both",
	     {{"allocation", "e:{a,b} f:{}"},
	      {"total cost", "12"},
	      {"budget remaining", "7"},
	      {"reward", "2"},
	      {"repaired", "a,b"}}},
	    {"online-four-nodes",
	     "online policy assigns a,b then c; d is never funded",
	     {{"assigned at t=0", "a,b"},
	      {"assigned at t=1", "c"},
	      {"never assigned", "d"},
	      {"budget remaining", "5"},
	      {"reward", "3"}}},
	    {"online-vs-split",
	     "online repairs 2 where splitting {a,b} / {c} repairs all 3",
	     {{"online reward", "2"},
	      {"split allocation reward", "3"},
	      {"optimal reward", "3"},
	      {"half-optimality bound", "holds"}}},
	    {"online-vs-largest-subset",
	     "online repairs all 4; largest-subset-first leaves d out",
	     {{"online reward", "4"}, {"largest-subset allocation", "e:{a,b} f:{c}"}, {"largest-subset reward", "3"}}},
	    {"heterogeneous-rates",
	     "with node-dependent rates online repairs 2 of 5",
	     {{"online reward", "2"}, {"split schedule reward", "5"}, {"optimal reward", "5"}, {"online / optimal", "0.4"}}},
	    {"heterogeneous-costs",
	     "with unequal costs online spends the budget on two nodes",
	     {{"online reward", "2"}, {"online budget remaining", "0"}, {"all nodes to f, best sequencing", "5"}}},
	    {"table-online-heterogeneous",
	     "health rows of the online run with node-dependent rates",
	     {{"t=0", "a=0.8 b=0.8 c=0.6 d=0.6 e=0.6"}, {"t=4", "a=1 b=1 c=0 d=0 e=0"}}},
	    {"table-entity-f",
	     "health rows while f repairs e, c, then a",
	     {{"t=0", "a=0.8 c=0.6 e=0.6"}, {"t=1", "a=0.75 c=0.4 e=1"}, {"t=4", "a=0.6 c=1 e=1"}, {"t=12", "a=1 c=1 e=1"}}},
	    {"table-entity-g",
	     "health rows while g repairs d, then b",
	     {{"t=0", "b=0.8 d=0.6"}, {"t=2", "b=0.7 d=1"}, {"t=8", "b=1 d=1"}}},
	};
}

std::vector<CheckOutcome> run_reproduction(const std::vector<ReproductionCheck>& checks)
{
	std::vector<CheckOutcome> out;
	for (const auto& check : checks) {
		CheckOutcome result{check.name, true, {}};
		try {
			auto observed = observe(check.name);
			for (const auto& e : check.expectations) {
				auto it = observed.find(e.label);
				std::string got = it == observed.end() ? "<not observed>" : it->second;
				if (got != e.expected) {
					result.passed = false;
					result.mismatches.push_back(e.label + ": expected " + e.expected + ", got " + got);
				}
			}
		} catch (const std::exception& ex) {
			result.passed = false;
			result.mismatches.push_back(std::string("error: ") + ex.what());
		}
		out.push_back(std::move(result));
	}
	return out;
}

} // namespace repalloc
