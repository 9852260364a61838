#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "repalloc/allocation.hpp"
#include "repalloc/assumptions.hpp"
#include "repalloc/oracle.hpp"
#include "repalloc/policies.hpp"
#include "repalloc/scenario_io.hpp"
#include "repalloc/simulation.hpp"

namespace repalloc::cli {

namespace {

std::string ids(const Scenario& s, const std::vector<NodeIndex>& nodes)
{
	std::vector<std::string> names;
	for (NodeIndex j : nodes)
		names.push_back(s.nodes[j].id);
	std::sort(names.begin(), names.end());
	std::string out;
	for (std::size_t i = 0; i < names.size(); ++i)
		out += (i ? "," : "") + names[i];
	return out.empty() ? "-" : out;
}

std::string budget_text(const std::optional<Rational>& b)
{
	return b ? b->to_string() : std::string("inf");
}

std::string n_summary(const Scenario& s, const IntegralRegimeReport& report)
{
	std::optional<std::int64_t> common;
	bool same = true;
	for (const auto& [h, n] : report.n) {
		if (common && *common != n)
			same = false;
		common = n;
	}
	if (same && common)
		return "n=" + std::to_string(*common);
	std::string out = "n=";
	bool first = true;
	for (const auto& [h, n] : report.n) {
		out += (first ? "" : ",") + s.entities[h].id + ":" + std::to_string(n);
		first = false;
	}
	return out;
}

int cmd_check(const std::string& path, std::ostream& out)
{
	Scenario s = load_scenario(path);
	auto fast = check_assumption1(s);
	auto integral = check_assumption2(s);

	if (fast.holds) {
		out << "fast-repair regime holds\n";
	} else {
		out << "fast-repair regime does not hold:\n";
		for (const auto& v : fast.violations)
			out << "  node " << s.nodes[v.node].id << ", entity " << s.entities[v.entity].id << ": " << v.condition
			    << '\n';
	}
	if (integral.holds) {
		out << "integral regime holds (" << n_summary(s, integral) << ")\n";
	} else {
		out << "integral regime does not hold:\n";
		for (const auto& v : integral.violations)
			out << "  " << v << '\n';
	}
	return fast.holds || integral.holds ? kOk : kRegimeViolated;
}

void print_outcome(const Scenario& s, const Outcome& outcome, std::ostream& out)
{
	out << "reward: " << outcome.reward << '\n';
	out << "repaired: " << ids(s, outcome.repaired) << '\n';
	out << "failed: " << ids(s, outcome.failed) << '\n';
	out << "jumps: " << outcome.jumps << '\n';
	out << "terminal step: " << outcome.terminal_step << '\n';
}

void write_trace(const std::string& path, const Scenario& s, const Trace& trace)
{
	std::ofstream file(path);
	if (!file)
		throw InvalidInput("cannot write trace file " + path);
	write_trace_csv(file, s, trace);
}

int cmd_solve(const std::string& path, const std::string& policy, bool force, const std::string& trace_path,
              std::ostream& out)
{
	Scenario s = load_scenario(path);
	if (policy == "alg2") {
		Allocation allocation = allocate_budgeted(s, {.force = force});
		auto run = simulate(s, allocation, least_modified_health_policy());
		out << "policy: budgeted allocation, least-modified-health sequencing\n";
		out << "allocation: " << describe(s, allocation) << '\n';
		out << "total cost: " << allocation.total_cost << '\n';
		out << "budget remaining: " << budget_text(remaining_budget(s, allocation)) << '\n';
		print_outcome(s, run.outcome, out);
		if (!trace_path.empty())
			write_trace(trace_path, s, run.trace);
	} else {
		auto run = run_online_policy(s, {.force = force});
		out << "policy: online healthiest-first assignment\n";
		out << "allocation: " << describe(s, run.allocation) << '\n';
		out << "total cost: " << run.allocation.total_cost << '\n';
		out << "budget remaining: " << budget_text(run.budget_remaining) << '\n';
		out << "assignments:";
		for (const auto& [node, t] : run.assignment_times)
			out << ' ' << s.nodes[node].id << "@t" << t;
		out << '\n';
		print_outcome(s, run.outcome, out);
		if (!trace_path.empty())
			write_trace(trace_path, s, run.trace);
	}
	return kOk;
}

std::string ratio_line(std::size_t reward, std::size_t optimal)
{
	if (optimal == 0)
		return "reward " + std::to_string(reward) + ", ratio n/a (optimal is 0)";
	Rational ratio(static_cast<std::int64_t>(reward), static_cast<std::int64_t>(optimal));
	std::string text = std::to_string(ratio.numerator()) + "/" + std::to_string(ratio.denominator());
	return "reward " + std::to_string(reward) + ", ratio " + text + (ratio * Rational(2) >= Rational(1) ? " >= 1/2" : " < 1/2");
}

int cmd_oracle(const std::string& path, std::size_t cap, bool force, std::ostream& out)
{
	Scenario s = load_scenario(path);
	OracleOptions options;
	options.allocation_cap = cap;
	options.memo_cap = cap;
	auto result = oracle_optimal(s, options);
	out << "optimal reward: " << result.optimal_reward << '\n';
	out << "witness allocation: " << describe(s, result.witness_allocation) << '\n';
	out << "allocations examined: " << result.allocations_examined << '\n';

	bool fast = check_assumption1(s).holds;
	if (fast || force) {
		std::string line;
		try {
			auto allocation = allocate_budgeted(s, {.force = true});
			auto run = simulate(s, allocation, least_modified_health_policy(), {.max_steps = 100'000});
			line = ratio_line(run.outcome.reward, result.optimal_reward);
		} catch (const SimulationDiverged&) {
			line = "least-modified-health sequencing did not absorb";
		}
		out << "alg2: " << line << (fast ? "" : " (outside the fast-repair regime)") << '\n';
	} else {
		out << "alg2: skipped, fast-repair regime does not hold (use --force)\n";
	}

	bool integral = check_assumption2(s).holds;
	if (integral || force) {
		auto run = run_online_policy(s, {.force = true});
		out << "online: " << ratio_line(run.outcome.reward, result.optimal_reward)
		    << (integral ? "" : " (outside the integral regime)") << '\n';
	} else {
		out << "online: skipped, integral regime does not hold (use --force)\n";
	}
	return kOk;
}

} // namespace

int report_reproduction(const std::vector<ReproductionCheck>& checks, std::ostream& out)
{
	auto results = run_reproduction(checks);
	std::size_t failed = 0;
	for (const auto& r : results) {
		out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << '\n';
		for (const auto& m : r.mismatches)
			out << "       " << m << '\n';
		failed += r.passed ? 0 : 1;
	}
	out << results.size() - failed << "/" << results.size() << " checks passed\n";
	return failed == 0 ? kOk : kReproductionMismatch;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Budgeted repair allocation for deteriorating components", "repalloc"};
	app.require_subcommand(1);

	std::string scenario_path;
	std::string policy = "alg2";
	std::string trace_path;
	bool force = false;
	std::size_t cap = 1'000'000;

	auto* check = app.add_subcommand("check", "Report which rate regime a scenario satisfies");
	check->add_option("scenario", scenario_path, "Scenario JSON file")->required();

	auto* solve = app.add_subcommand("solve", "Allocate and simulate with a built-in policy");
	solve->add_option("scenario", scenario_path, "Scenario JSON file")->required();
	solve->add_option("--policy", policy, "alg2 or online")->check(CLI::IsMember({"alg2", "online"}));
	solve->add_flag("--force", force, "Run even when the policy's regime does not hold");
	solve->add_option("--trace", trace_path, "Write the per-step trace as CSV");

	auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum and ratios of the built-in policies");
	oracle->add_option("scenario", scenario_path, "Scenario JSON file")->required();
	oracle->add_option("--cap", cap, "Allocation and memo cap")->check(CLI::PositiveNumber);
	oracle->add_flag("--force", force, "Also evaluate policies outside their regime");

	auto* examples = app.add_subcommand("examples", "Run the bundled reproduction suite");

	std::vector<std::string> reversed(args.rbegin(), args.rend());
	try {
		app.parse(reversed);
	} catch (const CLI::CallForHelp&) {
		out << app.help();
		return kOk;
	} catch (const CLI::ParseError& e) {
		err << e.what() << '\n';
		return kInputError;
	}

	try {
		if (check->parsed())
			return cmd_check(scenario_path, out);
		if (solve->parsed())
			return cmd_solve(scenario_path, policy, force, trace_path, out);
		if (oracle->parsed())
			return cmd_oracle(scenario_path, cap, force, out);
		if (examples->parsed())
			return report_reproduction(reproduction_checks(), out);
	} catch (const AssumptionViolated& e) {
		err << "regime violated: " << e.what() << " (use --force to run anyway)\n";
		return kRegimeViolated;
	} catch (const InstanceTooLarge& e) {
		err << "instance too large: " << e.what() << '\n';
		return kTooLarge;
	} catch (const std::exception& e) {
		err << "error: " << e.what() << '\n';
		return kInputError;
	}
	return kInputError;
}

} // namespace repalloc::cli
