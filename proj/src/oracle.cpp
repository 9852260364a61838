#include "repalloc/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "repalloc/policies.hpp"

namespace repalloc {

void for_each_feasible_allocation(const Scenario& scenario, const OracleOptions& options,
                                  const std::function<void(const Allocation&)>& visit)
{
	const std::size_t n = scenario.node_count();
	const std::size_t base = scenario.entity_count() + 1;
	std::size_t total = 1;
	for (std::size_t i = 0; i < n; ++i) {
		if (total > options.allocation_cap / base)
			throw InstanceTooLarge("(M+1)^N = " + std::to_string(base) + "^" + std::to_string(n) +
			                       " exceeds the allocation cap of " + std::to_string(options.allocation_cap));
		total *= base;
	}
	if (total > options.allocation_cap)
		throw InstanceTooLarge("allocation count exceeds the cap of " + std::to_string(options.allocation_cap));

	std::vector<std::size_t> digit(n, 0);
	for (std::size_t code = 0; code < total; ++code) {
		std::size_t rest = code;
		for (std::size_t i = n; i-- > 0;) {
			digit[i] = rest % base;
			rest /= base;
		}
		std::vector<std::vector<NodeIndex>> sets(scenario.entity_count());
		for (NodeIndex j = 0; j < n; ++j)
			if (digit[j] > 0)
				sets[digit[j] - 1].push_back(j);
		if (!scenario.budget.allows(allocation_cost(scenario, sets)))
			continue;
		visit(make_allocation(scenario, std::move(sets)));
	}
}

std::vector<Allocation> enumerate_feasible_allocations(const Scenario& scenario, const OracleOptions& options)
{
	std::vector<Allocation> out;
	for_each_feasible_allocation(scenario, options, [&](const Allocation& a) { out.push_back(a); });
	return out;
}

namespace {

/// Health of every allocated node as an integer multiple of 1/scale.
using HealthKey = std::vector<std::int64_t>;

struct HealthKeyHash {
	std::size_t operator()(const HealthKey& key) const noexcept
	{
		std::size_t h = key.size();
		for (std::int64_t v : key)
			h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
		return h;
	}
};

/// Allocated nodes relabelled 0..L-1, with health and rates rescaled to
/// integers over the common denominator of every value involved.
class LocalProblem {
public:
	LocalProblem(const Scenario& scenario, const Allocation& allocation)
	{
		members_.resize(scenario.entity_count());
		std::vector<Rational> v0, inc, dec;
		for (EntityIndex h = 0; h < scenario.entity_count(); ++h) {
			for (NodeIndex j : allocation.sets[h]) {
				members_[h].push_back(global_.size());
				global_.push_back(j);
				v0.push_back(scenario.nodes[j].v0);
				inc.push_back(scenario.repair_rate(j, h));
				dec.push_back(scenario.nodes[j].delta_dec);
			}
		}

		constexpr std::int64_t kMaxScale = std::int64_t{1} << 40;
		scale_ = 1;
		for (const auto* values : {&v0, &inc, &dec})
			for (const Rational& r : *values) {
				scale_ = std::lcm(scale_, r.denominator());
				if (scale_ > kMaxScale)
					throw InstanceTooLarge("common denominator of the allocated values exceeds 2^40");
			}
		auto units = [&](const Rational& r) { return (r * Rational(scale_)).numerator(); };
		for (std::size_t i = 0; i < global_.size(); ++i) {
			initial_.push_back(units(v0[i]));
			inc_.push_back(units(inc[i]));
			dec_.push_back(units(dec[i]));
		}
	}

	const HealthKey& initial() const { return initial_; }

	/// Per entity: active local nodes. Choice 0 is idle, choice c targets
	/// options[c-1].
	std::vector<std::vector<std::size_t>> choices(const HealthKey& key) const
	{
		std::vector<std::vector<std::size_t>> out(members_.size());
		for (std::size_t h = 0; h < members_.size(); ++h)
			for (std::size_t local : members_[h])
				if (key[local] > 0 && key[local] < scale_)
					out[h].push_back(local);
		return out;
	}

	static std::size_t action_count(const std::vector<std::vector<std::size_t>>& choices)
	{
		bool any = false;
		std::size_t total = 1;
		for (const auto& c : choices) {
			any = any || !c.empty();
			total *= c.size() + 1;
		}
		return any ? total : 0;
	}

	/// Local targets per entity for a mixed-radix action ordinal.
	static std::vector<std::optional<std::size_t>> decode(const std::vector<std::vector<std::size_t>>& choices,
	                                                      std::size_t ordinal)
	{
		std::vector<std::optional<std::size_t>> out(choices.size());
		for (std::size_t h = 0; h < choices.size(); ++h) {
			std::size_t radix = choices[h].size() + 1;
			std::size_t c = ordinal % radix;
			ordinal /= radix;
			if (c > 0)
				out[h] = choices[h][c - 1];
		}
		return out;
	}

	/// Next health vector and the number of nodes reaching 1 on this step.
	std::pair<HealthKey, std::size_t> apply(const HealthKey& key,
	                                        const std::vector<std::optional<std::size_t>>& targets) const
	{
		std::vector<bool> targeted(key.size(), false);
		for (const auto& t : targets)
			if (t)
				targeted[*t] = true;
		HealthKey next(key.size());
		std::size_t repaired = 0;
		for (std::size_t i = 0; i < key.size(); ++i) {
			if (key[i] == scale_ || key[i] == 0) {
				next[i] = key[i];
			} else if (targeted[i]) {
				next[i] = std::min(scale_, key[i] + inc_[i]);
				repaired += next[i] == scale_ ? 1 : 0;
			} else {
				next[i] = std::max<std::int64_t>(0, key[i] - dec_[i]);
			}
		}
		return {std::move(next), repaired};
	}

	Actions to_global(const std::vector<std::optional<std::size_t>>& targets) const
	{
		Actions out(targets.size());
		for (std::size_t h = 0; h < targets.size(); ++h)
			if (targets[h])
				out[h] = global_[*targets[h]];
		return out;
	}

private:
	std::vector<std::vector<std::size_t>> members_;
	std::vector<NodeIndex> global_;
	std::int64_t scale_ = 1;
	HealthKey initial_;
	std::vector<std::int64_t> inc_;
	std::vector<std::int64_t> dec_;
};

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

/// Longest-path search over the state graph. Every edge that repairs a node
/// leaves its component (repair is irreversible), so cycles carry zero reward
/// and a component's value is its best exit.
class GraphSearch {
public:
	GraphSearch(const LocalProblem& problem, std::size_t memo_cap) : problem_(problem), memo_cap_(memo_cap) {}

	std::size_t solve(const HealthKey& root)
	{
		std::uint32_t root_id = intern(root);
		run_tarjan(root_id);
		return info_[root_id].value;
	}

	/// Global actions along best pointers from the root until absorption.
	std::vector<Actions> witness_actions(const HealthKey& root) const
	{
		std::vector<Actions> script;
		std::uint32_t id = ids_.at(root);
		while (info_[id].best_target != kUnset) {
			const auto& key = keys_[id];
			auto choices = problem_.choices(key);
			script.push_back(problem_.to_global(LocalProblem::decode(choices, info_[id].best_ordinal)));
			id = info_[id].best_target;
		}
		return script;
	}

	std::size_t state_count() const { return keys_.size(); }

private:
	struct Edge {
		std::size_t ordinal;
		std::uint32_t target;
		std::size_t reward;
	};

	struct Info {
		std::uint32_t index = kUnset;
		std::uint32_t low = kUnset;
		std::uint32_t component = kUnset;
		bool on_stack = false;
		std::size_t value = 0;
		std::size_t best_ordinal = 0;
		std::uint32_t best_target = kUnset;
		std::vector<Edge> edges;
	};

	struct Frame {
		std::uint32_t id;
		std::vector<std::vector<std::size_t>> choices;
		std::size_t next = 0;
		std::size_t total = 0;
	};

	std::uint32_t intern(const HealthKey& key)
	{
		auto [it, inserted] = ids_.try_emplace(key, static_cast<std::uint32_t>(keys_.size()));
		if (inserted) {
			if (keys_.size() >= memo_cap_)
				throw InstanceTooLarge("search exceeded the memo cap of " + std::to_string(memo_cap_) + " states");
			keys_.push_back(key);
			info_.emplace_back();
		}
		return it->second;
	}

	Frame open(std::uint32_t id)
	{
		Info& info = info_[id];
		info.index = info.low = counter_++;
		info.on_stack = true;
		stack_.push_back(id);
		Frame f{id, problem_.choices(keys_[id])};
		f.total = LocalProblem::action_count(f.choices);
		return f;
	}

	void run_tarjan(std::uint32_t root)
	{
		std::vector<Frame> frames;
		frames.push_back(open(root));
		while (!frames.empty()) {
			Frame& f = frames.back();
			if (f.next < f.total) {
				std::size_t ordinal = f.next++;
				auto [next_key, reward] = problem_.apply(keys_[f.id], LocalProblem::decode(f.choices, ordinal));
				std::uint32_t target = intern(next_key);
				info_[f.id].edges.push_back({ordinal, target, reward});
				if (info_[target].index == kUnset) {
					frames.push_back(open(target));
				} else if (info_[target].on_stack) {
					info_[f.id].low = std::min(info_[f.id].low, info_[target].index);
				}
				continue;
			}
			std::uint32_t id = f.id;
			if (info_[id].low == info_[id].index)
				close_component(id);
			frames.pop_back();
			if (!frames.empty()) {
				std::uint32_t parent = frames.back().id;
				info_[parent].low = std::min(info_[parent].low, info_[id].low);
			}
		}
	}

	void close_component(std::uint32_t head)
	{
		std::uint32_t component = components_++;
		std::vector<std::uint32_t> members;
		for (;;) {
			std::uint32_t m = stack_.back();
			stack_.pop_back();
			info_[m].on_stack = false;
			info_[m].component = component;
			members.push_back(m);
			if (m == head)
				break;
		}
		std::reverse(members.begin(), members.end());

		std::size_t best_value = 0;
		std::uint32_t exit_from = kUnset;
		const Edge* exit_edge = nullptr;
		for (std::uint32_t m : members) {
			for (const Edge& e : info_[m].edges) {
				if (info_[e.target].component == component) {
					if (e.reward != 0)
						throw std::logic_error("repair edge inside a strongly connected component");
					continue;
				}
				std::size_t v = e.reward + info_[e.target].value;
				if (exit_edge == nullptr || v > best_value) {
					best_value = v;
					exit_from = m;
					exit_edge = &e;
				}
			}
		}
		for (std::uint32_t m : members)
			info_[m].value = best_value;
		if (exit_edge == nullptr)
			return;

		info_[exit_from].best_ordinal = exit_edge->ordinal;
		info_[exit_from].best_target = exit_edge->target;
		if (members.size() == 1)
			return;

		// route every other member to the exit state along in-component edges
		std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::size_t>>> reverse;
		for (std::uint32_t m : members)
			for (const Edge& e : info_[m].edges)
				if (info_[e.target].component == component)
					reverse[e.target].push_back({m, e.ordinal});
		std::deque<std::uint32_t> queue{exit_from};
		std::unordered_set<std::uint32_t> reached{exit_from};
		while (!queue.empty()) {
			std::uint32_t cur = queue.front();
			queue.pop_front();
			for (auto [pred, ordinal] : reverse[cur]) {
				if (!reached.insert(pred).second)
					continue;
				info_[pred].best_ordinal = ordinal;
				info_[pred].best_target = cur;
				queue.push_back(pred);
			}
		}
	}

	const LocalProblem& problem_;
	std::size_t memo_cap_;
	std::unordered_map<HealthKey, std::uint32_t, HealthKeyHash> ids_;
	std::vector<HealthKey> keys_;
	std::vector<Info> info_;
	std::vector<std::uint32_t> stack_;
	std::uint32_t counter_ = 0;
	std::uint32_t components_ = 0;
};

} // namespace

SequencingOptimum optimal_sequencing_reward(const Scenario& scenario, const Allocation& allocation,
                                            const OracleOptions& options)
{
	require_within_budget(scenario, allocation);
	LocalProblem problem(scenario, allocation);
	GraphSearch search(problem, options.memo_cap);
	const HealthKey root = problem.initial();

	SequencingOptimum out;
	out.reward = search.solve(root);
	out.states = search.state_count();

	auto run = simulate(scenario, allocation, scripted_policy(search.witness_actions(root)));
	if (run.outcome.reward != out.reward)
		throw std::logic_error("oracle witness replays to " + std::to_string(run.outcome.reward) + " instead of " +
		                       std::to_string(out.reward));
	out.witness = std::move(run.trace);
	return out;
}

namespace {

struct PathSearch {
	const LocalProblem& problem;
	std::size_t visit_cap;
	std::size_t visits = 0;
	std::unordered_set<HealthKey, HealthKeyHash> on_path;

	std::size_t best(const HealthKey& key)
	{
		if (++visits > visit_cap)
			throw InstanceTooLarge("unmemoized search exceeded " + std::to_string(visit_cap) + " visits");
		auto choices = problem.choices(key);
		std::size_t total = LocalProblem::action_count(choices);
		std::size_t value = 0;
		on_path.insert(key);
		for (std::size_t ordinal = 0; ordinal < total; ++ordinal) {
			auto [next, reward] = problem.apply(key, LocalProblem::decode(choices, ordinal));
			if (on_path.count(next))
				continue;
			value = std::max(value, reward + best(next));
		}
		on_path.erase(key);
		return value;
	}
};

} // namespace

std::size_t optimal_sequencing_reward_unmemoized(const Scenario& scenario, const Allocation& allocation,
                                                 std::size_t visit_cap)
{
	require_within_budget(scenario, allocation);
	LocalProblem problem(scenario, allocation);
	PathSearch search{problem, visit_cap, 0, {}};
	return search.best(problem.initial());
}

OracleResult oracle_optimal(const Scenario& scenario, const OracleOptions& options)
{
	// (entity, set) -> reward, only used when decomposing
	std::map<std::pair<EntityIndex, std::vector<NodeIndex>>, std::size_t> per_entity;
	auto entity_value = [&](EntityIndex h, const std::vector<NodeIndex>& set) {
		if (set.empty())
			return std::size_t{0};
		auto key = std::make_pair(h, set);
		if (auto it = per_entity.find(key); it != per_entity.end())
			return it->second;
		std::vector<std::vector<NodeIndex>> sets(scenario.entity_count());
		sets[h] = set;
		Allocation single{sets, scenario.entities[h].cost * Rational(static_cast<std::int64_t>(set.size()))};
		LocalProblem problem(scenario, single);
		GraphSearch search(problem, options.memo_cap);
		std::size_t v = search.solve(problem.initial());
		per_entity.emplace(std::move(key), v);
		return v;
	};

	OracleResult result;
	bool have = false;
	for_each_feasible_allocation(scenario, options, [&](const Allocation& allocation) {
		++result.allocations_examined;
		std::size_t value = 0;
		if (options.decompose) {
			for (EntityIndex h = 0; h < scenario.entity_count(); ++h)
				value += entity_value(h, allocation.sets[h]);
		} else {
			LocalProblem problem(scenario, allocation);
			GraphSearch search(problem, options.memo_cap);
			value = search.solve(problem.initial());
		}
		if (!have || value > result.optimal_reward) {
			have = true;
			result.optimal_reward = value;
			result.witness_allocation = allocation;
		}
	});

	auto witness = optimal_sequencing_reward(scenario, result.witness_allocation, options);
	if (witness.reward != result.optimal_reward)
		throw std::logic_error("joint search disagrees with per-entity search on the witness allocation");
	result.witness_trace = std::move(witness.witness);
	return result;
}

} // namespace repalloc
