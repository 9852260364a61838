#include "repalloc/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace repalloc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
	throw ParseError(path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path)
{
	auto it = obj.find(key);
	if (it == obj.end())
		fail(path, std::string("missing field \"") + key + "\"");
	return *it;
}

Rational number(const json& value, const std::string& path)
{
	if (value.is_number())
		fail(path, "plain JSON numbers are not accepted, write the value as a string such as \"0.05\"");
	if (!value.is_string())
		fail(path, "expected a decimal or fraction string");
	try {
		return Rational::parse(value.get<std::string>());
	} catch (const std::exception& e) {
		fail(path, e.what());
	}
}

std::string identifier(const json& value, const std::string& path)
{
	if (!value.is_string() || value.get<std::string>().empty())
		fail(path, "expected a non-empty string id");
	return value.get<std::string>();
}

const json& array_field(const json& obj, const char* key)
{
	const json& arr = field(obj, key, "$");
	if (!arr.is_array())
		fail(key, "expected an array");
	return arr;
}

} // namespace

Scenario parse_scenario(std::string_view json_text)
{
	json doc;
	try {
		doc = json::parse(json_text.begin(), json_text.end());
	} catch (const json::parse_error& e) {
		fail("$", std::string("invalid JSON: ") + e.what());
	}
	if (!doc.is_object())
		fail("$", "expected an object");

	std::vector<NodeSpec> nodes;
	const json& node_list = array_field(doc, "nodes");
	for (std::size_t i = 0; i < node_list.size(); ++i) {
		const std::string path = "nodes[" + std::to_string(i) + "]";
		const json& n = node_list[i];
		if (!n.is_object())
			fail(path, "expected an object");
		std::string id = identifier(field(n, "id", path), path + ".id");
		if (id == "default")
			fail(path + ".id", "\"default\" is reserved for repair-rate maps");
		nodes.push_back(NodeSpec{std::move(id),
		                         number(field(n, "v0", path), path + ".v0"),
		                         number(field(n, "delta_dec", path), path + ".delta_dec")});
	}

	std::vector<EntitySpec> entities;
	const json& entity_list = array_field(doc, "entities");
	for (std::size_t i = 0; i < entity_list.size(); ++i) {
		const std::string path = "entities[" + std::to_string(i) + "]";
		const json& e = entity_list[i];
		if (!e.is_object())
			fail(path, "expected an object");
		EntitySpec spec{identifier(field(e, "id", path), path + ".id"), number(field(e, "cost", path), path + ".cost"),
		                {}};

		const std::string rates_path = path + ".delta_inc";
		const json& rates = field(e, "delta_inc", path);
		if (!rates.is_object())
			fail(rates_path, "expected an object of node id -> rate");
		std::optional<Rational> fallback;
		if (auto d = rates.find("default"); d != rates.end())
			fallback = number(*d, rates_path + ".default");
		for (auto it = rates.begin(); it != rates.end(); ++it) {
			if (it.key() == "default")
				continue;
			bool known = false;
			for (const auto& n : nodes)
				known = known || n.id == it.key();
			if (!known)
				fail(rates_path + "." + it.key(), "no node with this id");
		}
		for (const auto& n : nodes) {
			if (auto r = rates.find(n.id); r != rates.end())
				spec.repair_rate.push_back(number(*r, rates_path + "." + n.id));
			else if (fallback)
				spec.repair_rate.push_back(*fallback);
			else
				fail(rates_path, "no rate for node \"" + n.id + "\" and no default");
		}
		entities.push_back(std::move(spec));
	}

	const json& budget_value = field(doc, "budget", "$");
	Budget budget = budget_value.is_null() ? Budget::infinite() : Budget::of(number(budget_value, "budget"));

	try {
		return make_scenario(std::move(nodes), std::move(entities), std::move(budget));
	} catch (const InvalidInput& e) {
		fail("$", e.what());
	}
}

Scenario load_scenario(const std::filesystem::path& path)
{
	std::ifstream in(path);
	if (!in)
		throw ParseError(path.string() + ": cannot open file");
	std::stringstream buffer;
	buffer << in.rdbuf();
	return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& scenario)
{
	json doc;
	doc["nodes"] = json::array();
	for (const auto& n : scenario.nodes)
		doc["nodes"].push_back({{"id", n.id}, {"v0", n.v0.to_string()}, {"delta_dec", n.delta_dec.to_string()}});

	doc["entities"] = json::array();
	for (const auto& e : scenario.entities) {
		json rates = json::object();
		bool uniform = std::all_of(e.repair_rate.begin(), e.repair_rate.end(),
		                           [&](const Rational& r) { return r == e.repair_rate.front(); });
		if (uniform) {
			rates["default"] = e.repair_rate.front().to_string();
		} else {
			for (std::size_t j = 0; j < e.repair_rate.size(); ++j)
				rates[scenario.nodes[j].id] = e.repair_rate[j].to_string();
		}
		doc["entities"].push_back({{"id", e.id}, {"cost", e.cost.to_string()}, {"delta_inc", rates}});
	}
	doc["budget"] = scenario.budget.limit ? json(scenario.budget.limit->to_string()) : json(nullptr);
	return doc.dump(2) + "\n";
}

void write_trace_csv(std::ostream& out, const Scenario& scenario, const Trace& trace)
{
	out << 't';
	for (const auto& n : scenario.nodes)
		out << ',' << n.id;
	for (const auto& e : scenario.entities)
		out << ',' << e.id;
	out << '\n';
	for (std::size_t t = 0; t < trace.steps.size(); ++t) {
		const auto& row = trace.steps[t];
		out << t;
		for (const auto& h : row.health)
			out << ',' << h.to_string();
		for (const auto& a : row.actions)
			out << ',' << (a ? scenario.nodes[*a].id : std::string("-"));
		out << '\n';
	}
}

std::string trace_to_csv(const Scenario& scenario, const Trace& trace)
{
	std::ostringstream out;
	write_trace_csv(out, scenario, trace);
	return out.str();
}

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
	std::vector<std::string> cells;
	std::string cell;
	std::istringstream in(line);
	while (std::getline(in, cell, ','))
		cells.push_back(cell);
	if (!line.empty() && line.back() == ',')
		cells.emplace_back();
	return cells;
}

} // namespace

Trace read_trace_csv(std::istream& in, const Scenario& scenario)
{
	const std::size_t width = 1 + scenario.node_count() + scenario.entity_count();
	std::string line;
	if (!std::getline(in, line))
		throw ParseError("trace: empty input");
	auto header = split_csv(line);
	std::vector<std::string> expected{"t"};
	for (const auto& n : scenario.nodes)
		expected.push_back(n.id);
	for (const auto& e : scenario.entities)
		expected.push_back(e.id);
	if (header != expected)
		throw ParseError("trace: header does not match the scenario");

	Trace trace;
	std::size_t row_no = 0;
	while (std::getline(in, line)) {
		if (line.empty())
			continue;
		const std::string where = "trace row " + std::to_string(row_no);
		auto cells = split_csv(line);
		if (cells.size() != width)
			throw ParseError(where + ": expected " + std::to_string(width) + " cells");
		if (cells[0] != std::to_string(row_no))
			throw ParseError(where + ": step column out of sequence");
		TraceStep step;
		for (std::size_t j = 0; j < scenario.node_count(); ++j) {
			try {
				step.health.push_back(Rational::parse(cells[1 + j]));
			} catch (const std::exception& e) {
				throw ParseError(where + ", column " + scenario.nodes[j].id + ": " + e.what());
			}
		}
		for (std::size_t h = 0; h < scenario.entity_count(); ++h) {
			const std::string& cell = cells[1 + scenario.node_count() + h];
			if (cell == "-") {
				step.actions.emplace_back();
			} else if (auto j = scenario.find_node(cell)) {
				step.actions.emplace_back(*j);
			} else {
				throw ParseError(where + ", column " + scenario.entities[h].id + ": unknown node \"" + cell + "\"");
			}
		}
		trace.steps.push_back(std::move(step));
		++row_no;
	}
	return trace;
}

} // namespace repalloc
