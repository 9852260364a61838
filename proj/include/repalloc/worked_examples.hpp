#ifndef REPALLOC_WORKED_EXAMPLES_HPP
#define REPALLOC_WORKED_EXAMPLES_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "repalloc/model.hpp"
#include "repalloc/oracle.hpp"

namespace repalloc {

/// Names of the bundled example scenarios (the files under data/).
std::vector<std::string> example_names();

/// Bundled JSON document; throws InvalidInput for an unknown name.
std::string_view example_document(std::string_view name);

Scenario example_scenario(std::string_view name);

/// Comparator allocation: entities in id order each receive the largest
/// subset of the remaining nodes they can fully repair, judged by the
/// exact single-entity search. Among equally large subsets the first in
/// lexicographic node-index order wins.
Allocation largest_subset_first_allocation(const Scenario& scenario, const OracleOptions& options = {});

struct Expectation {
	std::string label;
	std::string expected;
};

/// One named reproduction with its frozen expected observations.
struct ReproductionCheck {
	std::string name;
	std::string summary;
	std::vector<Expectation> expectations;
};

struct CheckOutcome {
	std::string name;
	bool passed = true;
	std::vector<std::string> mismatches;
};

/// The bundled reproduction suite: six worked scenarios and three health
/// tables, with expected values fixed as published.
std::vector<ReproductionCheck> reproduction_checks();

/// Observed values for a check, keyed by expectation label.
std::map<std::string, std::string> observe(std::string_view check_name);

std::vector<CheckOutcome> run_reproduction(const std::vector<ReproductionCheck>& checks);

} // namespace repalloc

#endif
