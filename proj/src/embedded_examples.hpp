#ifndef REPALLOC_EMBEDDED_EXAMPLES_HPP
#define REPALLOC_EMBEDDED_EXAMPLES_HPP

#include <string_view>
#include <utility>
#include <vector>

namespace repalloc::detail {

/// (name, JSON document) for every file in data/, generated at configure time.
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_examples();

} // namespace repalloc::detail

#endif
