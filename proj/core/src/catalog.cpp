#include "cifly/catalog.hpp"

#include <vector>

#include "cifly/error.hpp"

namespace cifly::catalog {

namespace detail {
extern const Entry kEntries[];
extern const std::size_t kNumEntries;
}  // namespace detail

std::string Entry::path() const {
  return "tables/" + std::string(graph_class) + "/" + std::string(name) +
         ".txt";
}

std::span<const Entry> entries() {
  return {detail::kEntries, detail::kNumEntries};
}

const Entry& entry(std::string_view name) {
  for (const Entry& e : entries())
    if (e.name == name) return e;
  throw Error(ErrorCode::kUnknownSymbol,
              "no bundled table named '" + std::string(name) + "'");
}

const CompiledTable& get(std::string_view name) {
  static const std::vector<CompiledTable> compiled = [] {
    std::vector<CompiledTable> out;
    for (const Entry& e : entries()) out.emplace_back(parse_rule_table(e.text));
    return out;
  }();
  auto all = entries();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].name == name) return compiled[i];
  throw Error(ErrorCode::kUnknownSymbol,
              "no bundled table named '" + std::string(name) + "'");
}

}  // namespace cifly::catalog
