#include "tropmod/graphs/specialization.hpp"

#include <algorithm>
#include <map>

#include "tropmod/error.hpp"

namespace tropmod {

std::vector<EdgeSubset> all_subsets(std::size_t n) {
  if (n > 24) throw Error("too_large", "too many edges to enumerate subsets");
  std::vector<EdgeSubset> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    EdgeSubset s;
    for (std::size_t e = 0; e < n; ++e)
      if (mask & (std::uint32_t{1} << e)) s.push_back(static_cast<int>(e));
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const EdgeSubset& a, const EdgeSubset& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<Specialization> specializations(const WeightedGraph& g) {
  std::vector<Specialization> out;
  std::map<std::string, std::size_t> index;
  for (const auto& s : all_subsets(g.num_edges())) {
    const Contraction c = contract(g, s);
    const std::string key = canonical_form(c.graph).key;
    auto [it, inserted] = index.try_emplace(key, out.size());
    if (inserted) out.push_back({s, c.graph, key, 0});
    ++out[it->second].count;
  }
  return out;
}

}  // namespace tropmod
