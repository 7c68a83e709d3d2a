#include "finalg/boolfn.hpp"

#include <algorithm>

namespace finalg {

namespace {

// componentwise <=
bool below(const std::vector<int>& a, const std::vector<int>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::string point_str(const std::vector<int>& p) {
  std::string s;
  for (int b : p) s += b ? '1' : '0';
  return s;
}

} // namespace

std::optional<monotone_dnf> monotone_fit(
    int bits, const std::vector<std::pair<std::vector<int>, int>>& samples,
    std::string* why) {
  std::vector<std::vector<int>> ones, zeros;
  for (const auto& [p, v] : samples)
    (v ? ones : zeros).push_back(p);

  for (const auto& t : ones)
    for (const auto& z : zeros)
      if (below(t, z)) {
        if (why)
          *why = "not monotone: value 1 at " + point_str(t) +
                 " but 0 at " + point_str(z);
        return std::nullopt;
      }

  // Minimal true points; duplicates collapse.
  std::sort(ones.begin(), ones.end());
  ones.erase(std::unique(ones.begin(), ones.end()), ones.end());
  monotone_dnf f;
  f.bits = bits;
  for (const auto& t : ones) {
    bool minimal = true;
    for (const auto& u : ones)
      if (u != t && below(u, t)) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    std::vector<int> term;
    for (int i = 0; i < bits; ++i)
      if (t[i]) term.push_back(i);
    f.terms.push_back(std::move(term));
  }
  return f;
}

} // namespace finalg
