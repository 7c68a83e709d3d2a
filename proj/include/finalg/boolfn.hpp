#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace finalg {

// Monotone boolean function stored as a disjunction of positive conjunctions.
// An empty term list is constant false; a term with no literals is constant
// true.  Terms hold sorted bit indices.
struct monotone_dnf {
  int bits = 0;
  std::vector<std::vector<int>> terms;

  bool eval(std::span<const int> x) const {
    for (const auto& t : terms) {
      bool hit = true;
      for (int b : t)
        if (!x[b]) {
          hit = false;
          break;
        }
      if (hit) return true;
    }
    return false;
  }
};

// Fits the minimal-true-point DNF to a sample of (point, value) pairs.  The
// sample may be partial; unobserved points are unconstrained.  Returns nullopt
// when the sample violates monotonicity (some true point lies below a false
// point); `why` then names the offending pair.
std::optional<monotone_dnf> monotone_fit(
    int bits, const std::vector<std::pair<std::vector<int>, int>>& samples,
    std::string* why = nullptr);

} // namespace finalg
