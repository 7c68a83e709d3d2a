#pragma once

// Reference implementations the fast paths are tested against. Everything here
// is deliberately brute force.

#include "finalg/algebra.hpp"
#include "finalg/congruence.hpp"

#include <random>
#include <vector>

namespace finalg::oracle {

// All partitions of {0..n-1} as restricted growth strings. Bell(5) = 52, so
// this stays tiny for the sizes tests use.
inline std::vector<partition> all_partitions(int n) {
  std::vector<partition> out;
  std::vector<int> rgs(n, 0);
  while (true) {
    out.push_back(partition(std::vector<int>(rgs)));
    int pos = n - 1;
    while (pos > 0) {
      int m = 0;
      for (int i = 0; i < pos; ++i) m = std::max(m, rgs[i]);
      if (rgs[pos] <= m) break;
      --pos;
    }
    if (pos == 0) break;
    ++rgs[pos];
    for (int i = pos + 1; i < n; ++i) rgs[i] = 0;
  }
  return out;
}

// Congruence lattice by filtering every partition.
inline std::vector<partition> congruences_brute(const finite_algebra& alg) {
  std::vector<partition> out;
  for (auto& p : all_partitions(alg.size()))
    if (is_congruence(alg, p)) out.push_back(std::move(p));
  return out;
}

// Random algebra with the given operation arities, tables uniform.
inline finite_algebra random_algebra(std::mt19937& rng, int n,
                                     const std::vector<int>& arities) {
  std::uniform_int_distribution<int> el(0, n - 1);
  std::vector<operation> ops;
  for (size_t i = 0; i < arities.size(); ++i) {
    operation f;
    f.name = "f" + std::to_string(i);
    f.arity = arities[i];
    size_t len = 1;
    for (int a = 0; a < arities[i]; ++a) len *= static_cast<size_t>(n);
    f.table.resize(len);
    for (auto& v : f.table) v = el(rng);
    ops.push_back(std::move(f));
  }
  return finite_algebra("rnd", n, std::move(ops));
}

} // namespace finalg::oracle
