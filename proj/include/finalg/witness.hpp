#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finalg/term.hpp"

namespace finalg {

// A total order on the universe under which every basic op is monotone.
// order lists the elements ascending; the threshold coordinates
// a -> [a >= order[j]] for j = 1..n-1 embed the algebra into {0,1}^(n-1).
struct total_order_witness {
  std::vector<int> order;

  int embedding_dim() const { return static_cast<int>(order.size()) - 1; }
  int rank_of(int element) const {
    for (size_t i = 0; i < order.size(); ++i)
      if (order[i] == element) return static_cast<int>(i);
    return -1;
  }
  // threshold bits, one per cut between consecutive ranks
  std::vector<int> coordinates(int element) const {
    int r = rank_of(element);
    std::vector<int> bits(embedding_dim());
    for (size_t j = 0; j + 1 < order.size(); ++j)
      bits[j] = r >= static_cast<int>(j) + 1 ? 1 : 0;
    return bits;
  }
};

// Carrier for the polynomial witnesses the compilation passes consume.  Only
// the entries a given pass needs are populated; every entry is verified
// against its defining property before use.
struct witness_kit {
  std::vector<int> uset;  // two elements read as {0_U, 1_U}
  std::vector<int> vset;  // two elements read as {0_V, 1_V}; empty when V = U
  std::optional<term_witness> meet_u, join_u, neg_u;
  std::optional<term_witness> meet_v, join_v;
  std::optional<term_witness> pseudo_malcev_d;  // d(x,y,y) = d(y,y,x) = x on U
  std::optional<term_witness> connector_f;      // maps {0_U,1_U} onto {0_V,1_V}
  std::vector<term_witness> projections;        // unary coordinates e_i
  std::string provenance;  // "fixture" | "searched" | "user"
};

} // namespace finalg
