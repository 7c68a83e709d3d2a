#pragma once

#include <numeric>
#include <vector>

namespace finalg {

// Union-find with path halving and union by size.
struct dsu {
  std::vector<int> parent;
  std::vector<int> sz;

  explicit dsu(int n) : parent(n), sz(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  // Returns true when the two classes were distinct.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (sz[a] < sz[b]) std::swap(a, b);
    parent[b] = a;
    sz[a] += sz[b];
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }
};

} // namespace finalg
