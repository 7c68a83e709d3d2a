#include "finalg/congruence.hpp"

#include "finalg/dsu.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

namespace finalg {

namespace {

struct vec_hash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

} // namespace

int partition::block_count() const {
  int m = -1;
  for (int b : block) m = std::max(m, b);
  return m + 1;
}

void partition::normalize() {
  std::vector<int> remap(block.size(), -1);
  int next = 0;
  for (int& b : block) {
    if (b < 0 || b >= static_cast<int>(block.size())) throw error("partition: block id out of range");
    if (remap[b] < 0) remap[b] = next++;
    b = remap[b];
  }
}

partition partition::zero(int n) {
  partition p;
  p.block.resize(n);
  std::iota(p.block.begin(), p.block.end(), 0);
  return p;
}

partition partition::one(int n) {
  partition p;
  p.block.assign(n, 0);
  return p;
}

bool leq(const partition& p, const partition& q) {
  if (p.n() != q.n()) throw error("partition order: size mismatch");
  std::vector<int> img(p.block_count(), -1);
  for (int x = 0; x < p.n(); ++x) {
    int& t = img[p.block[x]];
    if (t < 0)
      t = q.block[x];
    else if (t != q.block[x])
      return false;
  }
  return true;
}

partition join(const partition& p, const partition& q) {
  if (p.n() != q.n()) throw error("partition join: size mismatch");
  dsu d(p.n());
  std::vector<int> seen_p(p.block_count(), -1), seen_q(q.block_count(), -1);
  for (int x = 0; x < p.n(); ++x) {
    int& a = seen_p[p.block[x]];
    if (a < 0) a = x; else d.unite(a, x);
    int& b = seen_q[q.block[x]];
    if (b < 0) b = x; else d.unite(b, x);
  }
  std::vector<int> out(p.n());
  for (int x = 0; x < p.n(); ++x) out[x] = d.find(x);
  return partition(std::move(out));
}

partition meet(const partition& p, const partition& q) {
  if (p.n() != q.n()) throw error("partition meet: size mismatch");
  std::unordered_map<int64_t, int> ids;
  std::vector<int> out(p.n());
  for (int x = 0; x < p.n(); ++x) {
    int64_t key = static_cast<int64_t>(p.block[x]) * p.n() + q.block[x];
    out[x] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
  }
  return partition(std::move(out));
}

std::vector<std::vector<int>> blocks_of(const partition& p) {
  std::vector<std::vector<int>> out(p.block_count());
  for (int x = 0; x < p.n(); ++x) out[p.block[x]].push_back(x);
  return out;
}

std::vector<translation> all_translations(const finite_algebra& alg) {
  std::vector<translation> out;
  const size_t n = static_cast<size_t>(alg.size());
  for (const auto& f : alg.ops()) {
    if (f.arity < 1) continue;
    const int r = f.arity;
    // stride of slot i in a row-major table, leftmost slowest
    std::vector<size_t> stride(r);
    stride[r - 1] = 1;
    for (int i = r - 2; i >= 0; --i) stride[i] = stride[i + 1] * n;
    for (int open = 0; open < r; ++open) {
      std::vector<int> ctx(r - 1, 0);
      while (true) {
        size_t base = 0;
        int k = 0;
        for (int i = 0; i < r; ++i)
          if (i != open) base += static_cast<size_t>(ctx[k++]) * stride[i];
        out.push_back({&f.table, base, stride[open]});
        int pos = r - 2;
        while (pos >= 0 && ctx[pos] == static_cast<int>(n) - 1) ctx[pos--] = 0;
        if (pos < 0) break;
        ++ctx[pos];
      }
    }
  }
  return out;
}

std::vector<unary_fn> distinct_translation_tables(const finite_algebra& alg) {
  const int n = alg.size();
  std::unordered_set<std::vector<int>, vec_hash> seen;
  std::vector<unary_fn> out;
  for (const auto& t : all_translations(alg)) {
    unary_fn tab(n);
    for (int x = 0; x < n; ++x) tab[x] = t(x);
    if (seen.insert(tab).second) out.push_back(std::move(tab));
  }
  return out;
}

bool is_congruence(const finite_algebra& alg, const partition& p) {
  if (p.n() != alg.size()) throw error("is_congruence: partition size mismatch");
  // single-slot perturbations suffice by transitivity
  for (const auto& t : all_translations(alg)) {
    for (int a = 0; a < p.n(); ++a)
      for (int b = a + 1; b < p.n(); ++b)
        if (p.block[a] == p.block[b] && p.block[t(a)] != p.block[t(b)]) return false;
  }
  return true;
}

namespace {

// Worklist closure: unite each popped pair, and on a successful merge push all
// its one-step translates. Compositions of translations are reached because
// every translate is itself popped and expanded when it first merges.
partition close_pairs(const finite_algebra& alg,
                      const std::vector<unary_fn>& tr,
                      std::vector<std::pair<int, int>> work) {
  dsu d(alg.size());
  std::vector<std::pair<int, int>> expand = work;
  while (!expand.empty()) {
    auto [a, b] = expand.back();
    expand.pop_back();
    if (!d.unite(a, b)) continue;
    for (const auto& t : tr) {
      int ta = t[a], tb = t[b];
      if (d.find(ta) != d.find(tb)) expand.emplace_back(ta, tb);
    }
  }
  std::vector<int> out(alg.size());
  for (int x = 0; x < alg.size(); ++x) out[x] = d.find(x);
  return partition(std::move(out));
}

} // namespace

partition principal_congruence(const finite_algebra& alg, int a, int b) {
  return close_pairs(alg, distinct_translation_tables(alg), {{a, b}});
}

partition generated_congruence(const finite_algebra& alg,
                               const std::vector<std::pair<int, int>>& pairs) {
  return close_pairs(alg, distinct_translation_tables(alg), pairs);
}

int congruence_lattice::index_of(const partition& p) const {
  for (size_t i = 0; i < members.size(); ++i)
    if (members[i] == p) return static_cast<int>(i);
  return -1;
}

std::vector<int> congruence_lattice::lower_covers(int i) const {
  std::vector<int> out;
  for (auto [a, b] : covers)
    if (b == i) out.push_back(a);
  return out;
}

std::vector<int> congruence_lattice::upper_covers(int i) const {
  std::vector<int> out;
  for (auto [a, b] : covers)
    if (a == i) out.push_back(b);
  return out;
}

int congruence_lattice::join_index(int i, int j) const {
  int best = -1;
  for (size_t k = 0; k < members.size(); ++k) {
    if (!below[i][k] || !below[j][k]) continue;
    if (best < 0 || below[k][best]) best = static_cast<int>(k);
  }
  return best;
}

int congruence_lattice::meet_index(int i, int j) const {
  int best = -1;
  for (size_t k = 0; k < members.size(); ++k) {
    if (!below[k][i] || !below[k][j]) continue;
    if (best < 0 || below[best][k]) best = static_cast<int>(k);
  }
  return best;
}

congruence_lattice compute_congruence_lattice(const finite_algebra& alg, size_t cap) {
  const int n = alg.size();
  auto tr = distinct_translation_tables(alg);

  // Orbit reduction: a bijective translation t has finite order, so its inverse
  // is again a translation-composition and Cg(t(a),t(b)) = Cg(a,b). One
  // principal computation per orbit of pairs under the bijective translations.
  std::vector<const unary_fn*> bij;
  for (const auto& t : tr) {
    std::vector<char> hit(n, 0);
    bool ok = true;
    for (int x : t) {
      if (hit[x]) { ok = false; break; }
      hit[x] = 1;
    }
    if (ok) bij.push_back(&t);
  }
  auto pair_id = [n](int a, int b) {
    if (a > b) std::swap(a, b);
    return a * n + b;
  };
  dsu orbits(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (const unary_fn* t : bij) orbits.unite(pair_id(a, b), pair_id((*t)[a], (*t)[b]));

  std::unordered_set<std::vector<int>, vec_hash> seen;
  std::vector<partition> principals;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (orbits.find(pair_id(a, b)) != pair_id(a, b)) continue;
      partition p = close_pairs(alg, tr, {{a, b}});
      if (seen.insert(p.block).second) principals.push_back(std::move(p));
    }

  // join closure
  std::vector<partition> members{partition::zero(n)};
  seen.clear();
  seen.insert(members[0].block);
  for (const auto& p : principals)
    if (seen.insert(p.block).second) members.push_back(p);
  for (size_t i = 1; i < members.size(); ++i) {
    for (size_t j = 1; j < i; ++j) {
      partition q = join(members[i], members[j]);
      if (seen.insert(q.block).second) {
        members.push_back(std::move(q));
        if (members.size() > cap) throw error("congruence lattice exceeds cap");
      }
    }
  }

  std::sort(members.begin(), members.end(), [](const partition& a, const partition& b) {
    int ca = a.block_count(), cb = b.block_count();
    if (ca != cb) return ca > cb;
    return a.block < b.block;
  });

  congruence_lattice lat;
  lat.members = std::move(members);
  const size_t m = lat.members.size();
  lat.below.assign(m, std::vector<char>(m, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) lat.below[i][j] = leq(lat.members[i], lat.members[j]);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      if (i == j || !lat.below[i][j]) continue;
      bool cover = true;
      for (size_t k = 0; k < m && cover; ++k)
        if (k != i && k != j && lat.below[i][k] && lat.below[k][j]) cover = false;
      if (cover) lat.covers.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return lat;
}

std::vector<int> join_irreducibles(const congruence_lattice& lat) {
  std::vector<int> count(lat.members.size(), 0);
  for (auto [a, b] : lat.covers) ++count[b];
  std::vector<int> out;
  for (size_t i = 0; i < lat.members.size(); ++i)
    if (count[i] == 1) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> tight_chain(const congruence_lattice& lat) {
  std::vector<int> chain{lat.zero()};
  int cur = lat.zero();
  while (cur != lat.one()) {
    auto ups = lat.upper_covers(cur);
    if (ups.empty()) throw error("tight_chain: no upper cover below top");
    cur = *std::min_element(ups.begin(), ups.end());
    chain.push_back(cur);
  }
  return chain;
}

quotient_map quotient_algebra(const finite_algebra& alg, const partition& theta,
                              const std::string& name) {
  if (!is_congruence(alg, theta)) throw error("quotient_algebra: not a congruence");
  const int m = theta.block_count();
  quotient_map q;
  q.to_class = theta.block;
  q.representative.assign(m, -1);
  for (int x = 0; x < alg.size(); ++x)
    if (q.representative[theta.block[x]] < 0) q.representative[theta.block[x]] = x;

  std::vector<operation> ops;
  for (size_t oi = 0; oi < alg.ops().size(); ++oi) {
    const auto& f = alg.op(oi);
    operation g;
    g.name = f.name;
    g.arity = f.arity;
    size_t len = 1;
    for (int i = 0; i < f.arity; ++i) len *= static_cast<size_t>(m);
    g.table.resize(len);
    std::vector<int> args(f.arity, 0), lifted(f.arity);
    for (size_t idx = 0; idx < len; ++idx) {
      index_tuple(idx, m, args);
      for (int i = 0; i < f.arity; ++i) lifted[i] = q.representative[args[i]];
      g.table[idx] = theta.block[alg.apply(oi, lifted)];
    }
    ops.push_back(std::move(g));
  }
  q.alg = finite_algebra(name.empty() ? alg.name() + "/theta" : name, m, std::move(ops));
  return q;
}

partition push_congruence(const quotient_map& q, const partition& above) {
  std::vector<int> out(q.representative.size());
  for (size_t c = 0; c < q.representative.size(); ++c)
    out[c] = above.block[q.representative[c]];
  return partition(std::move(out));
}

namespace {

// Generated set of 2x2 matrices in A^4, packed little-endian base n.
struct matrix_closure {
  std::vector<std::array<int, 4>> pool;
  std::unordered_set<uint64_t> seen;
  int n;

  explicit matrix_closure(int n_) : n(n_) {
    if (n > 65536) throw error("commutator: algebra too large");
  }

  uint64_t key(const std::array<int, 4>& t) const {
    uint64_t k = 0;
    for (int i = 3; i >= 0; --i) k = k * static_cast<uint64_t>(n) + static_cast<uint64_t>(t[i]);
    return k;
  }

  bool add(const std::array<int, 4>& t) {
    if (!seen.insert(key(t)).second) return false;
    pool.push_back(t);
    return true;
  }
};

} // namespace

partition commutator(const finite_algebra& alg, const partition& alpha,
                     const partition& beta, size_t cap) {
  const int n = alg.size();
  matrix_closure mc(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (alpha.block[a] == alpha.block[b]) mc.add({a, a, b, b});
      if (beta.block[a] == beta.block[b]) mc.add({a, b, a, b});
    }

  // subalgebra closure of A^4
  size_t done = 0;
  while (done < mc.pool.size()) {
    size_t boundary = mc.pool.size();
    for (size_t oi = 0; oi < alg.ops().size(); ++oi) {
      const int r = alg.op(oi).arity;
      if (r == 0) {
        int c = alg.apply(oi, std::span<const int>{});
        mc.add({c, c, c, c});
        continue;
      }
      std::vector<size_t> ix(r, 0);
      std::vector<int> slot(r);
      while (true) {
        bool fresh = false;
        for (int i = 0; i < r; ++i)
          if (ix[i] >= done) { fresh = true; break; }
        if (fresh) {
          std::array<int, 4> val;
          for (int c = 0; c < 4; ++c) {
            for (int i = 0; i < r; ++i) slot[i] = mc.pool[ix[i]][c];
            val[c] = alg.apply(oi, slot);
          }
          mc.add(val);
          if (mc.pool.size() > cap) throw error("commutator: matrix closure exceeds cap");
        }
        int pos = r - 1;
        while (pos >= 0 && ix[pos] == boundary - 1) ix[pos--] = 0;
        if (pos < 0) break;
        ++ix[pos];
      }
    }
    done = boundary;
  }

  // iterate the implications, keeping delta a congruence throughout
  auto tr = distinct_translation_tables(alg);
  dsu d(n);
  auto unite_congruent = [&](int a, int b) {
    std::vector<std::pair<int, int>> expand{{a, b}};
    while (!expand.empty()) {
      auto [u, v] = expand.back();
      expand.pop_back();
      if (!d.unite(u, v)) continue;
      for (const auto& t : tr) {
        int tu = t[u], tv = t[v];
        if (d.find(tu) != d.find(tv)) expand.emplace_back(tu, tv);
      }
    }
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& m : mc.pool) {
      if (d.find(m[0]) == d.find(m[1]) && d.find(m[2]) != d.find(m[3])) {
        unite_congruent(m[2], m[3]);
        changed = true;
      }
    }
  }
  std::vector<int> out(n);
  for (int x = 0; x < n; ++x) out[x] = d.find(x);
  return partition(std::move(out));
}

bool is_solvable(const finite_algebra& alg, size_t cap) {
  partition g = partition::one(alg.size());
  const partition zero = partition::zero(alg.size());
  for (int step = 0; step <= alg.size(); ++step) {
    if (g == zero) return true;
    partition next = commutator(alg, g, g, cap);
    if (next == g) return false;
    g = std::move(next);
  }
  return false;
}

bool is_nilpotent(const finite_algebra& alg, size_t cap) {
  const partition one = partition::one(alg.size());
  const partition zero = partition::zero(alg.size());
  partition g = one;
  for (int step = 0; step <= alg.size(); ++step) {
    if (g == zero) return true;
    partition next = commutator(alg, one, g, cap);
    if (next == g) return false;
    g = std::move(next);
  }
  return false;
}

} // namespace finalg
