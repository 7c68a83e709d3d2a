#include "finalg/local.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "finalg/rep.hpp"

namespace finalg {

namespace {

unary_fn pow_fn(const unary_fn& f, long long e) {
  unary_fn r = identity_fn(static_cast<int>(f.size()));
  unary_fn base = f;
  while (e > 0) {
    if (e & 1) r = compose(base, r);
    base = compose(base, base);
    e >>= 1;
  }
  return r;
}

std::vector<std::pair<int, int>> cross_pairs(const partition& alpha, const partition& beta) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < alpha.n(); ++a)
    for (int b = a + 1; b < alpha.n(); ++b)
      if (beta.same(a, b) && !alpha.same(a, b)) out.emplace_back(a, b);
  return out;
}

} // namespace

std::vector<minimal_set> minimal_sets(const finite_algebra& alg, const partition& alpha,
                                      const partition& beta, size_t budget) {
  if (alpha.n() != alg.size() || beta.n() != alg.size())
    throw error("minimal_sets: partition size mismatch");
  if (!leq(alpha, beta) || alpha == beta)
    throw error("minimal_sets: need alpha strictly below beta");

  auto cl = unary_poly_clone(alg, budget, true);
  auto pairs = cross_pairs(alpha, beta);
  auto non_collapsing = [&](const unary_fn& f) {
    for (auto [x, y] : pairs)
      if (!alpha.same(f[x], f[y])) return true;
    return false;
  };

  std::vector<char> nc(cl.members.size(), 0);
  std::set<std::vector<int>> images;
  for (size_t i = 0; i < cl.members.size(); ++i) {
    nc[i] = non_collapsing(cl.members[i]);
    if (nc[i]) images.insert(image_of(cl.members[i]));
  }

  std::vector<std::vector<int>> minimal;
  for (const auto& im : images) {
    bool is_min = true;
    for (const auto& other : images) {
      if (other.size() >= im.size() || other == im) continue;
      if (std::includes(im.begin(), im.end(), other.begin(), other.end())) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(im);
  }
  std::sort(minimal.begin(), minimal.end());

  std::vector<minimal_set> out;
  for (const auto& u : minimal) {
    std::optional<unary_fn> idem;
    for (size_t i = 0; i < cl.members.size() && !idem; ++i) {
      if (!nc[i] || image_of(cl.members[i]) != u) continue;
      const unary_fn& f = cl.members[i];
      // need f to permute its image; otherwise iterating would shrink it,
      // and a smaller non-collapsing image would contradict minimality of u
      std::vector<char> hit(alg.size(), 0);
      bool bij = true;
      for (int x : u) {
        if (hit[f[x]]) { bij = false; break; }
        hit[f[x]] = 1;
      }
      if (!bij) continue;
      // order of the permutation on u
      long long d = 1;
      std::vector<char> seen(alg.size(), 0);
      for (int x : u) {
        if (seen[x]) continue;
        long long len = 0;
        for (int y = x; !seen[y]; y = f[y]) {
          seen[y] = 1;
          ++len;
        }
        d = std::lcm(d, len);
        if (d > 10'000'000) break;
      }
      if (d > 10'000'000) continue;
      unary_fn e = pow_fn(f, d);
      if (compose(e, e) != e) continue;
      if (image_of(e) != u) continue;
      if (!non_collapsing(e)) continue;
      idem = std::move(e);
    }
    if (!idem) continue; // defensive; a genuine cover always yields one

    minimal_set ms;
    ms.alpha = alpha;
    ms.beta = beta;
    ms.members = u;
    ms.idempotent = std::move(*idem);
    std::map<int, std::vector<int>> by_block;
    for (int x : u) by_block[beta.block[x]].push_back(x);
    for (auto& [blk, elems] : by_block) {
      std::set<int> classes;
      for (int x : elems) classes.insert(alpha.block[x]);
      if (classes.size() >= 2)
        ms.traces.push_back(elems);
      else
        ms.tail.insert(ms.tail.end(), elems.begin(), elems.end());
    }
    std::sort(ms.tail.begin(), ms.tail.end());
    out.push_back(std::move(ms));
  }
  return out;
}

u_order leq_u(const finite_algebra& alg, const minimal_set& ms, int zero_u, int one_u,
              size_t budget) {
  if (ms.members.size() != 2) throw error("leq_u: minimal set must have exactly two elements");
  std::vector<int> named{zero_u, one_u};
  std::sort(named.begin(), named.end());
  if (named != ms.members) throw error("leq_u: orientation does not name the minimal set");

  u_order uo;
  uo.ms = ms;
  uo.zero_u = zero_u;
  uo.one_u = one_u;
  auto cl = unary_poly_clone(alg, budget, true);
  for (const auto& f : cl.members)
    if (image_of(f) == ms.members) uo.maps.push_back(f);

  const int n = alg.size();
  uo.rel.assign(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!ms.beta.same(a, b)) continue;
      bool ok = true;
      for (const auto& f : uo.maps)
        if (f[a] == one_u && f[b] == zero_u) { ok = false; break; }
      uo.rel[a][b] = ok;
    }
  return uo;
}

u_order leq_u(const finite_algebra& alg, const minimal_set& ms, size_t budget) {
  return leq_u(alg, ms, ms.members[0], ms.members[1], budget);
}

order_report check_order_lemma(const finite_algebra& alg, const u_order& uo) {
  order_report rep;
  const partition& alpha = uo.ms.alpha;
  const partition& beta = uo.ms.beta;
  const auto& rel = uo.rel;
  const int n = alg.size();
  auto note = [&](std::string s) {
    if (rep.detail.empty()) rep.detail = std::move(s);
  };

  for (int a = 0; a < n && rep.preorder_ok; ++a)
    if (!rel[a][a]) {
      rep.preorder_ok = false;
      note("reflexivity fails at " + std::to_string(a));
    }
  auto blocks = blocks_of(beta);
  for (const auto& blk : blocks) {
    for (int a : blk)
      for (int b : blk) {
        if (!rel[a][b]) continue;
        if (rep.preorder_ok)
          for (int c : blk)
            if (rel[b][c] && !rel[a][c]) {
              rep.preorder_ok = false;
              note("transitivity fails on (" + std::to_string(a) + "," + std::to_string(b) +
                   "," + std::to_string(c) + ")");
            }
        if (rep.antisym_ok && rel[b][a] && !alpha.same(a, b)) {
          rep.antisym_ok = false;
          note("mutually related across alpha classes: " + std::to_string(a) + "," +
               std::to_string(b));
        }
      }
  }

  std::vector<std::pair<int, int>> related;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rel[a][b]) related.emplace_back(a, b);
  for (int oi = 0; oi < alg.op_count() && rep.preserved_ok; ++oi) {
    const int r = alg.op(oi).arity;
    if (r == 0) continue;
    double space = 1;
    for (int i = 0; i < r; ++i) space *= static_cast<double>(related.size());
    if (space > 2e8) throw error("check_order_lemma: preservation space too large for op " +
                                 alg.op(oi).name);
    std::vector<size_t> pos(r, 0);
    std::vector<int> av(r), bv(r);
    while (true) {
      for (int i = 0; i < r; ++i) {
        av[i] = related[pos[i]].first;
        bv[i] = related[pos[i]].second;
      }
      int fa = alg.apply(oi, av), fb = alg.apply(oi, bv);
      if (!rel[fa][fb]) {
        rep.preserved_ok = false;
        std::string s = "op " + alg.op(oi).name + " breaks the order on pairs";
        for (int i = 0; i < r; ++i)
          s += " (" + std::to_string(av[i]) + "," + std::to_string(bv[i]) + ")";
        s += " -> (" + std::to_string(fa) + "," + std::to_string(fb) + ")";
        note(std::move(s));
        break;
      }
      int i = r - 1;
      while (i >= 0 && ++pos[i] == related.size()) pos[i--] = 0;
      if (i < 0) break;
    }
  }
  return rep;
}

std::optional<incomparable_pair> find_incomparable_pair(const u_order& uo) {
  const int n = static_cast<int>(uo.rel.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (!uo.ms.beta.same(a, b)) continue;
      if (uo.rel[a][b] || uo.rel[b][a]) continue;
      incomparable_pair out;
      out.a = a;
      out.b = b;
      out.i = out.j = -1;
      for (size_t k = 0; k < uo.maps.size(); ++k) {
        if (uo.maps[k][a] == uo.zero_u && uo.maps[k][b] == uo.one_u && out.i < 0)
          out.i = static_cast<int>(k);
        if (uo.maps[k][a] == uo.one_u && uo.maps[k][b] == uo.zero_u && out.j < 0)
          out.j = static_cast<int>(k);
      }
      if (out.i >= 0 && out.j >= 0) return out;
    }
  return std::nullopt;
}

namespace {

// Sink pair of the translation digraph on beta-minus-alpha pairs: from it,
// every non-collapsing polynomial image can be translated back, so probing it
// sees the same induced structure a trace would.
std::pair<int, int> sink_pair(const finite_algebra& alg, const partition& alpha,
                              const partition& beta) {
  auto nodes = cross_pairs(alpha, beta);
  const int n = alg.size();
  std::map<long long, int> id;
  for (size_t i = 0; i < nodes.size(); ++i)
    id[static_cast<long long>(nodes[i].first) * n + nodes[i].second] = static_cast<int>(i);
  auto tr = distinct_translation_tables(alg);
  std::vector<std::vector<int>> adj(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto [a, b] = nodes[i];
    for (const auto& t : tr) {
      int x = t[a], y = t[b];
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      auto it = id.find(static_cast<long long>(x) * n + y);
      if (it != id.end() && it->second != static_cast<int>(i)) adj[i].push_back(it->second);
    }
  }
  // iterative Tarjan
  const int m = static_cast<int>(nodes.size());
  std::vector<int> idx(m, -1), low(m, 0), comp(m, -1), stk;
  std::vector<char> on(m, 0);
  int counter = 0, ncomp = 0;
  std::vector<std::pair<int, size_t>> call;
  for (int s = 0; s < m; ++s) {
    if (idx[s] >= 0) continue;
    call.emplace_back(s, 0);
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei == 0) {
        idx[v] = low[v] = counter++;
        stk.push_back(v);
        on[v] = 1;
      }
      bool descended = false;
      while (ei < adj[v].size()) {
        int w = adj[v][ei++];
        if (idx[w] < 0) {
          call.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on[w]) low[v] = std::min(low[v], idx[w]);
      }
      if (descended) continue;
      if (low[v] == idx[v]) {
        while (true) {
          int w = stk.back();
          stk.pop_back();
          on[w] = 0;
          comp[w] = ncomp;
          if (w == v) break;
        }
        ++ncomp;
      }
      int finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }
  std::vector<char> is_sink(ncomp, 1);
  for (int v = 0; v < m; ++v)
    for (int w : adj[v])
      if (comp[v] != comp[w]) is_sink[comp[v]] = 0;
  for (int v = 0; v < m; ++v)
    if (is_sink[comp[v]]) return nodes[v];
  return nodes.front(); // unreachable: some component is always a sink
}

std::string status_str(search_status s) {
  switch (s) {
    case search_status::found: return "found";
    case search_status::absent: return "absent";
    default: return "budget capped";
  }
}

} // namespace

prime_quotient classify_type(const finite_algebra& alg, const partition& alpha,
                             const partition& beta, size_t budget) {
  if (alpha.n() != alg.size() || beta.n() != alg.size())
    throw error("classify_type: partition size mismatch");
  if (!leq(alpha, beta) || alpha == beta)
    throw error("classify_type: need alpha strictly below beta");
  prime_quotient pq;
  pq.alpha = alpha;
  pq.beta = beta;

  // Affine certificate first: a validated block representation of beta/alpha
  // makes every induced polynomial affine on blocks, which settles type 2
  // without any pattern search.
  {
    quotient_map qm = quotient_algebra(alg, alpha);
    partition beta_q = push_congruence(qm, beta);
    std::string why;
    if (auto z = build_zpk_rep(qm.alg, beta_q, budget, &why)) {
      pq.type = 2;
      pq.characteristic = z->codec.prime;
      pq.evidence = "validated block representation over Z_" +
                    std::to_string(z->codec.prime) + "; induced operations affine";
      return pq;
    }
  }

  auto [a, b] = sink_pair(alg, alpha, beta);
  auto probe = [&](int arity, std::vector<std::vector<int>> pts, std::vector<int> want) {
    return bounded_term_search_at_points(
        alg, arity, pts,
        [&alpha, want](std::span<const int> row) {
          for (size_t i = 0; i < want.size(); ++i)
            if (!alpha.same(row[i], want[i])) return false;
          return true;
        },
        budget);
  };
  auto low = probe(2, {{a, a}, {a, b}, {b, a}, {b, b}}, {a, a, a, b});
  auto high = probe(2, {{a, a}, {a, b}, {b, a}, {b, b}}, {a, b, b, b});
  auto say = [&](const char* what) {
    return std::string(what) + " on pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
  };

  if (low.status == search_status::found && high.status == search_status::found) {
    auto neg = probe(1, {{a}, {b}}, {b, a});
    if (neg.status == search_status::found) {
      pq.type = 3;
      pq.evidence = say("meet, join and complement patterns");
      return pq;
    }
    auto mal = probe(3, {{a, a, a}, {a, b, b}, {b, a, a}, {b, b, b}, {a, a, b}, {b, b, a}},
                     {a, a, b, b, b, a});
    if (mal.status == search_status::found) {
      pq.type = 3;
      pq.evidence = say("meet, join and difference patterns");
      return pq;
    }
    if (neg.status == search_status::absent && mal.status == search_status::absent) {
      pq.type = 4;
      pq.evidence = say("meet and join patterns; complement and difference ruled out");
      return pq;
    }
    pq.evidence = say("meet and join patterns") + "; complement " + status_str(neg.status) +
                  ", difference " + status_str(mal.status);
    return pq;
  }
  if ((low.status == search_status::found && high.status == search_status::absent) ||
      (low.status == search_status::absent && high.status == search_status::found)) {
    pq.type = 5;
    pq.evidence = say("exactly one semilattice pattern");
    return pq;
  }
  if (low.status == search_status::absent && high.status == search_status::absent) {
    auto mal = probe(3, {{a, a, a}, {a, b, b}, {b, a, a}, {b, b, b}, {a, a, b}, {b, b, a}},
                     {a, a, b, b, b, a});
    // alpha classes inside the beta block of the pair
    std::set<int> classes;
    for (int x = 0; x < alg.size(); ++x)
      if (beta.same(x, a)) classes.insert(alpha.block[x]);
    int s = static_cast<int>(classes.size());
    if (mal.status == search_status::found) {
      int p = 2;
      while (s % p != 0) ++p;
      int q = s;
      while (q % p == 0) q /= p;
      if (q == 1) {
        pq.type = 2;
        pq.characteristic = p;
        pq.evidence = say("difference pattern; no semilattice pattern");
        return pq;
      }
      pq.evidence = say("difference pattern") + " but block spans " + std::to_string(s) +
                    " classes, not a prime power";
      return pq;
    }
    if (mal.status == search_status::absent && s == 2) {
      pq.type = 1;
      pq.evidence = say("no binary or difference pattern; only essentially unary behavior");
      return pq;
    }
    pq.evidence = say("no semilattice pattern") + "; difference " + status_str(mal.status) +
                  ", block spans " + std::to_string(s) + " classes";
    return pq;
  }
  pq.evidence = say("semilattice probes inconclusive") + ": low " + status_str(low.status) +
                ", high " + status_str(high.status);
  return pq;
}

typeset_result typeset(const finite_algebra& alg, size_t budget) {
  typeset_result out;
  auto lat = compute_congruence_lattice(alg);
  for (auto [i, j] : lat.covers) {
    prime_quotient pq = classify_type(alg, lat.members[i], lat.members[j], budget);
    if (pq.type == 0)
      out.complete = false;
    else
      out.types.insert(pq.type);
    out.quotients.push_back(std::move(pq));
  }
  return out;
}

std::optional<total_order_witness> totally_ordered_check(const finite_algebra& alg) {
  const int n = alg.size();
  if (n > 8) throw error("totally_ordered_check: refusing to scan n! orders for n > 8");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> pos(n);
  do {
    for (int i = 0; i < n; ++i) pos[perm[i]] = i;
    bool ok = true;
    for (int oi = 0; oi < alg.op_count() && ok; ++oi) {
      const operation& f = alg.op(oi);
      const int r = f.arity;
      if (r == 0) continue;
      size_t total = f.table.size();
      std::vector<int> tup(r);
      for (size_t idx = 0; idx < total && ok; ++idx) {
        index_tuple(idx, n, std::span<int>(tup));
        int base = f.table[idx];
        // bump each slot to the next element in the candidate order
        for (int s = 0; s < r && ok; ++s) {
          int rk = pos[tup[s]];
          if (rk + 1 >= n) continue;
          long long stride = 1;
          for (int t = r - 1; t > s; --t) stride *= n;
          long long jdx = static_cast<long long>(idx) + stride * (perm[rk + 1] - tup[s]);
          if (pos[base] > pos[f.table[static_cast<size_t>(jdx)]]) ok = false;
        }
      }
    }
    if (ok) return total_order_witness{perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

} // namespace finalg
