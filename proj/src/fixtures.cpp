#include "finalg/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace finalg {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

operation make_op(const std::string& name, int arity, int n,
                  const std::function<int(std::span<const int>)>& f) {
  operation op;
  op.name = name;
  op.arity = arity;
  size_t total = 1;
  for (int i = 0; i < arity; ++i) total *= static_cast<size_t>(n);
  op.table.resize(total);
  std::vector<int> args(arity);
  for (size_t idx = 0; idx < total; ++idx) {
    index_tuple(idx, n, std::span<int>(args));
    op.table[idx] = f(std::span<const int>(args));
  }
  return op;
}

// Mixed-radix packing, leftmost digit slowest.
struct radix {
  std::vector<int> dims;
  int size() const {
    int s = 1;
    for (int d : dims) s *= d;
    return s;
  }
  std::vector<int> decode(int idx) const {
    std::vector<int> c(dims.size());
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
      c[i] = idx % dims[i];
      idx /= dims[i];
    }
    return c;
  }
  int encode(std::span<const int> c) const {
    int v = 0;
    for (size_t i = 0; i < dims.size(); ++i) v = v * dims[i] + c[i];
    return v;
  }
};

std::vector<int> prime_factors(int m) {
  std::vector<int> f;
  for (int p = 2; p <= m; ++p)
    while (m % p == 0) {
      f.push_back(p);
      m /= p;
    }
  return f;
}

struct chain_ctx {
  const finite_algebra* stage;
  const std::vector<int>* lift;  // stage element -> original universe element
  int step;
  const partition* atom;
};
using codec_maker =
    std::function<std::optional<coset_codec>(const chain_ctx&)>;

// Peels `steps` congruences off b.alg.  key(q, full) names the class of a
// universe element under the (q+1)-th chain congruence; consecutive keys must
// refine.  A null codec maker uses the generic difference-based builder.
void build_chain(fixture_bundle& b, int steps,
                 const std::function<long long(int, int)>& key,
                 const codec_maker& mk) {
  finite_algebra cur = b.alg;
  std::vector<int> lift(cur.size());
  std::iota(lift.begin(), lift.end(), 0);
  for (int s = 0; s < steps; ++s) {
    std::vector<int> block(cur.size());
    std::unordered_map<long long, int> ids;
    for (int e = 0; e < cur.size(); ++e)
      block[e] = ids.emplace(key(s, lift[e]), static_cast<int>(ids.size())).first->second;
    chain_step st;
    st.stage = cur;
    st.atom = partition(std::move(block));
    std::string why;
    if (mk) {
      chain_ctx cx{&cur, &lift, s, &st.atom};
      auto cd = mk(cx);
      if (!cd)
        throw error(b.id + ": codec construction failed at chain step " +
                    std::to_string(s));
      st.zpk = zpk_from_codec(cur, std::move(*cd), &why);
    } else {
      st.zpk = build_zpk_rep(cur, st.atom, default_closure_cap, &why);
    }
    if (!st.zpk)
      throw error(b.id + ": block rep failed at chain step " +
                  std::to_string(s) + ": " + why);
    st.mxb = mxb_of_zpk(cur, *st.zpk);
    st.next = st.zpk->codec.quot;
    std::vector<int> next_lift(st.next.alg.size());
    for (size_t c = 0; c < next_lift.size(); ++c)
      next_lift[c] = lift[st.next.representative[c]];
    cur = st.next.alg;
    lift = std::move(next_lift);
    b.chain.push_back(std::move(st));
  }
}

void attach_top_module(fixture_bundle& b) {
  const finite_algebra& top = b.chain.back().next.alg;
  std::string why;
  b.top_module = build_module_rep(top, default_closure_cap, &why);
  if (!b.top_module)
    throw error(b.id + ": top quotient is not affine: " + why);
}

term_witness unary_term(int op_idx) {
  return {term::app(op_idx, {term::var(0)}), 1};
}
term_witness binary_term(int op_idx) {
  return {term::app(op_idx, {term::var(0), term::var(1)}), 2};
}

fixture_bundle make_boolean2() {
  fixture_bundle b;
  b.id = "boolean2";
  std::vector<operation> ops;
  ops.push_back(make_op("meet", 2, 2, [](std::span<const int> a) { return a[0] & a[1]; }));
  ops.push_back(make_op("join", 2, 2, [](std::span<const int> a) { return a[0] | a[1]; }));
  ops.push_back(make_op("neg", 1, 2, [](std::span<const int> a) { return 1 - a[0]; }));
  ops.push_back(make_op("zero", 0, 2, [](std::span<const int>) { return 0; }));
  ops.push_back(make_op("one", 0, 2, [](std::span<const int>) { return 1; }));
  b.alg = finite_algebra("boolean2", 2, std::move(ops));
  witness_kit k;
  k.uset = {0, 1};
  k.meet_u = binary_term(b.alg.op_index("meet"));
  k.join_u = binary_term(b.alg.op_index("join"));
  k.neg_u = unary_term(b.alg.op_index("neg"));
  k.projections = {{term::var(0), 1}, unary_term(b.alg.op_index("neg"))};
  k.provenance = "fixture";
  b.kit = std::move(k);
  return b;
}

fixture_bundle make_ex_lattice() {
  fixture_bundle b;
  b.id = "ex-lattice";
  std::vector<operation> ops;
  ops.push_back(make_op("meet", 2, 2, [](std::span<const int> a) { return a[0] & a[1]; }));
  ops.push_back(make_op("join", 2, 2, [](std::span<const int> a) { return a[0] | a[1]; }));
  b.alg = finite_algebra("ex-lattice", 2, std::move(ops));
  b.order = total_order_witness{{0, 1}};
  witness_kit k;
  k.uset = {0, 1};
  k.meet_u = binary_term(0);
  k.join_u = binary_term(1);
  k.provenance = "fixture";
  b.kit = std::move(k);
  return b;
}

fixture_bundle make_chain(int kk) {
  if (kk < 2 || kk > 64) throw error("chain(k): k must be in 2..64");
  fixture_bundle b;
  b.id = "chain(" + std::to_string(kk) + ")";
  std::vector<operation> ops;
  ops.push_back(make_op("meet", 2, kk, [](std::span<const int> a) { return std::min(a[0], a[1]); }));
  ops.push_back(make_op("join", 2, kk, [](std::span<const int> a) { return std::max(a[0], a[1]); }));
  b.alg = finite_algebra(b.id, kk, std::move(ops));
  std::vector<int> ord(kk);
  std::iota(ord.begin(), ord.end(), 0);
  b.order = total_order_witness{std::move(ord)};
  return b;
}

fixture_bundle make_affine(int p) {
  if (!is_prime(p) || p > 97) throw error("affine(p): p must be a prime <= 97");
  fixture_bundle b;
  b.id = "affine(" + std::to_string(p) + ")";
  std::vector<operation> ops;
  ops.push_back(make_op("d", 3, p, [p](std::span<const int> a) {
    return ((a[0] - a[1] + a[2]) % p + p) % p;
  }));
  b.alg = finite_algebra(b.id, p, std::move(ops));
  std::string why;
  b.module = build_module_rep(b.alg, default_closure_cap, &why);
  if (!b.module) throw error(b.id + ": module form failed: " + why);
  return b;
}

fixture_bundle make_nudet_exact(int p) {
  if (!is_prime(p) || p > 13) throw error("nudet-exact(p): p must be a prime <= 13");
  fixture_bundle b;
  b.id = "nudet-exact(" + std::to_string(p) + ")";
  const int n = p * p;
  auto X = [p](int e) { return e / p; };
  auto Y = [p](int e) { return e % p; };
  auto P = [p](int x, int y) { return x * p + y; };
  std::vector<operation> ops;
  ops.push_back(make_op("add", 2, n, [&](std::span<const int> a) {
    return P((X(a[0]) + X(a[1])) % p, (Y(a[0]) + Y(a[1])) % p);
  }));
  ops.push_back(make_op("p1", 1, n, [&](std::span<const int> a) { return P(X(a[0]), 0); }));
  ops.push_back(make_op("p2", 1, n, [&](std::span<const int> a) { return P(0, Y(a[0])); }));
  ops.push_back(make_op("u", 1, n, [&](std::span<const int> a) { return P(Y(a[0]), 0); }));
  ops.push_back(make_op("v", 2, n, [&](std::span<const int> a) {
    return P((X(a[0]) * Y(a[1])) % p, 0);
  }));
  b.alg = finite_algebra(b.id, n, std::move(ops));
  // Single abelian congruence: same second coordinate.
  build_chain(b, 1, [p](int, int full) -> long long { return full % p; }, nullptr);
  attach_top_module(b);
  return b;
}

fixture_bundle make_example_nilpo(int m, int h) {
  if (m < 2 || m > 8 || h < 1 || h > 4) throw error("example-nilpo(m,h): need 2<=m<=8, 1<=h<=4");
  double sz = 1;
  for (int i = 0; i < h; ++i) sz *= m;
  if (sz > 4096) throw error("example-nilpo(m,h): universe exceeds 4096");
  fixture_bundle b;
  b.id = "example-nilpo(" + std::to_string(m) + "," + std::to_string(h) + ")";
  radix rx{std::vector<int>(h, m)};
  const int n = rx.size();
  std::vector<operation> ops;
  ops.push_back(make_op("add", 2, n, [&](std::span<const int> a) {
    auto x = rx.decode(a[0]), y = rx.decode(a[1]);
    for (int i = 0; i < h; ++i) x[i] = (x[i] + y[i]) % m;
    return rx.encode(std::span<const int>(x));
  }));
  for (int i = 1; i <= h; ++i)
    ops.push_back(make_op("e" + std::to_string(i), 1, n, [&, i](std::span<const int> a) {
      auto x = rx.decode(a[0]);
      std::vector<int> out(h, 0);
      out[i - 1] = x[i - 1];
      return rx.encode(std::span<const int>(out));
    }));
  for (int i = 2; i <= h; ++i)
    for (int mask = 0; mask < (1 << m); ++mask)
      ops.push_back(make_op("chi" + std::to_string(i) + "_" + std::to_string(mask), 1, n,
                            [&, i, mask](std::span<const int> a) {
                              auto x = rx.decode(a[0]);
                              std::vector<int> out(h, 0);
                              out[i - 2] = (mask >> x[i - 1]) & 1;
                              return rx.encode(std::span<const int>(out));
                            }));
  b.alg = finite_algebra(b.id, n, std::move(ops));

  auto pf = prime_factors(m);
  const int t = static_cast<int>(pf.size());
  auto key = [rx, pf, t, m](int q, int full) -> long long {
    auto c = rx.decode(full);
    int j0 = q / t, u = q % t + 1;
    int d = 1;
    for (int i = 0; i < u; ++i) d *= pf[i];
    long long v = c[j0] % (m / d);
    for (size_t i = j0 + 1; i < c.size(); ++i) v = v * m + c[i];
    return v;
  };
  build_chain(b, h * t - 1, key, nullptr);
  attach_top_module(b);
  return b;
}

fixture_bundle make_solv_construc(const std::vector<int>& primes) {
  if (primes.empty()) throw error("solv-construc: need at least one prime");
  double sz = 1;
  for (int p : primes) {
    if (!is_prime(p) || p > 7) throw error("solv-construc: entries must be primes <= 7");
    sz *= p * p;
  }
  if (sz > 4096) throw error("solv-construc: universe exceeds 4096");
  const int h = static_cast<int>(primes.size());
  fixture_bundle b;
  b.id = "solv-construc(";
  for (int i = 0; i < h; ++i) b.id += (i ? "," : "") + std::to_string(primes[i]);
  b.id += ")";

  std::vector<int> dims;
  for (int p : primes) {
    dims.push_back(p);
    dims.push_back(p);
  }
  radix rx{dims};
  const int n = rx.size();
  auto xi = [](int i) { return 2 * (i - 1); };      // block i, first coordinate
  auto yi = [](int i) { return 2 * (i - 1) + 1; };  // block i, second coordinate

  std::vector<operation> ops;
  for (int i = 1; i <= h; ++i) {
    const int p = primes[i - 1];
    const std::string suf = std::to_string(i);
    ops.push_back(make_op("add" + suf, 2, n, [&, i, p](std::span<const int> a) {
      auto x = rx.decode(a[0]), y = rx.decode(a[1]);
      std::vector<int> out(rx.dims.size(), 0);
      out[xi(i)] = (x[xi(i)] + y[xi(i)]) % p;
      out[yi(i)] = (x[yi(i)] + y[yi(i)]) % p;
      return rx.encode(std::span<const int>(out));
    }));
    ops.push_back(make_op("p1_" + suf, 1, n, [&, i](std::span<const int> a) {
      auto x = rx.decode(a[0]);
      std::vector<int> out(rx.dims.size(), 0);
      out[xi(i)] = x[xi(i)];
      return rx.encode(std::span<const int>(out));
    }));
    ops.push_back(make_op("p2_" + suf, 1, n, [&, i](std::span<const int> a) {
      auto x = rx.decode(a[0]);
      std::vector<int> out(rx.dims.size(), 0);
      out[yi(i)] = x[yi(i)];
      return rx.encode(std::span<const int>(out));
    }));
    ops.push_back(make_op("u" + suf, 1, n, [&, i](std::span<const int> a) {
      auto x = rx.decode(a[0]);
      std::vector<int> out(rx.dims.size(), 0);
      out[xi(i)] = x[yi(i)];
      return rx.encode(std::span<const int>(out));
    }));
    ops.push_back(make_op("v" + suf, 2, n, [&, i, p](std::span<const int> a) {
      auto x = rx.decode(a[0]), y = rx.decode(a[1]);
      std::vector<int> out(rx.dims.size(), 0);
      out[xi(i)] = (x[xi(i)] * y[yi(i)]) % p;
      return rx.encode(std::span<const int>(out));
    }));
  }
  for (int i = 2; i <= h; ++i)
    for (int mask = 0; mask < (1 << primes[i - 1]); ++mask)
      ops.push_back(make_op("chi" + std::to_string(i) + "_" + std::to_string(mask), 1, n,
                            [&, i, mask](std::span<const int> a) {
                              auto x = rx.decode(a[0]);
                              std::vector<int> out(rx.dims.size(), 0);
                              out[yi(i - 1)] = (mask >> x[xi(i)]) & 1;
                              return rx.encode(std::span<const int>(out));
                            }));
  b.alg = finite_algebra(b.id, n, std::move(ops));

  auto key = [rx](int q, int full) -> long long {
    auto c = rx.decode(full);
    long long v = 0;
    for (size_t i = q + 1; i < c.size(); ++i) v = v * rx.dims[i] + c[i];
    return v;
  };
  // No difference polynomial exists here (every composite term's image is
  // confined to one block), so codecs come from the coordinate structure.
  codec_maker mk = [rx](const chain_ctx& cx) -> std::optional<coset_codec> {
    const int c = cx.step;
    coset_codec cc;
    cc.prime = rx.dims[c];
    cc.dim = 1;
    cc.quot = quotient_algebra(*cx.stage, *cx.atom);
    const int sn = cx.stage->size();
    cc.code.assign(sn, -1);
    cc.element.assign(cc.quot.alg.size(), std::vector<int>(cc.prime, -1));
    for (int e = 0; e < sn; ++e) {
      int digit = rx.decode((*cx.lift)[e])[c];
      cc.code[e] = digit;
      cc.element[cc.quot.to_class[e]][digit] = e;
    }
    for (const auto& blk : cc.element)
      for (int v : blk)
        if (v < 0) return std::nullopt;
    return cc;
  };
  build_chain(b, 2 * h - 1, key, mk);
  attach_top_module(b);
  return b;
}

fixture_bundle make_ex_type5(int variant) {
  // Universe {bottom, low, high} encoded 0,1,2; every op absorbs bottom.
  const int n = 3;
  auto e1 = make_op("e1", 1, n, [](std::span<const int> a) { return a[0] == 2 ? 1 : 0; });
  auto e2 = make_op("e2", 1, n, [](std::span<const int> a) { return a[0] == 0 ? 0 : 2; });
  auto e3 = make_op("e3", 1, n, [](std::span<const int> a) { return a[0] == 0 ? 0 : 1; });
  auto meet = make_op("meet", 2, n, [](std::span<const int> a) {
    if (a[0] == 0 || a[1] == 0) return 0;
    return std::min(a[0], a[1]);
  });
  auto join = make_op("join", 2, n, [](std::span<const int> a) {
    if (a[0] == 0 || a[1] == 0) return 0;
    return std::max(a[0], a[1]);
  });
  auto neg = make_op("neg", 1, n, [](std::span<const int> a) {
    if (a[0] == 0) return 0;
    return a[0] == 1 ? 2 : 1;
  });
  auto add = make_op("add", 2, n, [](std::span<const int> a) {
    if (a[0] == 0 || a[1] == 0) return 0;
    return ((a[0] - 1) ^ (a[1] - 1)) + 1;
  });
  std::vector<operation> ops{e1, e2, e3};
  switch (variant) {
    case 1: ops.push_back(meet); break;
    case 2: ops.push_back(meet); ops.push_back(join); break;
    case 3: ops.push_back(meet); ops.push_back(neg); break;
    case 4: ops.push_back(add); break;
    default: throw error("ex-type5 variant must be A1..A4");
  }
  fixture_bundle b;
  b.id = "ex-type5-A" + std::to_string(variant);
  b.alg = finite_algebra(b.id, n, std::move(ops));
  return b;
}

fixture_bundle make_mixed(int p) {
  if (!is_prime(p) || p > 13) throw error("mixed(p): p must be a prime <= 13");
  fixture_bundle b;
  b.id = "mixed(" + std::to_string(p) + ")";
  const int n = 2 * p;
  auto A = [](int e) { return e / 2; };
  auto X = [](int e) { return e % 2; };
  std::vector<operation> ops;
  ops.push_back(make_op("pmeet", 2, n, [&](std::span<const int> a) {
    return ((A(a[0]) + A(a[1])) % p) * 2 + (X(a[0]) & X(a[1]));
  }));
  ops.push_back(make_op("pjoin", 2, n, [&](std::span<const int> a) {
    return ((A(a[0]) + A(a[1])) % p) * 2 + (X(a[0]) | X(a[1]));
  }));
  b.alg = finite_algebra(b.id, n, std::move(ops));
  std::vector<int> beta_block(n);
  for (int e = 0; e < n; ++e) beta_block[e] = X(e);
  b.beta = partition(std::move(beta_block));
  build_chain(b, 1, [](int, int full) -> long long { return full % 2; }, nullptr);
  b.beta_order = total_order_witness{{0, 1}};
  return b;
}

fixture_bundle make_hardmix(int p) {
  if (!is_prime(p) || p > 13) throw error("hardmix(p): p must be a prime <= 13");
  fixture_bundle b;
  b.id = "hardmix(" + std::to_string(p) + ")";
  const int n = 2 * p;
  auto L = [p](int e) { return e / p; };
  auto Z = [p](int e) { return e % p; };
  std::vector<operation> ops;
  ops.push_back(make_op("m", 2, n, [&](std::span<const int> a) {
    return (L(a[0]) & L(a[1])) * p + (Z(a[0]) + Z(a[1])) % p;
  }));
  ops.push_back(make_op("j", 2, n, [&](std::span<const int> a) {
    return (L(a[0]) | L(a[1])) * p + (Z(a[0]) + Z(a[1])) % p;
  }));
  ops.push_back(make_op("e", 1, n, [&](std::span<const int> a) { return L(a[0]) * p; }));
  ops.push_back(make_op("a", 1, n, [&](std::span<const int> a) { return Z(a[0]) != 0 ? p : 0; }));
  b.alg = finite_algebra(b.id, n, std::move(ops));

  const int m_op = b.alg.op_index("m");
  const int j_op = b.alg.op_index("j");
  witness_kit k;
  k.uset = {0, 1};      // (0,0) and (0,1): constant low lattice bit, counter 0/1
  k.vset = {0, p};      // (0,0) and (1,0): lattice bit carries the value
  k.meet_v = binary_term(m_op);
  k.join_v = binary_term(j_op);
  // d(x,y,z) = m(x, m(y, ... m(y, z))) with p-1 copies of y: on U the counter
  // part is x - y + z while the lattice bit stays low.
  term_ptr inner = term::var(2);
  for (int i = 0; i < p - 1; ++i) inner = term::app(m_op, {term::var(1), inner});
  k.pseudo_malcev_d = term_witness{term::app(m_op, {term::var(0), inner}), 3};
  k.connector_f = term_witness{
      term::app(b.alg.op_index("e"), {term::app(b.alg.op_index("a"), {term::var(0)})}), 1};
  k.provenance = "fixture";
  b.kit = std::move(k);
  return b;
}

} // namespace

fixture_bundle fixture(const std::string& id) {
  std::string name = id;
  std::vector<int> params;
  auto lp = id.find('(');
  if (lp != std::string::npos) {
    if (id.back() != ')') throw error("fixture id: missing ')'");
    name = id.substr(0, lp);
    std::string inner = id.substr(lp + 1, id.size() - lp - 2);
    size_t pos = 0;
    while (pos <= inner.size() && !inner.empty()) {
      size_t comma = inner.find(',', pos);
      std::string tok = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        params.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw error("fixture id: bad parameter '" + tok + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  auto want = [&](size_t k) {
    if (params.size() != k)
      throw error("fixture " + name + ": expected " + std::to_string(k) + " parameter(s)");
  };
  if (name == "boolean2") { want(0); return make_boolean2(); }
  if (name == "ex-lattice") { want(0); return make_ex_lattice(); }
  if (name == "chain") { want(1); return make_chain(params[0]); }
  if (name == "affine") { want(1); return make_affine(params[0]); }
  if (name == "nudet-exact") { want(1); return make_nudet_exact(params[0]); }
  if (name == "example-nilpo") { want(2); return make_example_nilpo(params[0], params[1]); }
  if (name == "solv-construc") {
    if (params.empty()) throw error("solv-construc: expected primes");
    return make_solv_construc(params);
  }
  if (name == "ex-type5-A1") { want(0); return make_ex_type5(1); }
  if (name == "ex-type5-A2") { want(0); return make_ex_type5(2); }
  if (name == "ex-type5-A3") { want(0); return make_ex_type5(3); }
  if (name == "ex-type5-A4") { want(0); return make_ex_type5(4); }
  if (name == "mixed") { want(1); return make_mixed(params[0]); }
  if (name == "hardmix") { want(1); return make_hardmix(params[0]); }
  throw error("unknown fixture family '" + name + "'");
}

std::vector<std::string> fixture_families() {
  return {"boolean2",       "ex-lattice",       "chain(k)",
          "affine(p)",      "nudet-exact(p)",   "example-nilpo(m,h)",
          "solv-construc(p1,..,ph)", "ex-type5-A1", "ex-type5-A2",
          "ex-type5-A3",    "ex-type5-A4",      "mixed(p)",
          "hardmix(p)"};
}

} // namespace finalg
