#include "finalg/rep.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace finalg {

namespace {

int mod_norm(long long v, int p) {
  long long r = v % p;
  if (r < 0) r += p;
  return static_cast<int>(r);
}

std::string tuple_str(std::span<const int> t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

// Reads a binary op as a group table when it has an identity, inverses, and
// is associative.
struct group_tab {
  const std::vector<int>* mul = nullptr;
  std::vector<int> inv;
  int identity = -1;
  int n = 0;
};

std::optional<group_tab> op_as_group(const finite_algebra& a, int op_idx) {
  const auto& op = a.op(op_idx);
  if (op.arity != 2) return std::nullopt;
  const int n = a.size();
  const auto& t = op.table;
  auto at = [&](int x, int y) { return t[static_cast<size_t>(x) * n + y]; };
  int e = -1;
  for (int c = 0; c < n; ++c) {
    bool id = true;
    for (int x = 0; x < n && id; ++x)
      id = at(c, x) == x && at(x, c) == x;
    if (id) {
      e = c;
      break;
    }
  }
  if (e < 0) return std::nullopt;
  group_tab g;
  g.mul = &t;
  g.identity = e;
  g.n = n;
  g.inv.assign(n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (at(x, y) == e && at(y, x) == e) {
        g.inv[x] = y;
        break;
      }
  for (int x = 0; x < n; ++x)
    if (g.inv[x] < 0) return std::nullopt;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int xy = at(x, y);
      for (int z = 0; z < n; ++z)
        if (at(xy, z) != at(x, at(y, z))) return std::nullopt;
    }
  return g;
}

// Constraint triples for the difference property restricted to a set of
// same-block pairs: d(x,y,y) = x and d(y,y,x) = x.
void add_pair_constraints(int x, int y,
                          std::unordered_map<long long, int>& want, int n) {
  auto key = [&](int p, int q, int r) {
    return (static_cast<long long>(p) * n + q) * n + r;
  };
  want.emplace(key(x, y, y), x);
  want.emplace(key(y, y, x), x);
}

} // namespace

void zpk_apply(const zpk_rep& r, int op_idx, int ctx,
               std::span<const int> arg_coords, std::span<int> out) {
  const int k = r.codec.dim;
  const int p = r.codec.prime;
  const affine_form& f = r.form[op_idx][ctx];
  for (int row = 0; row < k; ++row) {
    long long acc = f.cst[row];
    for (size_t s = 0; s < f.mat.size(); ++s) {
      const auto& m = f.mat[s];
      for (int col = 0; col < k; ++col)
        acc += static_cast<long long>(m[row * k + col]) * arg_coords[s * k + col];
    }
    out[row] = mod_norm(acc, p);
  }
}

std::optional<difference_fn> find_block_difference(const finite_algebra& a,
                                                   const partition& theta,
                                                   size_t budget,
                                                   std::string* why) {
  const int n = a.size();
  auto blocks = blocks_of(theta);

  bool all_trivial = true;
  for (const auto& b : blocks)
    if (b.size() > 1) all_trivial = false;
  if (all_trivial)
    return difference_fn{[](int, int, int z) { return z; }, "trivial blocks"};

  // A basic op that makes the whole universe a group gives x*inv(y)*z.
  for (int i = 0; i < a.op_count(); ++i) {
    auto g = op_as_group(a, i);
    if (!g) continue;
    const auto* mul = g->mul;
    auto inv = g->inv;
    auto eval = [mul, inv, n](int x, int y, int z) {
      int xy = (*mul)[static_cast<size_t>(x) * n + inv[y]];
      return (*mul)[static_cast<size_t>(xy) * n + z];
    };
    return difference_fn{eval, "group op '" + a.op(i).name + "'"};
  }

  // Otherwise search a ternary polynomial against a growing constraint set.
  std::unordered_map<long long, int> want;
  for (const auto& b : blocks) {
    int z = b[0];
    for (int e : b) {
      add_pair_constraints(z, e, want, n);
      add_pair_constraints(e, z, want, n);
    }
  }

  for (int round = 0; round < 8; ++round) {
    std::vector<std::vector<int>> points;
    std::vector<int> target;
    points.reserve(want.size());
    for (const auto& [key, val] : want) {
      int r = static_cast<int>(key % n);
      int q = static_cast<int>((key / n) % n);
      int p = static_cast<int>(key / (static_cast<long long>(n) * n));
      points.push_back({p, q, r});
      target.push_back(val);
    }
    auto accept = [&](std::span<const int> row) {
      for (size_t i = 0; i < row.size(); ++i)
        if (row[i] != target[i]) return false;
      return true;
    };
    search_result res = bounded_term_search_at_points(a, 3, points, accept, budget);
    if (res.status == search_status::capped) {
      if (why) *why = "difference search hit the closure budget";
      return std::nullopt;
    }
    if (res.status == search_status::absent) {
      if (why) *why = "no polynomial satisfies the difference constraints";
      return std::nullopt;
    }
    term_witness w = *res.witness;
    // Check the full block property; feed violations back in.
    int added = 0;
    for (const auto& b : blocks)
      for (int x : b) {
        for (int y : b) {
          if (w(a, {x, y, y}) != x || w(a, {y, y, x}) != x) {
            size_t before = want.size();
            add_pair_constraints(x, y, want, n);
            if (want.size() > before && ++added >= 16) goto rescan;
          }
        }
      }
  rescan:
    if (added == 0) {
      auto eval = [w, ap = &a](int x, int y, int z) { return w(*ap, {x, y, z}); };
      return difference_fn{eval, "searched polynomial " + term_to_string(a, *w.t)};
    }
  }
  if (why) *why = "difference search did not converge";
  return std::nullopt;
}

namespace {

// Greedy basis of the group (block, zero z, x+y = d(x,z,y)); fills coordinate
// vectors per element.  Verifies elementary abelian structure of exponent p.
bool block_basis(const std::vector<int>& block, int z, int p, int dim,
                 const std::function<int(int, int, int)>& d,
                 std::unordered_map<int, std::vector<int>>& coords,
                 std::string* why) {
  auto add = [&](int x, int y) { return d(x, z, y); };
  std::unordered_set<int> inb(block.begin(), block.end());
  for (int x : block)
    for (int y : block) {
      int s = add(x, y);
      if (!inb.count(s)) {
        if (why) *why = "block sum escapes the block";
        return false;
      }
      if (add(y, x) != s) {
        if (why) *why = "block group not commutative";
        return false;
      }
    }
  for (int x : block)
    for (int y : block)
      for (int w : block)
        if (add(add(x, y), w) != add(x, add(y, w))) {
          if (why) *why = "block group not associative";
          return false;
        }
  for (int x : block) {
    int acc = z;
    for (int i = 0; i < p; ++i) acc = add(acc, x);
    if (acc != z) {
      if (why) *why = "block group exponent is not the prime";
      return false;
    }
  }

  coords.clear();
  coords[z] = std::vector<int>(dim, 0);
  std::vector<int> span_elems{z};
  int used = 0;
  for (int cand : block) {
    if (coords.count(cand)) continue;
    if (used >= dim) {
      if (why) *why = "block basis overflow";
      return false;
    }
    int g = cand;
    std::vector<int> fresh;
    int mult = g;
    for (int t = 1; t < p; ++t) {
      for (int s : span_elems) {
        int e = add(s, mult);
        if (coords.count(e)) {
          if (why) *why = "block basis not independent";
          return false;
        }
        auto c = coords[s];
        c[used] = t;
        coords.emplace(e, std::move(c));
        fresh.push_back(e);
      }
      mult = add(mult, g);
    }
    span_elems.insert(span_elems.end(), fresh.begin(), fresh.end());
    ++used;
  }
  if (span_elems.size() != block.size()) {
    if (why) *why = "block basis does not span";
    return false;
  }
  return true;
}

} // namespace

std::optional<coset_codec> build_coset_codec(const finite_algebra& a,
                                             const partition& theta,
                                             size_t budget, std::string* why) {
  if (!is_congruence(a, theta)) {
    if (why) *why = "not a congruence";
    return std::nullopt;
  }
  auto blocks = blocks_of(theta);
  size_t bs = blocks[0].size();
  for (const auto& b : blocks)
    if (b.size() != bs) {
      if (why) *why = "blocks differ in size";
      return std::nullopt;
    }
  if (bs < 2) {
    if (why) *why = "blocks are trivial";
    return std::nullopt;
  }
  int p = 0;
  for (int c = 2; static_cast<size_t>(c) <= bs; ++c)
    if (bs % c == 0) {
      p = c;
      break;
    }
  int dim = 0;
  {
    size_t rest = bs;
    while (rest % p == 0) {
      rest /= p;
      ++dim;
    }
    if (rest != 1) {
      if (why) *why = "block size is not a prime power";
      return std::nullopt;
    }
  }

  std::string dwhy;
  auto diff = find_block_difference(a, theta, budget, &dwhy);
  if (!diff) {
    if (why) *why = "no difference evaluator: " + dwhy;
    return std::nullopt;
  }
  const auto& d = diff->eval;

  coset_codec cc;
  cc.prime = p;
  cc.dim = dim;
  cc.quot = quotient_algebra(a, theta);
  const int n = a.size();
  const int classes = cc.quot.alg.size();
  const int z0 = cc.quot.representative[0];

  std::unordered_map<int, std::vector<int>> coords_m;
  if (!block_basis(blocks[0], z0, p, dim, d, coords_m, why)) return std::nullopt;

  cc.code.assign(n, -1);
  cc.element.assign(classes, std::vector<int>(bs, -1));
  auto flat = [&](const std::vector<int>& c) {
    return tuple_index(std::span<const int>(c.data(), c.size()), p);
  };
  for (const auto& [e, c] : coords_m) {
    cc.code[e] = flat(c);
    cc.element[0][cc.code[e]] = e;
  }

  // Transfer the base block's coordinates to every block; fall back to
  // independent per-block bases when the transfer maps fail to invert.
  bool aligned = true;
  for (int c = 1; c < classes && aligned; ++c) {
    int zc = cc.quot.representative[c];
    for (int e : blocks[c]) {
      int m = d(e, zc, z0);
      if (cc.quot.to_class[m] != 0) {
        aligned = false;
        break;
      }
      int code = cc.code[m];
      if (cc.element[c][code] != -1 || d(cc.element[0][code], z0, zc) != e) {
        aligned = false;
        break;
      }
      cc.code[e] = code;
      cc.element[c][code] = e;
    }
  }
  if (!aligned) {
    for (int c = 1; c < classes; ++c) {
      cc.element[c].assign(bs, -1);
      int zc = cc.quot.representative[c];
      std::unordered_map<int, std::vector<int>> coords_c;
      if (!block_basis(blocks[c], zc, p, dim, d, coords_c, why)) return std::nullopt;
      for (const auto& [e, cd] : coords_c) {
        cc.code[e] = flat(cd);
        cc.element[c][cc.code[e]] = e;
      }
    }
  }
  return cc;
}

namespace {

size_t pow_checked(int base, int exp, size_t cap) {
  size_t v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= static_cast<size_t>(base);
    if (v > cap) return cap + 1;
  }
  return v;
}

// Reads the affine forms off the codec by probing at block zeros and unit
// coordinates.  No validation here.
std::optional<zpk_rep> interpolate_zpk(const finite_algebra& a,
                                       coset_codec codec, std::string* why) {
  zpk_rep r;
  r.codec = std::move(codec);
  const int k = r.codec.dim;
  const int p = r.codec.prime;
  const int classes = r.codec.classes();
  r.form.resize(a.op_count());
  std::vector<int> ctx_t, args, base_c(k), val_c(k);
  for (int oi = 0; oi < a.op_count(); ++oi) {
    const auto& op = a.op(oi);
    const int ar = op.arity;
    size_t nctx = pow_checked(classes, ar, 1u << 24);
    if (nctx > (1u << 24)) {
      if (why) *why = "too many argument class tuples for op '" + op.name + "'";
      return std::nullopt;
    }
    r.form[oi].resize(nctx);
    ctx_t.assign(ar, 0);
    args.assign(ar, 0);
    for (size_t ctx = 0; ctx < nctx; ++ctx) {
      index_tuple(ctx, classes, std::span<int>(ctx_t));
      for (int s = 0; s < ar; ++s)
        args[s] = r.codec.element[ctx_t[s]][0];
      affine_form& f = r.form[oi][ctx];
      int base = a.apply(oi, std::span<const int>(args));
      r.codec.coords_of(base, std::span<int>(base_c));
      f.cst = base_c;
      f.mat.assign(ar, std::vector<int>(static_cast<size_t>(k) * k, 0));
      for (int s = 0; s < ar; ++s) {
        for (int j = 0; j < k; ++j) {
          int unit = 1;
          for (int t = 0; t < k - 1 - j; ++t) unit *= p;
          int saved = args[s];
          args[s] = r.codec.element[ctx_t[s]][unit];
          int val = a.apply(oi, std::span<const int>(args));
          args[s] = saved;
          r.codec.coords_of(val, std::span<int>(val_c));
          for (int row = 0; row < k; ++row)
            f.mat[s][row * k + j] = mod_norm(val_c[row] - base_c[row], p);
        }
      }
    }
  }
  return r;
}

} // namespace

bool validate_zpk(const finite_algebra& a, const zpk_rep& r, std::string* why) {
  const int n = a.size();
  const int k = r.codec.dim;
  const int classes = r.codec.classes();
  std::vector<int> args, ctx_t, acoords, out(k);
  for (int oi = 0; oi < a.op_count(); ++oi) {
    const auto& op = a.op(oi);
    const int ar = op.arity;
    args.assign(ar, 0);
    ctx_t.assign(ar, 0);
    acoords.assign(static_cast<size_t>(ar) * k, 0);
    size_t total = op.table.size();
    for (size_t idx = 0; idx < total; ++idx) {
      index_tuple(idx, n, std::span<int>(args));
      for (int s = 0; s < ar; ++s) {
        ctx_t[s] = r.codec.quot.to_class[args[s]];
        r.codec.coords_of(args[s], std::span<int>(acoords.data() + static_cast<size_t>(s) * k, k));
      }
      int ctx = ar == 0 ? 0 : tuple_index(std::span<const int>(ctx_t), classes);
      zpk_apply(r, oi, ctx, std::span<const int>(acoords), std::span<int>(out));
      int actual = op.table[idx];
      int pred = r.codec.element_at(r.codec.quot.to_class[actual], std::span<const int>(out));
      if (pred != actual) {
        if (why)
          *why = "op '" + op.name + "' at " + tuple_str(std::span<const int>(args)) +
                 ": rep gives " + std::to_string(pred) + ", table has " +
                 std::to_string(actual);
        return false;
      }
    }
  }
  return true;
}

std::optional<zpk_rep> build_zpk_rep(const finite_algebra& a,
                                     const partition& theta, size_t budget,
                                     std::string* why) {
  auto codec = build_coset_codec(a, theta, budget, why);
  if (!codec) return std::nullopt;
  return zpk_from_codec(a, std::move(*codec), why);
}

std::optional<zpk_rep> zpk_from_codec(const finite_algebra& a,
                                      coset_codec codec, std::string* why) {
  auto r = interpolate_zpk(a, std::move(codec), why);
  if (!r) return std::nullopt;
  if (!validate_zpk(a, *r, why)) return std::nullopt;
  return r;
}

std::optional<mxb_rep> mxb_of_zpk(const finite_algebra& a, const zpk_rep& z,
                                  std::string* why) {
  mxb_rep m;
  m.codec = z.codec;
  m.mat.resize(z.form.size());
  m.distortion.resize(z.form.size());
  for (size_t oi = 0; oi < z.form.size(); ++oi) {
    const auto& forms = z.form[oi];
    m.mat[oi] = forms[0].mat;
    m.distortion[oi].reserve(forms.size());
    for (const auto& f : forms) {
      if (f.mat != m.mat[oi]) {
        if (why)
          *why = "matrices vary with argument classes (op '" +
                 a.op(static_cast<int>(oi)).name + "')";
        return std::nullopt;
      }
      m.distortion[oi].push_back(f.cst);
    }
  }
  return m;
}

std::optional<mxb_rep> build_mxb_rep(const finite_algebra& a,
                                     const partition& theta, size_t budget,
                                     std::string* why) {
  auto z = build_zpk_rep(a, theta, budget, why);
  if (!z) return std::nullopt;
  return mxb_of_zpk(a, *z, why);
}

zpk_rep zpk_of_mxb(const mxb_rep& r) {
  zpk_rep z;
  z.codec = r.codec;
  z.form.resize(r.mat.size());
  for (size_t oi = 0; oi < r.mat.size(); ++oi) {
    z.form[oi].resize(r.distortion[oi].size());
    for (size_t ctx = 0; ctx < r.distortion[oi].size(); ++ctx) {
      z.form[oi][ctx].mat = r.mat[oi];
      z.form[oi][ctx].cst = r.distortion[oi][ctx];
    }
  }
  return z;
}

bool validate_mxb(const finite_algebra& a, const mxb_rep& r, std::string* why) {
  return validate_zpk(a, zpk_of_mxb(r), why);
}

std::optional<module_rep> build_module_rep(const finite_algebra& a,
                                           size_t budget, std::string* why) {
  auto z = build_zpk_rep(a, partition::one(a.size()), budget, why);
  if (!z) return std::nullopt;
  module_rep m;
  m.prime = z->codec.prime;
  m.dim = z->codec.dim;
  m.code = std::move(z->codec.code);
  m.element = std::move(z->codec.element[0]);
  m.mat.resize(z->form.size());
  m.cst.resize(z->form.size());
  for (size_t oi = 0; oi < z->form.size(); ++oi) {
    m.mat[oi] = std::move(z->form[oi][0].mat);
    m.cst[oi] = std::move(z->form[oi][0].cst);
  }
  return m;
}

zpk_rep zpk_of_module(const module_rep& r, const finite_algebra& a) {
  zpk_rep z;
  z.codec.prime = r.prime;
  z.codec.dim = r.dim;
  z.codec.quot = quotient_algebra(a, partition::one(a.size()));
  z.codec.code = r.code;
  z.codec.element = {r.element};
  z.form.resize(r.mat.size());
  for (size_t oi = 0; oi < r.mat.size(); ++oi)
    z.form[oi] = {affine_form{r.mat[oi], r.cst[oi]}};
  return z;
}

bool validate_module(const finite_algebra& a, const module_rep& r,
                     std::string* why) {
  return validate_zpk(a, zpk_of_module(r, a), why);
}

bool validate_lattice(const finite_algebra& a, const lattice_rep& r,
                      std::string* why) {
  const int n = a.size();
  const int k = r.dim;
  const int classes = r.quot.alg.size();
  // (class, code) -> element
  std::unordered_map<long long, int> back;
  for (int e = 0; e < n; ++e)
    back[static_cast<long long>(r.quot.to_class[e]) * (1 << k) + r.code[e]] = e;
  std::vector<int> args, ctx_t, bits, out_bits(k);
  for (int oi = 0; oi < a.op_count(); ++oi) {
    const auto& op = a.op(oi);
    const int ar = op.arity;
    args.assign(ar, 0);
    ctx_t.assign(ar, 0);
    bits.assign(static_cast<size_t>(ar) * k, 0);
    for (size_t idx = 0; idx < op.table.size(); ++idx) {
      index_tuple(idx, n, std::span<int>(args));
      for (int s = 0; s < ar; ++s) {
        ctx_t[s] = r.quot.to_class[args[s]];
        int code = r.code[args[s]];
        for (int j = 0; j < k; ++j)
          bits[static_cast<size_t>(s) * k + j] = (code >> (k - 1 - j)) & 1;
      }
      int ctx = ar == 0 ? 0 : tuple_index(std::span<const int>(ctx_t), classes);
      int out_code = 0;
      for (int j = 0; j < k; ++j) {
        out_bits[j] = r.form[oi][ctx][j].eval(std::span<const int>(bits)) ? 1 : 0;
        out_code = (out_code << 1) | out_bits[j];
      }
      int actual = op.table[idx];
      auto it = back.find(static_cast<long long>(r.quot.to_class[actual]) * (1 << k) + out_code);
      if (it == back.end() || it->second != actual) {
        if (why)
          *why = "op '" + op.name + "' at " + tuple_str(std::span<const int>(args)) +
                 ": monotone reconstruction disagrees with the table";
        return false;
      }
    }
  }
  return true;
}

namespace {

// Attempts the monotone coordinate embedding for one candidate two-element
// image with a fixed orientation.
std::optional<lattice_rep> try_lattice_rep(const finite_algebra& a,
                                           const partition& theta,
                                           const unary_clone& clone, int u0,
                                           int u1, std::string* why) {
  const int n = a.size();
  lattice_rep r;
  r.quot = quotient_algebra(a, theta);
  r.uset = {u0, u1};
  for (size_t i = 0; i < clone.members.size(); ++i) {
    const auto& f = clone.members[i];
    bool in_u = true, constant = true;
    for (int x = 0; x < n; ++x) {
      if (f[x] != u0 && f[x] != u1) in_u = false;
      if (f[x] != f[0]) constant = false;
    }
    if (in_u && !constant &&
        std::find(r.coord_fn.begin(), r.coord_fn.end(), f) == r.coord_fn.end())
      r.coord_fn.push_back(f);
  }
  r.dim = static_cast<int>(r.coord_fn.size());
  if (r.dim == 0 || r.dim > 20) {
    if (why) *why = "unusable coordinate count " + std::to_string(r.dim);
    return std::nullopt;
  }
  const int k = r.dim;
  r.code.assign(n, 0);
  std::unordered_set<long long> seen;
  for (int x = 0; x < n; ++x) {
    int code = 0;
    for (int j = 0; j < k; ++j)
      code = (code << 1) | (r.coord_fn[j][x] == u1 ? 1 : 0);
    r.code[x] = code;
    if (!seen.insert(static_cast<long long>(r.quot.to_class[x]) * (1 << k) + code).second) {
      if (why) *why = "coordinates plus class are not injective";
      return std::nullopt;
    }
  }

  const int classes = r.quot.alg.size();
  r.form.resize(a.op_count());
  std::vector<int> args, ctx_t;
  for (int oi = 0; oi < a.op_count(); ++oi) {
    const auto& op = a.op(oi);
    const int ar = op.arity;
    size_t nctx = pow_checked(classes, ar, 1u << 20);
    if (nctx > (1u << 20)) {
      if (why) *why = "too many argument class tuples";
      return std::nullopt;
    }
    // samples[ctx][j]
    std::vector<std::vector<std::vector<std::pair<std::vector<int>, int>>>> samples(
        nctx, std::vector<std::vector<std::pair<std::vector<int>, int>>>(k));
    args.assign(ar, 0);
    ctx_t.assign(ar, 0);
    for (size_t idx = 0; idx < op.table.size(); ++idx) {
      index_tuple(idx, n, std::span<int>(args));
      std::vector<int> bits(static_cast<size_t>(ar) * k);
      for (int s = 0; s < ar; ++s) {
        ctx_t[s] = r.quot.to_class[args[s]];
        for (int j = 0; j < k; ++j)
          bits[static_cast<size_t>(s) * k + j] = (r.code[args[s]] >> (k - 1 - j)) & 1;
      }
      int ctx = ar == 0 ? 0 : tuple_index(std::span<const int>(ctx_t), classes);
      int out_code = r.code[op.table[idx]];
      for (int j = 0; j < k; ++j)
        samples[ctx][j].emplace_back(bits, (out_code >> (k - 1 - j)) & 1);
    }
    r.form[oi].resize(nctx);
    for (size_t ctx = 0; ctx < nctx; ++ctx) {
      r.form[oi][ctx].resize(k);
      for (int j = 0; j < k; ++j) {
        std::string fwhy;
        auto fit = monotone_fit(ar * k, samples[ctx][j], &fwhy);
        if (!fit) {
          if (why) *why = "op '" + op.name + "' bit " + std::to_string(j) + ": " + fwhy;
          return std::nullopt;
        }
        r.form[oi][ctx][j] = std::move(*fit);
      }
    }
  }
  if (!validate_lattice(a, r, why)) return std::nullopt;
  return r;
}

std::optional<lattice_rep> build_lattice_rep(const finite_algebra& a,
                                             const partition& theta,
                                             size_t budget, std::string* why) {
  unary_clone clone = unary_poly_clone(a, budget, false);
  if (clone.capped) {
    if (why) *why = "unary clone exceeds the budget";
    return std::nullopt;
  }
  // Candidate two-element images: idempotent unary polynomials with a
  // two-point range.
  std::vector<std::pair<int, int>> cands;
  for (const auto& f : clone.members) {
    std::vector<int> img = image_of(f);
    if (img.size() != 2) continue;
    if (f[img[0]] != img[0] || f[img[1]] != img[1]) continue;
    auto uv = std::make_pair(img[0], img[1]);
    if (std::find(cands.begin(), cands.end(), uv) == cands.end())
      cands.push_back(uv);
  }
  if (cands.empty()) {
    if (why) *why = "no idempotent two-element range";
    return std::nullopt;
  }
  std::string first_why;
  for (auto [u, v] : cands)
    for (int flip = 0; flip < 2; ++flip) {
      std::string w;
      auto r = try_lattice_rep(a, theta, clone, flip ? v : u, flip ? u : v, &w);
      if (r) return r;
      if (first_why.empty()) first_why = w;
    }
  if (why) *why = first_why;
  return std::nullopt;
}

} // namespace

decompose_report decompose_over_atom(const finite_algebra& a,
                                     const partition& alpha, size_t budget) {
  if (!is_congruence(a, alpha))
    throw error("decompose_over_atom: not a congruence");
  const int n = a.size();
  bool nontrivial = false;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (!alpha.same(x, y)) continue;
      nontrivial = true;
      if (!(principal_congruence(a, x, y) == alpha))
        throw error("decompose_over_atom: congruence is not an atom");
    }
  if (!nontrivial)
    throw error("decompose_over_atom: trivial congruence has no block structure");

  decompose_report rep;
  std::string zwhy, lwhy;

  if (alpha.block_count() == 1) {
    auto m = build_module_rep(a, budget, &zwhy);
    if (m) {
      rep.ok = true;
      rep.branch = "module";
      rep.zpk_part = zpk_of_module(*m, a);
      rep.module_part = std::move(m);
      rep.notes = "whole algebra affine over Z_" + std::to_string(rep.module_part->prime);
      return rep;
    }
  } else {
    auto z = build_zpk_rep(a, alpha, budget, &zwhy);
    if (z) {
      std::string mwhy;
      auto m = mxb_of_zpk(a, *z, &mwhy);
      rep.ok = true;
      if (m) {
        rep.branch = "mxb";
        rep.mxb_part = std::move(m);
        rep.notes = "context-independent matrices";
      } else {
        rep.branch = "zpk";
        rep.notes = mwhy;
      }
      rep.zpk_part = std::move(z);
      return rep;
    }
  }

  auto l = build_lattice_rep(a, alpha, budget, &lwhy);
  if (l) {
    rep.ok = true;
    rep.branch = "lattice";
    rep.lattice_part = std::move(l);
    rep.notes = "monotone coordinate embedding";
    return rep;
  }

  rep.ok = false;
  rep.notes = "affine branch: " + zwhy + "; lattice branch: " + lwhy;
  return rep;
}

} // namespace finalg
