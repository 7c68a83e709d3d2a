#include "finalg/algebra.hpp"

#include <algorithm>
#include <set>

namespace finalg {

finite_algebra::finite_algebra(std::string name, int size,
                               std::vector<operation> ops)
    : name_(std::move(name)), size_(size), ops_(std::move(ops)) {
  validate();
}

int finite_algebra::op_index(const std::string& name) const {
  for (size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return static_cast<int>(i);
  return -1;
}

int finite_algebra::apply(int op_idx, std::span<const int> args) const {
  const operation& f = ops_.at(op_idx);
  if (static_cast<int>(args.size()) != f.arity)
    throw error("apply: operation '" + f.name + "' expects " +
                std::to_string(f.arity) + " arguments, got " +
                std::to_string(args.size()));
  int idx = 0;
  for (int a : args) {
    if (a < 0 || a >= size_) throw error("apply: argument out of range");
    idx = idx * size_ + a;
  }
  return f.table[idx];
}

int finite_algebra::max_arity() const {
  int m = 0;
  for (const auto& f : ops_) m = std::max(m, f.arity);
  return m;
}

void finite_algebra::validate() const {
  if (size_ <= 0) throw error("algebra '" + name_ + "': size must be positive");
  std::set<std::string> seen;
  for (const auto& f : ops_) {
    if (f.name.empty()) throw error("algebra '" + name_ + "': unnamed operation");
    if (!seen.insert(f.name).second)
      throw error("algebra '" + name_ + "': duplicate operation name '" + f.name + "'");
    if (f.arity < 0)
      throw error("operation '" + f.name + "': negative arity");
    size_t expect = 1;
    for (int i = 0; i < f.arity; ++i) {
      expect *= static_cast<size_t>(size_);
      if (expect > (size_t(1) << 40))
        throw error("operation '" + f.name + "': table too large");
    }
    if (f.table.size() != expect)
      throw error("operation '" + f.name + "': table length " +
                  std::to_string(f.table.size()) + ", expected " +
                  std::to_string(expect));
    for (int v : f.table)
      if (v < 0 || v >= size_)
        throw error("operation '" + f.name + "': table value out of range");
  }
}

unary_fn identity_fn(int n) {
  unary_fn f(n);
  for (int i = 0; i < n; ++i) f[i] = i;
  return f;
}

unary_fn constant_fn(int n, int value) { return unary_fn(n, value); }

unary_fn compose(const unary_fn& g, const unary_fn& f) {
  unary_fn h(f.size());
  for (size_t i = 0; i < f.size(); ++i) h[i] = g[f[i]];
  return h;
}

std::vector<int> image_of(const unary_fn& f) {
  std::set<int> s(f.begin(), f.end());
  return {s.begin(), s.end()};
}

finite_algebra product_algebra(const finite_algebra& a, const finite_algebra& b,
                               const std::string& name) {
  if (a.op_count() != b.op_count())
    throw error("product_algebra: operation counts differ");
  int na = a.size(), nb = b.size(), n = na * nb;
  std::vector<operation> ops;
  for (int oi = 0; oi < a.op_count(); ++oi) {
    const operation& fa = a.op(oi);
    const operation& fb = b.op(oi);
    if (fa.name != fb.name || fa.arity != fb.arity)
      throw error("product_algebra: signature mismatch at '" + fa.name + "'");
    int r = fa.arity;
    size_t rows = 1;
    for (int i = 0; i < r; ++i) rows *= static_cast<size_t>(n);
    operation f{fa.name, r, std::vector<int>(rows)};
    std::vector<int> args(r), aa(r), ba(r);
    for (size_t idx = 0; idx < rows; ++idx) {
      size_t t = idx;
      for (int i = r - 1; i >= 0; --i) { args[i] = static_cast<int>(t % n); t /= n; }
      for (int i = 0; i < r; ++i) { aa[i] = args[i] / nb; ba[i] = args[i] % nb; }
      int va = r ? fa.table[tuple_index(aa, na)] : fa.table[0];
      int vb = r ? fb.table[tuple_index(ba, nb)] : fb.table[0];
      f.table[idx] = va * nb + vb;
    }
    ops.push_back(std::move(f));
  }
  std::string pname = name.empty() ? a.name() + "x" + b.name() : name;
  return finite_algebra(pname, n, std::move(ops));
}

std::vector<int> subalgebra_generate(const finite_algebra& alg,
                                     std::span<const int> gens) {
  int n = alg.size();
  std::vector<char> in(n, 0);
  std::vector<int> members;
  auto add = [&](int x) {
    if (!in[x]) { in[x] = 1; members.push_back(x); }
  };
  for (int g : gens) {
    if (g < 0 || g >= n) throw error("subalgebra_generate: generator out of range");
    add(g);
  }
  // Nullary ops contribute their constants.
  for (int oi = 0; oi < alg.op_count(); ++oi)
    if (alg.op(oi).arity == 0) add(alg.op(oi).table[0]);
  size_t next = 0;
  // Worklist closure: combine each newly added element with everything present.
  while (next < members.size()) {
    size_t hi = members.size();
    for (int oi = 0; oi < alg.op_count(); ++oi) {
      const operation& f = alg.op(oi);
      int r = f.arity;
      if (r == 0) continue;
      // Enumerate argument tuples over current members with at least one index >= next.
      std::vector<size_t> pos(r, 0);
      while (true) {
        bool fresh = false;
        for (int i = 0; i < r; ++i)
          if (pos[i] >= next) { fresh = true; break; }
        if (fresh) {
          int idx = 0;
          for (int i = 0; i < r; ++i) idx = idx * n + members[pos[i]];
          add(f.table[idx]);
        }
        int i = r - 1;
        while (i >= 0 && ++pos[i] == hi) pos[i--] = 0;
        if (i < 0) break;
      }
    }
    next = hi;
  }
  std::sort(members.begin(), members.end());
  return members;
}

int essential_arity(const finite_algebra& alg, int op_idx) {
  const operation& f = alg.op(op_idx);
  int n = alg.size(), r = f.arity;
  int essential = 0;
  size_t rows = f.table.size();
  for (int i = 0; i < r; ++i) {
    // Stride of position i in the row-major table.
    size_t stride = 1;
    for (int j = i + 1; j < r; ++j) stride *= static_cast<size_t>(n);
    bool depends = false;
    for (size_t idx = 0; idx < rows && !depends; ++idx) {
      int digit = static_cast<int>(idx / stride) % n;
      if (digit + 1 < n && f.table[idx] != f.table[idx + stride]) depends = true;
    }
    if (depends) ++essential;
  }
  return essential;
}

std::vector<int> index_tuple(int idx, int n, int k) {
  std::vector<int> t(k);
  for (int i = k - 1; i >= 0; --i) { t[i] = idx % n; idx /= n; }
  return t;
}

} // namespace finalg
