#pragma once

// Finite algebras: a universe {0,...,n-1} together with finitely many named
// operations given by flat tables. Everything downstream (congruences, local
// structure, programs, compilers) works against this representation.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace finalg {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat operation table. Row-major: the leftmost argument varies slowest, so for
// arity r over size n the tuple (a1,...,ar) lives at index ((a1*n+a2)*n+...)*n+ar.
struct operation {
  std::string name;
  int arity = 0;
  std::vector<int> table;
};

class finite_algebra {
public:
  finite_algebra() = default;
  finite_algebra(std::string name, int size, std::vector<operation> ops);

  const std::string& name() const { return name_; }
  int size() const { return size_; }
  int op_count() const { return static_cast<int>(ops_.size()); }
  const operation& op(int i) const { return ops_.at(i); }
  const std::vector<operation>& ops() const { return ops_; }

  // -1 when absent.
  int op_index(const std::string& name) const;

  int apply(int op_idx, std::span<const int> args) const;
  int apply(int op_idx, std::initializer_list<int> args) const {
    return apply(op_idx, std::span<const int>(args.begin(), args.size()));
  }

  int max_arity() const;

  // Structural validation: arities nonnegative, table lengths exactly n^arity,
  // all entries in range, names nonempty and unique. Throws finalg::error.
  void validate() const;

private:
  std::string name_;
  int size_ = 0;
  std::vector<operation> ops_;
};

using algebra_ptr = std::shared_ptr<const finite_algebra>;

// A unary function on the universe, as a value table of length n.
using unary_fn = std::vector<int>;

unary_fn identity_fn(int n);
unary_fn constant_fn(int n, int value);
// g after f: x -> g(f(x)).
unary_fn compose(const unary_fn& g, const unary_fn& f);
std::vector<int> image_of(const unary_fn& f);

// Direct product with componentwise operations; both factors must list the same
// operation names with matching arities. Element (a,b) encodes as a*|B|+b.
finite_algebra product_algebra(const finite_algebra& a, const finite_algebra& b,
                               const std::string& name = "");

// Subuniverse generated by `gens` (closure under all basic ops), sorted.
std::vector<int> subalgebra_generate(const finite_algebra& alg,
                                     std::span<const int> gens);

// Number of argument positions the operation genuinely depends on.
int essential_arity(const finite_algebra& alg, int op_idx);

// Row-major tuple <-> index helpers for k coordinates over base n.
inline int tuple_index(std::span<const int> t, int n) {
  int idx = 0;
  for (int v : t) idx = idx * n + v;
  return idx;
}
std::vector<int> index_tuple(int idx, int n, int k);

inline void index_tuple(size_t idx, int n, std::span<int> out) {
  for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
    out[i] = static_cast<int>(idx % static_cast<size_t>(n));
    idx /= static_cast<size_t>(n);
  }
}

} // namespace finalg
