#pragma once

// Generated-subuniverse closures with provenance, and the polynomial searches
// built on them.
//
// The one engine behind several ops: elements of A^w are closed under the basic
// operations applied coordinatewise, starting from designated "variable" tuples
// plus all diagonal constant tuples. Every element then encodes the value row of
// some polynomial at w fixed argument points, and its generation history decodes
// to an explicit term witness:
//   - w = n, seed = identity row            -> the unary polynomial clone
//   - w = n^k, seeds = the k projections    -> all k-ary polynomials (table search)
//   - w = #points, seeds = point columns    -> polynomials constrained at points
//
// Elements are deduplicated by their value row, so each row keeps exactly one
// witness: two polynomials agreeing on all w points are indistinguishable here.
// Callers that need a witness with properties beyond the point values must make
// the point set rich enough to separate the candidates; a verify callback can
// reject wrong witnesses but cannot surface a second term with the same row.

#include "finalg/algebra.hpp"
#include "finalg/term.hpp"

#include <functional>
#include <optional>
#include <unordered_map>

namespace finalg {

inline constexpr size_t default_closure_cap = 1'000'000;

enum class search_status { found, absent, capped };

class tuple_closure {
public:
  // width = tuple length; constants seeds the full diagonal.
  tuple_closure(const finite_algebra& alg, int width, bool constants = true);

  // Seed a generator tuple read as variable `var_index` in witnesses.
  int seed_var(std::span<const int> tup, int var_index);

  // Close under all basic ops. If `target` is given, stops as soon as a matching
  // element is added (seeds are tested too) and returns its id; otherwise runs to
  // completion or cap. Returns -1 if no target hit. Can be called again after
  // enlarging via seed_var or to resume past a previous match.
  int run(const std::function<bool(std::span<const int>)>& target = nullptr,
          size_t cap = default_closure_cap);

  // Resume the closure, skipping matches with id <= after. Used to stream
  // successive candidates when the first verified witness is wanted.
  int resume(int after,
             const std::function<bool(std::span<const int>)>& target,
             size_t cap = default_closure_cap);

  bool capped() const { return capped_; }
  bool complete() const { return complete_; }
  int size() const { return static_cast<int>(prov_.size()); }

  std::span<const int> tuple_of(int id) const {
    return {data_.data() + static_cast<size_t>(id) * width_, static_cast<size_t>(width_)};
  }
  int find(std::span<const int> tup) const;
  term_ptr witness(int id) const;

private:
  struct provenance {
    int op; // >=0 op index, -1 variable, -2 constant
    int index; // var index or constant value
    std::vector<int> args;
  };

  int add(std::span<const int> tup, provenance p);
  uint64_t hash_tuple(std::span<const int> tup) const;

  const finite_algebra& alg_;
  int width_;
  std::vector<int> data_;
  std::vector<provenance> prov_;
  std::unordered_map<uint64_t, std::vector<int>> index_;
  size_t done_ = 0; // elements already expanded against
  bool capped_ = false;
  bool complete_ = false;
};

// --- unary polynomial clone -------------------------------------------------

struct unary_clone {
  std::vector<unary_fn> members; // value tables, deterministic order
  bool capped = false;
  // Witness term (one variable) for members[i].
  std::vector<term_ptr> witnesses;

  int find(const unary_fn& f) const;
};

// Least set containing the identity and all constants, closed under
// x -> f(g1(x),...,gr(x)) for basic f. Throws finalg::error when the cap is hit
// and `throw_on_cap` is set; otherwise marks `capped`.
unary_clone unary_poly_clone(const finite_algebra& alg,
                             size_t cap = default_closure_cap,
                             bool throw_on_cap = true);

// --- bounded polynomial search ----------------------------------------------

struct search_result {
  search_status status = search_status::absent;
  std::optional<term_witness> witness;
};

// Search for a k-ary polynomial with exactly this value table (row-major, length
// n^k). Enumerates by generation level; deterministic first witness.
search_result bounded_term_search(const finite_algebra& alg, int arity,
                                  const std::vector<int>& target_table,
                                  size_t budget = default_closure_cap);

// Constrained variant: `points` lists argument tuples (each of length `arity`);
// accept any polynomial whose value row at those points satisfies `accept`.
// `verify` (optional) re-checks a decoded witness globally; rejected witnesses
// are skipped and the search continues.
search_result bounded_term_search_at_points(
    const finite_algebra& alg, int arity,
    const std::vector<std::vector<int>>& points,
    const std::function<bool(std::span<const int>)>& accept,
    size_t budget = default_closure_cap,
    const std::function<bool(const term_witness&)>& verify = nullptr);

} // namespace finalg
