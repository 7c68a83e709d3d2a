#pragma once

// Congruences as compatible partitions, the congruence lattice, and the
// term-condition commutator machinery built on it.

#include "finalg/algebra.hpp"
#include "finalg/search.hpp"

#include <optional>
#include <vector>

namespace finalg {

// Partition of {0,...,n-1} in normalized form: block ids are assigned in order
// of first occurrence, so equal partitions have equal vectors.
struct partition {
  std::vector<int> block;

  partition() = default;
  explicit partition(std::vector<int> b) : block(std::move(b)) { normalize(); }

  int n() const { return static_cast<int>(block.size()); }
  int block_count() const;
  bool same(int a, int b) const { return block[a] == block[b]; }
  void normalize();

  static partition zero(int n); // all singletons
  static partition one(int n);  // single block

  bool operator==(const partition& o) const { return block == o.block; }
};

// Refinement order: p <= q iff every p-block lies inside a q-block.
bool leq(const partition& p, const partition& q);
partition join(const partition& p, const partition& q);
partition meet(const partition& p, const partition& q);

// Members of each block, blocks in id order, elements ascending.
std::vector<std::vector<int>> blocks_of(const partition& p);

// --- compatibility and generation ---------------------------------------------

// A translation is a unary polynomial with exactly one basic operation: one
// argument slot open, the rest frozen to constants. Precomputed as a strided
// view into the operation table.
struct translation {
  const std::vector<int>* table;
  size_t base;
  size_t stride;
  int operator()(int x) const { return (*table)[base + stride * static_cast<size_t>(x)]; }
};

std::vector<translation> all_translations(const finite_algebra& alg);

// The same translations materialized as value tables, duplicates removed.
// Principal-congruence generation runs over these.
std::vector<unary_fn> distinct_translation_tables(const finite_algebra& alg);

bool is_congruence(const finite_algebra& alg, const partition& p);

// Least congruence containing (a,b).
partition principal_congruence(const finite_algebra& alg, int a, int b);

// Least congruence containing all listed pairs.
partition generated_congruence(const finite_algebra& alg,
                               const std::vector<std::pair<int, int>>& pairs);

// --- the lattice ----------------------------------------------------------------

inline constexpr size_t default_lattice_cap = 100'000;

struct congruence_lattice {
  std::vector<partition> members; // members[0] = 0_A, members.back() = 1_A
  std::vector<std::vector<char>> below; // below[i][j] <=> members[i] <= members[j]
  std::vector<std::pair<int, int>> covers; // (i,j) with members[i] -< members[j]

  int zero() const { return 0; }
  int one() const { return static_cast<int>(members.size()) - 1; }
  int index_of(const partition& p) const;
  std::vector<int> lower_covers(int i) const;
  std::vector<int> upper_covers(int i) const;
  // Atoms: upper covers of 0_A.
  std::vector<int> atoms() const { return upper_covers(zero()); }
  int join_index(int i, int j) const;
  int meet_index(int i, int j) const;
};

// All congruences: join closure of the distinct principal congruences. Throws
// when more than `cap` congruences appear.
congruence_lattice compute_congruence_lattice(const finite_algebra& alg,
                                              size_t cap = default_lattice_cap);

// Indices of join-irreducible members (exactly one lower cover).
std::vector<int> join_irreducibles(const congruence_lattice& lat);

// Maximal chain 0 = c_0 -< c_1 -< ... -< c_h = 1, deterministic choice.
std::vector<int> tight_chain(const congruence_lattice& lat);

// --- quotients ------------------------------------------------------------------

struct quotient_map {
  finite_algebra alg;            // the quotient algebra
  std::vector<int> to_class;     // element -> class id
  std::vector<int> representative; // class id -> least element
};

quotient_map quotient_algebra(const finite_algebra& alg, const partition& theta,
                              const std::string& name = "");

// Push a congruence of A containing theta down to A/theta.
partition push_congruence(const quotient_map& q, const partition& above);

// --- commutator and series ------------------------------------------------------

// Term-condition commutator [alpha,beta]: least congruence delta such that in the
// generated set of 2x2 value matrices (alpha-pairs down columns, beta-pairs along
// rows) top-row delta-equality forces bottom-row delta-equality. Computed by
// closing the matrix set in A^4 and iterating the induced implications.
partition commutator(const finite_algebra& alg, const partition& alpha,
                     const partition& beta, size_t cap = default_closure_cap);

bool is_solvable(const finite_algebra& alg, size_t cap = default_closure_cap);
bool is_nilpotent(const finite_algebra& alg, size_t cap = default_closure_cap);

} // namespace finalg
