#pragma once

#include <optional>
#include <set>

#include "finalg/congruence.hpp"
#include "finalg/search.hpp"
#include "finalg/witness.hpp"

namespace finalg {

// Local analysis around a congruence cover alpha < beta: minimal images of the
// unary polynomial clone, the induced two-element order, and a budgeted local
// type label per cover.  Everything here certifies its answers: definite labels
// come with verified value tables, and budget exhaustion is reported rather
// than guessed around.

struct minimal_set {
  partition alpha{std::vector<int>{}};
  partition beta{std::vector<int>{}};
  std::vector<int> members;               // U, sorted
  unary_fn idempotent;                    // e_U with e_U(e_U(x)) = e_U(x), image U
  std::vector<std::vector<int>> traces;   // U cut to a beta block, spanning >= 2 alpha classes
  std::vector<int> tail;                  // members of U in no trace
};

// All inclusion-minimal images of unary polynomials that keep some beta pair
// outside alpha.  Throws when the unary clone exceeds the budget; a silent
// partial scan could miss a smaller image and report a wrong minimal set.
std::vector<minimal_set> minimal_sets(const finite_algebra& alg,
                                      const partition& alpha,
                                      const partition& beta,
                                      size_t budget = default_closure_cap);

struct u_order {
  minimal_set ms;
  int zero_u = 0, one_u = 0;
  std::vector<unary_fn> maps;             // every clone member with image exactly U
  std::vector<std::vector<char>> rel;     // rel[a][b]: a,b beta-related and no map reverses them
};

// The relation {(a,b) in beta : e(a) <= e(b) for every clone member e with
// image U}, with U read as zero_u < one_u.  |U| must be 2.
u_order leq_u(const finite_algebra& alg, const minimal_set& ms, int zero_u, int one_u,
              size_t budget = default_closure_cap);
u_order leq_u(const finite_algebra& alg, const minimal_set& ms,
              size_t budget = default_closure_cap);

struct order_report {
  bool preorder_ok = true;
  bool antisym_ok = true;   // modulo alpha, within beta blocks
  bool preserved_ok = true; // by every basic operation, on all related tuples
  std::string detail;       // first counterexample, empty when all pass
  bool ok() const { return preorder_ok && antisym_ok && preserved_ok; }
};

// Exhaustive check of the three order properties; counterexamples are reported,
// never silently dropped.  Throws if the preservation search space is absurd.
order_report check_order_lemma(const finite_algebra& alg, const u_order& uo);

struct incomparable_pair {
  int a = 0, b = 0;   // beta-related, incomparable under the order
  int i = 0, j = 0;   // map indices: maps[i](a) < maps[i](b) and maps[j](a) > maps[j](b)
};
std::optional<incomparable_pair> find_incomparable_pair(const u_order& uo);

struct prime_quotient {
  partition alpha{std::vector<int>{}};
  partition beta{std::vector<int>{}};
  int type = 0;            // 1..5; 0 = unclassified
  int characteristic = 0;  // type 2 only
  std::string evidence;    // what decided the label, or why there is none
};

// Local type of the cover alpha < beta.  First tries to certify affine block
// behavior through a validated block representation of beta/alpha (type 2);
// otherwise picks a sink pair of the translation digraph on beta-minus-alpha
// pairs and probes it for induced meet/join/negation/difference patterns with
// budgeted searches.  A definite label always has a verified witness behind it.
prime_quotient classify_type(const finite_algebra& alg, const partition& alpha,
                             const partition& beta,
                             size_t budget = default_closure_cap);

struct typeset_result {
  std::set<int> types;
  bool complete = true;                  // false when any cover stayed unclassified
  std::vector<prime_quotient> quotients; // one per cover pair of the lattice
};
typeset_result typeset(const finite_algebra& alg, size_t budget = default_closure_cap);

// Searches the n! element orders (n <= 8 enforced) for one every basic op is
// monotone under; the threshold coordinates then embed the order into bits.
std::optional<total_order_witness> totally_ordered_check(const finite_algebra& alg);

} // namespace finalg
