#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finalg/rep.hpp"
#include "finalg/witness.hpp"

namespace finalg {

// One stage of a step-by-step compilation chain: the algebra at this stage,
// the congruence being compiled away, its validated block representation, and
// the quotient that becomes the next stage.
struct chain_step {
  finite_algebra stage;
  partition atom{std::vector<int>{}};
  std::optional<zpk_rep> zpk;
  std::optional<mxb_rep> mxb;  // filled when matrices are context-independent
  quotient_map next;
};

// A generated algebra together with whatever canonical structure its family
// defines: an affine module form, a compilation chain ending in a simple
// quotient, polynomial witness kits, a monotonicity order, or a
// solvable/monotone split congruence.
struct fixture_bundle {
  std::string id;
  finite_algebra alg;
  std::optional<module_rep> module;
  std::vector<chain_step> chain;
  std::optional<module_rep> top_module;  // affine form of the last quotient
  std::optional<witness_kit> kit;
  std::optional<total_order_witness> order;
  std::optional<partition> beta;  // mixed(p): below solvable, above ordered
  std::optional<total_order_witness> beta_order;  // order on alg/beta
};

// Generates a fixture by id.  Families:
//   boolean2                 two-element Boolean algebra with constants
//   ex-lattice               two-element lattice
//   chain(k)                 k-element chain with min and max
//   affine(p)                Z_p with the ternary x-y+z
//   nudet-exact(p)           (Z_p)^2 with +, coordinate projections, the
//                            swap-to-first u and the quasiproduct v
//   example-nilpo(m,h)       (Z_m)^h with +, coordinate projections e_i and
//                            shifted indicators chi_i_S
//   solv-construc(p1,..,ph)  product of (Z_pi)^2 blocks with per-block
//                            +, projections, u, v and cross-block indicators
//   ex-type5-A1..A4          three-element absorbing-bottom algebras
//   mixed(p)                 Z_p x {0,1}: componentwise + with lattice ops
//   hardmix(p)               {0,1} x Z_p: lattice ops summing the Z_p part,
//                            with a flattening projection and a zero test
// Throws finalg::error for unknown ids or invalid parameters.
fixture_bundle fixture(const std::string& id);

std::vector<std::string> fixture_families();

} // namespace finalg
