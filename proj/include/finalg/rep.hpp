#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finalg/boolfn.hpp"
#include "finalg/congruence.hpp"

namespace finalg {

// Structural representations of an algebra over the blocks of a congruence.
// Every build routine ends with an exhaustive check against the operation
// tables; a representation is only handed out when that check passes, so
// downstream compilation may rely on the stated arithmetic without revisiting
// how the coordinates were chosen.

// element <-> (class, coordinate vector) tables for a congruence whose blocks
// all have size prime^dim.  Flat codes use the same leftmost-slowest digit
// convention as operation tables.
struct coset_codec {
  int prime = 0;
  int dim = 0;
  quotient_map quot;                      // class map and representatives
  std::vector<int> code;                  // element -> flat code within its block
  std::vector<std::vector<int>> element;  // [class][flat code] -> element

  int classes() const { return static_cast<int>(element.size()); }
  int block_size() const {
    int s = 1;
    for (int i = 0; i < dim; ++i) s *= prime;
    return s;
  }
  void coords_of(int a, std::span<int> out) const {
    index_tuple(static_cast<size_t>(code[a]), prime, out);
  }
  int element_at(int cls, std::span<const int> coords) const {
    return element[cls][tuple_index(coords, prime)];
  }
};

// One context's affine action on block coordinates: dim x dim matrices over
// Z_prime per argument slot, row-major, plus a constant vector.
struct affine_form {
  std::vector<std::vector<int>> mat;
  std::vector<int> cst;
};

// Every basic op acts affinely on block coordinates once the argument classes
// are fixed.  form[op][ctx] with ctx = tuple_index of the class tuple.
struct zpk_rep {
  coset_codec codec;
  std::vector<std::vector<affine_form>> form;
};

// Specialization with context-independent matrices; only the additive part
// varies with the class tuple.  mat[op][slot]; distortion[op][ctx].
struct mxb_rep {
  coset_codec codec;
  std::vector<std::vector<std::vector<int>>> mat;
  std::vector<std::vector<std::vector<int>>> distortion;
};

// Whole algebra in one block: every basic op is affine over (Z_prime)^dim.
struct module_rep {
  int prime = 0;
  int dim = 0;
  std::vector<int> code;     // element -> flat code
  std::vector<int> element;  // flat code -> element
  std::vector<std::vector<std::vector<int>>> mat;  // [op][slot]
  std::vector<std::vector<int>> cst;               // [op]

  void coords_of(int a, std::span<int> out) const {
    index_tuple(static_cast<size_t>(code[a]), prime, out);
  }
  int element_at(std::span<const int> coords) const {
    return element[tuple_index(coords, prime)];
  }
};

// Blocks embedded into {0,1}^dim through unary polynomial coordinates with a
// two-element image; op actions are monotone in the coordinate bits once the
// argument classes are fixed.  The embedding is injective, not onto, so forms
// are fitted only on realized points.
struct lattice_rep {
  quotient_map quot;
  std::vector<int> uset;                   // the two-element image {low, high}
  std::vector<std::vector<int>> coord_fn;  // dim unary value tables into uset
  std::vector<int> code;                   // element -> packed coordinate bits
  int dim = 0;
  // form[op][ctx][j]: output bit j as a monotone function of the
  // arity*dim concatenated input bits.
  std::vector<std::vector<std::vector<monotone_dnf>>> form;
};

// Evaluates one op through a zpk form: argument coordinates in, output
// coordinates out.  `ctx` indexes the argument class tuple.
void zpk_apply(const zpk_rep& r, int op_idx, int ctx,
               std::span<const int> arg_coords, std::span<int> out);

// A ternary evaluator behaving as x - y + z on pairs x,y inside one block.
// Origin records how it was obtained.
struct difference_fn {
  std::function<int(int, int, int)> eval;
  std::string origin;
};

// Looks for a difference evaluator valid on all blocks of theta: first from a
// basic op that turns the whole universe into a group, then by a bounded
// polynomial search against the block constraints (grown counterexample by
// counterexample).  Absence and budget exhaustion both return nullopt.
std::optional<difference_fn> find_block_difference(const finite_algebra& a,
                                                   const partition& theta,
                                                   size_t budget = default_closure_cap,
                                                   std::string* why = nullptr);

// Builders.  On failure return nullopt and describe the obstacle in `why`.
// build_coset_codec aligns all blocks through the difference evaluator when it
// can (transfer maps d(., z_c, z_0)), falling back to independent per-block
// bases otherwise; matrix constancy across contexts is only meaningful under
// the aligned construction.
std::optional<coset_codec> build_coset_codec(const finite_algebra& a,
                                             const partition& theta,
                                             size_t budget = default_closure_cap,
                                             std::string* why = nullptr);
std::optional<zpk_rep> build_zpk_rep(const finite_algebra& a,
                                     const partition& theta,
                                     size_t budget = default_closure_cap,
                                     std::string* why = nullptr);
// Reads the affine forms off a caller-supplied codec (probing block zeros and
// unit coordinates) and validates them.  For algebras whose codec is known
// structurally even though no difference polynomial exists.
std::optional<zpk_rep> zpk_from_codec(const finite_algebra& a,
                                      coset_codec codec,
                                      std::string* why = nullptr);
std::optional<mxb_rep> build_mxb_rep(const finite_algebra& a,
                                     const partition& theta,
                                     size_t budget = default_closure_cap,
                                     std::string* why = nullptr);
std::optional<module_rep> build_module_rep(const finite_algebra& a,
                                           size_t budget = default_closure_cap,
                                           std::string* why = nullptr);

// Exhaustive checks of a representation against the operation tables.
bool validate_zpk(const finite_algebra& a, const zpk_rep& r,
                  std::string* why = nullptr);
bool validate_mxb(const finite_algebra& a, const mxb_rep& r,
                  std::string* why = nullptr);
bool validate_module(const finite_algebra& a, const module_rep& r,
                     std::string* why = nullptr);
bool validate_lattice(const finite_algebra& a, const lattice_rep& r,
                      std::string* why = nullptr);

// Conversions.  mxb_of_zpk succeeds only when every op's matrices agree
// across argument class tuples.
zpk_rep zpk_of_mxb(const mxb_rep& r);
zpk_rep zpk_of_module(const module_rep& r, const finite_algebra& a);
std::optional<mxb_rep> mxb_of_zpk(const finite_algebra& a, const zpk_rep& z,
                                  std::string* why = nullptr);

// Decomposition over an atom congruence.  Tries, in order: whole-algebra
// module form (only when alpha is the top congruence of a simple algebra),
// affine block form (zpk, with the aligned-matrix specialization reported when
// it holds), and the monotone lattice form.  The first branch whose exhaustive
// reconstruction check passes is returned; when none validates the report
// carries every branch's failure reason and `ok` is false.
struct decompose_report {
  bool ok = false;
  std::string branch;  // "module", "zpk", "mxb", "lattice"
  std::optional<module_rep> module_part;
  std::optional<zpk_rep> zpk_part;
  std::optional<mxb_rep> mxb_part;
  std::optional<lattice_rep> lattice_part;
  std::string notes;
};

// Throws finalg::error when alpha is not a congruence or not an atom
// (every nontrivial pair inside a block must generate alpha itself; the top
// congruence of a simple algebra passes this test and is allowed).
decompose_report decompose_over_atom(const finite_algebra& a,
                                     const partition& alpha,
                                     size_t budget = default_closure_cap);

} // namespace finalg
