#pragma once

// Term trees over a finite algebra: variables, constants, and operation
// applications. Used as verifiable witnesses for searched polynomials.

#include "finalg/algebra.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace finalg {

struct term;
using term_ptr = std::shared_ptr<const term>;

struct term {
  enum kind_t { variable, constant, apply } kind;
  int index = 0; // variable slot, constant value, or op index
  std::vector<term_ptr> children;

  static term_ptr var(int i);
  static term_ptr val(int c);
  static term_ptr app(int op_idx, std::vector<term_ptr> ch);
};

int eval_term(const finite_algebra& alg, const term& t, std::span<const int> args);
int term_size(const term& t); // number of nodes
std::string term_to_string(const finite_algebra& alg, const term& t);

// A polynomial witness: a term together with the arity it is read at.
struct term_witness {
  term_ptr t;
  int arity = 0;

  int operator()(const finite_algebra& alg, std::span<const int> args) const {
    return eval_term(alg, *t, args);
  }
  int operator()(const finite_algebra& alg, std::initializer_list<int> args) const {
    return eval_term(alg, *t, std::span<const int>(args.begin(), args.size()));
  }
  // Full value table, row-major over arity-many arguments.
  std::vector<int> table(const finite_algebra& alg) const;
};

} // namespace finalg
