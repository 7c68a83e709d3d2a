#include "finalg/term.hpp"

namespace finalg {

term_ptr term::var(int i) {
  auto t = std::make_shared<term>();
  t->kind = variable;
  t->index = i;
  return t;
}

term_ptr term::val(int c) {
  auto t = std::make_shared<term>();
  t->kind = constant;
  t->index = c;
  return t;
}

term_ptr term::app(int op_idx, std::vector<term_ptr> ch) {
  auto t = std::make_shared<term>();
  t->kind = apply;
  t->index = op_idx;
  t->children = std::move(ch);
  return t;
}

int eval_term(const finite_algebra& alg, const term& t, std::span<const int> args) {
  switch (t.kind) {
    case term::variable:
      if (t.index < 0 || t.index >= static_cast<int>(args.size()))
        throw error("eval_term: variable index out of range");
      return args[t.index];
    case term::constant:
      return t.index;
    case term::apply: {
      std::vector<int> vals(t.children.size());
      for (size_t i = 0; i < t.children.size(); ++i)
        vals[i] = eval_term(alg, *t.children[i], args);
      return alg.apply(t.index, vals);
    }
  }
  throw error("eval_term: corrupt node");
}

int term_size(const term& t) {
  int s = 1;
  for (const auto& c : t.children) s += term_size(*c);
  return s;
}

std::string term_to_string(const finite_algebra& alg, const term& t) {
  switch (t.kind) {
    case term::variable: return "x" + std::to_string(t.index + 1);
    case term::constant: return std::to_string(t.index);
    case term::apply: {
      std::string s = alg.op(t.index).name + "(";
      for (size_t i = 0; i < t.children.size(); ++i) {
        if (i) s += ",";
        s += term_to_string(alg, *t.children[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

std::vector<int> term_witness::table(const finite_algebra& alg) const {
  int n = alg.size();
  size_t rows = 1;
  for (int i = 0; i < arity; ++i) rows *= static_cast<size_t>(n);
  std::vector<int> out(rows);
  std::vector<int> args(arity);
  for (size_t idx = 0; idx < rows; ++idx) {
    size_t v = idx;
    for (int i = arity - 1; i >= 0; --i) { args[i] = static_cast<int>(v % n); v /= n; }
    out[idx] = eval_term(alg, *t, args);
  }
  return out;
}

} // namespace finalg
