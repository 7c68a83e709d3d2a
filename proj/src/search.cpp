#include "finalg/search.hpp"

#include <algorithm>
#include <cstring>

namespace finalg {

tuple_closure::tuple_closure(const finite_algebra& alg, int width, bool constants)
    : alg_(alg), width_(width) {
  if (width <= 0) throw error("tuple_closure: width must be positive");
  if (constants) {
    std::vector<int> diag(width_);
    for (int c = 0; c < alg_.size(); ++c) {
      std::fill(diag.begin(), diag.end(), c);
      add(diag, provenance{-2, c, {}});
    }
  }
  // Nullary ops are constants too; already covered by the diagonal when present,
  // but seed them explicitly so closures without constants stay correct.
  for (int oi = 0; oi < alg_.op_count(); ++oi)
    if (alg_.op(oi).arity == 0) {
      std::vector<int> diag(width_, alg_.op(oi).table[0]);
      add(diag, provenance{-2, alg_.op(oi).table[0], {}});
    }
}

uint64_t tuple_closure::hash_tuple(std::span<const int> tup) const {
  uint64_t h = 1469598103934665603ull;
  for (int v : tup) {
    h ^= static_cast<uint64_t>(static_cast<uint32_t>(v));
    h *= 1099511628211ull;
  }
  return h;
}

int tuple_closure::find(std::span<const int> tup) const {
  auto it = index_.find(hash_tuple(tup));
  if (it == index_.end()) return -1;
  for (int id : it->second) {
    auto have = tuple_of(id);
    if (std::equal(have.begin(), have.end(), tup.begin())) return id;
  }
  return -1;
}

int tuple_closure::add(std::span<const int> tup, provenance p) {
  int existed = find(tup);
  if (existed >= 0) return -existed - 1; // negative encodes "already there"
  int id = static_cast<int>(prov_.size());
  data_.insert(data_.end(), tup.begin(), tup.end());
  index_[hash_tuple(tup)].push_back(id);
  prov_.push_back(std::move(p));
  return id;
}

int tuple_closure::seed_var(std::span<const int> tup, int var_index) {
  if (static_cast<int>(tup.size()) != width_)
    throw error("tuple_closure: seed width mismatch");
  complete_ = false;
  int id = add(tup, provenance{-1, var_index, {}});
  return id >= 0 ? id : -id - 1;
}

int tuple_closure::run(const std::function<bool(std::span<const int>)>& target,
                       size_t cap) {
  return resume(-1, target, cap);
}

int tuple_closure::resume(int after,
                          const std::function<bool(std::span<const int>)>& target,
                          size_t cap) {
  // Check elements already present (seeds, or survivors from a previous run).
  if (target)
    for (int id = after + 1; id < size(); ++id)
      if (target(tuple_of(id))) return id;
  if (complete_) return -1;

  std::vector<int> out(width_);
  std::vector<size_t> pos;
  while (done_ < prov_.size()) {
    size_t hi = prov_.size();
    for (int oi = 0; oi < alg_.op_count(); ++oi) {
      const operation& f = alg_.op(oi);
      int r = f.arity;
      if (r == 0) continue;
      int n = alg_.size();
      pos.assign(r, 0);
      while (true) {
        bool fresh = false;
        for (int i = 0; i < r; ++i)
          if (pos[i] >= done_) { fresh = true; break; }
        if (fresh) {
          for (int j = 0; j < width_; ++j) {
            int idx = 0;
            for (int i = 0; i < r; ++i)
              idx = idx * n + data_[pos[i] * width_ + j];
            out[j] = f.table[idx];
          }
          std::vector<int> args(pos.begin(), pos.end());
          int id = add(out, provenance{oi, 0, std::move(args)});
          if (id >= 0) {
            if (prov_.size() > cap) { capped_ = true; return -1; }
            if (target && target(tuple_of(id))) return id;
          }
        }
        int i = r - 1;
        while (i >= 0 && ++pos[i] == hi) pos[i--] = 0;
        if (i < 0) break;
      }
    }
    done_ = hi;
  }
  complete_ = true;
  return -1;
}

term_ptr tuple_closure::witness(int id) const {
  const provenance& p = prov_.at(id);
  switch (p.op) {
    case -1: return term::var(p.index);
    case -2: return term::val(p.index);
    default: {
      std::vector<term_ptr> ch;
      ch.reserve(p.args.size());
      for (int a : p.args) ch.push_back(witness(a));
      return term::app(p.op, std::move(ch));
    }
  }
}

// --- unary clone --------------------------------------------------------------

int unary_clone::find(const unary_fn& f) const {
  for (size_t i = 0; i < members.size(); ++i)
    if (members[i] == f) return static_cast<int>(i);
  return -1;
}

unary_clone unary_poly_clone(const finite_algebra& alg, size_t cap,
                             bool throw_on_cap) {
  int n = alg.size();
  tuple_closure cl(alg, n);
  unary_fn id = identity_fn(n);
  cl.seed_var(id, 0);
  cl.run(nullptr, cap);
  if (cl.capped()) {
    if (throw_on_cap)
      throw error("unary_poly_clone: cap of " + std::to_string(cap) +
                  " members exceeded on '" + alg.name() + "'");
  }
  unary_clone out;
  out.capped = cl.capped();
  out.members.reserve(cl.size());
  for (int i = 0; i < cl.size(); ++i) {
    auto t = cl.tuple_of(i);
    out.members.emplace_back(t.begin(), t.end());
    out.witnesses.push_back(cl.witness(i));
  }
  return out;
}

// --- bounded search -----------------------------------------------------------

search_result bounded_term_search(const finite_algebra& alg, int arity,
                                  const std::vector<int>& target_table,
                                  size_t budget) {
  int n = alg.size();
  size_t rows = 1;
  for (int i = 0; i < arity; ++i) rows *= static_cast<size_t>(n);
  if (target_table.size() != rows)
    throw error("bounded_term_search: target table length mismatch");
  std::vector<std::vector<int>> points;
  points.reserve(rows);
  for (size_t idx = 0; idx < rows; ++idx)
    points.push_back(index_tuple(static_cast<int>(idx), n, arity));
  auto accept = [&](std::span<const int> row) {
    return std::equal(row.begin(), row.end(), target_table.begin());
  };
  return bounded_term_search_at_points(alg, arity, points, accept, budget);
}

search_result bounded_term_search_at_points(
    const finite_algebra& alg, int arity,
    const std::vector<std::vector<int>>& points,
    const std::function<bool(std::span<const int>)>& accept,
    size_t budget,
    const std::function<bool(const term_witness&)>& verify) {
  int w = static_cast<int>(points.size());
  tuple_closure cl(alg, w);
  std::vector<int> col(w);
  for (int v = 0; v < arity; ++v) {
    for (int j = 0; j < w; ++j) {
      if (static_cast<int>(points[j].size()) != arity)
        throw error("bounded_term_search_at_points: point arity mismatch");
      col[j] = points[j][v];
    }
    cl.seed_var(col, v);
  }
  int at = -1;
  while (true) {
    at = cl.resume(at, accept, budget);
    if (at < 0) break;
    term_witness tw{cl.witness(at), arity};
    if (!verify || verify(tw))
      return {search_status::found, std::move(tw)};
  }
  return {cl.capped() ? search_status::capped : search_status::absent, std::nullopt};
}

} // namespace finalg
