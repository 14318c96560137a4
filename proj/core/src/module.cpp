#include "liequot/module.hpp"

#include <algorithm>
#include <deque>

#include "liequot/errors.hpp"

namespace liequot::matgrp {

namespace {

using linalg::Echelon;
using linalg::Vec;

Vec act(const Matrix& g, const Vec& v) {
  const auto& f = g.field();
  const std::size_t n = g.dim();
  Vec out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ff::Code acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] != 0 && g(i, j) != 0) acc = f.add(acc, f.mul(g(i, j), v[j]));
    }
    out[i] = acc;
  }
  return out;
}

// Smallest invariant subspace containing the seeds.
std::vector<Vec> spin(std::span<const Matrix> gens, const std::vector<Vec>& seeds,
                      std::size_t n) {
  const auto& f = gens.front().field();
  Echelon e(f, n);
  std::deque<Vec> queue;
  for (const auto& s : seeds) {
    if (e.insert(s)) queue.push_back(s);
  }
  while (!queue.empty() && e.rank() < n) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Vec w = act(g, v);
      if (e.insert(w)) queue.push_back(std::move(w));
    }
  }
  return e.rows();
}

// Elements of the enveloping algebra whose eigenvectors seed the spin.
std::vector<Matrix> probe_elements(std::span<const Matrix> gens) {
  std::vector<Matrix> out(gens.begin(), gens.end());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i == j) continue;
      out.push_back(gens[i] * gens[j]);
      if (i < j) out.push_back(gens[i] + gens[j]);
    }
  }
  if (gens.size() >= 2) out.push_back(gens[0] * gens[1] + gens[1] + gens[0] * gens[0]);
  return out;
}

std::optional<std::vector<Vec>> find_proper(std::span<const Matrix> gens) {
  const std::size_t n = gens.front().dim();
  const auto& f = gens.front().field();
  auto try_seed = [&](const Vec& v) -> std::optional<std::vector<Vec>> {
    auto sub = spin(gens, {v}, n);
    if (!sub.empty() && sub.size() < n) return sub;
    return std::nullopt;
  };
  auto kernel = [&](const Matrix& a) {
    std::vector<Vec> rows(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    }
    return linalg::nullspace(f, rows, n);
  };

  // Common fixed vectors first: cheap and catches the trivial factors.
  {
    std::vector<Vec> rows;
    const Matrix id = Matrix::identity(gens.front().field_ptr(), n);
    for (const auto& g : gens) {
      Matrix a = g - id;
      for (std::size_t i = 0; i < n; ++i) {
        Vec r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = a(i, j);
        rows.push_back(std::move(r));
      }
    }
    auto fixed = linalg::nullspace(f, rows, n);
    if (!fixed.empty() && fixed.size() < n) return fixed;
  }

  const std::uint64_t lambdas = std::min<std::uint64_t>(f.order(), 256);
  for (const auto& a : probe_elements(gens)) {
    for (std::uint64_t lam = 0; lam < lambdas; ++lam) {
      const Matrix shifted = a - Matrix::identity(a.field_ptr(), n).scaled(lam);
      for (const auto& v : kernel(shifted)) {
        if (auto sub = try_seed(v)) return sub;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool absolutely_irreducible(std::span<const Matrix> gens, std::size_t n) {
  if (n == 0) return false;
  if (gens.empty()) return n == 1;
  for (const auto& g : gens) {
    if (g.dim() != n) throw DimensionMismatch("generator dimension differs from module dimension");
  }
  const std::size_t n2 = n * n;
  const auto& fp = gens.front().field_ptr();
  Echelon span(*fp, n2);
  std::deque<Matrix> queue;
  Matrix id = Matrix::identity(fp, n);
  span.insert(id.codes());
  queue.push_back(id);
  while (!queue.empty() && span.rank() < n2) {
    Matrix a = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Matrix b = a * g;
      if (span.insert(b.codes())) queue.push_back(std::move(b));
    }
  }
  return span.rank() == n2;
}

std::optional<std::vector<Vec>> find_submodule(std::span<const Matrix> gens) {
  if (gens.empty()) return std::nullopt;
  const std::size_t n = gens.front().dim();
  if (n < 2) return std::nullopt;
  if (auto sub = find_proper(gens)) return sub;
  // A proper submodule of the dual has a proper annihilator.
  std::vector<Matrix> dual;
  for (const auto& g : gens) dual.push_back(g.transpose());
  if (auto dsub = find_proper(dual)) {
    auto ann = linalg::nullspace(gens.front().field(), *dsub, n);
    if (!ann.empty() && ann.size() < n) return ann;
  }
  return std::nullopt;
}

std::vector<std::vector<Matrix>> FactorSeries::restrict(std::span<const Matrix> mats) const {
  std::vector<std::vector<Matrix>> out(dims_.size());
  for (const auto& m : mats) {
    if (m.dim() != n_) throw DimensionMismatch("matrix dimension differs from module dimension");
    const Matrix conj = basis_inv_ * m * basis_;
    for (std::size_t b = 0; b < dims_.size(); ++b) {
      const std::size_t o = offsets_[b];
      const std::size_t k = dims_[b];
      Matrix blk(m.field_ptr(), k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) blk.set(i, j, conj(o + i, o + j));
      }
      out[b].push_back(std::move(blk));
    }
  }
  return out;
}

FactorSeries invariant_submodule_factors(std::span<const Matrix> gens,
                                         std::span<const std::size_t> dims) {
  if (gens.empty()) throw std::invalid_argument("module needs at least one generator");
  const std::size_t n = gens.front().dim();
  std::size_t total = 0;
  for (auto k : dims) total += k;
  if (total != n) throw DimensionMismatch("factor dimensions do not sum to the module dimension");
  const auto& fp = gens.front().field_ptr();
  const auto& f = *fp;

  FactorSeries fs;
  fs.n_ = n;
  Matrix basis = Matrix::identity(fp, n);
  std::vector<std::size_t> blocks{n};

  auto block_action = [&](const Matrix& binv, std::size_t o, std::size_t k) {
    std::vector<Matrix> acts;
    for (const auto& g : gens) {
      const Matrix c = binv * g * basis;
      Matrix blk(fp, k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) blk.set(i, j, c(o + i, o + j));
      }
      acts.push_back(std::move(blk));
    }
    return acts;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    const Matrix binv = basis.inverse();
    std::size_t o = 0;
    for (std::size_t b = 0; b < blocks.size(); o += blocks[b], ++b) {
      const std::size_t k = blocks[b];
      if (k < 2) continue;
      auto acts = block_action(binv, o, k);
      if (absolutely_irreducible(acts, k)) continue;
      auto sub = find_submodule(acts);
      if (!sub) continue;
      // New block basis: the submodule, then unit vectors completing it.
      Echelon e(f, k);
      std::vector<Vec> w;
      for (const auto& v : *sub) {
        if (e.insert(v)) w.push_back(v);
      }
      const std::size_t low = w.size();
      for (std::size_t t = 0; t < k && w.size() < k; ++t) {
        Vec u(k, 0);
        u[t] = 1;
        if (e.insert(u)) w.push_back(std::move(u));
      }
      Matrix next = basis;
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
          ff::Code acc = 0;
          for (std::size_t t = 0; t < k; ++t) {
            if (w[c][t] != 0) acc = f.add(acc, f.mul(w[c][t], basis(i, o + t)));
          }
          next.set(i, o + c, acc);
        }
      }
      basis = std::move(next);
      blocks[b] = low;
      blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(b) + 1, k - low);
      changed = true;
      break;
    }
  }

  std::vector<std::size_t> want(dims.begin(), dims.end());
  std::vector<std::size_t> got = blocks;
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  if (want != got) {
    std::string msg = "composition factors of dimensions";
    for (auto k : blocks) msg += " " + std::to_string(k);
    throw FactorMismatch(msg + " do not match the expected dimensions");
  }

  fs.basis_ = basis;
  fs.basis_inv_ = basis.inverse();
  fs.dims_ = blocks;
  std::size_t o = 0;
  for (auto k : blocks) {
    fs.offsets_.push_back(o);
    CompositionFactor cf;
    for (std::size_t c = 0; c < k; ++c) {
      Vec col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = basis(i, o + c);
      cf.basis.push_back(std::move(col));
    }
    cf.action = block_action(fs.basis_inv_, o, k);
    fs.factors_.push_back(std::move(cf));
    o += k;
  }
  return fs;
}

}  // namespace liequot::matgrp
