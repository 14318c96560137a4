#include "liequot/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace liequot::linalg {

Echelon::Echelon(const ff::Field& field, std::size_t length)
    : field_(&field), length_(length) {}

void Echelon::reduce(Vec& v) const {
  const auto& f = *field_;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const ff::Code c = v[pivots_[r]];
    if (c == 0) continue;
    const ff::Code nc = f.neg(c);
    const Vec& row = rows_[r];
    for (std::size_t j = pivots_[r]; j < length_; ++j) {
      if (row[j] != 0) v[j] = f.add(v[j], f.mul(nc, row[j]));
    }
  }
}

bool Echelon::insert(Vec v) {
  if (v.size() != length_) throw std::invalid_argument("vector length mismatch");
  reduce(v);
  std::size_t piv = 0;
  while (piv < length_ && v[piv] == 0) ++piv;
  if (piv == length_) return false;
  const auto& f = *field_;
  const ff::Code s = f.inv(v[piv]);
  for (std::size_t j = piv; j < length_; ++j) v[j] = f.mul(v[j], s);
  // Keep rows fully reduced on the new pivot column.
  for (auto& row : rows_) {
    const ff::Code c = row[piv];
    if (c == 0) continue;
    const ff::Code nc = f.neg(c);
    for (std::size_t j = piv; j < length_; ++j) {
      if (v[j] != 0) row[j] = f.add(row[j], f.mul(nc, v[j]));
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

bool Echelon::contains(Vec v) const {
  reduce(v);
  for (auto c : v) {
    if (c != 0) return false;
  }
  return true;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
// Pivots are searched in the first ncols columns; row operations span the
// full row width.
std::vector<std::size_t> rref(const ff::Field& f, std::vector<Vec>& m,
                              std::size_t ncols) {
  std::vector<std::size_t> pivots;
  const std::size_t width = m.empty() ? 0 : m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    const ff::Code s = f.inv(m[r][c]);
    for (std::size_t j = c; j < width; ++j) m[r][j] = f.mul(m[r][j], s);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const ff::Code nc = f.neg(m[i][c]);
      for (std::size_t j = c; j < width; ++j) {
        if (m[r][j] != 0) m[i][j] = f.add(m[i][j], f.mul(nc, m[r][j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<Vec> nullspace(const ff::Field& f, const std::vector<Vec>& rows,
                           std::size_t ncols) {
  std::vector<Vec> m = rows;
  auto pivots = rref(f, m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vec x(ncols, 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      x[pivots[r]] = f.neg(m[r][free]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t rank(const ff::Field& f, const std::vector<Vec>& rows,
                 std::size_t ncols) {
  std::vector<Vec> m = rows;
  return rref(f, m, ncols).size();
}

std::optional<Vec> inverse(const ff::Field& f, const Vec& a, std::size_t n) {
  std::vector<Vec> m(n, Vec(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i * n + j];
    m[i][n + i] = 1;
  }
  auto pivots = rref(f, m, n);
  if (pivots.size() != n) return std::nullopt;
  Vec out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = m[i][n + j];
  }
  return out;
}

}  // namespace liequot::linalg
