// Dense linear algebra over a Field, on vectors of element codes.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "liequot/ff.hpp"

namespace liequot::linalg {

using Vec = std::vector<ff::Code>;

// Row-echelon basis that grows one vector at a time.
class Echelon {
 public:
  Echelon(const ff::Field& field, std::size_t length);

  // Reduces v in place against the basis.
  void reduce(Vec& v) const;
  // Adds v (copied) to the basis if independent; returns whether it was.
  bool insert(Vec v);
  bool contains(Vec v) const;

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t length() const noexcept { return length_; }
  const std::vector<Vec>& rows() const noexcept { return rows_; }

 private:
  const ff::Field* field_;
  std::size_t length_;
  std::vector<Vec> rows_;  // each normalized: pivot entry 1
  std::vector<std::size_t> pivots_;
};

// Basis of {x : A x = 0} for A given as rows of width ncols.
std::vector<Vec> nullspace(const ff::Field& f, const std::vector<Vec>& rows,
                           std::size_t ncols);

std::size_t rank(const ff::Field& f, const std::vector<Vec>& rows,
                 std::size_t ncols);

// Inverse of an n x n row-major matrix, or nullopt when singular.
std::optional<Vec> inverse(const ff::Field& f, const Vec& a, std::size_t n);

}  // namespace liequot::linalg
