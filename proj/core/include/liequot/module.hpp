// Modules for matrix groups: absolute irreducibility and composition series
// refined to prescribed factor dimensions.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "liequot/linalg.hpp"
#include "liequot/matrix.hpp"

namespace liequot::matgrp {

// Burnside: the algebra spanned by all words in gens is the full matrix
// algebra of dimension n^2.
bool absolutely_irreducible(std::span<const Matrix> gens, std::size_t n);

// Basis (in the module's coordinates) of a proper nonzero submodule, or
// nullopt when none is found. Searches fixed vectors, eigenvectors of the
// generators and of short products, and the same on the dual module.
std::optional<std::vector<linalg::Vec>> find_submodule(std::span<const Matrix> gens);

struct CompositionFactor {
  std::vector<linalg::Vec> basis;  // lifts to the full module
  std::vector<Matrix> action;      // one per generator
};

class FactorSeries {
 public:
  std::size_t dim() const noexcept { return n_; }
  const std::vector<std::size_t>& factor_dims() const noexcept { return dims_; }
  const std::vector<CompositionFactor>& factors() const noexcept { return factors_; }
  // Action of arbitrary module endomorphisms on each factor: result[f][i].
  std::vector<std::vector<Matrix>> restrict(std::span<const Matrix> mats) const;

  friend FactorSeries invariant_submodule_factors(std::span<const Matrix> gens,
                                                  std::span<const std::size_t> dims);

 private:
  std::size_t n_ = 0;
  Matrix basis_;      // columns: adapted basis, bottom factor first
  Matrix basis_inv_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::vector<CompositionFactor> factors_;
};

// Composition series of the module under gens whose factor dimensions are
// the multiset `dims`. Throws FactorMismatch otherwise.
FactorSeries invariant_submodule_factors(std::span<const Matrix> gens,
                                         std::span<const std::size_t> dims);

}  // namespace liequot::matgrp
