// Fully enumerated finite matrix groups.
//
// Elements are stored in canonical (row-major entry) order and addressed by
// their position. Subgroups of an enumerated group are handled in index space
// as sorted element lists, which keeps subgroup closures, normal closures and
// simplicity checks free of matrix arithmetic when a Cayley table is present.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "liequot/matrix.hpp"

namespace liequot::matgrp {

using Index = std::uint32_t;

struct ConjugacyClass {
  Index representative;  // least index in the class
  std::uint64_t size;
};

// A subgroup of an enumerated group, in that group's index space.
struct Subgroup {
  std::vector<Index> gens;
  std::vector<Index> elements;  // sorted

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(Index x) const;
};

namespace detail {
struct GroupData;
}

class MatGroup {
 public:
  static constexpr std::size_t kDefaultCap = 2'000'000;
  // Groups up to this order get a full multiplication table.
  static constexpr std::size_t kTableCap = 6100;

  MatGroup() = default;

  const ff::Field& field() const;
  const ff::FieldPtr& field_ptr() const;
  std::size_t dim() const;
  std::uint64_t order() const;
  const std::vector<Matrix>& generators() const;
  // Index of each generator, in generator order.
  const std::vector<Index>& generator_indices() const;

  Matrix element(Index i) const;
  std::span<const Entry> entries(Index i) const;
  std::optional<Index> index_of(const Matrix& m) const;
  std::optional<Index> index_of(std::span<const Entry> m) const;
  bool contains(const Matrix& m) const { return index_of(m).has_value(); }

  Index identity() const;
  Index mul(Index a, Index b) const;
  Index inv(Index a) const;
  Index conj(Index g, Index x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  Index commutator(Index a, Index b) const;                               // a^-1 b^-1 a b
  bool has_table() const;

  const std::vector<std::uint32_t>& element_orders() const;
  const std::vector<ConjugacyClass>& classes() const;
  // Position in classes() of the class containing x.
  std::uint32_t class_of(Index x) const;

  Subgroup whole() const;
  Subgroup closure(std::span<const Index> gens) const;
  // Smallest subgroup containing gens and normalized by `under`.
  Subgroup normal_closure(std::span<const Index> gens, std::span<const Index> under) const;
  Subgroup derived(const Subgroup& s) const;
  bool is_perfect(const Subgroup& s) const;
  bool is_simple(const Subgroup& s) const;
  bool is_centerless(const Subgroup& s) const;
  // Conjugacy classes of s under s, as element lists.
  std::vector<std::vector<Index>> subgroup_classes(const Subgroup& s) const;
  // Standalone group on the matrices of s.
  MatGroup materialize(const Subgroup& s) const;

  friend MatGroup close_group(std::span<const Matrix> generators, std::size_t cap);

 private:
  const detail::GroupData& d() const;
  std::shared_ptr<const detail::GroupData> d_;
};

// Breadth-first closure; throws CapExceeded past `cap` elements.
MatGroup close_group(std::span<const Matrix> generators,
                     std::size_t cap = MatGroup::kDefaultCap);

// {g in ambient : g sub g^-1 = sub}. Throws NotSubgroup unless sub <= ambient.
MatGroup normalizer(const MatGroup& sub, const MatGroup& ambient);
MatGroup derived_subgroup(const MatGroup& g);
bool is_perfect(const MatGroup& g);
bool is_simple(const MatGroup& g);
bool is_centerless(const MatGroup& g);

}  // namespace liequot::matgrp
