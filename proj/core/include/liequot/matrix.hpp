// Square matrices over a finite field of order at most 2^16.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "liequot/ff.hpp"

namespace liequot::matgrp {

using Entry = std::uint16_t;

// out = a * b for n x n row-major blocks; out must not alias a or b.
void multiply(const ff::Field& f, std::size_t n, const Entry* a, const Entry* b,
              Entry* out);

class Matrix {
 public:
  Matrix() = default;
  Matrix(ff::FieldPtr field, std::size_t n);  // zero matrix
  Matrix(ff::FieldPtr field, std::size_t n, std::vector<Entry> entries);

  static Matrix identity(ff::FieldPtr field, std::size_t n);
  // Integer rows, reduced into the prime subfield.
  static Matrix from_rows(ff::FieldPtr field,
                          std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static Matrix from_codes(ff::FieldPtr field, std::size_t n,
                           const std::vector<ff::Code>& codes);
  static Matrix diagonal(ff::FieldPtr field, const std::vector<ff::Code>& diag);

  std::size_t dim() const noexcept { return n_; }
  const ff::Field& field() const noexcept { return *field_; }
  const ff::FieldPtr& field_ptr() const noexcept { return field_; }

  ff::Code operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, ff::Code c);
  std::span<const Entry> entries() const noexcept { return a_; }
  std::vector<ff::Code> codes() const { return {a_.begin(), a_.end()}; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(ff::Code c) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }
  // Canonical order: row-major entry comparison.
  friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.a_ <=> b.a_;
  }

  bool is_identity() const;
  bool is_invertible() const;
  Matrix inverse() const;  // throws std::domain_error when singular
  Matrix pow(std::int64_t k) const;
  Matrix transpose() const;
  // h * this * h^-1
  Matrix conjugated_by(const Matrix& h) const;
  // Applies a field automorphism x -> x^(p^k) entrywise.
  Matrix frobenius(int k) const;
  ff::Code determinant() const;
  ff::Code trace() const;

  std::string to_string() const;

 private:
  void check_compatible(const Matrix& o) const;

  ff::FieldPtr field_;
  std::size_t n_ = 0;
  std::vector<Entry> a_;
};

// Least k >= 1 with m^k = 1; m must be invertible.
std::uint64_t element_order(const Matrix& m);

}  // namespace liequot::matgrp
