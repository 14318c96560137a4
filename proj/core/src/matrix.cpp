#include "liequot/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "liequot/errors.hpp"
#include "liequot/linalg.hpp"

namespace liequot::matgrp {

void multiply(const ff::Field& f, std::size_t n, const Entry* a, const Entry* b,
              Entry* out) {
  if (f.degree() == 1) {
    const std::uint64_t p = f.characteristic();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < n; ++k) {
          acc += static_cast<std::uint64_t>(a[i * n + k]) * b[k * n + j];
        }
        out[i * n + j] = static_cast<Entry>(acc % p);
      }
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ff::Code acc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const Entry x = a[i * n + k];
        const Entry y = b[k * n + j];
        if (x != 0 && y != 0) acc = f.add(acc, f.mul(x, y));
      }
      out[i * n + j] = static_cast<Entry>(acc);
    }
  }
}

Matrix::Matrix(ff::FieldPtr field, std::size_t n)
    : field_(std::move(field)), n_(n), a_(n * n, 0) {
  if (!field_) throw std::invalid_argument("matrix needs a field");
  if (field_->order() > ff::Field::kTableLimit) {
    throw std::invalid_argument("matrix groups need a field of order at most 2^16");
  }
}

Matrix::Matrix(ff::FieldPtr field, std::size_t n, std::vector<Entry> entries)
    : Matrix(std::move(field), n) {
  if (entries.size() != n * n) throw DimensionMismatch("entry count does not match dimension");
  for (auto e : entries) {
    if (e >= field_->order()) throw std::invalid_argument("matrix entry outside the field");
  }
  a_ = std::move(entries);
}

Matrix Matrix::identity(ff::FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(ff::FieldPtr field,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const std::size_t n = rows.size();
  Matrix m(std::move(field), n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw DimensionMismatch("matrix rows must be square");
    std::size_t j = 0;
    for (auto v : row) m.a_[i * n + j++] = static_cast<Entry>(m.field_->from_integer(v));
    ++i;
  }
  return m;
}

Matrix Matrix::from_codes(ff::FieldPtr field, std::size_t n,
                          const std::vector<ff::Code>& codes) {
  std::vector<Entry> e(codes.begin(), codes.end());
  for (auto c : codes) {
    if (c >= field->order()) throw std::invalid_argument("matrix entry outside the field");
  }
  return Matrix(std::move(field), n, std::move(e));
}

Matrix Matrix::diagonal(ff::FieldPtr field, const std::vector<ff::Code>& diag) {
  Matrix m(std::move(field), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, ff::Code c) {
  if (c >= field_->order()) throw std::invalid_argument("matrix entry outside the field");
  a_[i * n_ + j] = static_cast<Entry>(c);
}

void Matrix::check_compatible(const Matrix& o) const {
  if (n_ != o.n_) throw DimensionMismatch("matrix dimensions differ");
  if (!(*field_ == *o.field_)) throw DimensionMismatch("matrices over different fields");
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_compatible(o);
  Matrix r(field_, n_);
  multiply(*field_, n_, a_.data(), o.a_.data(), r.a_.data());
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_compatible(o);
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    r.a_[i] = static_cast<Entry>(field_->add(a_[i], o.a_[i]));
  }
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_compatible(o);
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    r.a_[i] = static_cast<Entry>(field_->sub(a_[i], o.a_[i]));
  }
  return r;
}

Matrix Matrix::scaled(ff::Code c) const {
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    r.a_[i] = static_cast<Entry>(field_->mul(a_[i], c));
  }
  return r;
}

bool Matrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (a_[i * n_ + j] != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

bool Matrix::is_invertible() const {
  return linalg::inverse(*field_, codes(), n_).has_value();
}

Matrix Matrix::inverse() const {
  auto inv = linalg::inverse(*field_, codes(), n_);
  if (!inv) throw std::domain_error("matrix is singular");
  return from_codes(field_, n_, *inv);
}

Matrix Matrix::pow(std::int64_t k) const {
  Matrix base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Matrix r = identity(field_, n_);
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) r.a_[j * n_ + i] = a_[i * n_ + j];
  }
  return r;
}

Matrix Matrix::conjugated_by(const Matrix& h) const { return h * *this * h.inverse(); }

Matrix Matrix::frobenius(int k) const {
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    r.a_[i] = static_cast<Entry>(field_->frobenius(a_[i], k));
  }
  return r;
}

ff::Code Matrix::determinant() const {
  const auto& f = *field_;
  std::vector<ff::Code> m = codes();
  ff::Code det = 1;
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t r = c;
    while (r < n_ && m[r * n_ + c] == 0) ++r;
    if (r == n_) return 0;
    if (r != c) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(m[r * n_ + j], m[c * n_ + j]);
      det = f.neg(det);
    }
    const ff::Code piv = m[c * n_ + c];
    det = f.mul(det, piv);
    const ff::Code pinv = f.inv(piv);
    for (std::size_t i = c + 1; i < n_; ++i) {
      const ff::Code factor = f.mul(m[i * n_ + c], pinv);
      if (factor == 0) continue;
      for (std::size_t j = c; j < n_; ++j) {
        m[i * n_ + j] = f.sub(m[i * n_ + j], f.mul(factor, m[c * n_ + j]));
      }
    }
  }
  return det;
}

ff::Code Matrix::trace() const {
  ff::Code t = 0;
  for (std::size_t i = 0; i < n_; ++i) t = field_->add(t, a_[i * n_ + i]);
  return t;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) os << ", ";
      os << field_->format(a_[i * n_ + j]);
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::uint64_t element_order(const Matrix& m) {
  if (!m.is_invertible()) throw std::domain_error("element_order of a singular matrix");
  std::uint64_t k = 1;
  Matrix x = m;
  while (!x.is_identity()) {
    x = x * m;
    ++k;
  }
  return k;
}

}  // namespace liequot::matgrp
