// Groups of Lie type A1 and A2 (linear and unitary) in their adjoint
// representations, with order formulas, subfield inclusion arithmetic and
// the table of small-image exceptions.
//
// The adjoint module is gl_n modulo scalars with basis E_ij, (i, j) != (n, n).
// It is isomorphic to sl_n when p does not divide n; otherwise sl_n / scalars
// is a submodule of codimension 1. Unitary groups GU_3(q) live inside
// GL_3(q^2) and act on the adjoint module over F_{q^2}.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liequot/matgroup.hpp"

namespace liequot::lie {

enum class XType { A1, A2 };
enum class Variant { simple, inner_diagonal };

std::string to_string(XType x);
XType parse_xtype(const std::string& s);  // "A1" / "A2"; throws InputError

struct LieClass {
  XType xtype = XType::A1;
  int d = 1;

  // Validates d = 2 only for A2.
  static LieClass make(XType xtype, int d);

  int rank() const noexcept { return xtype == XType::A1 ? 1 : 2; }
  int natural_dim() const noexcept { return rank() + 1; }
  int adjoint_dim() const noexcept { return natural_dim() * natural_dim() - 1; }
  std::string name() const;  // "A1", "A2", "2A2"

  friend bool operator==(const LieClass&, const LieClass&) = default;
};

struct PrimePower {
  std::uint64_t q;
  std::uint64_t p;
  int e;
};
// Throws BadQ unless q = p^e with p prime.
PrimePower prime_power(std::uint64_t q);

struct GroupVariant {
  Variant variant;
  LieClass cls;
  std::uint64_t q;
};

// Throws BadQ for q that is not a prime power and for unitary q = 2.
void check_q(const LieClass& c, std::uint64_t q);

// |PSL_n(q)|, |PGL_n(q)|, |PSU_3(q)|, |PGU_3(q)| with n = rank + 1. Throws
// std::overflow_error past 64 bits.
std::uint64_t group_order(const LieClass& c, std::uint64_t q, Variant v);

// Field over which the matrices of (c, q) are written: F_q, or F_{q^2} for d = 2.
ff::FieldPtr matrix_field(const LieClass& c, std::uint64_t q);

// Generators of GL_n(q) / SL_n(q) or GU_3(q) / SU_3(q) in the natural
// representation.
std::vector<matgrp::Matrix> natural_generators(const LieClass& c, std::uint64_t q, Variant v);

// Conjugation action of g on gl_n / scalars.
matgrp::Matrix adjoint_matrix(const matgrp::Matrix& g);

// ID(X(q)) = PGL_n(q) or PGU_3(q) on the adjoint module.
matgrp::MatGroup build_id_group(const LieClass& c, std::uint64_t q,
                                std::size_t cap = matgrp::MatGroup::kDefaultCap);
// PSL_n(q) or PSU_3(q) on the adjoint module.
matgrp::MatGroup build_simple_group(const LieClass& c, std::uint64_t q,
                                    std::size_t cap = matgrp::MatGroup::kDefaultCap);

std::vector<std::size_t> adjoint_factor_dims(const LieClass& c, std::uint64_t p);

// e | f and gcd(d, f / e) = 1.
bool includes(int d, int e, int f);
// Largest power of d dividing e; 1 when d = 1.
std::uint64_t d_part(int d, std::uint64_t e);
// Least common overfield exponent; throws MixedDParts when d-parts differ.
std::uint64_t common_overfield(int d, const std::vector<std::uint64_t>& exponents);

struct ExceptionRow {
  std::string xtype;           // e.g. "A1(q)"
  std::string characteristic;  // e.g. "p=2"
  std::string description;
  // Bound on |H| as a function of q, when the row gives one.
  std::function<std::optional<std::uint64_t>(std::uint64_t)> order_bound;
  bool in_scope;  // rows outside A1/A2 are descriptive only
};

std::vector<ExceptionRow> exception_rows();
std::vector<ExceptionRow> exceptions_for(XType x, std::uint64_t p);

// A same-type sandwich X(q0) <= Y <= ID(X(q0)) that may occur inside ID(X(q)).
struct Sandwich {
  std::uint64_t q0;
  int e0;
  int twist;  // 1 linear, 2 unitary
  std::uint64_t simple_order;
  std::uint64_t id_order;
};

// Every sandwich admissible inside the class searched for (c, q): for d = 1
// the subfield groups X(q0) and, for A2, the unitary groups PSU_3(q0) with
// F_{q0^2} inside F_q; for d = 2 the unitary subfield groups allowed by
// includes(2, e0, e). Non-simple groups (PSL_2(2), PSL_2(3), PSU_3(2)) are
// excluded.
std::vector<Sandwich> same_type_candidates(const LieClass& c, std::uint64_t q);

}  // namespace liequot::lie
