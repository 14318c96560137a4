// Finite fields F_{p^e}.
//
// Elements travel through the library as integer codes: the polynomial
// c_0 + c_1 t + ... + c_{e-1} t^{e-1} (mod the field's modulus) is encoded as
// c_0 + c_1 p + ... + c_{e-1} p^{e-1}. Code 0 is zero, code 1 is one, and for
// e > 1 code p is the class of t. FieldElement is the explicit coefficient
// form used at API boundaries.
//
// Fields of order at most 2^16 carry exp/log/Zech tables so that products and
// sums are a handful of table lookups; matrix groups are restricted to such
// fields. Larger fields fall back to polynomial arithmetic.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace liequot::ff {

using Code = std::uint64_t;

struct FieldElement {
  std::vector<std::uint64_t> coeffs;  // low degree first, length e

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

bool is_prime(std::uint64_t n);

class Field {
 public:
  static constexpr std::uint64_t kTableLimit = 1u << 16;

  // Prefer make_field(), which validates and shares instances.
  Field(std::uint64_t p, int e);

  std::uint64_t characteristic() const noexcept { return p_; }
  int degree() const noexcept { return e_; }
  std::uint64_t order() const noexcept { return q_; }
  // Monic modulus, coefficients low to high (size e + 1).
  const std::vector<std::uint64_t>& modulus() const noexcept {
    return modulus_;
  }
  bool has_tables() const noexcept { return !exp_.empty(); }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.p_ == b.p_ && a.e_ == b.e_;
  }

  Code zero() const noexcept { return 0; }
  Code one() const noexcept { return 1; }
  Code from_integer(std::int64_t n) const;

  Code add(Code a, Code b) const {
    switch (kind_) {
      case Kind::prime: {
        Code s = a + b;
        return s >= p_ ? s - p_ : s;
      }
      case Kind::binary:
        return a ^ b;
      case Kind::tabled:
        return zech_add(a, b);
      default:
        return generic_add(a, b);
    }
  }

  Code neg(Code a) const {
    switch (kind_) {
      case Kind::prime:
        return a == 0 ? 0 : p_ - a;
      case Kind::binary:
        return a;
      case Kind::tabled:
        return a == 0 ? 0 : exp_[add_log(log_[a], half_)];
      default:
        return generic_neg(a);
    }
  }

  Code sub(Code a, Code b) const { return add(a, neg(b)); }

  Code mul(Code a, Code b) const {
    switch (kind_) {
      case Kind::prime:
        if (p_ < (std::uint64_t{1} << 32)) return (a * b) % p_;
        return static_cast<Code>((static_cast<unsigned __int128>(a) * b) % p_);
      case Kind::binary:
      case Kind::tabled:
        if (a == 0 || b == 0) return 0;
        return exp_[add_log(log_[a], log_[b])];
      default:
        return generic_mul(a, b);
    }
  }

  Code inv(Code a) const;  // throws std::domain_error on zero
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t exponent) const;
  // x -> x^(p^k), 0 <= k <= e.
  Code frobenius(Code x, int k) const;

  // A generator of the multiplicative group.
  Code primitive_element() const;
  // Discrete log base primitive_element(); tables required, x nonzero.
  std::uint64_t log(Code x) const;
  Code exp(std::uint64_t k) const;

  FieldElement element(Code c) const;
  Code code(const FieldElement& x) const;
  std::string format(Code c) const;

 private:
  enum class Kind { prime, binary, tabled, generic };

  std::uint32_t add_log(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= q_ - 1 ? s - static_cast<std::uint32_t>(q_ - 1) : s;
  }
  Code zech_add(Code a, Code b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint32_t la = log_[a];
    std::uint32_t lb = log_[b];
    std::uint32_t k = lb >= la ? lb - la : lb + static_cast<std::uint32_t>(q_ - 1) - la;
    std::uint32_t z = zech_[k];
    if (z == kNoLog) return 0;
    return exp_[add_log(la, z)];
  }

  Code generic_add(Code a, Code b) const;
  Code generic_neg(Code a) const;
  Code generic_mul(Code a, Code b) const;
  std::vector<std::uint64_t> digits(Code c) const;
  Code encode(std::span<const std::uint64_t> d) const;
  Code find_primitive() const;
  void build_tables();

  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  std::uint64_t p_;
  int e_;
  std::uint64_t q_;
  Kind kind_;
  std::vector<std::uint64_t> modulus_;
  Code primitive_ = 0;
  std::uint32_t half_ = 0;  // log(-1) for odd q
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

using FieldPtr = std::shared_ptr<const Field>;

// F_{p^e} with the lexicographically least monic irreducible modulus,
// comparing coefficient lists from the constant term upwards. Throws
// NonPrime for composite p and std::invalid_argument for e outside [1, 12]
// or p^e beyond 2^62.
FieldPtr make_field(std::uint64_t p, int e);

// x^(p^k) in f.
FieldElement frobenius(const FieldElement& x, int k, const Field& f);

// Legendre symbol (a | p) for an odd prime p.
int legendre(std::int64_t a, std::uint64_t p);

// Irreducibility of a monic polynomial over F_p (coefficients low to high).
bool is_irreducible(std::span<const std::uint64_t> monic_poly, std::uint64_t p);

}  // namespace liequot::ff
