#include "liequot/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "liequot/errors.hpp"

namespace liequot::ff {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over F_p, coefficients low to high, no trailing zeros
// (the zero polynomial is empty).
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Ben-Or: f of degree n is irreducible iff gcd(x^(p^i) - x, f) = 1 for
// every i <= n/2.
bool is_irreducible(std::span<const std::uint64_t> monic_poly, std::uint64_t p) {
  Poly f(monic_poly.begin(), monic_poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  Poly xp{0, 1};
  for (std::size_t i = 1; i <= n / 2; ++i) {
    xp = poly_powmod(xp, p, f, p);
    Poly d = xp;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    trim(d);
    Poly g = poly_gcd(f, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field::Field(std::uint64_t p, int e) : p_(p), e_(e) {
  if (!is_prime(p)) throw NonPrime("characteristic " + std::to_string(p) + " is not prime");
  if (e < 1 || e > 12) throw std::invalid_argument("extension degree must lie in [1, 12]");
  std::uint64_t q = 1;
  for (int i = 0; i < e; ++i) {
    if (q > (std::uint64_t{1} << 62) / p) throw std::invalid_argument("field order exceeds 2^62");
    q *= p;
  }
  q_ = q;

  if (e == 1) {
    modulus_ = {0, 1};
  } else {
    // Odometer over (c_0, ..., c_{e-1}) with c_0 most significant. c_0 = 0
    // always gives a multiple of x, so the scan starts at c_0 = 1.
    std::vector<std::uint64_t> c(static_cast<std::size_t>(e), 0);
    c[0] = 1;
    for (;;) {
      std::vector<std::uint64_t> m(c);
      m.push_back(1);
      if (is_irreducible(m, p)) {
        modulus_ = std::move(m);
        break;
      }
      int i = e - 1;
      while (i >= 0 && ++c[static_cast<std::size_t>(i)] == p) {
        c[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) throw InvariantError("no irreducible modulus found");
    }
  }

  if (e == 1) {
    kind_ = Kind::prime;
  } else if (q_ <= kTableLimit) {
    kind_ = p == 2 ? Kind::binary : Kind::tabled;
  } else {
    kind_ = Kind::generic;
  }
  if (q_ <= kTableLimit) build_tables();
}

std::vector<std::uint64_t> Field::digits(Code c) const {
  std::vector<std::uint64_t> d(static_cast<std::size_t>(e_), 0);
  for (int i = 0; i < e_; ++i) {
    d[static_cast<std::size_t>(i)] = c % p_;
    c /= p_;
  }
  return d;
}

Code Field::encode(std::span<const std::uint64_t> d) const {
  Code c = 0;
  for (std::size_t i = d.size(); i-- > 0;) c = c * p_ + d[i];
  return c;
}

Code Field::generic_add(Code a, Code b) const {
  Code out = 0;
  Code scale = 1;
  for (int i = 0; i < e_; ++i) {
    std::uint64_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

Code Field::generic_neg(Code a) const {
  Code out = 0;
  Code scale = 1;
  for (int i = 0; i < e_; ++i) {
    std::uint64_t d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    a /= p_;
  }
  return out;
}

Code Field::generic_mul(Code a, Code b) const {
  if (e_ == 1) return mulmod(a, b, p_);
  auto da = digits(a);
  auto db = digits(b);
  Poly r(2 * static_cast<std::size_t>(e_) - 1, 0);
  for (int i = 0; i < e_; ++i) {
    if (da[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < e_; ++j) {
      auto& slot = r[static_cast<std::size_t>(i + j)];
      slot = (slot + mulmod(da[static_cast<std::size_t>(i)], db[static_cast<std::size_t>(j)], p_)) % p_;
    }
  }
  r = poly_mod(std::move(r), modulus_, p_);
  r.resize(static_cast<std::size_t>(e_), 0);
  return encode(r);
}

Code Field::from_integer(std::int64_t n) const {
  std::int64_t pm = static_cast<std::int64_t>(p_ <= static_cast<std::uint64_t>(INT64_MAX) ? p_ : 0);
  std::int64_t r = pm ? n % pm : n;
  if (r < 0) r += pm;
  return static_cast<Code>(r);
}

Code Field::pow(Code a, std::uint64_t exponent) const {
  Code r = 1;
  while (exponent) {
    if (exponent & 1) r = mul(r, a);
    a = mul(a, a);
    exponent >>= 1;
  }
  return r;
}

Code Field::inv(Code a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (has_tables()) {
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : static_cast<std::uint32_t>(q_ - 1) - l];
  }
  return pow(a, q_ - 2);
}

Code Field::frobenius(Code x, int k) const {
  if (k < 0 || k > e_) throw std::invalid_argument("frobenius exponent out of range");
  for (int i = 0; i < k; ++i) x = pow(x, p_);
  return x;
}

Code Field::find_primitive() const {
  if (q_ == 2) return 1;
  const auto factors = prime_factors(q_ - 1);
  for (Code g = 2; g < q_; ++g) {
    bool ok = true;
    for (std::uint64_t l : factors) {
      if (pow(g, (q_ - 1) / l) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw InvariantError("multiplicative group has no generator");
}

void Field::build_tables() {
  const Kind saved = kind_;
  // Tables are built with plain polynomial arithmetic.
  kind_ = Kind::generic;
  primitive_ = find_primitive();
  const std::uint64_t n = q_ - 1;
  exp_.assign(n, 0);
  log_.assign(q_, kNoLog);
  Code x = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    exp_[k] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(k);
    x = generic_mul(x, primitive_);
  }
  zech_.assign(n, kNoLog);
  for (std::uint64_t k = 0; k < n; ++k) {
    Code y = exp_[k];
    Code c0 = y % p_;
    Code s = y - c0 + (c0 + 1) % p_;
    zech_[k] = s == 0 ? kNoLog : log_[s];
  }
  half_ = (p_ == 2) ? 0 : static_cast<std::uint32_t>(n / 2);
  kind_ = saved;
}

Code Field::primitive_element() const {
  if (has_tables()) return primitive_;
  return find_primitive();
}

std::uint64_t Field::log(Code x) const {
  if (!has_tables()) throw std::logic_error("discrete log tables unavailable for this field");
  if (x == 0 || x >= q_) throw std::domain_error("log of zero");
  return log_[x];
}

Code Field::exp(std::uint64_t k) const {
  if (has_tables()) return exp_[k % (q_ - 1)];
  return pow(primitive_element(), k % (q_ - 1));
}

FieldElement Field::element(Code c) const {
  if (c >= q_) throw std::out_of_range("field code out of range");
  return FieldElement{digits(c)};
}

Code Field::code(const FieldElement& x) const {
  if (x.coeffs.size() != static_cast<std::size_t>(e_)) {
    throw std::invalid_argument("field element has wrong length");
  }
  for (auto c : x.coeffs) {
    if (c >= p_) throw std::invalid_argument("field element coefficient out of range");
  }
  return encode(x.coeffs);
}

std::string Field::format(Code c) const {
  if (e_ == 1) return std::to_string(c);
  auto d = digits(c);
  std::string out;
  for (int i = e_ - 1; i >= 0; --i) {
    auto v = d[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || v != 1) out += std::to_string(v);
    if (i >= 1) out += "t";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

FieldPtr make_field(std::uint64_t p, int e) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, int>, FieldPtr> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({p, e});
    if (it != cache.end()) return it->second;
  }
  auto f = std::make_shared<const Field>(p, e);
  std::lock_guard lock(mu);
  return cache.emplace(std::make_pair(p, e), std::move(f)).first->second;
}

FieldElement frobenius(const FieldElement& x, int k, const Field& f) {
  return f.element(f.frobenius(f.code(x), k));
}

int legendre(std::int64_t a, std::uint64_t p) {
  if (p == 2) throw EvenPrime("Legendre symbol needs an odd prime");
  if (!is_prime(p)) throw NonPrime(std::to_string(p) + " is not prime");
  std::int64_t pm = static_cast<std::int64_t>(p);
  std::int64_t r = a % pm;
  if (r < 0) r += pm;
  if (r == 0) return 0;
  return powmod(static_cast<std::uint64_t>(r), (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace liequot::ff
