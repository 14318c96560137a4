#include "liequot/lietype.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "liequot/errors.hpp"

namespace liequot::lie {

using matgrp::Matrix;
using matgrp::MatGroup;

std::string to_string(XType x) { return x == XType::A1 ? "A1" : "A2"; }

XType parse_xtype(const std::string& s) {
  if (s == "A1") return XType::A1;
  if (s == "A2") return XType::A2;
  throw InputError("unknown Lie type '" + s + "' (expected A1 or A2)");
}

LieClass LieClass::make(XType xtype, int d) {
  if (d != 1 && d != 2) throw InputError("twist d must be 1 or 2");
  if (d == 2 && xtype != XType::A2) throw InputError("A1 has no twisted form");
  return LieClass{xtype, d};
}

std::string LieClass::name() const { return (d == 2 ? "2" : "") + to_string(xtype); }

PrimePower prime_power(std::uint64_t q) {
  if (q < 2) throw BadQ("q = " + std::to_string(q) + " is not a prime power");
  std::uint64_t p = q;
  for (std::uint64_t t = 2; t * t <= q; ++t) {
    if (q % t == 0) {
      p = t;
      break;
    }
  }
  int e = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw BadQ("q = " + std::to_string(q) + " is not a prime power");
  return {q, p, e};
}

void check_q(const LieClass& c, std::uint64_t q) {
  prime_power(q);
  if (c.d == 2 && q < 3) throw BadQ("PSU_3(2) is not simple; unitary classes need q >= 3");
}

namespace {

using u128 = unsigned __int128;

std::uint64_t narrow(u128 v) {
  if (v > static_cast<u128>(UINT64_MAX)) throw std::overflow_error("group order exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

u128 mul_checked(u128 a, u128 b) {
  if (a != 0 && b > (~u128{0}) / a) throw std::overflow_error("group order exceeds 128 bits");
  return a * b;
}

u128 ipow(u128 b, int k) {
  u128 r = 1;
  for (int i = 0; i < k; ++i) r = mul_checked(r, b);
  return r;
}

std::vector<int> divisors(int f) {
  std::vector<int> out;
  for (int e = 1; e <= f; ++e) {
    if (f % e == 0) out.push_back(e);
  }
  return out;
}

ff::Code omega(const ff::Field& f) { return f.primitive_element(); }

Matrix elementary(const ff::FieldPtr& f, std::size_t n, std::size_t i, std::size_t j,
                  ff::Code a) {
  Matrix m = Matrix::identity(f, n);
  m.set(i, j, a);
  return m;
}

Matrix cycle(const ff::FieldPtr& f, std::size_t n) {
  Matrix m(f, n);
  for (std::size_t i = 0; i < n; ++i) m.set((i + 1) % n, i, 1);
  return m;
}

Matrix antidiagonal(const ff::FieldPtr& f, std::size_t n) {
  Matrix m(f, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, n - 1 - i, 1);
  return m;
}

Matrix bar(const Matrix& g, int e) { return g.frobenius(e); }

bool preserves_form(const Matrix& g, const Matrix& j, int e) {
  return g * j * bar(g, e).transpose() == j;
}

// Unitriangular [[1, a, b], [0, 1, c], [0, 0, 1]] preserving the antidiagonal
// hermitian form, for the given a.
std::optional<Matrix> unitary_unipotent(const ff::FieldPtr& f, int e, ff::Code a) {
  const Matrix j = antidiagonal(f, 3);
  const std::uint64_t Q = f->order();
  for (ff::Code b = 0; b < Q; ++b) {
    for (ff::Code c = 0; c < Q; ++c) {
      Matrix u = Matrix::identity(f, 3);
      u.set(0, 1, a);
      u.set(0, 2, b);
      u.set(1, 2, c);
      if (preserves_form(u, j, e)) return u;
    }
  }
  return std::nullopt;
}

std::vector<Matrix> extra_generators(const LieClass& c, std::uint64_t q) {
  // Further root elements used when the standard set falls short.
  auto f = matrix_field(c, q);
  const std::size_t n = static_cast<std::size_t>(c.natural_dim());
  std::vector<Matrix> out;
  const ff::Code w = omega(*f);
  if (c.d == 1) {
    out.push_back(elementary(f, n, 0, 1, w));
    out.push_back(elementary(f, n, 1, 0, 1));
  } else {
    const int e = prime_power(q).e;
    if (auto u = unitary_unipotent(f, e, w)) out.push_back(*u);
    if (auto u = unitary_unipotent(f, e, 1)) out.push_back(u->transpose().frobenius(e));
  }
  return out;
}

MatGroup validated(const LieClass& c, std::uint64_t q, Variant v, std::size_t cap) {
  check_q(c, q);
  const std::uint64_t expected = group_order(c, q, v);
  if (expected > cap) {
    throw CapExceeded("group order " + std::to_string(expected) + " exceeds enumeration cap " +
                      std::to_string(cap));
  }
  std::vector<Matrix> adj;
  for (const auto& g : natural_generators(c, q, v)) adj.push_back(adjoint_matrix(g));
  const auto extras = extra_generators(c, q);
  for (std::size_t k = 0;; ++k) {
    MatGroup g;
    try {
      g = matgrp::close_group(adj, expected);
    } catch (const CapExceeded&) {
      throw InvariantError("generators for " + c.name() + "(" + std::to_string(q) +
                           ") exceed the order formula");
    }
    if (g.order() == expected) return g;
    if (k >= extras.size()) {
      throw InvariantError("generators for " + c.name() + "(" + std::to_string(q) +
                           ") fall short of the order formula");
    }
    adj.push_back(adjoint_matrix(extras[k]));
  }
}

}  // namespace

std::uint64_t group_order(const LieClass& c, std::uint64_t q, Variant v) {
  prime_power(q);
  const int n = c.natural_dim();
  const u128 Q = q;
  u128 order = ipow(Q, n * (n - 1) / 2);
  for (int i = 2; i <= n; ++i) {
    u128 qi = ipow(Q, i);
    if (c.d == 1) {
      order = mul_checked(order, qi - 1);
    } else {
      order = mul_checked(order, i % 2 == 0 ? qi - 1 : qi + 1);
    }
  }
  if (v == Variant::simple) {
    const std::uint64_t g =
        std::gcd<std::uint64_t>(static_cast<std::uint64_t>(n), c.d == 1 ? q - 1 : q + 1);
    order /= g;
  }
  return narrow(order);
}

ff::FieldPtr matrix_field(const LieClass& c, std::uint64_t q) {
  const auto pp = prime_power(q);
  return ff::make_field(pp.p, c.d == 2 ? 2 * pp.e : pp.e);
}

std::vector<Matrix> natural_generators(const LieClass& c, std::uint64_t q, Variant v) {
  check_q(c, q);
  auto f = matrix_field(c, q);
  const std::size_t n = static_cast<std::size_t>(c.natural_dim());
  const ff::Code w = omega(*f);
  std::vector<Matrix> gens;
  if (c.d == 1) {
    std::vector<ff::Code> diag(n, 1);
    diag[0] = w;
    if (v == Variant::simple) diag[1] = f->inv(w);
    gens.push_back(Matrix::diagonal(f, diag));
    gens.push_back(elementary(f, n, 0, 1, 1));
    if (v == Variant::inner_diagonal) {
      gens.push_back(cycle(f, n));
      Matrix t = Matrix::identity(f, n);
      t.set(0, 0, 0);
      t.set(1, 1, 0);
      t.set(0, 1, 1);
      t.set(1, 0, 1);
      gens.push_back(std::move(t));
    } else {
      Matrix s = Matrix::identity(f, n);
      s.set(0, 0, 0);
      s.set(1, 1, 0);
      s.set(0, 1, 1);
      s.set(1, 0, f->neg(1));
      gens.push_back(std::move(s));
      if (n == 3) gens.push_back(cycle(f, n));
    }
    return gens;
  }

  const int e = prime_power(q).e;
  const Matrix j = antidiagonal(f, 3);
  const ff::Code wq = f->pow(w, q);        // w^q
  const ff::Code w_mq = f->inv(wq);        // w^-q
  if (v == Variant::inner_diagonal) {
    gens.push_back(Matrix::diagonal(f, {w, 1, w_mq}));
  } else {
    gens.push_back(Matrix::diagonal(f, {w, f->div(wq, w), w_mq}));
  }
  auto u = unitary_unipotent(f, e, 1);
  if (!u) throw InvariantError("no unitary unipotent element found");
  gens.push_back(*u);
  gens.push_back(v == Variant::inner_diagonal ? j : j.scaled(f->neg(1)));
  for (const auto& g : gens) {
    if (!preserves_form(g, j, e)) throw InvariantError("unitary generator leaves the form");
  }
  return gens;
}

Matrix adjoint_matrix(const Matrix& g) {
  const std::size_t n = g.dim();
  const auto& fp = g.field_ptr();
  const auto& f = *fp;
  const Matrix gi = g.inverse();
  const std::size_t m = n * n - 1;
  Matrix out(fp, m);
  // Column (a, b) holds g E_ab g^-1 = (column a of g)(row b of g^-1), reduced
  // modulo scalars by subtracting its (n, n) entry times the identity.
  for (std::size_t col = 0; col < m; ++col) {
    const std::size_t a = col / n;
    const std::size_t b = col % n;
    const ff::Code corner = f.mul(g(n - 1, a), gi(b, n - 1));
    for (std::size_t row = 0; row < m; ++row) {
      const std::size_t i = row / n;
      const std::size_t j = row % n;
      ff::Code x = f.mul(g(i, a), gi(b, j));
      if (i == j) x = f.sub(x, corner);
      out.set(row, col, x);
    }
  }
  return out;
}

MatGroup build_id_group(const LieClass& c, std::uint64_t q, std::size_t cap) {
  return validated(c, q, Variant::inner_diagonal, cap);
}

MatGroup build_simple_group(const LieClass& c, std::uint64_t q, std::size_t cap) {
  return validated(c, q, Variant::simple, cap);
}

std::vector<std::size_t> adjoint_factor_dims(const LieClass& c, std::uint64_t p) {
  if (!ff::is_prime(p)) throw NonPrime(std::to_string(p) + " is not prime");
  const std::size_t n = static_cast<std::size_t>(c.natural_dim());
  if (n % p == 0) return {n * n - 2, 1};
  return {n * n - 1};
}

bool includes(int d, int e, int f) {
  if (d < 1 || e < 1 || f < 1) throw std::invalid_argument("includes needs positive arguments");
  return f % e == 0 && std::gcd(d, f / e) == 1;
}

std::uint64_t d_part(int d, std::uint64_t e) {
  if (d < 1 || e < 1) throw std::invalid_argument("d_part needs positive arguments");
  if (d == 1) return 1;
  std::uint64_t r = 1;
  while (e % static_cast<std::uint64_t>(d) == 0) {
    e /= static_cast<std::uint64_t>(d);
    r *= static_cast<std::uint64_t>(d);
  }
  return r;
}

std::uint64_t common_overfield(int d, const std::vector<std::uint64_t>& exponents) {
  if (exponents.empty()) throw std::invalid_argument("common_overfield needs exponents");
  const std::uint64_t part = d_part(d, exponents.front());
  std::uint64_t g = 1;
  for (auto e : exponents) {
    if (d_part(d, e) != part) throw MixedDParts("exponents have different d-parts");
    g = std::lcm(g, e);
  }
  // With equal d-parts the lcm already has the right d-part; scan upward in
  // case d is composite.
  for (std::uint64_t cand = g;; cand += g) {
    bool ok = true;
    for (auto e : exponents) {
      if (!includes(d, static_cast<int>(e), static_cast<int>(cand))) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
}

std::vector<ExceptionRow> exception_rows() {
  auto none = [](std::uint64_t) -> std::optional<std::uint64_t> { return std::nullopt; };
  std::vector<ExceptionRow> rows;
  rows.push_back({"C_n(q)", "p=2", "D_n^e(q0), D_n^e(q0).2 (e = +/-, F_q0 in F_q)", none, false});
  rows.push_back({"C_4(q)", "p=2", "3D_4(q0) (F_{q0^3} in F_q)", none, false});
  rows.push_back({"C_3(q)", "p=2", "G_2(q0) (F_q0 in F_q)", none, false});
  rows.push_back({"C_2(q)", "p=2", "H <= Sp_2(q^2).2",
                  [](std::uint64_t q) -> std::optional<std::uint64_t> {
                    return 2 * q * q * (q * q * q * q - 1);
                  },
                  false});
  rows.push_back({"2B_2(q)", "p=2", "H <= (q +/- sqrt(2q) + 1).4",
                  [](std::uint64_t q) -> std::optional<std::uint64_t> {
                    auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(2.0 * q)));
                    return 4 * (q + r + 1);
                  },
                  false});
  rows.push_back({"A_1(q)", "p=2", "H <= (q +/- 1).2 (subgroups of a torus normalizer)",
                  [](std::uint64_t q) -> std::optional<std::uint64_t> { return 2 * (q + 1); },
                  true});
  return rows;
}

std::vector<ExceptionRow> exceptions_for(XType x, std::uint64_t p) {
  std::vector<ExceptionRow> out;
  if (x == XType::A1 && p == 2) {
    for (auto& r : exception_rows()) {
      if (r.xtype == "A_1(q)") out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<Sandwich> same_type_candidates(const LieClass& c, std::uint64_t q) {
  check_q(c, q);
  const auto pp = prime_power(q);
  std::vector<Sandwich> out;
  auto push = [&](const LieClass& cls, int e0, int twist) {
    std::uint64_t q0 = 1;
    for (int i = 0; i < e0; ++i) q0 *= pp.p;
    if (cls.xtype == XType::A1 && q0 < 4) return;
    if (cls.d == 2 && q0 < 3) return;
    try {
      out.push_back({q0, e0, twist, group_order(cls, q0, Variant::simple),
                     group_order(cls, q0, Variant::inner_diagonal)});
    } catch (const std::overflow_error&) {
      // Far beyond anything enumerable.
    }
  };
  for (int e0 : divisors(pp.e)) {
    if (c.d == 1) {
      push(LieClass{c.xtype, 1}, e0, 1);
      if (c.xtype == XType::A2 && pp.e % (2 * e0) == 0) push(LieClass{XType::A2, 2}, e0, 2);
    } else if (includes(2, e0, pp.e)) {
      push(LieClass{XType::A2, 2}, e0, 2);
    }
  }
  return out;
}

}  // namespace liequot::lie
