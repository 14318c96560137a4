#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "liequot/errors.hpp"
#include "liequot/ff.hpp"

using namespace liequot;
using Poly = std::vector<std::uint64_t>;  // low degree first

namespace {

// Schoolbook arithmetic on coefficient vectors, independent of the library.
Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  const std::size_t dm = m.size() - 1;  // m monic
  while (a.size() > dm) {
    const std::uint64_t lead = a.back() % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p * p - lead * m[i] % p) % p;
    }
    a.pop_back();
  }
  a.resize(dm, 0);
  return a;
}

Poly naive_mul(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  Poly r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(r, m, p);
}

Poly naive_add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Monic polynomial with no monic factor of degree 1..deg/2, by trial division.
bool naive_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t k = 1; 2 * k <= deg; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g(k + 1, 0);
      std::uint64_t x = c;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = x % p;
        x /= p;
      }
      g[k] = 1;
      Poly r = poly_mod(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](auto v) { return v == 0; })) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("is_prime agrees with trial division") {
  for (std::uint64_t n = 0; n < 5000; ++n) REQUIRE(ff::is_prime(n) == naive_prime(n));
  CHECK(ff::is_prime(4294967291ULL));
  CHECK_FALSE(ff::is_prime(4294967297ULL));  // 641 * 6700417
}

TEST_CASE("field construction validates its input") {
  CHECK_THROWS_AS(ff::make_field(4, 1), NonPrime);
  CHECK_THROWS_AS(ff::make_field(9, 2), NonPrime);
  CHECK_THROWS_AS(ff::make_field(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(ff::make_field(2, 13), std::invalid_argument);
  CHECK(ff::make_field(5, 1)->order() == 5);
  CHECK(ff::make_field(2, 3)->order() == 8);
  CHECK(ff::make_field(2, 3) == ff::make_field(2, 3));
}

TEST_CASE("modulus is the least monic irreducible") {
  for (auto [p, e] : std::vector<std::pair<std::uint64_t, int>>{
           {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}, {2, 6}, {3, 4}}) {
    const auto f = ff::make_field(p, e);
    const Poly& m = f->modulus();
    REQUIRE(m.size() == static_cast<std::size_t>(e) + 1);
    REQUIRE(m.back() == 1);
    REQUIRE(naive_irreducible(m, p));
    // Every smaller candidate (lexicographic from the constant term) is reducible.
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g(e + 1, 0);
      std::uint64_t x = c;
      for (int i = 0; i < e; ++i) {
        g[i] = x % p;
        x /= p;
      }
      g[e] = 1;
      if (g == m) break;
      if (std::lexicographical_compare(g.begin(), g.end(), m.begin(), m.end())) {
        REQUIRE_FALSE(naive_irreducible(g, p));
      }
    }
  }
}

TEST_CASE("tabled arithmetic matches schoolbook polynomials") {
  for (auto [p, e] : std::vector<std::pair<std::uint64_t, int>>{
           {2, 1}, {3, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2}, {5, 2}, {3, 3}, {2, 5}}) {
    const auto fp = ff::make_field(p, e);
    const auto& f = *fp;
    const auto q = f.order();
    for (ff::Code a = 0; a < q; ++a) {
      const Poly pa = f.element(a).coeffs;
      REQUIRE(f.code(f.element(a)) == a);
      for (ff::Code b = 0; b < q; ++b) {
        const Poly pb = f.element(b).coeffs;
        REQUIRE(f.element(f.add(a, b)).coeffs == naive_add(pa, pb, p));
        REQUIRE(f.element(f.mul(a, b)).coeffs == naive_mul(pa, pb, f.modulus(), p));
      }
      REQUIRE(f.add(a, f.neg(a)) == 0);
      if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == 1);
    }
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
  }
}

TEST_CASE("generic arithmetic for large fields") {
  const auto fp = ff::make_field(3, 11);  // 177147 > 2^16
  const auto& f = *fp;
  REQUIRE_FALSE(f.has_tables());
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<ff::Code> pick(1, f.order() - 1);
  for (int i = 0; i < 300; ++i) {
    const ff::Code a = pick(rng), b = pick(rng);
    REQUIRE(f.element(f.mul(a, b)).coeffs ==
            naive_mul(f.element(a).coeffs, f.element(b).coeffs, f.modulus(), 3));
    REQUIRE(f.mul(a, f.inv(a)) == 1);
    REQUIRE(f.pow(a, f.order() - 1) == 1);
  }
}

TEST_CASE("primitive element generates the multiplicative group") {
  for (auto [p, e] : std::vector<std::pair<std::uint64_t, int>>{{2, 4}, {3, 2}, {7, 1}, {13, 1}, {5, 3}}) {
    const auto f = ff::make_field(p, e);
    std::set<ff::Code> seen;
    ff::Code x = 1;
    for (std::uint64_t k = 0; k + 1 < f->order(); ++k) {
      seen.insert(x);
      REQUIRE(f->exp(k) == x);
      REQUIRE(f->log(x) == k);
      x = f->mul(x, f->primitive_element());
    }
    REQUIRE(x == 1);
    REQUIRE(seen.size() == f->order() - 1);
  }
  const auto big = ff::make_field(7, 6);  // 117649, no tables
  const auto g = big->primitive_element();
  for (std::uint64_t r : {2, 3, 7, 19, 43}) {
    REQUIRE(big->pow(g, (big->order() - 1) / r) != 1);
  }
}

TEST_CASE("frobenius is the p-th power map") {
  const auto f = ff::make_field(3, 4);
  for (ff::Code x = 0; x < f->order(); ++x) {
    REQUIRE(f->frobenius(x, 1) == f->pow(x, 3));
    REQUIRE(f->frobenius(x, 2) == f->pow(x, 9));
    REQUIRE(f->frobenius(x, 4) == x);
    REQUIRE(f->frobenius(x, 0) == x);
  }
  const auto g = ff::make_field(2, 4);
  const auto el = g->element(g->primitive_element());
  CHECK(ff::frobenius(el, 4, *g) == el);
  CHECK(g->code(ff::frobenius(el, 1, *g)) == g->mul(g->primitive_element(), g->primitive_element()));
}

TEST_CASE("legendre symbol agrees with the set of squares") {
  for (std::uint64_t p = 3; p < 200; p += 2) {
    if (!naive_prime(p)) continue;
    std::set<std::uint64_t> squares;
    for (std::uint64_t x = 1; x < p; ++x) squares.insert(x * x % p);
    for (std::int64_t a = -10; a < static_cast<std::int64_t>(p); ++a) {
      const std::uint64_t r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + p) % p);
      const int expect = r == 0 ? 0 : (squares.count(r) ? 1 : -1);
      REQUIRE(ff::legendre(a, p) == expect);
    }
  }
  CHECK_THROWS_AS(ff::legendre(3, 2), EvenPrime);
  CHECK_THROWS_AS(ff::legendre(3, 15), NonPrime);
}

TEST_CASE("from_integer reduces into the prime field") {
  const auto f = ff::make_field(5, 2);
  CHECK(f->from_integer(7) == 2);
  CHECK(f->from_integer(-1) == 4);
  CHECK(f->add(f->from_integer(3), f->from_integer(2)) == 0);
}
