#include <catch_amalgamated.hpp>

#include <numeric>

#include "liequot/errors.hpp"
#include "liequot/lietype.hpp"

using namespace liequot;
using lie::LieClass;
using lie::Variant;
using lie::XType;

namespace {

const LieClass A1 = LieClass::make(XType::A1, 1);
const LieClass A2 = LieClass::make(XType::A2, 1);
const LieClass U3 = LieClass::make(XType::A2, 2);

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("prime powers and q validation") {
  CHECK(lie::prime_power(27).p == 3);
  CHECK(lie::prime_power(27).e == 3);
  CHECK(lie::prime_power(2).e == 1);
  CHECK_THROWS_AS(lie::prime_power(12), BadQ);
  CHECK_THROWS_AS(lie::prime_power(1), BadQ);
  CHECK_THROWS_AS(lie::check_q(U3, 2), BadQ);
  CHECK_NOTHROW(lie::check_q(U3, 3));
  CHECK_THROWS_AS(LieClass::make(XType::A1, 2), InputError);
  CHECK_THROWS_AS(lie::parse_xtype("B2"), InputError);
  CHECK(U3.name() == "2A2");
  CHECK(A1.adjoint_dim() == 3);
  CHECK(A2.adjoint_dim() == 8);
}

TEST_CASE("order formulas") {
  CHECK(lie::group_order(A1, 7, Variant::inner_diagonal) == 336);
  CHECK(lie::group_order(A1, 7, Variant::simple) == 168);
  CHECK(lie::group_order(A1, 8, Variant::simple) == 504);
  CHECK(lie::group_order(A2, 4, Variant::simple) == 20160);
  CHECK(lie::group_order(A2, 4, Variant::inner_diagonal) == 60480);
  CHECK(lie::group_order(U3, 3, Variant::inner_diagonal) == 6048);
  CHECK(lie::group_order(U3, 3, Variant::simple) == 6048);
  CHECK(lie::group_order(U3, 5, Variant::simple) == 126000);
  CHECK(lie::group_order(U3, 5, Variant::inner_diagonal) == 378000);
}

TEST_CASE("enumerated groups match the formulas") {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    REQUIRE(lie::build_id_group(A1, q).order() == lie::group_order(A1, q, Variant::inner_diagonal));
    REQUIRE(lie::build_simple_group(A1, q).order() == lie::group_order(A1, q, Variant::simple));
  }
  CHECK(lie::build_id_group(A2, 2).order() == 168);
  CHECK(lie::build_id_group(A2, 3).order() == 5616);
  CHECK(lie::build_id_group(U3, 3).order() == 6048);
  CHECK(lie::build_id_group(U3, 3).dim() == 8);
  CHECK(lie::matrix_field(U3, 3)->order() == 9);
  CHECK_THROWS_AS(lie::build_id_group(A2, 4, 1000), CapExceeded);
}

TEST_CASE("unitary generators preserve the hermitian form") {
  for (std::uint64_t q : {3, 4, 5}) {
    const auto gens = lie::natural_generators(U3, q, Variant::inner_diagonal);
    const auto f = lie::matrix_field(U3, q);
    const auto J = matgrp::Matrix::from_rows(f, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    const int k = lie::prime_power(q).e;
    for (const auto& g : gens) {
      REQUIRE(g * J * g.frobenius(k).transpose() == J);
    }
    for (const auto& g : lie::natural_generators(U3, q, Variant::simple)) {
      REQUIRE(g.determinant() == 1);
    }
  }
}

TEST_CASE("adjoint action is a homomorphism") {
  const auto gens = lie::natural_generators(A2, 3, Variant::inner_diagonal);
  const auto& a = gens[0];
  const auto& b = gens[1];
  CHECK(lie::adjoint_matrix(a * b) == lie::adjoint_matrix(a) * lie::adjoint_matrix(b));
  const auto f = a.field_ptr();
  const auto s = matgrp::Matrix::identity(f, 3).scaled(2);
  CHECK(lie::adjoint_matrix(s).is_identity());
}

TEST_CASE("inclusion truth table against the definition") {
  for (int d = 1; d <= 3; ++d)
    for (int e = 1; e <= 12; ++e)
      for (int f = 1; f <= 12; ++f) {
        const bool expect = f % e == 0 && std::gcd(d, f / e) == 1;
        REQUIRE(lie::includes(d, e, f) == expect);
      }
  CHECK_FALSE(lie::includes(2, 1, 2));
  CHECK(lie::includes(2, 1, 3));
}

TEST_CASE("d-parts and common overfields") {
  for (int d = 1; d <= 3; ++d)
    for (std::uint64_t e = 1; e <= 200; ++e) {
      std::uint64_t part = 1;
      if (d > 1)
        while (e % (part * d) == 0) part *= d;
      REQUIRE(lie::d_part(d, e) == part);
    }
  CHECK(lie::common_overfield(2, {3, 5}) == 15);
  CHECK(lie::common_overfield(2, {2, 6}) == 6);
  CHECK_THROWS_AS(lie::common_overfield(2, {1, 2}), MixedDParts);
  CHECK(lie::common_overfield(1, {4, 6}) == 12);
  // The overfield includes every input.
  for (std::uint64_t a = 1; a <= 12; ++a)
    for (std::uint64_t b = 1; b <= 12; ++b) {
      if (lie::d_part(2, a) != lie::d_part(2, b)) continue;
      const auto n = lie::common_overfield(2, {a, b});
      REQUIRE(lie::includes(2, static_cast<int>(a), static_cast<int>(n)));
      REQUIRE(lie::includes(2, static_cast<int>(b), static_cast<int>(n)));
    }
}

TEST_CASE("same-type candidates") {
  const auto c64 = lie::same_type_candidates(A1, 64);
  std::vector<std::uint64_t> q0s;
  for (const auto& s : c64) q0s.push_back(s.q0);
  CHECK(q0s == std::vector<std::uint64_t>{4, 8, 64});  // PSL_2(2) is not simple
  const auto c9 = lie::same_type_candidates(A2, 9);
  bool unitary3 = false;
  for (const auto& s : c9) unitary3 |= s.twist == 2 && s.q0 == 3 && s.simple_order == 6048;
  CHECK(unitary3);
  const auto u8 = lie::same_type_candidates(U3, 8);
  for (const auto& s : u8) CHECK(lie::includes(2, s.e0, 3));
  for (const auto& s : lie::same_type_candidates(A2, 16)) {
    CHECK(s.id_order % s.simple_order == 0);
    CHECK(s.q0 == ipow(2, s.e0));
  }
}

TEST_CASE("exception rows") {
  const auto rows = lie::exception_rows();
  CHECK(rows.size() == 6);
  const auto a1p2 = lie::exceptions_for(XType::A1, 2);
  REQUIRE_FALSE(a1p2.empty());
  bool bounded = false;
  for (const auto& r : a1p2)
    if (r.order_bound)
      if (auto b = r.order_bound(8)) bounded |= *b == 18;
  CHECK(bounded);
}
