#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "liequot/errors.hpp"
#include "liequot/lietype.hpp"
#include "liequot/matgroup.hpp"

using namespace liequot;
using matgrp::Index;
using matgrp::MatGroup;
using matgrp::Matrix;

namespace {

std::set<Matrix> naive_closure(const std::vector<Matrix>& gens) {
  std::set<Matrix> seen{Matrix::identity(gens[0].field_ptr(), gens[0].dim())};
  std::vector<Matrix> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Matrix y = x * g;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

std::vector<Matrix> gl2_gens(std::uint64_t p) {
  const auto f = ff::make_field(p, 1);
  return {Matrix::from_rows(f, {{static_cast<std::int64_t>(f->primitive_element()), 0}, {0, 1}}),
          Matrix::from_rows(f, {{1, 1}, {0, 1}}), Matrix::from_rows(f, {{1, 0}, {1, 1}})};
}

}  // namespace

TEST_CASE("closure agrees with a naive set closure") {
  for (std::uint64_t p : {2, 3, 5}) {
    const auto gens = gl2_gens(p);
    const auto naive = naive_closure(gens);
    const MatGroup g = matgrp::close_group(gens);
    REQUIRE(g.order() == naive.size());
    REQUIRE(g.order() == (p * p - 1) * (p * p - p));
    Index i = 0;
    for (const auto& m : naive) {
      // Canonical order is the sorted matrix order.
      REQUIRE(g.element(i) == m);
      REQUIRE(g.index_of(m) == i);
      ++i;
    }
  }
}

TEST_CASE("index arithmetic matches matrix arithmetic") {
  const MatGroup g = matgrp::close_group(gl2_gens(3));
  REQUIRE(g.has_table());
  for (Index a = 0; a < g.order(); ++a) {
    REQUIRE(g.element(g.inv(a)) == g.element(a).inverse());
    for (Index b = 0; b < g.order(); b += 5) {
      REQUIRE(g.element(g.mul(a, b)) == g.element(a) * g.element(b));
      REQUIRE(g.element(g.conj(a, b)) == g.element(b).conjugated_by(g.element(a)));
      REQUIRE(g.element(g.commutator(a, b)) == g.element(a).inverse() * g.element(b).inverse() *
                                                   g.element(a) * g.element(b));
    }
  }
  CHECK(g.element(g.identity()).is_identity());
  for (std::size_t k = 0; k < g.generators().size(); ++k) {
    CHECK(g.element(g.generator_indices()[k]) == g.generators()[k]);
  }
  CHECK_FALSE(g.index_of(Matrix::from_rows(g.field_ptr(), {{1, 1}, {1, 1}})));
}

TEST_CASE("conjugacy classes partition the group") {
  const MatGroup g = matgrp::close_group(gl2_gens(3));  // GL_2(3), 8 classes
  const auto& cls = g.classes();
  CHECK(cls.size() == 8);
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < cls.size(); ++c) {
    total += cls[c].size;
    std::set<Index> orbit;
    for (Index x = 0; x < g.order(); ++x) orbit.insert(g.conj(x, cls[c].representative));
    REQUIRE(orbit.size() == cls[c].size);
    REQUIRE(*orbit.begin() == cls[c].representative);
    for (Index y : orbit) REQUIRE(g.class_of(y) == c);
  }
  CHECK(total == g.order());
  const auto& ord = g.element_orders();
  for (Index x = 0; x < g.order(); ++x) REQUIRE(ord[x] == matgrp::element_order(g.element(x)));
}

TEST_CASE("derived series, perfectness and simplicity") {
  const MatGroup gl = matgrp::close_group(gl2_gens(3));
  const auto d1 = gl.derived(gl.whole());
  CHECK(d1.order() == 24);  // SL_2(3)
  CHECK(gl.derived(d1).order() == 8);  // Q_8
  CHECK_FALSE(gl.is_perfect(d1));
  CHECK_FALSE(matgrp::is_centerless(gl));

  const auto a1 = lie::LieClass::make(lie::XType::A1, 1);
  const MatGroup psl7 = lie::build_simple_group(a1, 7);
  CHECK(psl7.order() == 168);
  CHECK(matgrp::is_perfect(psl7));
  CHECK(matgrp::is_simple(psl7));
  CHECK(matgrp::is_centerless(psl7));
  const MatGroup pgl7 = lie::build_id_group(a1, 7);
  CHECK_FALSE(matgrp::is_simple(pgl7));
  CHECK(matgrp::derived_subgroup(pgl7).order() == 168);

  const auto sl25 = lie::natural_generators(a1, 5, lie::Variant::simple);
  const MatGroup sl = matgrp::close_group(sl25);
  CHECK(sl.order() == 120);
  CHECK(matgrp::is_perfect(sl));
  CHECK_FALSE(matgrp::is_simple(sl));  // center {+-1}
}

TEST_CASE("subgroups, normal closure and normalizers") {
  const auto a1 = lie::LieClass::make(lie::XType::A1, 1);
  const MatGroup g = lie::build_id_group(a1, 5);  // PGL_2(5) = S_5
  const auto& ord = g.element_orders();
  Index t = 0;
  while (ord[t] != 2 || g.classes()[g.class_of(t)].size != 10) ++t;  // a transposition
  const Index gens[] = {t};
  const auto s = g.closure(gens);
  CHECK(s.order() == 2);
  CHECK(s.contains(t));
  const auto all = g.whole();
  const auto n = g.normal_closure(gens, all.elements);
  CHECK(n.order() == 120);

  const auto sub = g.materialize(s);
  CHECK(sub.order() == 2);
  CHECK(matgrp::normalizer(sub, g).order() == 12);  // C_2 x S_3
  const auto cls = g.subgroup_classes(g.derived(all));
  CHECK(cls.size() == 5);  // A_5

  std::vector<Matrix> foreign{Matrix::identity(ff::make_field(7, 1), 3)};
  CHECK_THROWS_AS(matgrp::normalizer(matgrp::close_group(foreign), g), NotSubgroup);
}

TEST_CASE("closure respects the cap") {
  CHECK_THROWS_AS(matgrp::close_group(gl2_gens(5), 100), CapExceeded);
  CHECK_NOTHROW(matgrp::close_group(gl2_gens(5), 480));
}
