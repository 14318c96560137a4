#include <catch_amalgamated.hpp>

#include <cmath>

#include "liequot/detector.hpp"
#include "liequot/errors.hpp"

using namespace liequot;
using detector::Verdict;

namespace {

const lie::LieClass A1 = lie::LieClass::make(lie::XType::A1, 1);

phi::PhiRecord fake(std::uint64_t q, std::uint64_t n_phi, std::uint64_t orbits) {
  phi::PhiRecord r;
  r.cls = A1;
  r.q = q;
  r.n_phi = n_phi;
  r.orbit_count = orbits;
  return r;
}

}  // namespace

TEST_CASE("log-log fit recovers exact power laws") {
  std::vector<std::pair<double, double>> pts;
  for (double x : {3.0, 5.0, 7.0, 11.0}) pts.emplace_back(x, 2.5 * std::pow(x, 4.0));
  const auto f = detector::loglog_fit(pts);
  CHECK(f.rho == Catch::Approx(4.0).margin(1e-9));
  CHECK(std::exp(f.intercept) == Catch::Approx(2.5).epsilon(1e-9));
  REQUIRE(f.ci_low);
  CHECK(*f.ci_low == Catch::Approx(4.0).margin(1e-6));
  CHECK(*f.ci_high == Catch::Approx(4.0).margin(1e-6));
  CHECK_FALSE(detector::loglog_fit({{2.0, 4.0}, {4.0, 16.0}}).ci_low);
}

TEST_CASE("verdict rules on synthetic records") {
  const std::vector<std::uint64_t> qs{4, 5, 7, 8, 9};
  auto zero = [](std::uint64_t q) { return fake(q, 0, 0); };
  CHECK(detector::growth_scan(A1, qs, zero).verdict == Verdict::NoQuotients);

  auto cubic6 = [](std::uint64_t q) {
    const auto h = q * (q * q - 1);
    return fake(q, h * q * q * q, q * q * q);
  };
  const auto g = detector::growth_scan(A1, qs, cubic6);
  CHECK(g.verdict == Verdict::SuperlinearGrowth);
  REQUIRE(g.fit);
  CHECK(std::abs(g.fit->rho - 6.0) < 0.5);

  auto bounded = [](std::uint64_t q) {
    const auto h = q * (q * q - 1);
    return fake(q, (q % 2) ? h : 0, (q % 2) ? 1 : 0);
  };
  CHECK(detector::growth_scan(A1, qs, bounded).verdict == Verdict::BoundedOrbitCounts);

  auto large = [](std::uint64_t q) {
    const auto h = q * (q * q - 1);
    return fake(q, q == 9 ? 50 * h : 0, q == 9 ? 50 : 0);
  };
  CHECK(detector::growth_scan(A1, qs, large).verdict == Verdict::Inconclusive);
  CHECK_THROWS_AS(detector::growth_scan(A1, {}, zero), InputError);
}

TEST_CASE("verdict JSON carries the disclaimer") {
  auto zero = [](std::uint64_t q) { return fake(q, 0, 0); };
  const auto j = detector::to_json(detector::growth_scan(A1, {5, 7}, zero));
  CHECK(j["verdict"] == "NoQuotients");
  CHECK(j["disclaimer"] == detector::kDisclaimer);
}

TEST_CASE("period proposals") {
  using Bits = std::vector<bool>;
  CHECK(detector::propose_period(Bits{1, 0, 1, 0, 1, 0}) == std::make_pair(1, 2));
  CHECK(detector::propose_period(Bits{0, 0, 0, 0}) == std::make_pair(1, 1));
  CHECK(detector::propose_period(Bits{0, 1, 1, 1}) == std::make_pair(2, 1));
  CHECK(detector::propose_period(Bits{1, 1, 0, 1, 1, 0, 1}) == std::make_pair(1, 3));
  CHECK_FALSE(detector::propose_period(Bits{}));
  CHECK_FALSE(detector::propose_period(Bits{1}));
  // Exhaustive: any proposal reproduces the bits.
  for (unsigned mask = 0; mask < (1u << 9); ++mask) {
    Bits b;
    for (int i = 0; i < 9; ++i) b.push_back((mask >> i) & 1u);
    const auto bn = detector::propose_period(b);
    if (!bn) {
      REQUIRE(b[7] != b[8]);  // a constant tail always gives N = 1
      continue;
    }
    const auto [B, N] = *bn;
    REQUIRE(9 - B + 1 >= 2 * N);
    for (int e = B; e + N <= 9; ++e) REQUIRE(b[e - 1] == b[e + N - 1]);
  }
}

TEST_CASE("residue scan on exact records") {
  const auto hur = fp::parse_presentation("<x,y | x^2, y^3, (x*y)^7>");
  const auto r = detector::residue_scan(2, A1, hur, 4);
  // q = 2, 4, 8, 16: only PSL_2(8) is a Hurwitz image.
  CHECK(r.bits == std::vector<bool>{false, false, true, false});
  CHECK_FALSE(r.truncated);
  CHECK_THROWS_AS(detector::residue_scan(4, A1, hur, 2), NonPrime);

  auto budgeted = [](std::uint64_t q) -> phi::PhiRecord {
    if (q > 9) throw CapExceeded("too big");
    return fake(q, 0, 0);
  };
  const auto t = detector::residue_scan(3, 5, budgeted);
  CHECK(t.truncated);
  CHECK(t.exponents == std::vector<int>{1, 2});
}

TEST_CASE("untwisted cross-check") {
  const auto trivial = fp::parse_presentation("<x | x>");
  const auto rep = detector::untwisted_crosscheck(trivial, {3}, 50, 1);
  REQUIRE(rep.rows.size() == 1);
  REQUIRE(rep.rows[0].unitary);
  REQUIRE(rep.rows[0].linear);
  CHECK(rep.rows[0].unitary->images.empty());
  CHECK(rep.rows[0].linear->images.empty());
  CHECK(rep.unmatched_characteristics.empty());
  const auto skipped = detector::untwisted_crosscheck(trivial, {3}, 10, 1, 100);
  CHECK_FALSE(skipped.rows[0].unitary);
  CHECK_FALSE(skipped.rows[0].note.empty());
}
