// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "liequot/detector.hpp"
#include "liequot/errors.hpp"
#include "liequot/phi.hpp"
#include "liequot/unitary.hpp"

using namespace liequot;

namespace {

// Pinned tolerances and windows.
constexpr double kRhoTarget = 6.0;
constexpr double kRhoTolerance = 0.5;
const std::vector<std::uint64_t> kWindow{4, 5, 7, 8, 9, 11, 13};
constexpr int kConjugationTrials = 500;
constexpr std::uint64_t kP7Limit = 100'000;
constexpr std::uint64_t kMuQLimit = 500;

const lie::LieClass A1 = lie::LieClass::make(lie::XType::A1, 1);
const lie::LieClass A2 = lie::LieClass::make(lie::XType::A2, 1);
const lie::LieClass U3 = lie::LieClass::make(lie::XType::A2, 2);

const std::string kFree = "<a,b | >";
const std::string kHurwitz = "<x,y | x^2, y^3, (x*y)^7>";
const std::string kTriangle334 = "<x,y | x^3, y^3, (x*y)^4>";

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(1);
  line << (o.pass ? "PASS" : "FAIL") << " [" << n << "] " << name << ": " << o.detail << " (" << secs
       << "s)";
  std::cout << line.str() << std::endl;
}

// Records shared by the orbit and growth criteria.
std::map<std::pair<std::string, std::uint64_t>, phi::PhiRecord> records;

const phi::PhiRecord& record(const std::string& text, std::uint64_t q) {
  auto key = std::make_pair(text, q);
  auto it = records.find(key);
  if (it != records.end()) return it->second;
  const phi::Target t(A1, q);
  return records.emplace(key, phi::compute_record(fp::parse_presentation(text), t)).first->second;
}

// Relator check over all pairs by raw index multiplication.
std::uint64_t naive_pair_count(const fp::Presentation& p, const matgrp::MatGroup& g) {
  std::uint64_t n = 0;
  const auto N = static_cast<matgrp::Index>(g.order());
  for (matgrp::Index a = 0; a < N; ++a)
    for (matgrp::Index b = 0; b < N; ++b) {
      bool ok = true;
      for (const auto& w : p.relators()) {
        matgrp::Index acc = g.identity();
        for (int l : w.letters) {
          const matgrp::Index x = std::abs(l) == 1 ? a : b;
          acc = g.mul(acc, l > 0 ? x : g.inv(x));
        }
        if (acc != g.identity()) {
          ok = false;
          break;
        }
      }
      n += ok;
    }
  return n;
}

Outcome orbit_freeness() {
  int cases = 0;
  for (const auto& text : {kFree, kHurwitz, kTriangle334}) {
    for (auto q : kWindow) {
      const auto& r = record(text, q);
      const auto h = q * (q * q - 1);
      if (r.n_phi % h != 0) {
        return {false, text + " q=" + std::to_string(q) + ": " + std::to_string(r.n_phi) +
                           " not divisible by " + std::to_string(h)};
      }
      ++cases;
    }
  }
  return {true, std::to_string(cases) + " cases divisible by |PGL2(q)|"};
}

Outcome counting_equivalence() {
  const std::vector<std::string> texts{kHurwitz, kTriangle334, kFree, "<x,y | x^2, y^2>",
                                       "<x,y | x y x^-1 y^-2>"};
  std::vector<std::pair<std::string, matgrp::MatGroup>> groups;
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    groups.emplace_back("PGL2(" + std::to_string(q) + ")", lie::build_id_group(A1, q));
    groups.emplace_back("PSL2(" + std::to_string(q) + ")", lie::build_simple_group(A1, q));
  }
  groups.emplace_back("PGL3(2)", lie::build_id_group(A2, 2));
  int checked = 0;
  for (const auto& [name, g] : groups) {
    if (g.order() > 400) continue;
    for (const auto& text : texts) {
      const auto p = fp::parse_presentation(text);
      const auto fast = phi::count_phi0(p, g);
      const auto slow = naive_pair_count(p, g);
      if (fast != slow) {
        return {false, name + " " + text + ": " + std::to_string(fast) + " vs " + std::to_string(slow)};
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " group/presentation pairs agree exactly"};
}

Outcome counting_identity() {
  std::string detail;
  for (std::uint64_t q : {5, 7}) {
    const phi::Target t(A1, q);
    for (const auto& text : {kHurwitz, kFree}) {
      const auto r = phi::counting_identity_check(fp::parse_presentation(text), t);
      std::ostringstream s;
      s << "q=" << q << (text == kFree ? " free " : " hurwitz ") << r.lhs << "=" << r.rhs;
      if (!r.holds) return {false, s.str()};
      detail += (detail.empty() ? "" : ", ") + s.str();
    }
  }
  return {true, detail};
}

Outcome hurwitz_landscape() {
  const auto p = fp::parse_presentation(kHurwitz);
  std::string detail;
  bool ok = true;
  for (auto [q, positive] : std::vector<std::pair<std::uint64_t, bool>>{
           {7, true}, {8, true}, {13, true}, {27, true}, {11, false}, {25, false}}) {
    const auto s = phi::sj_oracle(p, lie::build_simple_group(A1, q));
    ok = ok && ((s > 0) == positive);
    detail += (detail.empty() ? "" : ", ") + std::string("s(PSL2(") + std::to_string(q) +
              "))=" + std::to_string(s);
  }
  return {ok, detail};
}

Outcome growth_discrimination() {
  const auto free_v = detector::growth_scan(A1, kWindow, [](std::uint64_t q) { return record(kFree, q); });
  const auto hur_v = detector::growth_scan(A1, kWindow, [](std::uint64_t q) { return record(kHurwitz, q); });
  std::ostringstream s;
  s << "free " << detector::to_string(free_v.verdict);
  if (free_v.fit) s << " rho=" << free_v.fit->rho;
  s << ", hurwitz " << detector::to_string(hur_v.verdict);
  const bool ok = free_v.verdict == detector::Verdict::SuperlinearGrowth && free_v.fit &&
                  std::abs(free_v.fit->rho - kRhoTarget) <= kRhoTolerance &&
                  hur_v.verdict == detector::Verdict::BoundedOrbitCounts;
  return {ok, s.str()};
}

Outcome inclusion_arithmetic() {
  int rows = 0;
  for (int d = 1; d <= 3; ++d)
    for (int e = 1; e <= 12; ++e)
      for (int f = 1; f <= 12; ++f) {
        const bool expect = f % e == 0 && std::gcd(d, f / e) == 1;
        if (lie::includes(d, e, f) != expect) {
          return {false, "includes(" + std::to_string(d) + "," + std::to_string(e) + "," +
                             std::to_string(f) + ")"};
        }
        ++rows;
      }
  for (int d = 2; d <= 3; ++d) {
    for (std::uint64_t e = 1; e <= 12; ++e) {
      std::uint64_t part = 1, r = e;
      while (r % d == 0) {
        r /= d;
        part *= d;
      }
      if (lie::d_part(d, e) != part) return {false, "d_part mismatch"};
    }
    for (std::uint64_t a = 1; a <= 12; ++a)
      for (std::uint64_t b = 1; b <= 12; ++b) {
        if (lie::d_part(d, a) != lie::d_part(d, b)) {
          try {
            lie::common_overfield(d, {a, b});
            return {false, "mixed d-parts accepted"};
          } catch (const MixedDParts&) {
          }
          continue;
        }
        std::uint64_t n = 1;
        while (!(n % a == 0 && n % b == 0 && std::gcd<std::uint64_t>(d, n / a) == 1 &&
                 std::gcd<std::uint64_t>(d, n / b) == 1))
          ++n;
        if (lie::common_overfield(d, {a, b}) != n) return {false, "common_overfield mismatch"};
      }
  }
  return {true, std::to_string(rows) + " inclusion rows, d-parts and overfields agree"};
}

Outcome order_formulas() {
  int checked = 0;
  for (std::uint64_t q = 2; q <= 32; ++q) {
    try {
      lie::prime_power(q);
    } catch (const BadQ&) {
      continue;
    }
    const auto n = lie::build_id_group(A1, q).order();
    if (n != q * q * q - q || n != lie::group_order(A1, q, lie::Variant::inner_diagonal)) {
      return {false, "PGL2(" + std::to_string(q) + ") enumerated " + std::to_string(n)};
    }
    ++checked;
  }
  const auto u = lie::build_id_group(U3, 3).order();
  if (u != 6048) return {false, "PGU3(3) enumerated " + std::to_string(u)};
  return {true, std::to_string(checked) + " PGL2(q) orders and |PGU3(3)| = 6048"};
}

Outcome unitary_obstructions() {
  const auto p7 = unitary::p7_scan(kP7Limit);
  if (!p7.empty()) return {false, "P7 prime " + std::to_string(p7.front())};
  int cases = 0;
  for (std::uint64_t q = 3; q < kMuQLimit; q += 8) {
    try {
      lie::prime_power(q);
    } catch (const BadQ&) {
      continue;
    }
    for (int m : {4, 8, 12}) {
      if (unitary::mu_obstruction(q, m).conclusion != unitary::Conclusion::NoMu) {
        return {false, "mu found at q=" + std::to_string(q) + ", m=" + std::to_string(m)};
      }
      ++cases;
    }
  }
  const auto seven = unitary::mu_obstruction(7, 4);
  if (seven.conclusion != unitary::Conclusion::MuExists) return {false, "no mu at (7, 4)"};
  return {true, "P7 empty below 1e5, NoMu in " + std::to_string(cases) + " cases, MuExists at (7,4)"};
}

Outcome conjugation_invariance() {
  std::vector<phi::Target> targets;
  targets.reserve(3);
  targets.emplace_back(A1, 7);
  targets.emplace_back(A1, 8);
  targets.emplace_back(A2, 3);
  std::mt19937_64 rng(20240601);
  int flips = 0, irreducible = 0;
  for (int k = 0; k < kConjugationTrials; ++k) {
    const auto& t = targets[k % targets.size()];
    const auto& h = t.group();
    std::uniform_int_distribution<matgrp::Index> pick(0, static_cast<matgrp::Index>(h.order() - 1));
    const matgrp::Index a = pick(rng), b = pick(rng), g = pick(rng);
    const matgrp::Index tuple[] = {a, b};
    const matgrp::Index conj[] = {h.conj(g, a), h.conj(g, b)};
    const bool before = phi::irreducible_on_factors(t, tuple);
    const bool after = phi::irreducible_on_factors(t, conj);
    irreducible += before;
    if (before != after) ++flips;

    // Also under an arbitrary change of basis of each factor.
    const std::vector<matgrp::Matrix> mats{h.element(a), h.element(b)};
    const auto blocks = t.factors().restrict(mats);
    for (std::size_t f = 0; f < blocks.size(); ++f) {
      const std::size_t n = t.factors().factor_dims()[f];
      const auto field = blocks[f][0].field_ptr();
      std::uniform_int_distribution<ff::Code> entry(0, field->order() - 1);
      matgrp::Matrix c(field, n);
      do {
        std::vector<ff::Code> codes(n * n);
        for (auto& x : codes) x = entry(rng);
        c = matgrp::Matrix::from_codes(field, n, codes);
      } while (!c.is_invertible());
      std::vector<matgrp::Matrix> moved;
      for (const auto& m : blocks[f]) moved.push_back(m.conjugated_by(c));
      if (matgrp::absolutely_irreducible(blocks[f], n) != matgrp::absolutely_irreducible(moved, n)) {
        ++flips;
      }
    }
  }
  return {flips == 0, std::to_string(kConjugationTrials) + " trials, " + std::to_string(irreducible) +
                          " irreducible, " + std::to_string(flips) + " flips"};
}

Outcome determinism() {
  std::ostringstream a, b, err;
  const std::vector<std::string> args{"report", kHurwitz, "--format", "json"};
  const int ca = cli::run(args, a, err);
  const int cb = cli::run(args, b, err);
  if (ca != 0 || cb != 0) return {false, "report exited with " + std::to_string(ca) + "/" + std::to_string(cb)};
  const bool same = a.str() == b.str();
  return {same, same ? std::to_string(a.str().size()) + " bytes, identical" : "outputs differ"};
}

}  // namespace

int main() {
  // Runs the report without a cache so that both runs do the full work.
  unsetenv(cli::kCacheEnv);
  report(1, "orbit freeness", orbit_freeness);
  report(2, "counting oracle equivalence", counting_equivalence);
  report(3, "counting identity", counting_identity);
  report(4, "Hurwitz landscape", hurwitz_landscape);
  report(5, "growth discrimination", growth_discrimination);
  report(6, "inclusion arithmetic", inclusion_arithmetic);
  report(7, "order formulas", order_formulas);
  report(8, "unitary obstructions", unitary_obstructions);
  report(9, "conjugation invariance", conjugation_invariance);
  report(10, "determinism", determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
