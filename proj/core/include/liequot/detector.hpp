// Empirical growth and periodicity heuristics over a finite window of q.
//
// None of these verdicts decide anything about the full family of q; they
// summarize the counts seen in the scanned window.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liequot/phi.hpp"

namespace liequot::detector {

inline constexpr const char* kDisclaimer =
    "heuristic: verdicts summarize the scanned window only and decide nothing about "
    "larger q";

enum class Verdict { NoQuotients, BoundedOrbitCounts, SuperlinearGrowth, Inconclusive };
std::string to_string(Verdict v);

// Tolerance on the fitted exponent and the minimum number of nonzero points
// required before superlinear growth is claimed.
inline constexpr double kRhoTolerance = 0.5;
inline constexpr std::size_t kMinFitPoints = 4;

struct Fit {
  double rho = 0;
  double intercept = 0;
  std::optional<double> ci_low;  // 95% interval, needs at least 3 points
  std::optional<double> ci_high;
  std::size_t points = 0;
};

// Least-squares slope of ln y against ln x.
Fit loglog_fit(const std::vector<std::pair<double, double>>& xy);

struct GrowthVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Fit> fit;
  std::vector<phi::PhiRecord> records;
  std::vector<std::pair<std::string, std::string>> evidence;
};

using RecordSource = std::function<phi::PhiRecord(std::uint64_t q)>;

// Exhaustive records through compute_record.
RecordSource exact_records(const fp::Presentation& p, const lie::LieClass& c);

GrowthVerdict growth_scan(const fp::Presentation& p, const lie::LieClass& c,
                          const std::vector<std::uint64_t>& qs);
GrowthVerdict growth_scan(const lie::LieClass& c, const std::vector<std::uint64_t>& qs,
                          const RecordSource& source);

nlohmann::ordered_json to_json(const GrowthVerdict& g);

struct PeriodicityReport {
  std::uint64_t p = 0;
  std::vector<int> exponents;  // scanned e, in order
  std::vector<bool> bits;      // Phi(F_{p^e}) nonempty
  std::optional<int> onset;    // B
  std::optional<int> period;   // N
  bool truncated = false;      // a budget stopped the scan early
  std::string note;
};

// Least (B, N), B first, with bits[e] = bits[e + N] for all scanned e >= B and
// at least two full periods after B.
std::optional<std::pair<int, int>> propose_period(const std::vector<bool>& bits);

PeriodicityReport residue_scan(std::uint64_t p, const lie::LieClass& c,
                               const fp::Presentation& pres, int e_max);
PeriodicityReport residue_scan(std::uint64_t p, int e_max, const RecordSource& source);

nlohmann::ordered_json to_json(const PeriodicityReport& r);

struct CrosscheckRow {
  std::uint64_t q = 0;
  std::optional<phi::RandomSearchResult> unitary;  // nullopt when skipped
  std::optional<phi::RandomSearchResult> linear;
  std::string note;
};

struct CrosscheckReport {
  std::vector<CrosscheckRow> rows;
  // Characteristics with unitary images but no linear images in the window.
  std::vector<std::uint64_t> unmatched_characteristics;
};

// Runs the unitary and linear A2 classes side by side by random search.
CrosscheckReport untwisted_crosscheck(const fp::Presentation& pres,
                                      const std::vector<std::uint64_t>& qs,
                                      std::uint64_t trials = 2000, std::uint64_t seed = 1,
                                      std::size_t cap = matgrp::MatGroup::kDefaultCap);

nlohmann::ordered_json to_json(const CrosscheckReport& r);

}  // namespace liequot::detector
