#include "liequot/detector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <boost/math/distributions/students_t.hpp>

#include "liequot/errors.hpp"

namespace liequot::detector {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NoQuotients:
      return "NoQuotients";
    case Verdict::BoundedOrbitCounts:
      return "BoundedOrbitCounts";
    case Verdict::SuperlinearGrowth:
      return "SuperlinearGrowth";
    default:
      return "Inconclusive";
  }
}

Fit loglog_fit(const std::vector<std::pair<double, double>>& xy) {
  Fit f;
  f.points = xy.size();
  if (xy.size() < 2) return f;
  const double n = static_cast<double>(xy.size());
  double sx = 0, sy = 0;
  for (auto [x, y] : xy) {
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0) return f;
  f.rho = sxy / sxx;
  f.intercept = my - f.rho * mx;
  if (xy.size() >= 3) {
    double sse = 0;
    for (auto [x, y] : xy) {
      const double r = std::log(y) - (f.intercept + f.rho * std::log(x));
      sse += r * r;
    }
    const double se = std::sqrt(sse / (n - 2) / sxx);
    boost::math::students_t dist(n - 2);
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    f.ci_low = f.rho - t * se;
    f.ci_high = f.rho + t * se;
  }
  return f;
}

RecordSource exact_records(const fp::Presentation& p, const lie::LieClass& c) {
  return [&p, c](std::uint64_t q) {
    phi::Target t(c, q);
    return phi::compute_record(p, t);
  };
}

GrowthVerdict growth_scan(const fp::Presentation& p, const lie::LieClass& c,
                          const std::vector<std::uint64_t>& qs) {
  return growth_scan(c, qs, exact_records(p, c));
}

GrowthVerdict growth_scan(const lie::LieClass& c, const std::vector<std::uint64_t>& qs,
                          const RecordSource& source) {
  if (qs.empty()) throw InputError("growth scan needs at least one q");
  GrowthVerdict g;
  std::vector<std::pair<double, double>> pts;
  std::uint64_t max_orbits = 0;
  std::set<std::uint64_t> chars_with;
  std::set<std::uint64_t> dparts_with;
  for (auto q : qs) {
    g.records.push_back(source(q));
    const auto& r = g.records.back();
    max_orbits = std::max(max_orbits, r.orbit_count);
    if (r.n_phi > 0) {
      pts.emplace_back(static_cast<double>(q), static_cast<double>(r.n_phi));
      const auto pp = lie::prime_power(q);
      chars_with.insert(pp.p);
      dparts_with.insert(lie::d_part(c.d, static_cast<std::uint64_t>(pp.e)));
    }
  }
  const std::uint64_t min_q = *std::min_element(qs.begin(), qs.end());
  if (pts.size() >= 2) g.fit = loglog_fit(pts);

  const double x = c.adjoint_dim();
  if (pts.empty()) {
    g.verdict = Verdict::NoQuotients;
  } else if (pts.size() >= kMinFitPoints && g.fit && g.fit->rho >= x + 1 - kRhoTolerance) {
    g.verdict = Verdict::SuperlinearGrowth;
  } else if (max_orbits <= min_q) {
    g.verdict = Verdict::BoundedOrbitCounts;
  } else {
    g.verdict = Verdict::Inconclusive;
  }

  std::string chars;
  for (auto p : chars_with) chars += (chars.empty() ? "" : ",") + std::to_string(p);
  g.evidence.emplace_back("characteristics", chars.empty() ? "none" : chars);
  if (g.fit) {
    g.evidence.emplace_back("growth", "fitted exponent " + std::to_string(g.fit->rho) +
                                          " against adjoint dimension " +
                                          std::to_string(c.adjoint_dim()));
  }
  g.evidence.emplace_back("orbit_counts",
                          "max " + std::to_string(max_orbits) + ", smallest q " + std::to_string(min_q));
  if (c.d == 2) {
    std::string parts;
    for (auto d : dparts_with) parts += (parts.empty() ? "" : ",") + std::to_string(d);
    g.evidence.emplace_back("twist_degree_part",
                            parts.empty() ? "no images" : "images at d-parts " + parts);
  }
  return g;
}

nlohmann::ordered_json to_json(const GrowthVerdict& g) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(g.verdict);
  if (g.fit) {
    j["rho"] = g.fit->rho;
    j["rho_ci"] = g.fit->ci_low ? nlohmann::ordered_json::array({*g.fit->ci_low, *g.fit->ci_high})
                                : nlohmann::ordered_json(nullptr);
    j["fit_points"] = g.fit->points;
  } else {
    j["rho"] = nullptr;
    j["rho_ci"] = nullptr;
    j["fit_points"] = 0;
  }
  auto per_q = nlohmann::ordered_json::array();
  for (const auto& r : g.records) {
    per_q.push_back({{"q", r.q}, {"n_phi", r.n_phi}, {"orbit_count", r.orbit_count}});
  }
  j["orbit_counts"] = std::move(per_q);
  nlohmann::ordered_json ev;
  for (const auto& [k, v] : g.evidence) ev[k] = v;
  j["evidence"] = std::move(ev);
  j["disclaimer"] = kDisclaimer;
  return j;
}

std::optional<std::pair<int, int>> propose_period(const std::vector<bool>& bits) {
  const int E = static_cast<int>(bits.size());
  for (int b = 1; b <= E; ++b) {
    const int span = E - b + 1;
    for (int n = 1; 2 * n <= span; ++n) {
      bool ok = true;
      for (int e = b; e + n <= E && ok; ++e) ok = bits[e - 1] == bits[e + n - 1];
      if (ok) return std::make_pair(b, n);
    }
  }
  return std::nullopt;
}

PeriodicityReport residue_scan(std::uint64_t p, const lie::LieClass& c,
                               const fp::Presentation& pres, int e_max) {
  return residue_scan(p, e_max, exact_records(pres, c));
}

PeriodicityReport residue_scan(std::uint64_t p, int e_max, const RecordSource& source) {
  if (!ff::is_prime(p)) throw NonPrime(std::to_string(p) + " is not prime");
  if (e_max < 1) throw InputError("e_max must be at least 1");
  PeriodicityReport r;
  r.p = p;
  std::uint64_t q = 1;
  for (int e = 1; e <= e_max; ++e) {
    q *= p;
    try {
      const auto rec = source(q);
      r.exponents.push_back(e);
      r.bits.push_back(rec.n_phi > 0);
    } catch (const BudgetError& ex) {
      r.truncated = true;
      r.note = "stopped at e = " + std::to_string(e) + ": " + ex.what();
      break;
    }
  }
  if (auto bn = propose_period(r.bits)) {
    r.onset = bn->first;
    r.period = bn->second;
    for (int e = bn->first; e + bn->second <= static_cast<int>(r.bits.size()); ++e) {
      if (r.bits[e - 1] != r.bits[e + bn->second - 1]) {
        throw InvariantError("proposed period does not reproduce the scanned bits");
      }
    }
  }
  return r;
}

nlohmann::ordered_json to_json(const PeriodicityReport& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["exponents"] = r.exponents;
  auto bits = nlohmann::ordered_json::array();
  for (bool b : r.bits) bits.push_back(b ? 1 : 0);
  j["bits"] = std::move(bits);
  j["onset"] = r.onset ? nlohmann::ordered_json(*r.onset) : nlohmann::ordered_json(nullptr);
  j["period"] = r.period ? nlohmann::ordered_json(*r.period) : nlohmann::ordered_json(nullptr);
  j["truncated"] = r.truncated;
  if (!r.note.empty()) j["note"] = r.note;
  j["disclaimer"] = kDisclaimer;
  return j;
}

CrosscheckReport untwisted_crosscheck(const fp::Presentation& pres,
                                      const std::vector<std::uint64_t>& qs, std::uint64_t trials,
                                      std::uint64_t seed, std::size_t cap) {
  CrosscheckReport rep;
  std::map<std::uint64_t, std::pair<bool, bool>> by_char;  // unitary, linear found
  for (auto q : qs) {
    CrosscheckRow row;
    row.q = q;
    const auto pp = lie::prime_power(q);
    auto run = [&](const lie::LieClass& c) -> std::optional<phi::RandomSearchResult> {
      try {
        phi::Target t(c, q, cap);
        return phi::random_search(pres, t, trials, seed);
      } catch (const BudgetError& ex) {
        row.note += c.name() + " skipped (" + ex.what() + "); ";
      } catch (const BadQ& ex) {
        row.note += c.name() + " skipped (" + ex.what() + "); ";
      }
      return std::nullopt;
    };
    row.unitary = run(lie::LieClass::make(lie::XType::A2, 2));
    row.linear = run(lie::LieClass::make(lie::XType::A2, 1));
    auto& flags = by_char[pp.p];
    if (row.unitary && !row.unitary->images.empty()) flags.first = true;
    if (row.linear && !row.linear->images.empty()) flags.second = true;
    rep.rows.push_back(std::move(row));
  }
  for (const auto& [p, f] : by_char) {
    if (f.first && !f.second) rep.unmatched_characteristics.push_back(p);
  }
  return rep;
}

nlohmann::ordered_json to_json(const CrosscheckReport& r) {
  auto side = [](const std::optional<phi::RandomSearchResult>& s) {
    if (!s) return nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json j;
    j["trials"] = s->trials;
    j["solutions"] = s->solutions;
    j["trivial_images"] = s->trivial_images;
    auto imgs = nlohmann::ordered_json::array();
    for (const auto& d : s->images) imgs.push_back(d.to_string());
    j["images"] = std::move(imgs);
    return j;
  };
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json e;
    e["q"] = row.q;
    e["unitary"] = side(row.unitary);
    e["linear"] = side(row.linear);
    if (!row.note.empty()) e["note"] = row.note;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  j["unmatched_characteristics"] = r.unmatched_characteristics;
  j["exact"] = false;
  j["disclaimer"] = kDisclaimer;
  return j;
}

}  // namespace liequot::detector
