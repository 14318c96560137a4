// Subgroup census and the per-subgroup counts that rebuild |Phi| from
// conjugacy classes of images.

#include <algorithm>
#include <map>
#include <set>

#include "liequot/errors.hpp"
#include "liequot/phi.hpp"

namespace liequot::phi {

namespace {

constexpr std::uint64_t kExhaustiveTupleLimit = 4'000'000;

bool satisfies(const fp::Presentation& p, const MatGroup& g, std::span<const Index> tuple) {
  for (const auto& w : p.relators()) {
    if (fp::evaluate_word(w, g, tuple) != g.identity()) return false;
  }
  return true;
}

std::vector<Index> conjugate_set(const MatGroup& h, Index g, const std::vector<Index>& elems) {
  std::vector<Index> out;
  out.reserve(elems.size());
  for (Index x : elems) out.push_back(h.conj(g, x));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t normalizer_order(const MatGroup& h, const Subgroup& s) {
  std::uint64_t n = 0;
  for (Index g = 0; g < h.order(); ++g) {
    bool ok = true;
    for (Index x : s.gens) {
      if (!s.contains(h.conj(g, x))) {
        ok = false;
        break;
      }
    }
    if (ok) ++n;
  }
  return n;
}

}  // namespace

std::uint64_t sj_oracle(const fp::Presentation& p, const MatGroup& t, SjMode mode) {
  if (!matgrp::is_centerless(t)) throw NotCenterless("s_j needs a centerless group");
  const std::uint64_t N = t.order();
  const std::size_t s = p.s();
  if (mode == SjMode::automatic) {
    long double tuples = 1;
    for (std::size_t i = 0; i < s; ++i) tuples *= static_cast<long double>(N);
    mode = tuples <= kExhaustiveTupleLimit ? SjMode::exhaustive : SjMode::class_reduced;
  }

  std::uint64_t count = 0;
  if (mode == SjMode::exhaustive) {
    std::vector<Index> tuple(s, 0);
    while (true) {
      if (satisfies(p, t, tuple) && t.closure(tuple).order() == N) ++count;
      std::size_t i = 0;
      while (i < s && ++tuple[i] == N) tuple[i++] = 0;
      if (i == s) break;
    }
  } else {
    for_each_solution(p, t, [&](std::span<const Index> tuple, std::uint64_t w) {
      if (t.closure(tuple).order() == N) count += w;
    });
  }
  if (count % N != 0) {
    throw DivisibilityViolation("generating solutions (" + std::to_string(count) +
                                ") not divisible by |T| = " + std::to_string(N));
  }
  return count / N;
}

std::vector<SubgroupClass> subgroup_census(const Target& t,
                                           const std::function<bool(const Subgroup&)>& keep,
                                           std::uint64_t budget) {
  const MatGroup& h = t.group();
  const auto& classes = h.classes();
  const std::uint64_t pairs = classes.size() * h.order();
  if (budget && pairs > budget) {
    throw BudgetExceeded("subgroup census needs " + std::to_string(pairs) + " closures");
  }
  // Every 2-generated subgroup is conjugate to one whose first generator is
  // a class representative.
  std::set<std::vector<Index>> seen;
  std::vector<Subgroup> kept;
  for (const auto& c : classes) {
    for (Index b = 0; b < h.order(); ++b) {
      const Index gens[2] = {c.representative, b};
      Subgroup s = h.closure(gens);
      if (!seen.insert(s.elements).second) continue;
      if (keep(s)) kept.push_back(std::move(s));
    }
  }

  // Conjugacy classes: canonical form is the least sorted conjugate.
  std::map<std::vector<Index>, std::size_t> canon;
  std::vector<SubgroupClass> out;
  for (auto& s : kept) {
    std::vector<Index> best = s.elements;
    for (Index g = 0; g < h.order(); ++g) {
      auto c = conjugate_set(h, g, s.elements);
      if (c < best) best = std::move(c);
    }
    if (canon.count(best)) continue;
    canon.emplace(std::move(best), out.size());
    SubgroupClass sc;
    sc.normalizer_order = normalizer_order(h, s);
    sc.image = classify_subgroup(t, s);
    sc.representative = std::move(s);
    out.push_back(std::move(sc));
  }
  return out;
}

Rational tj_oracle(const ImageDescriptor& d, const Target& t) {
  const MatGroup& h = t.group();
  if (d.order == 0 || h.order() % d.order != 0) return Rational(0);
  auto classes = subgroup_census(t, [&](const Subgroup& s) {
    if (s.order() != d.order) return false;
    auto img = classify_subgroup(t, s);
    return img && *img == d;
  });
  Rational sum(0);
  for (const auto& c : classes) {
    sum += Rational(static_cast<std::int64_t>(c.representative.order()),
                    static_cast<std::int64_t>(c.normalizer_order));
  }
  return sum;
}

IdentityReport counting_identity_check(const fp::Presentation& p, const Target& t) {
  IdentityReport rep;
  {
    PhiFilter filter(t);
    rep.lhs = filter_phi(p, t, filter).n_phi;
  }

  const MatGroup& h = t.group();
  auto classes = subgroup_census(t, [&](const Subgroup& s) {
    return classify_subgroup(t, s).has_value();
  });
  std::map<ImageDescriptor, Rational> tj;
  std::map<ImageDescriptor, const SubgroupClass*> sample;
  for (const auto& c : classes) {
    const auto& img = *c.image;
    tj[img] += Rational(static_cast<std::int64_t>(c.representative.order()),
                        static_cast<std::int64_t>(c.normalizer_order));
    sample.emplace(img, &c);
  }
  Rational sum(0);
  for (const auto& [img, tval] : tj) {
    const MatGroup y = h.materialize(sample.at(img)->representative);
    const std::uint64_t s = sj_oracle(p, y);
    rep.terms.push_back({img, tval, s});
    sum += tval * Rational(static_cast<std::int64_t>(s));
  }
  rep.rhs = sum * Rational(static_cast<std::int64_t>(h.order()));
  rep.holds = rep.rhs.denominator() == 1 &&
              rep.rhs.numerator() == static_cast<std::int64_t>(rep.lhs);
  return rep;
}

}  // namespace liequot::phi
