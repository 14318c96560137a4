// Solution sets of a presentation in ID(X(q)) on the adjoint module.
//
// Phi0 is the set of s-tuples of H = ID(X(q)) satisfying every relator. Phi
// keeps the tuples whose generated subgroup acts absolutely irreducibly on
// every adjoint composition factor and is a same-type subgroup, i.e. lies in
// a sandwich X(q0) <= Y <= ID(X(q0)) over a permitted subfield. H acts on Phi
// by simultaneous conjugation, freely, so |H| divides |Phi|.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "json.hpp"
#include "liequot/fp.hpp"
#include "liequot/lietype.hpp"
#include "liequot/module.hpp"

namespace liequot::phi {

using matgrp::Index;
using matgrp::MatGroup;
using matgrp::Subgroup;

struct ImageDescriptor {
  int n = 2;  // natural dimension: 2 for A1, 3 for A2
  std::uint64_t q0 = 0;
  int e0 = 0;
  int twist = 1;                    // 1 linear, 2 unitary
  std::uint64_t variant_index = 1;  // |Y| / |X(q0)|
  std::uint64_t order = 0;

  std::uint64_t simple_order() const { return order / variant_index; }
  std::string to_string() const;  // e.g. "PSL2(7)", "PSU3(3).3"
  friend auto operator<=>(const ImageDescriptor&, const ImageDescriptor&) = default;
};

struct ImageCount {
  ImageDescriptor image;
  std::uint64_t s_count;  // number of H-orbits on Phi with this image
};

struct PhiRecord {
  std::string hash;
  lie::LieClass cls;
  std::uint64_t q = 0;
  std::uint64_t n_phi0 = 0;
  std::uint64_t n_phi = 0;
  std::uint64_t orbit_count = 0;
  std::vector<ImageCount> images;
  bool exact = true;
};

nlohmann::ordered_json to_json(const PhiRecord& r);
PhiRecord record_from_json(const nlohmann::json& j);  // throws InputError when malformed

// H = ID(X(q)) with its adjoint composition series and admissible sandwiches.
class Target {
 public:
  Target(lie::LieClass c, std::uint64_t q, std::size_t cap = MatGroup::kDefaultCap);

  const lie::LieClass& cls() const noexcept { return cls_; }
  std::uint64_t q() const noexcept { return q_; }
  const MatGroup& group() const noexcept { return h_; }
  const matgrp::FactorSeries& factors() const noexcept { return factors_; }
  const std::vector<lie::Sandwich>& candidates() const noexcept { return candidates_; }

 private:
  lie::LieClass cls_;
  std::uint64_t q_;
  MatGroup h_;
  matgrp::FactorSeries factors_;
  std::vector<lie::Sandwich> candidates_;
};

// Derived subgroups up to this order also get a full simplicity check;
// larger ones are confirmed by perfectness and order alone.
inline constexpr std::uint64_t kSimplicityCheckCap = 50'000;

// Same-type descriptor of s <= H, or nullopt (not same type). Throws
// Ambiguous if two sandwiches fit.
std::optional<ImageDescriptor> classify_subgroup(const Target& t, const Subgroup& s);
std::optional<ImageDescriptor> classify_images(const Target& t, std::span<const Index> tuple);

// Absolute irreducibility of the subgroup generated by `tuple` on every
// adjoint composition factor.
bool irreducible_on_factors(const Target& t, std::span<const Index> tuple);

struct Verdict {
  bool in_phi = false;
  std::uint64_t subgroup_order = 0;
  std::optional<ImageDescriptor> image;
};

// Phi membership, cached per generated subgroup.
class PhiFilter {
 public:
  explicit PhiFilter(const Target& t) : t_(t) {}
  const Verdict& judge(std::span<const Index> tuple);
  const Verdict& judge_subgroup(const Subgroup& s);
  std::size_t distinct_subgroups() const noexcept { return cache_.size(); }

 private:
  const Target& t_;
  std::map<std::vector<Index>, Verdict> cache_;
};

struct CountOptions {
  // Fix the first coordinate to conjugacy-class representatives.
  bool class_reduction = true;
  // Maximum number of search nodes; 0 means unlimited.
  std::uint64_t budget = 0;
};

// Called once per solution (or per class-representative solution, with
// weight the class size).
using TupleVisitor = std::function<void(std::span<const Index> tuple, std::uint64_t weight)>;

// Enumerates Phi0 by depth-first search, checking each relator as soon as
// its highest generator is assigned, with order prefilters from pure-power
// relators. Returns |Phi0|. Throws BudgetExceeded past the node budget.
std::uint64_t for_each_solution(const fp::Presentation& p, const MatGroup& h,
                                const TupleVisitor& visit, const CountOptions& opt = {});
std::uint64_t count_phi0(const fp::Presentation& p, const MatGroup& h,
                         const CountOptions& opt = {});

struct PhiCounts {
  std::uint64_t n_phi0 = 0;
  std::uint64_t n_phi = 0;
  std::map<ImageDescriptor, std::uint64_t> tuples_by_image;
};

PhiCounts filter_phi(const fp::Presentation& p, const Target& t, PhiFilter& filter,
                     const CountOptions& opt = {});

// n_phi / |H|; throws DivisibilityViolation when |H| does not divide n_phi.
std::uint64_t orbit_count(std::uint64_t n_phi, std::uint64_t h_order);

// Exhaustive record for (p, class, q).
PhiRecord compute_record(const fp::Presentation& p, const Target& t, const CountOptions& opt = {});

enum class SjMode { automatic, exhaustive, class_reduced };

// Number of T-orbits on relator-satisfying s-tuples generating T.
std::uint64_t sj_oracle(const fp::Presentation& p, const MatGroup& t, SjMode mode = SjMode::automatic);

using Rational = boost::rational<std::int64_t>;

struct SubgroupClass {
  Subgroup representative;  // in the ambient index space
  std::uint64_t normalizer_order;
  std::optional<ImageDescriptor> image;
};

// Conjugacy classes of subgroups of H generated by at most two elements that
// pass `keep`. Throws BudgetExceeded when more than `budget` pairs would be
// closed (0 = unlimited).
std::vector<SubgroupClass> subgroup_census(
    const Target& t, const std::function<bool(const Subgroup&)>& keep, std::uint64_t budget = 0);

// Sum over conjugacy classes of subgroups T of H with descriptor `d` of
// |T| / |N_H(T)|.
Rational tj_oracle(const ImageDescriptor& d, const Target& t);

struct IdentityTerm {
  ImageDescriptor image;
  Rational t;
  std::uint64_t s;
};

struct IdentityReport {
  std::uint64_t lhs = 0;  // |Phi| from counting and filtering
  Rational rhs;           // |H| * sum t_j s_j from the census
  std::vector<IdentityTerm> terms;
  bool holds = false;
};

IdentityReport counting_identity_check(const fp::Presentation& p, const Target& t);

struct RandomSearchResult {
  std::uint64_t trials = 0;
  std::uint64_t solutions = 0;       // relator-satisfying samples
  std::uint64_t trivial_images = 0;  // solutions generating the trivial group
  std::vector<ImageDescriptor> images;
};

// Uniform random s-tuples of H with a seeded generator; positive findings only.
RandomSearchResult random_search(const fp::Presentation& p, const Target& t, std::uint64_t trials,
                                 std::uint64_t seed = 1);

}  // namespace liequot::phi
