#include "liequot/phi.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "liequot/errors.hpp"

namespace liequot::phi {

std::string ImageDescriptor::to_string() const {
  std::string s = (twist == 1 ? "PSL" : "PSU") + std::to_string(n) + "(" + std::to_string(q0) + ")";
  if (variant_index > 1) s += "." + std::to_string(variant_index);
  return s;
}

nlohmann::ordered_json to_json(const PhiRecord& r) {
  nlohmann::ordered_json j;
  j["hash"] = r.hash;
  j["xtype"] = lie::to_string(r.cls.xtype);
  j["d"] = r.cls.d;
  j["q"] = r.q;
  j["n_phi0"] = r.n_phi0;
  j["n_phi"] = r.n_phi;
  j["orbit_count"] = r.orbit_count;
  auto imgs = nlohmann::ordered_json::array();
  for (const auto& ic : r.images) {
    nlohmann::ordered_json e;
    e["e0"] = ic.image.e0;
    e["twist"] = ic.image.twist;
    e["variant_index"] = ic.image.variant_index;
    e["order"] = ic.image.order;
    e["s_count"] = ic.s_count;
    imgs.push_back(std::move(e));
  }
  j["images"] = std::move(imgs);
  j["exact"] = r.exact;
  return j;
}

PhiRecord record_from_json(const nlohmann::json& j) {
  try {
    PhiRecord r;
    r.hash = j.at("hash").get<std::string>();
    r.cls = lie::LieClass::make(lie::parse_xtype(j.at("xtype").get<std::string>()),
                                j.at("d").get<int>());
    r.q = j.at("q").get<std::uint64_t>();
    r.n_phi0 = j.at("n_phi0").get<std::uint64_t>();
    r.n_phi = j.at("n_phi").get<std::uint64_t>();
    r.orbit_count = j.at("orbit_count").get<std::uint64_t>();
    r.exact = j.at("exact").get<bool>();
    const auto pp = lie::prime_power(r.q);
    for (const auto& e : j.at("images")) {
      ImageCount ic;
      ic.image.n = r.cls.natural_dim();
      ic.image.e0 = e.at("e0").get<int>();
      ic.image.twist = e.at("twist").get<int>();
      ic.image.variant_index = e.at("variant_index").get<std::uint64_t>();
      ic.image.order = e.at("order").get<std::uint64_t>();
      ic.image.q0 = 1;
      for (int i = 0; i < ic.image.e0; ++i) ic.image.q0 *= pp.p;
      ic.s_count = e.at("s_count").get<std::uint64_t>();
      r.images.push_back(ic);
    }
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed record: ") + ex.what());
  }
}

Target::Target(lie::LieClass c, std::uint64_t q, std::size_t cap)
    : cls_(c),
      q_(q),
      h_(lie::build_id_group(c, q, cap)),
      factors_(matgrp::invariant_submodule_factors(
          h_.generators(), lie::adjoint_factor_dims(c, lie::prime_power(q).p))),
      candidates_(lie::same_type_candidates(c, q)) {}

namespace {

std::vector<const lie::Sandwich*> order_matches(const Target& t, std::uint64_t order) {
  std::vector<const lie::Sandwich*> out;
  for (const auto& c : t.candidates()) {
    if (order % c.simple_order != 0) continue;
    const std::uint64_t k = order / c.simple_order;
    if ((c.id_order / c.simple_order) % k == 0) out.push_back(&c);
  }
  return out;
}

}  // namespace

std::optional<ImageDescriptor> classify_subgroup(const Target& t, const Subgroup& s) {
  const auto matches = order_matches(t, s.order());
  if (matches.empty()) return std::nullopt;
  const MatGroup& h = t.group();
  // Y' is the simple group for every Y in a sandwich.
  const Subgroup d = h.derived(s);
  std::vector<const lie::Sandwich*> confirmed;
  for (const auto* m : matches) {
    if (d.order() == m->simple_order) confirmed.push_back(m);
  }
  if (confirmed.empty()) return std::nullopt;
  if (!h.is_perfect(d)) return std::nullopt;
  if (d.order() <= kSimplicityCheckCap && !h.is_simple(d)) return std::nullopt;
  if (confirmed.size() > 1) {
    throw Ambiguous("subgroup of order " + std::to_string(s.order()) +
                    " fits several same-type sandwiches");
  }
  const auto& m = *confirmed.front();
  ImageDescriptor out;
  out.n = t.cls().natural_dim();
  out.q0 = m.q0;
  out.e0 = m.e0;
  out.twist = m.twist;
  out.order = s.order();
  out.variant_index = s.order() / m.simple_order;
  return out;
}

std::optional<ImageDescriptor> classify_images(const Target& t, std::span<const Index> tuple) {
  return classify_subgroup(t, t.group().closure(tuple));
}

bool irreducible_on_factors(const Target& t, std::span<const Index> tuple) {
  const auto& fs = t.factors();
  std::vector<matgrp::Matrix> mats;
  for (Index x : tuple) mats.push_back(t.group().element(x));
  if (mats.empty()) {
    return std::all_of(fs.factor_dims().begin(), fs.factor_dims().end(),
                       [](std::size_t k) { return k == 1; });
  }
  const auto blocks = fs.restrict(mats);
  for (std::size_t f = 0; f < blocks.size(); ++f) {
    if (!matgrp::absolutely_irreducible(blocks[f], fs.factor_dims()[f])) return false;
  }
  return true;
}

const Verdict& PhiFilter::judge(std::span<const Index> tuple) {
  return judge_subgroup(t_.group().closure(tuple));
}

const Verdict& PhiFilter::judge_subgroup(const Subgroup& s) {
  auto it = cache_.find(s.elements);
  if (it != cache_.end()) return it->second;
  Verdict v;
  v.subgroup_order = s.order();
  if (!order_matches(t_, s.order()).empty() && irreducible_on_factors(t_, s.gens)) {
    v.image = classify_subgroup(t_, s);
    v.in_phi = v.image.has_value();
  }
  return cache_.emplace(s.elements, v).first->second;
}

std::uint64_t for_each_solution(const fp::Presentation& p, const MatGroup& h,
                                const TupleVisitor& visit, const CountOptions& opt) {
  const std::size_t s = p.s();
  if (s == 0) {
    visit({}, 1);
    return 1;
  }
  const std::size_t N = h.order();

  // Order prefilters: a relator conjugate to x_i^k forces ord(x_i) | k.
  std::vector<std::uint64_t> bound(s, 0);
  for (auto [i, k] : fp::power_relators(p)) bound[i] = std::gcd(bound[i], k);
  const bool any_bound = std::any_of(bound.begin(), bound.end(), [](auto b) { return b != 0; });
  const std::vector<std::uint32_t>* orders = any_bound ? &h.element_orders() : nullptr;
  auto allowed = [&](std::size_t i, Index x) {
    return bound[i] == 0 || bound[i] % (*orders)[x] == 0;
  };
  std::vector<std::vector<Index>> cand(s);
  for (std::size_t i = 1; i < s; ++i) {
    for (Index x = 0; x < N; ++x) {
      if (allowed(i, x)) cand[i].push_back(x);
    }
  }
  std::vector<std::pair<Index, std::uint64_t>> first;
  if (opt.class_reduction) {
    for (const auto& c : h.classes()) {
      if (allowed(0, c.representative)) first.emplace_back(c.representative, c.size);
    }
  } else {
    for (Index x = 0; x < N; ++x) {
      if (allowed(0, x)) first.emplace_back(x, 1);
    }
  }

  // Relators checked at the depth of their highest generator.
  std::vector<std::vector<const fp::Word*>> at_depth(s);
  for (const auto& w : p.relators()) {
    int top = 0;
    for (int l : w.letters) top = std::max(top, std::abs(l));
    at_depth[static_cast<std::size_t>(top) - 1].push_back(&w);
  }

  std::vector<Index> tuple(s);
  std::uint64_t total = 0;
  std::uint64_t nodes = 0;
  auto passes = [&](std::size_t depth) {
    for (const auto* w : at_depth[depth]) {
      if (fp::evaluate_word(*w, h, std::span<const Index>(tuple.data(), depth + 1)) != h.identity()) {
        return false;
      }
    }
    return true;
  };
  std::function<void(std::size_t, std::uint64_t)> dfs = [&](std::size_t depth,
                                                            std::uint64_t weight) {
    for (Index x : cand[depth]) {
      if (opt.budget && ++nodes > opt.budget) {
        throw BudgetExceeded("search budget of " + std::to_string(opt.budget) + " nodes exhausted");
      }
      tuple[depth] = x;
      if (!passes(depth)) continue;
      if (depth + 1 == s) {
        total += weight;
        visit(tuple, weight);
      } else {
        dfs(depth + 1, weight);
      }
    }
  };
  for (auto [x, w] : first) {
    if (opt.budget && ++nodes > opt.budget) {
      throw BudgetExceeded("search budget of " + std::to_string(opt.budget) + " nodes exhausted");
    }
    tuple[0] = x;
    if (!passes(0)) continue;
    if (s == 1) {
      total += w;
      visit(tuple, w);
    } else {
      dfs(1, w);
    }
  }
  return total;
}

std::uint64_t count_phi0(const fp::Presentation& p, const MatGroup& h, const CountOptions& opt) {
  return for_each_solution(p, h, [](std::span<const Index>, std::uint64_t) {}, opt);
}

PhiCounts filter_phi(const fp::Presentation& p, const Target& t, PhiFilter& filter,
                     const CountOptions& opt) {
  PhiCounts c;
  c.n_phi0 = for_each_solution(
      p, t.group(),
      [&](std::span<const Index> tuple, std::uint64_t w) {
        const Verdict& v = filter.judge(tuple);
        if (!v.in_phi) return;
        c.n_phi += w;
        c.tuples_by_image[*v.image] += w;
      },
      opt);
  return c;
}

std::uint64_t orbit_count(std::uint64_t n_phi, std::uint64_t h_order) {
  if (h_order == 0) throw std::invalid_argument("group order must be positive");
  if (n_phi % h_order != 0) {
    throw DivisibilityViolation("|H| = " + std::to_string(h_order) + " does not divide |Phi| = " +
                                std::to_string(n_phi));
  }
  return n_phi / h_order;
}

PhiRecord compute_record(const fp::Presentation& p, const Target& t, const CountOptions& opt) {
  PhiFilter filter(t);
  const PhiCounts c = filter_phi(p, t, filter, opt);
  PhiRecord r;
  r.hash = p.hash();
  r.cls = t.cls();
  r.q = t.q();
  r.n_phi0 = c.n_phi0;
  r.n_phi = c.n_phi;
  r.orbit_count = orbit_count(c.n_phi, t.group().order());
  for (const auto& [img, n] : c.tuples_by_image) {
    r.images.push_back({img, orbit_count(n, t.group().order())});
  }
  r.exact = true;
  return r;
}

RandomSearchResult random_search(const fp::Presentation& p, const Target& t, std::uint64_t trials,
                                 std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("random_search needs at least one trial");
  const MatGroup& h = t.group();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(h.order() - 1));
  PhiFilter filter(t);
  RandomSearchResult out;
  out.trials = trials;
  std::set<ImageDescriptor> found;
  std::vector<Index> tuple(p.s());
  for (std::uint64_t k = 0; k < trials; ++k) {
    for (auto& x : tuple) x = pick(rng);
    bool ok = true;
    for (const auto& w : p.relators()) {
      if (fp::evaluate_word(w, h, tuple) != h.identity()) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++out.solutions;
    const Subgroup s = h.closure(tuple);
    if (s.order() == 1) {
      ++out.trivial_images;
      continue;
    }
    const Verdict& v = filter.judge_subgroup(s);
    if (v.in_phi) found.insert(*v.image);
  }
  out.images.assign(found.begin(), found.end());
  return out;
}

}  // namespace liequot::phi
