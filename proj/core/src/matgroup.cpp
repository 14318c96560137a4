#include "liequot/matgroup.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <mutex>
#include <numeric>
#include <string>

#include "liequot/errors.hpp"

namespace liequot::matgrp {

namespace detail {

struct GroupData {
  ff::FieldPtr field;
  std::size_t n = 0;
  std::size_t n2 = 0;
  std::vector<Matrix> gens;
  std::vector<Index> gen_index;
  std::vector<Entry> data;
  std::size_t count = 0;

  std::vector<Index> slots;  // open addressing, kEmpty marks free
  std::uint64_t mask = 0;

  Index identity = 0;
  std::vector<Index> inverse;
  std::vector<std::uint16_t> table;  // row-major Cayley table when small

  mutable std::once_flag orders_once;
  mutable std::vector<std::uint32_t> orders;
  mutable std::once_flag classes_once;
  mutable std::vector<ConjugacyClass> classes;
  mutable std::vector<std::uint32_t> class_of;

  static constexpr Index kEmpty = 0xffffffffu;

  const Entry* at(Index i) const { return data.data() + static_cast<std::size_t>(i) * n2; }

  static std::uint64_t hash(const Entry* key, std::size_t len) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t i = 0; i < len; ++i) {
      h = (h ^ key[i]) * 0xff51afd7ed558ccdull;
      h ^= h >> 29;
    }
    return h;
  }

  void reserve_slots(std::size_t elements) {
    std::size_t cap = std::bit_ceil(std::max<std::size_t>(16, elements * 2));
    slots.assign(cap, kEmpty);
    mask = cap - 1;
  }

  Index find(const Entry* key) const {
    std::uint64_t s = hash(key, n2) & mask;
    while (true) {
      Index i = slots[s];
      if (i == kEmpty) return kEmpty;
      if (std::equal(key, key + n2, at(i))) return i;
      s = (s + 1) & mask;
    }
  }

  void insert(Index i) {
    std::uint64_t s = hash(at(i), n2) & mask;
    while (slots[s] != kEmpty) s = (s + 1) & mask;
    slots[s] = i;
  }

  Index mul(Index a, Index b) const {
    if (!table.empty()) return table[static_cast<std::size_t>(a) * count + b];
    thread_local std::vector<Entry> scratch;
    scratch.resize(n2);
    multiply(*field, n, at(a), at(b), scratch.data());
    Index r = find(scratch.data());
    if (r == kEmpty) throw InvariantError("group is not closed under multiplication");
    return r;
  }
};

}  // namespace detail

namespace {

using detail::GroupData;

// Membership marks over the ambient index space.
class Marks {
 public:
  explicit Marks(std::size_t n) : bits_(n, false) {}
  bool test(Index i) const { return bits_[i]; }
  void set(Index i) { bits_[i] = true; }

 private:
  std::vector<bool> bits_;
};

// Grows a subgroup one generator at a time, closing under right
// multiplication by every generator seen so far.
class Closer {
 public:
  Closer(const MatGroup& g) : g_(g), marks_(g.order()) {
    elems_.push_back(g.identity());
    marks_.set(g.identity());
  }

  void add(Index x) {
    if (marks_.test(x)) return;
    gens_.push_back(x);
    std::deque<Index> queue;
    const std::size_t existing = elems_.size();
    for (std::size_t i = 0; i < existing; ++i) {
      Index y = g_.mul(elems_[i], x);
      if (!marks_.test(y)) {
        marks_.set(y);
        elems_.push_back(y);
        queue.push_back(y);
      }
    }
    while (!queue.empty()) {
      Index y = queue.front();
      queue.pop_front();
      for (Index s : gens_) {
        Index z = g_.mul(y, s);
        if (!marks_.test(z)) {
          marks_.set(z);
          elems_.push_back(z);
          queue.push_back(z);
        }
      }
    }
  }

  bool contains(Index x) const { return marks_.test(x); }
  const std::vector<Index>& gens() const { return gens_; }
  std::size_t size() const { return elems_.size(); }

  Subgroup finish() && {
    Subgroup s;
    s.gens = std::move(gens_);
    s.elements = std::move(elems_);
    std::sort(s.elements.begin(), s.elements.end());
    return s;
  }

 private:
  const MatGroup& g_;
  Marks marks_;
  std::vector<Index> gens_;
  std::vector<Index> elems_;
};

bool is_prime_order(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

bool Subgroup::contains(Index x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

const detail::GroupData& MatGroup::d() const {
  if (!d_) throw std::logic_error("empty MatGroup");
  return *d_;
}

const ff::Field& MatGroup::field() const { return *d().field; }
const ff::FieldPtr& MatGroup::field_ptr() const { return d().field; }
std::size_t MatGroup::dim() const { return d().n; }
std::uint64_t MatGroup::order() const { return d().count; }
const std::vector<Matrix>& MatGroup::generators() const { return d().gens; }
const std::vector<Index>& MatGroup::generator_indices() const { return d().gen_index; }
Index MatGroup::identity() const { return d().identity; }
bool MatGroup::has_table() const { return !d().table.empty(); }
Index MatGroup::mul(Index a, Index b) const { return d().mul(a, b); }
Index MatGroup::inv(Index a) const { return d().inverse[a]; }

Index MatGroup::commutator(Index a, Index b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

Matrix MatGroup::element(Index i) const {
  const auto& g = d();
  const Entry* p = g.at(i);
  return Matrix(g.field, g.n, std::vector<Entry>(p, p + g.n2));
}

std::span<const Entry> MatGroup::entries(Index i) const {
  const auto& g = d();
  return {g.at(i), g.n2};
}

std::optional<Index> MatGroup::index_of(std::span<const Entry> m) const {
  const auto& g = d();
  if (m.size() != g.n2) return std::nullopt;
  Index i = g.find(m.data());
  if (i == GroupData::kEmpty) return std::nullopt;
  return i;
}

std::optional<Index> MatGroup::index_of(const Matrix& m) const {
  if (m.dim() != dim() || !(m.field() == field())) return std::nullopt;
  return index_of(m.entries());
}

const std::vector<std::uint32_t>& MatGroup::element_orders() const {
  const auto& g = d();
  std::call_once(g.orders_once, [&] {
    g.orders.assign(g.count, 0);
    for (Index i = 0; i < g.count; ++i) {
      if (g.orders[i]) continue;
      // Walk the cyclic subgroup once and fill every power whose order follows.
      std::vector<Index> powers{g.identity};
      Index x = i;
      while (x != g.identity) {
        powers.push_back(x);
        x = g.mul(x, i);
      }
      const std::uint32_t k = static_cast<std::uint32_t>(powers.size());
      for (std::uint32_t j = 0; j < k; ++j) {
        if (!g.orders[powers[j]]) g.orders[powers[j]] = k / std::gcd(j, k);
      }
    }
  });
  return g.orders;
}

const std::vector<ConjugacyClass>& MatGroup::classes() const {
  const auto& g = d();
  std::call_once(g.classes_once, [&] {
    constexpr std::uint32_t kUnset = 0xffffffffu;
    g.class_of.assign(g.count, kUnset);
    std::vector<Index> ginv;
    for (Index s : g.gen_index) ginv.push_back(g.inverse[s]);
    std::vector<Index> orbit;
    for (Index i = 0; i < g.count; ++i) {
      if (g.class_of[i] != kUnset) continue;
      const auto c = static_cast<std::uint32_t>(g.classes.size());
      orbit.assign(1, i);
      g.class_of[i] = c;
      for (std::size_t k = 0; k < orbit.size(); ++k) {
        for (std::size_t s = 0; s < g.gen_index.size(); ++s) {
          Index y = g.mul(g.mul(g.gen_index[s], orbit[k]), ginv[s]);
          if (g.class_of[y] == kUnset) {
            g.class_of[y] = c;
            orbit.push_back(y);
          }
        }
      }
      g.classes.push_back({i, orbit.size()});
    }
  });
  return g.classes;
}

std::uint32_t MatGroup::class_of(Index x) const {
  classes();
  return d().class_of[x];
}

Subgroup MatGroup::whole() const {
  Subgroup s;
  s.gens = generator_indices();
  s.elements.resize(order());
  std::iota(s.elements.begin(), s.elements.end(), Index{0});
  return s;
}

Subgroup MatGroup::closure(std::span<const Index> gens) const {
  Closer c(*this);
  for (Index x : gens) c.add(x);
  return std::move(c).finish();
}

Subgroup MatGroup::normal_closure(std::span<const Index> gens,
                                  std::span<const Index> under) const {
  Closer c(*this);
  for (Index x : gens) c.add(x);
  // gens() grows while we scan it; conjugates of every generator by every
  // element of `under` must land inside.
  for (std::size_t k = 0; k < c.gens().size(); ++k) {
    const Index x = c.gens()[k];
    for (Index u : under) {
      Index y = conj(u, x);
      if (!c.contains(y)) c.add(y);
    }
  }
  return std::move(c).finish();
}

Subgroup MatGroup::derived(const Subgroup& s) const {
  std::vector<Index> comms;
  for (std::size_t i = 0; i < s.gens.size(); ++i) {
    for (std::size_t j = i + 1; j < s.gens.size(); ++j) {
      comms.push_back(commutator(s.gens[i], s.gens[j]));
    }
  }
  return normal_closure(comms, s.gens);
}

bool MatGroup::is_perfect(const Subgroup& s) const {
  return derived(s).order() == s.order();
}

std::vector<std::vector<Index>> MatGroup::subgroup_classes(const Subgroup& s) const {
  Marks seen(order());
  std::vector<std::vector<Index>> out;
  for (Index x : s.elements) {
    if (seen.test(x)) continue;
    std::vector<Index> orbit{x};
    seen.set(x);
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (Index g : s.gens) {
        Index y = conj(g, orbit[k]);
        if (!seen.test(y)) {
          seen.set(y);
          orbit.push_back(y);
        }
      }
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

bool MatGroup::is_simple(const Subgroup& s) const {
  if (s.order() < 2) return false;
  if (is_prime_order(s.order())) return true;
  for (const auto& cls : subgroup_classes(s)) {
    const Index r = cls.front();
    if (r == identity()) continue;
    const Index seed[1] = {r};
    if (normal_closure(seed, s.gens).order() != s.order()) return false;
  }
  return true;
}

bool MatGroup::is_centerless(const Subgroup& s) const {
  for (Index x : s.elements) {
    if (x == identity()) continue;
    bool central = true;
    for (Index g : s.gens) {
      if (mul(g, x) != mul(x, g)) {
        central = false;
        break;
      }
    }
    if (central) return false;
  }
  return true;
}

MatGroup MatGroup::materialize(const Subgroup& s) const {
  std::vector<Matrix> mats;
  for (Index x : s.gens) mats.push_back(element(x));
  if (mats.empty()) mats.push_back(element(identity()));
  return close_group(mats, std::max<std::size_t>(s.order(), 1));
}

MatGroup close_group(std::span<const Matrix> generators, std::size_t cap) {
  if (generators.empty()) throw std::invalid_argument("close_group needs at least one generator");
  if (cap < 1) throw std::invalid_argument("close_group cap must be positive");
  const Matrix& first = generators.front();
  for (const auto& g : generators) {
    if (g.dim() != first.dim() || !(g.field() == first.field())) {
      throw DimensionMismatch("generators differ in dimension or field");
    }
    if (!g.is_invertible()) throw std::invalid_argument("generator is singular");
  }

  auto data = std::make_shared<GroupData>();
  GroupData& g = *data;
  g.field = first.field_ptr();
  g.n = first.dim();
  g.n2 = g.n * g.n;
  g.gens.assign(generators.begin(), generators.end());
  const std::size_t ngens = g.gens.size();

  // Breadth-first search by left multiplication; parent/gen form a tree.
  std::vector<Index> parent{0};
  std::vector<std::uint32_t> via{0};
  std::vector<std::vector<Index>> left(ngens);
  const Matrix id = Matrix::identity(g.field, g.n);
  g.data.assign(id.entries().begin(), id.entries().end());
  g.count = 1;
  g.reserve_slots(1024);
  g.insert(0);

  std::vector<Entry> scratch(g.n2);
  for (std::size_t x = 0; x < g.count; ++x) {
    for (std::size_t k = 0; k < ngens; ++k) {
      multiply(*g.field, g.n, g.gens[k].entries().data(), g.at(static_cast<Index>(x)),
               scratch.data());
      Index y = g.find(scratch.data());
      if (y == GroupData::kEmpty) {
        if (g.count >= cap) {
          throw CapExceeded("group order exceeds enumeration cap " + std::to_string(cap));
        }
        y = static_cast<Index>(g.count++);
        g.data.insert(g.data.end(), scratch.begin(), scratch.end());
        parent.push_back(static_cast<Index>(x));
        via.push_back(static_cast<std::uint32_t>(k));
        if (g.count * 2 > g.slots.size()) {
          g.reserve_slots(g.count * 2);
          for (Index i = 0; i < g.count; ++i) g.insert(i);
        } else {
          g.insert(y);
        }
      }
      left[k].push_back(y);
    }
  }

  // Canonical relabelling by matrix entries.
  const std::size_t N = g.count;
  std::vector<Index> by_key(N);
  std::iota(by_key.begin(), by_key.end(), Index{0});
  std::sort(by_key.begin(), by_key.end(), [&](Index a, Index b) {
    return std::lexicographical_compare(g.at(a), g.at(a) + g.n2, g.at(b), g.at(b) + g.n2);
  });
  std::vector<Index> relabel(N);
  for (Index r = 0; r < N; ++r) relabel[by_key[r]] = r;
  std::vector<Entry> sorted(N * g.n2);
  for (Index r = 0; r < N; ++r) {
    std::copy(g.at(by_key[r]), g.at(by_key[r]) + g.n2, sorted.begin() + r * g.n2);
  }
  g.data = std::move(sorted);
  g.reserve_slots(N);
  for (Index i = 0; i < N; ++i) g.insert(i);
  g.identity = relabel[0];

  for (const auto& m : g.gens) g.gen_index.push_back(g.find(m.entries().data()));

  // Inverses along the tree: (s * x)^-1 = x^-1 * s^-1.
  std::vector<Matrix> gen_inv;
  for (const auto& m : g.gens) gen_inv.push_back(m.inverse());
  g.inverse.assign(N, 0);
  g.inverse[relabel[0]] = relabel[0];
  for (std::size_t bfs = 1; bfs < N; ++bfs) {
    const Index me = relabel[bfs];
    const Index pinv = g.inverse[relabel[parent[bfs]]];
    multiply(*g.field, g.n, g.at(pinv), gen_inv[via[bfs]].entries().data(), scratch.data());
    Index r = g.find(scratch.data());
    if (r == GroupData::kEmpty) throw InvariantError("inverse missing from closure");
    g.inverse[me] = r;
  }

  if (N <= MatGroup::kTableCap) {
    // row(s * x)[j] = s * row(x)[j], filled in BFS order.
    g.table.assign(N * N, 0);
    std::vector<std::vector<Index>> lg(ngens, std::vector<Index>(N));
    for (std::size_t k = 0; k < ngens; ++k) {
      for (std::size_t bfs = 0; bfs < N; ++bfs) lg[k][relabel[bfs]] = relabel[left[k][bfs]];
    }
    const Index e = relabel[0];
    for (Index j = 0; j < N; ++j) g.table[static_cast<std::size_t>(e) * N + j] = static_cast<std::uint16_t>(j);
    for (std::size_t bfs = 1; bfs < N; ++bfs) {
      const std::size_t row = relabel[bfs];
      const std::size_t prow = relabel[parent[bfs]];
      const auto& l = lg[via[bfs]];
      for (std::size_t j = 0; j < N; ++j) {
        g.table[row * N + j] = static_cast<std::uint16_t>(l[g.table[prow * N + j]]);
      }
    }
  }

  MatGroup out;
  out.d_ = std::move(data);
  return out;
}

MatGroup normalizer(const MatGroup& sub, const MatGroup& ambient) {
  if (sub.dim() != ambient.dim() || !(sub.field() == ambient.field())) {
    throw NotSubgroup("groups act on different spaces");
  }
  for (const auto& s : sub.generators()) {
    if (!ambient.contains(s)) throw NotSubgroup("subgroup generator outside the ambient group");
  }
  std::vector<Index> sub_gens;
  for (const auto& s : sub.generators()) sub_gens.push_back(*ambient.index_of(s));
  const auto sub_set = ambient.closure(sub_gens);
  if (sub_set.order() != sub.order()) throw NotSubgroup("subgroup is not contained in ambient");

  std::vector<Index> members;
  for (Index g = 0; g < ambient.order(); ++g) {
    bool ok = true;
    for (Index s : sub_gens) {
      if (!sub_set.contains(ambient.conj(g, s))) {
        ok = false;
        break;
      }
    }
    if (ok) members.push_back(g);
  }

  // Pick generators greedily in index order.
  Subgroup cur = ambient.closure({});
  std::vector<Index> gens;
  for (Index m : members) {
    if (cur.contains(m)) continue;
    gens.push_back(m);
    cur = ambient.closure(gens);
    if (cur.order() == members.size()) break;
  }
  return ambient.materialize(cur);
}

MatGroup derived_subgroup(const MatGroup& g) { return g.materialize(g.derived(g.whole())); }
bool is_perfect(const MatGroup& g) { return g.is_perfect(g.whole()); }
bool is_simple(const MatGroup& g) { return g.is_simple(g.whole()); }
bool is_centerless(const MatGroup& g) { return g.is_centerless(g.whole()); }

}  // namespace liequot::matgrp
