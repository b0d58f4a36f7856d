#pragma once

// Clones of operations on a finite set, represented either by a generating
// set (membership and per-arity slices come from a compositional closure) or
// by a membership predicate (slices come from filtering all operations).
// Subuniverses, internal isomorphisms between subalgebras, and tuple orbits
// under those isomorphisms are derived from the generators; they drive the
// minor decision procedure.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cminor/finite_op.hpp"

namespace cminor {

struct BinaryRelation {
  int k;
  std::vector<std::pair<Value, Value>> pairs;

  bool contains(Value a, Value b) const {
    for (const auto& [x, y] : pairs)
      if (x == a && y == b) return true;
    return false;
  }

  /// {(a,b) : not (a = b = 1)} on {0,1}.
  static BinaryRelation rho0() { return {2, {{0, 0}, {0, 1}, {1, 0}}}; }
  /// {(a,b) : not (a = b = 0)} on {0,1}.
  static BinaryRelation rho1() { return {2, {{0, 1}, {1, 0}, {1, 1}}}; }
  /// The order 0 <= 1.
  static BinaryRelation leq01() { return {2, {{0, 0}, {0, 1}, {1, 1}}}; }
};

/// Does f preserve rho?  Checks every pair of pointwise rho-related tuples.
inline bool preserves_relation(const FiniteOp& f, const BinaryRelation& rho) {
  if (f.base() != rho.k) throw std::invalid_argument("relation base mismatch");
  const int n = f.arity();
  const std::size_t p = rho.pairs.size();
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  std::vector<Value> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
  for (;;) {
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i)] = rho.pairs[pick[static_cast<std::size_t>(i)]].first;
      b[static_cast<std::size_t>(i)] = rho.pairs[pick[static_cast<std::size_t>(i)]].second;
    }
    if (!rho.contains(f.apply(a), f.apply(b))) return false;
    int j = n - 1;
    for (; j >= 0; --j) {
      if (++pick[static_cast<std::size_t>(j)] < p) break;
      pick[static_cast<std::size_t>(j)] = 0;
    }
    if (j < 0) return true;
  }
}

struct Subalgebra {
  std::vector<Value> universe;  // sorted
};

/// A bijection between two subuniverses that commutes with every generator.
class InternalIso {
 public:
  InternalIso(int k, std::vector<Value> domain, std::vector<Value> image)
      : k_(k), domain_(std::move(domain)), image_(std::move(image)),
        lut_(static_cast<std::size_t>(k), -1) {
    if (domain_.size() != image_.size())
      throw std::invalid_argument("domain and image sizes differ");
    for (std::size_t i = 0; i < domain_.size(); ++i) lut_[domain_[i]] = image_[i];
  }

  int base() const { return k_; }
  const std::vector<Value>& domain() const { return domain_; }
  const std::vector<Value>& image() const { return image_; }

  bool defined_on(Value v) const { return lut_[v] >= 0; }

  bool defined_on(std::span<const Value> tuple) const {
    for (Value v : tuple)
      if (lut_[v] < 0) return false;
    return true;
  }

  Value map(Value v) const {
    if (lut_[v] < 0) throw std::invalid_argument("value outside isomorphism domain");
    return static_cast<Value>(lut_[v]);
  }

  void map_tuple(std::span<const Value> in, std::span<Value> out) const {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = map(in[i]);
  }

  InternalIso inverse() const {
    std::vector<std::pair<Value, Value>> pairs;
    pairs.reserve(domain_.size());
    for (std::size_t i = 0; i < domain_.size(); ++i) pairs.emplace_back(image_[i], domain_[i]);
    std::sort(pairs.begin(), pairs.end());
    std::vector<Value> dom, img;
    for (const auto& [a, b] : pairs) {
      dom.push_back(a);
      img.push_back(b);
    }
    return InternalIso(k_, std::move(dom), std::move(img));
  }

  friend bool operator==(const InternalIso& a, const InternalIso& b) {
    return a.k_ == b.k_ && a.domain_ == b.domain_ && a.image_ == b.image_;
  }
  friend auto operator<=>(const InternalIso& a, const InternalIso& b) {
    if (auto c = a.k_ <=> b.k_; c != 0) return c;
    if (auto c = a.domain_ <=> b.domain_; c != 0) return c;
    return a.image_ <=> b.image_;
  }

 private:
  int k_;
  std::vector<Value> domain_, image_;
  std::vector<std::int16_t> lut_;
};

/// One orbit of tuple codes under the internal isomorphisms acting
/// coordinatewise.  The representative is the least member.
struct OrbitBlock {
  int arity;
  Code representative;
  std::vector<Code> members;  // sorted
};

inline std::size_t default_cell_cap(int k) { return k == 2 ? 32 : 16; }

/// Handle to a clone.  Copies share the underlying caches; caches are
/// append-only and filled under exclusive access, so concurrent reads of one
/// handle are safe.
class Clone {
 public:
  static Clone generated(int k, std::vector<FiniteOp> generators, std::string name = {}) {
    auto impl = std::make_shared<Impl>();
    impl->k = k;
    impl->kind = Kind::kGenerated;
    impl->name = std::move(name);
    impl->generators = std::move(generators);
    impl->cell_cap = default_cell_cap(k);
    validate(*impl);
    return Clone(std::move(impl));
  }

  static Clone predicate(int k, std::string name, std::function<bool(const FiniteOp&)> member,
                         std::vector<FiniteOp> generators = {}) {
    auto impl = std::make_shared<Impl>();
    impl->k = k;
    impl->kind = Kind::kPredicate;
    impl->name = std::move(name);
    impl->member = std::move(member);
    impl->generators = std::move(generators);
    impl->cell_cap = default_cell_cap(k);
    validate(*impl);
    return Clone(std::move(impl));
  }

  int base() const { return impl_->k; }
  const std::string& name() const { return impl_->name; }
  bool has_predicate() const { return static_cast<bool>(impl_->member); }
  bool has_generators() const { return impl_->kind == Kind::kGenerated || !impl_->generators.empty(); }
  const std::vector<FiniteOp>& generators() const {
    if (!has_generators())
      throw std::invalid_argument("clone \"" + impl_->name + "\" carries no generating set");
    return impl_->generators;
  }

  std::size_t cell_cap() const { return impl_->cell_cap; }
  void set_cell_cap(std::size_t cap) { impl_->cell_cap = cap; }

  /// Membership test.  Predicate clones answer directly; generated clones
  /// use preservation of the internal isomorphisms when the clone contains
  /// the discriminator, and otherwise fall back to the cached arity slice.
  bool contains(const FiniteOp& f) const;

  /// Does the clone contain the ternary discriminator?
  bool is_discriminator() const;

  /// The n-ary members, sorted; immutable shared snapshot.
  std::shared_ptr<const std::vector<FiniteOp>> members(int arity) const;

  /// All subuniverses (subsets closed under every generator), sorted by
  /// (size, elements).
  std::shared_ptr<const std::vector<Subalgebra>> subalgebras() const;

  /// All internal isomorphisms between subalgebras, sorted.
  std::shared_ptr<const std::vector<InternalIso>> internal_isos() const;

  /// Least subuniverse containing the given elements.
  Subalgebra generated_subuniverse(std::span<const Value> elements) const;
  std::uint32_t generated_subuniverse_mask(std::uint32_t elements_mask) const;

  /// Orbit partition of all n-tuples under the internal isomorphisms.
  std::shared_ptr<const std::vector<OrbitBlock>> orbit_partition(int arity) const;

 private:
  enum class Kind { kGenerated, kPredicate };

  struct Impl {
    int k = 2;
    Kind kind = Kind::kGenerated;
    std::string name;
    std::vector<FiniteOp> generators;
    std::function<bool(const FiniteOp&)> member;
    std::size_t cell_cap = 32;

    mutable std::shared_mutex mu;
    mutable std::map<int, std::shared_ptr<const std::vector<FiniteOp>>> members_cache;
    mutable std::shared_ptr<const std::vector<Subalgebra>> subalgebras_cache;
    mutable std::shared_ptr<const std::vector<InternalIso>> isos_cache;
    mutable std::map<int, std::shared_ptr<const std::vector<OrbitBlock>>> orbit_cache;
    mutable std::vector<std::optional<std::uint32_t>> closure_cache;
    mutable std::optional<bool> discriminator_cache;
  };

  explicit Clone(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  static void validate(const Impl& impl) {
    if (impl.k < 2) throw std::invalid_argument("base size must be at least 2");
    if (impl.k > 16) throw std::invalid_argument("base sizes above 16 are not supported");
    for (const FiniteOp& g : impl.generators)
      if (g.base() != impl.k) throw std::invalid_argument("generator base mismatch");
    if (impl.kind == Kind::kPredicate && !impl.member)
      throw std::invalid_argument("predicate clone needs a membership function");
  }

  friend std::vector<FiniteOp> generate_arity(const Clone&, int);
  friend std::vector<FiniteOp> enumerate_arity(const Clone&, int);

  std::shared_ptr<Impl> impl_;
};

namespace detail {

/// At most this many operations are ever enumerated or kept in one slice.
inline constexpr std::uint64_t kSliceBudget = 1ull << 24;

/// Invokes fn on every n-ary operation over {0,...,k-1}; fn may return false
/// to stop.  The per-clone cell cap bounds the table size and a fixed budget
/// bounds the k^(k^n) enumeration itself.
template <typename Fn>
void for_each_op(int k, int n, std::size_t cell_cap, Fn&& fn) {
  const Code cells = table_cells(k, n);
  if (cells > cell_cap)
    throw ResourceLimitError("arity " + std::to_string(n) + " over base " + std::to_string(k) +
                             " needs " + std::to_string(cells) +
                             " table cells, above the cap of " + std::to_string(cell_cap));
  std::uint64_t ops = 1;
  for (Code i = 0; i < cells; ++i) {
    if (ops > kSliceBudget / static_cast<std::uint64_t>(k)) {
      ops = kSliceBudget + 1;
      break;
    }
    ops *= static_cast<std::uint64_t>(k);
  }
  if (ops > kSliceBudget)
    throw ResourceLimitError("enumerating all operations with " + std::to_string(cells) +
                             " table cells over base " + std::to_string(k) +
                             " exceeds the slice budget");
  if (k == 2) {
    const std::uint64_t total = 1ull << cells;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      FiniteOp op = FiniteOp::from_index_fn(
          2, n, [&](Code idx) { return static_cast<Value>((bits >> idx) & 1u); });
      if (!fn(std::move(op))) return;
    }
    return;
  }
  std::vector<Value> table(static_cast<std::size_t>(cells), 0);
  for (;;) {
    if (!fn(FiniteOp(k, n, table))) return;
    std::size_t j = table.size();
    for (; j > 0; --j) {
      if (++table[j - 1] < k) break;
      table[j - 1] = 0;
    }
    if (j == 0) return;
  }
}

inline bool subset_closed_under(const FiniteOp& g, std::uint32_t mask, int k) {
  std::vector<Value> elems;
  for (int v = 0; v < k; ++v)
    if (mask & (1u << v)) elems.push_back(static_cast<Value>(v));
  const int m = g.arity();
  std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
  std::vector<Value> args(static_cast<std::size_t>(m));
  for (;;) {
    for (int i = 0; i < m; ++i) args[static_cast<std::size_t>(i)] = elems[pick[static_cast<std::size_t>(i)]];
    if (!(mask & (1u << g.apply(args)))) return false;
    int j = m - 1;
    for (; j >= 0; --j) {
      if (++pick[static_cast<std::size_t>(j)] < elems.size()) break;
      pick[static_cast<std::size_t>(j)] = 0;
    }
    if (j < 0) return true;
  }
}

/// Does iota commute with g on every tuple over iota's domain?
inline bool commutes(const InternalIso& iota, const FiniteOp& g) {
  const int m = g.arity();
  const auto& dom = iota.domain();
  std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
  std::vector<Value> a(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(m));
  for (;;) {
    for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i)] = dom[pick[static_cast<std::size_t>(i)]];
    iota.map_tuple(a, b);
    const Value fa = g.apply(a);
    if (!iota.defined_on(fa) || iota.map(fa) != g.apply(b)) return false;
    int j = m - 1;
    for (; j >= 0; --j) {
      if (++pick[static_cast<std::size_t>(j)] < dom.size()) break;
      pick[static_cast<std::size_t>(j)] = 0;
    }
    if (j < 0) return true;
  }
}

}  // namespace detail

/// Fixpoint closure of the generators at one arity: start from the
/// projections and keep composing every generator with already-known
/// operations until nothing new appears.  Result is sorted.
inline std::vector<FiniteOp> generate_arity(const Clone& clone, int arity) {
  if (!clone.has_generators())
    throw std::invalid_argument("generate_arity needs a generating set");
  if (arity < 1) throw std::invalid_argument("arity must be positive");
  const int k = clone.base();
  const Code cells = table_cells(k, arity);
  if (cells > clone.cell_cap())
    throw ResourceLimitError("arity " + std::to_string(arity) + " over base " +
                             std::to_string(k) + " needs " + std::to_string(cells) +
                             " table cells, above the cap of " + std::to_string(clone.cell_cap()));
  std::vector<FiniteOp> members;
  std::unordered_set<FiniteOp, FiniteOpHash> seen;
  for (int i = 1; i <= arity; ++i) {
    members.push_back(projection(k, arity, i));
    seen.insert(members.back());
  }
  std::size_t new_lo = 0;  // members added in the previous round
  for (;;) {
    const std::size_t new_hi = members.size();
    std::vector<FiniteOp> added;
    for (const FiniteOp& g : clone.generators()) {
      const int m = g.arity();
      std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
      std::vector<FiniteOp> args;
      for (;;) {
        bool touches_new = false;
        for (std::size_t p : pick) touches_new = touches_new || p >= new_lo;
        if (touches_new) {
          args.clear();
          for (std::size_t p : pick) args.push_back(members[p]);
          FiniteOp c = compose(g, args);
          if (seen.insert(c).second) added.push_back(std::move(c));
        }
        int j = m - 1;
        for (; j >= 0; --j) {
          if (++pick[static_cast<std::size_t>(j)] < new_hi) break;
          pick[static_cast<std::size_t>(j)] = 0;
        }
        if (j < 0) break;
      }
    }
    if (added.empty()) break;
    new_lo = new_hi;
    for (FiniteOp& op : added) members.push_back(std::move(op));
    if (members.size() > detail::kSliceBudget)
      throw ResourceLimitError("generated slice at arity " + std::to_string(arity) +
                               " exceeds the slice budget");
  }
  std::sort(members.begin(), members.end());
  return members;
}

/// All n-ary operations passing the clone's membership predicate, sorted.
inline std::vector<FiniteOp> enumerate_arity(const Clone& clone, int arity) {
  if (!clone.has_predicate())
    throw std::invalid_argument("enumerate_arity needs a membership predicate");
  if (arity < 1) throw std::invalid_argument("arity must be positive");
  std::vector<FiniteOp> out;
  detail::for_each_op(clone.base(), arity, clone.cell_cap(), [&](FiniteOp op) {
    if (clone.contains(op)) out.push_back(std::move(op));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::shared_ptr<const std::vector<FiniteOp>> Clone::members(int arity) const {
  {
    std::shared_lock lock(impl_->mu);
    if (auto it = impl_->members_cache.find(arity); it != impl_->members_cache.end())
      return it->second;
  }
  auto slice = std::make_shared<const std::vector<FiniteOp>>(
      has_predicate() ? enumerate_arity(*this, arity) : generate_arity(*this, arity));
  std::unique_lock lock(impl_->mu);
  auto [it, inserted] = impl_->members_cache.emplace(arity, slice);
  return it->second;
}

inline std::shared_ptr<const std::vector<Subalgebra>> Clone::subalgebras() const {
  {
    std::shared_lock lock(impl_->mu);
    if (impl_->subalgebras_cache) return impl_->subalgebras_cache;
  }
  if (!has_generators())
    throw std::invalid_argument("subalgebras need a generating set (or generator certificate)");
  const int k = impl_->k;
  std::vector<Subalgebra> subs;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    bool closed = true;
    for (const FiniteOp& g : impl_->generators)
      closed = closed && detail::subset_closed_under(g, mask, k);
    if (!closed) continue;
    Subalgebra s;
    for (int v = 0; v < k; ++v)
      if (mask & (1u << v)) s.universe.push_back(static_cast<Value>(v));
    subs.push_back(std::move(s));
  }
  std::sort(subs.begin(), subs.end(), [](const Subalgebra& a, const Subalgebra& b) {
    if (a.universe.size() != b.universe.size()) return a.universe.size() < b.universe.size();
    return a.universe < b.universe;
  });
  auto shared = std::make_shared<const std::vector<Subalgebra>>(std::move(subs));
  std::unique_lock lock(impl_->mu);
  if (!impl_->subalgebras_cache) impl_->subalgebras_cache = shared;
  return impl_->subalgebras_cache;
}

inline std::shared_ptr<const std::vector<InternalIso>> Clone::internal_isos() const {
  {
    std::shared_lock lock(impl_->mu);
    if (impl_->isos_cache) return impl_->isos_cache;
  }
  auto subs = subalgebras();
  const int k = impl_->k;
  std::vector<InternalIso> isos;
  for (const Subalgebra& from : *subs) {
    for (const Subalgebra& to : *subs) {
      if (from.universe.size() != to.universe.size()) continue;
      std::vector<Value> img = to.universe;
      std::sort(img.begin(), img.end());
      do {
        InternalIso iota(k, from.universe, img);
        bool ok = true;
        for (const FiniteOp& g : impl_->generators) ok = ok && detail::commutes(iota, g);
        if (ok) isos.push_back(std::move(iota));
      } while (std::next_permutation(img.begin(), img.end()));
    }
  }
  std::sort(isos.begin(), isos.end());
  auto shared = std::make_shared<const std::vector<InternalIso>>(std::move(isos));
  std::unique_lock lock(impl_->mu);
  if (!impl_->isos_cache) impl_->isos_cache = shared;
  return impl_->isos_cache;
}

inline std::uint32_t Clone::generated_subuniverse_mask(std::uint32_t elements_mask) const {
  if (!has_generators())
    throw std::invalid_argument("generated subuniverses need a generating set");
  const int k = impl_->k;
  {
    std::shared_lock lock(impl_->mu);
    if (!impl_->closure_cache.empty() && impl_->closure_cache[elements_mask])
      return *impl_->closure_cache[elements_mask];
  }
  std::uint32_t mask = elements_mask;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Value> elems;
    for (int v = 0; v < k; ++v)
      if (mask & (1u << v)) elems.push_back(static_cast<Value>(v));
    for (const FiniteOp& g : impl_->generators) {
      const int m = g.arity();
      std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
      std::vector<Value> args(static_cast<std::size_t>(m));
      for (;;) {
        for (int i = 0; i < m; ++i)
          args[static_cast<std::size_t>(i)] = elems[pick[static_cast<std::size_t>(i)]];
        const Value v = g.apply(args);
        if (!(mask & (1u << v))) {
          mask |= 1u << v;
          grew = true;
        }
        int j = m - 1;
        for (; j >= 0; --j) {
          if (++pick[static_cast<std::size_t>(j)] < elems.size()) break;
          pick[static_cast<std::size_t>(j)] = 0;
        }
        if (j < 0) break;
      }
      if (grew) break;  // restart with the larger set
    }
  }
  std::unique_lock lock(impl_->mu);
  if (impl_->closure_cache.empty()) impl_->closure_cache.resize(1u << k);
  impl_->closure_cache[elements_mask] = mask;
  return mask;
}

inline Subalgebra Clone::generated_subuniverse(std::span<const Value> elements) const {
  if (elements.empty()) throw std::invalid_argument("need at least one element");
  std::uint32_t mask = 0;
  for (Value v : elements) {
    if (static_cast<int>(v) >= impl_->k) throw std::invalid_argument("element out of range");
    mask |= 1u << v;
  }
  const std::uint32_t closure = generated_subuniverse_mask(mask);
  Subalgebra s;
  for (int v = 0; v < impl_->k; ++v)
    if (closure & (1u << v)) s.universe.push_back(static_cast<Value>(v));
  return s;
}

inline std::shared_ptr<const std::vector<OrbitBlock>> Clone::orbit_partition(int arity) const {
  if (arity < 1) throw std::invalid_argument("arity must be positive");
  {
    std::shared_lock lock(impl_->mu);
    if (auto it = impl_->orbit_cache.find(arity); it != impl_->orbit_cache.end())
      return it->second;
  }
  const int k = impl_->k;
  const Code cells = table_cells(k, arity);
  if (cells > impl_->cell_cap)
    throw ResourceLimitError("orbit partition at arity " + std::to_string(arity) + " needs " +
                             std::to_string(cells) + " tuples, above the cap of " +
                             std::to_string(impl_->cell_cap));
  auto isos = internal_isos();
  std::vector<OrbitBlock> blocks;
  std::vector<bool> seen(static_cast<std::size_t>(cells), false);
  std::vector<Value> tup(static_cast<std::size_t>(arity)), img(static_cast<std::size_t>(arity));
  for (Code start = 0; start < cells; ++start) {
    if (seen[start]) continue;
    OrbitBlock block{arity, start, {}};
    std::vector<Code> frontier{start};
    seen[start] = true;
    while (!frontier.empty()) {
      const Code code = frontier.back();
      frontier.pop_back();
      block.members.push_back(code);
      decode_tuple(code, k, arity, tup);
      for (const InternalIso& iota : *isos) {
        if (!iota.defined_on(tup)) continue;
        iota.map_tuple(tup, img);
        const Code mapped = encode_tuple(img, k);
        if (!seen[mapped]) {
          seen[mapped] = true;
          frontier.push_back(mapped);
        }
      }
    }
    std::sort(block.members.begin(), block.members.end());
    block.representative = block.members.front();
    blocks.push_back(std::move(block));
  }
  auto shared = std::make_shared<const std::vector<OrbitBlock>>(std::move(blocks));
  std::unique_lock lock(impl_->mu);
  auto [it, inserted] = impl_->orbit_cache.emplace(arity, shared);
  return it->second;
}

inline bool Clone::contains(const FiniteOp& f) const {
  if (f.base() != impl_->k) throw std::invalid_argument("operation base mismatch");
  if (has_predicate()) return impl_->member(f);
  if (is_discriminator()) {
    // For a clone containing the discriminator, membership is equivalent to
    // preserving every internal isomorphism.
    auto isos = internal_isos();
    const int n = f.arity();
    std::vector<Value> b(static_cast<std::size_t>(n));
    for (const InternalIso& iota : *isos) {
      const auto& dom = iota.domain();
      std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
      std::vector<Value> a(static_cast<std::size_t>(n));
      for (;;) {
        for (int i = 0; i < n; ++i)
          a[static_cast<std::size_t>(i)] = dom[pick[static_cast<std::size_t>(i)]];
        iota.map_tuple(a, b);
        const Value fa = f.apply(a);
        if (!iota.defined_on(fa) || iota.map(fa) != f.apply(b)) return false;
        int j = n - 1;
        for (; j >= 0; --j) {
          if (++pick[static_cast<std::size_t>(j)] < dom.size()) break;
          pick[static_cast<std::size_t>(j)] = 0;
        }
        if (j < 0) break;
      }
    }
    return true;
  }
  auto slice = members(f.arity());
  return std::binary_search(slice->begin(), slice->end(), f);
}

inline bool Clone::is_discriminator() const {
  {
    std::shared_lock lock(impl_->mu);
    if (impl_->discriminator_cache) return *impl_->discriminator_cache;
  }
  const FiniteOp t = discriminator(impl_->k);
  bool result = false;
  if (has_predicate()) {
    result = impl_->member(t);
  } else {
    for (const FiniteOp& g : impl_->generators) result = result || g == t;
    if (!result) {
      auto slice = members(3);
      result = std::binary_search(slice->begin(), slice->end(), t);
    }
  }
  std::unique_lock lock(impl_->mu);
  impl_->discriminator_cache = result;
  return result;
}

// ---------------------------------------------------------------------------
// Boolean membership predicates and the named clone registry.

inline void require_boolean(const FiniteOp& f, const char* what) {
  if (f.base() != 2) throw std::invalid_argument(std::string(what) + " is defined for base 2 only");
}

inline bool is_zero_preserving(const FiniteOp& f) {
  require_boolean(f, "zero preservation");
  return f.value(0) == 0;
}

inline bool is_one_preserving(const FiniteOp& f) {
  require_boolean(f, "one preservation");
  return f.value(f.table_size() - 1) == 1;
}

inline bool is_self_dual(const FiniteOp& f) {
  require_boolean(f, "self-duality");
  const Code mask = f.table_size() - 1;
  for (Code i = 0; i < f.table_size(); ++i)
    if (f.value(i) == f.value(mask ^ i)) return false;
  return true;
}

inline bool is_monotone(const FiniteOp& f) {
  require_boolean(f, "monotonicity");
  const int n = f.arity();
  for (Code i = 0; i < f.table_size(); ++i)
    for (int b = 0; b < n; ++b) {
      const Code raised = i | (Code{1} << b);
      if (raised != i && f.value(i) > f.value(raised)) return false;
    }
  return true;
}

/// Degree <= 1 over the two-element field (constants, +, and negation).
inline bool is_affine(const FiniteOp& f) {
  require_boolean(f, "affinity");
  std::vector<Value> coeff = f.table_values();
  const int n = f.arity();
  for (int b = 0; b < n; ++b)
    for (Code i = 0; i < coeff.size(); ++i)
      if (i & (Code{1} << b)) coeff[i] ^= coeff[i ^ (Code{1} << b)];
  for (Code i = 0; i < coeff.size(); ++i)
    if (coeff[i] && std::popcount(i) >= 2) return false;
  return true;
}

/// Named clones.  Base 2: O, T0, T1, Tid, S, D, M, L, R0, R1 (the first six
/// carry both a predicate and a generating set).  Base >= 3: O and D, plus
/// the maximal subclones E and K of D.  "gen:<op>,<op>,..." builds a
/// generated clone from parsed operations.
inline Clone named_clone(std::string_view id, int k = 2) {
  const std::string name(id);
  if (id.rfind("gen:", 0) == 0) {
    std::vector<FiniteOp> gens;
    std::string_view rest = id.substr(4);
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      gens.push_back(FiniteOp::parse(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (gens.empty()) throw std::invalid_argument("gen: needs at least one operation");
    const int kg = gens.front().base();
    for (const FiniteOp& g : gens)
      if (g.base() != kg) throw std::invalid_argument("gen: operations must share one base");
    return Clone::generated(kg, std::move(gens), name);
  }
  const auto boolean_only = [&] {
    if (k != 2) throw std::invalid_argument("clone \"" + name + "\" is defined for base 2 only");
  };
  if (id == "O") {
    std::vector<FiniteOp> gens;
    if (k == 2) gens.push_back(FiniteOp::parse("2:2:1110"));  // nand
    return Clone::predicate(k, name, [](const FiniteOp&) { return true; }, std::move(gens));
  }
  if (id == "T0") {
    boolean_only();
    return Clone::predicate(2, name, [](const FiniteOp& f) { return is_zero_preserving(f); },
                            {FiniteOp::parse("2:2:0110"), FiniteOp::parse("2:2:0001")});
  }
  if (id == "T1") {
    boolean_only();
    return Clone::predicate(2, name, [](const FiniteOp& f) { return is_one_preserving(f); },
                            {FiniteOp::parse("2:2:1001"), FiniteOp::parse("2:2:0111")});
  }
  if (id == "Tid") {
    boolean_only();
    return Clone::predicate(
        2, name,
        [](const FiniteOp& f) { return is_zero_preserving(f) && is_one_preserving(f); },
        {discriminator(2), FiniteOp::parse("2:2:0001")});
  }
  if (id == "S") {
    boolean_only();
    return Clone::predicate(2, name, [](const FiniteOp& f) { return is_self_dual(f); },
                            {discriminator(2), FiniteOp::parse("2:1:10")});
  }
  if (id == "D") {
    if (k == 2)
      return Clone::predicate(
          2, name,
          [](const FiniteOp& f) {
            return is_zero_preserving(f) && is_one_preserving(f) && is_self_dual(f);
          },
          {discriminator(2)});
    return Clone::generated(k, {discriminator(k)}, name);
  }
  if (id == "M") {
    boolean_only();
    return Clone::predicate(2, name, [](const FiniteOp& f) { return is_monotone(f); });
  }
  if (id == "L") {
    boolean_only();
    return Clone::predicate(2, name, [](const FiniteOp& f) { return is_affine(f); });
  }
  if (id == "R0" || id == "R1") {
    boolean_only();
    const BinaryRelation rho = id == "R0" ? BinaryRelation::rho0() : BinaryRelation::rho1();
    return Clone::predicate(2, name,
                            [rho](const FiniteOp& f) { return preserves_relation(f, rho); });
  }
  if (id == "E" || id == "K") {
    if (k < 3)
      throw std::invalid_argument("clone \"" + name + "\" is defined for base sizes >= 3");
    const bool linear = id == "E";
    Clone d = named_clone("D", k);
    const std::vector<Value> zero_one{0, 1};
    return Clone::predicate(k, name, [d, linear, zero_one](const FiniteOp& f) {
      if (!d.contains(f)) return false;
      const FiniteOp r = restrict_to(f, zero_one);
      return linear ? is_affine(r) : is_monotone(r);
    });
  }
  throw std::invalid_argument("unknown clone \"" + name + "\"");
}

}  // namespace cminor
