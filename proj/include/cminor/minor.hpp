#pragma once

// Deciding the minor quasiorder: f is a minor of g over a clone C when
// f = g(h_1,...,h_m) for some h_i in C of f's arity.  For clones containing
// the ternary discriminator this is decided blockwise: the tuples of f's
// arity split into orbits under C's internal isomorphisms, and on the orbit
// of a representative c it suffices to find one target tuple d, drawn from
// the subuniverse generated by c's entries, such that f agrees with g
// through the partial map sending each iota(c) to iota(d).  Over the clone
// of all operations the test collapses to image containment.  A bounded
// exhaustive search over inner tuples serves as the independent oracle.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cminor/boolean_catalog.hpp"
#include "cminor/clone.hpp"
#include "cminor/finite_op.hpp"
#include "cminor/poset.hpp"

namespace cminor {

/// Thrown when a decision procedure is asked about a clone it does not
/// cover (one without the discriminator).
class UnsupportedCloneError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Minor test over the clone of all operations: image containment.
inline bool minor_over_all_ops(const FiniteOp& f, const FiniteOp& g) {
  if (f.base() != g.base()) throw std::invalid_argument("operations have different bases");
  const std::vector<Value> fi = image(f), gi = image(g);
  return std::includes(gi.begin(), gi.end(), fi.begin(), fi.end());
}

/// The partial map on tuple codes sending iota(c) to iota(d) for every
/// internal isomorphism iota defined on c's entries.
struct PhiMap {
  std::vector<Code> source;  // sorted
  std::vector<Code> target;  // aligned with source

  Code apply(Code p) const {
    const auto it = std::lower_bound(source.begin(), source.end(), p);
    if (it == source.end() || *it != p)
      throw std::invalid_argument("tuple code outside the map's domain");
    return target[static_cast<std::size_t>(it - source.begin())];
  }
};

/// Builds the map for a block representative c and a candidate target d.
/// Requires every entry of d to lie in the subuniverse generated by c's
/// entries; well-definedness then follows and is asserted.
inline PhiMap phi_map(const Clone& clone, std::span<const Value> c, std::span<const Value> d) {
  if (c.size() != d.size()) throw std::invalid_argument("tuples must have equal length");
  if (c.empty()) throw std::invalid_argument("tuples must be nonempty");
  std::uint32_t c_mask = 0, d_mask = 0;
  for (Value v : c) c_mask |= 1u << v;
  for (Value v : d) d_mask |= 1u << v;
  const std::uint32_t span_mask = clone.generated_subuniverse_mask(c_mask);
  if (d_mask & ~span_mask)
    throw std::invalid_argument(
        "target tuple leaves the subuniverse generated by the representative's entries");
  auto isos = clone.internal_isos();
  std::vector<std::pair<Code, Code>> pairs;
  std::vector<Value> ic(c.size()), id(d.size());
  for (const InternalIso& iota : *isos) {
    if (!iota.defined_on(c)) continue;
    iota.map_tuple(c, ic);
    iota.map_tuple(d, id);
    pairs.emplace_back(encode_tuple(ic, clone.base()), encode_tuple(id, clone.base()));
  }
  std::sort(pairs.begin(), pairs.end());
  PhiMap map;
  for (const auto& [p, q] : pairs) {
    if (!map.source.empty() && map.source.back() == p) {
      if (map.target.back() != q)
        throw std::logic_error("partial map is not well defined; iso family is inconsistent");
      continue;
    }
    map.source.push_back(p);
    map.target.push_back(q);
  }
  return map;
}

/// Decides whether f is a minor of g over the clone.  Requires the clone to
/// contain the discriminator; needs a generating set except for the clone of
/// all operations.
inline bool minor_decide(const Clone& clone, const FiniteOp& f, const FiniteOp& g) {
  if (f.base() != clone.base() || g.base() != clone.base())
    throw std::invalid_argument("operation base does not match the clone");
  if (!clone.is_discriminator())
    throw UnsupportedCloneError("the decision procedure covers clones containing the "
                                "discriminator; \"" +
                                clone.name() + "\" lacks it");
  if (!clone.has_generators()) {
    if (clone.name() == "O") return minor_over_all_ops(f, g);
    throw std::invalid_argument("the decision procedure needs a generating set for \"" +
                                clone.name() + "\"");
  }
  const int k = clone.base(), n = f.arity(), m = g.arity();
  auto blocks = clone.orbit_partition(n);
  auto isos = clone.internal_isos();
  std::vector<Value> c(static_cast<std::size_t>(n)), img(static_cast<std::size_t>(n));
  std::vector<Value> d(static_cast<std::size_t>(m)), dimg(static_cast<std::size_t>(m));
  for (const OrbitBlock& block : *blocks) {
    decode_tuple(block.representative, k, n, c);
    std::uint32_t c_mask = 0;
    for (Value v : c) c_mask |= 1u << v;
    // The conditions this block imposes: one equation per isomorphism whose
    // domain covers the representative's entries.
    std::vector<std::pair<Value, const InternalIso*>> checks;
    for (const InternalIso& iota : *isos) {
      if (!iota.defined_on(c)) continue;
      iota.map_tuple(c, img);
      checks.emplace_back(f.value(encode_tuple(img, k)), &iota);
    }
    // Candidate targets range over the subuniverse generated by the entries.
    std::vector<Value> span;
    const std::uint32_t span_mask = clone.generated_subuniverse_mask(c_mask);
    for (int v = 0; v < k; ++v)
      if (span_mask & (1u << v)) span.push_back(static_cast<Value>(v));
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    bool block_ok = false;
    for (;;) {
      for (int i = 0; i < m; ++i) d[static_cast<std::size_t>(i)] = span[pick[static_cast<std::size_t>(i)]];
      bool ok = true;
      for (const auto& [fc, iota] : checks) {
        iota->map_tuple(d, dimg);
        if (g.value(encode_tuple(dimg, k)) != fc) {
          ok = false;
          break;
        }
      }
      if (ok) {
        block_ok = true;
        break;
      }
      int j = m - 1;
      for (; j >= 0; --j) {
        if (++pick[static_cast<std::size_t>(j)] < span.size()) break;
        pick[static_cast<std::size_t>(j)] = 0;
      }
      if (j < 0) break;
    }
    if (!block_ok) return false;
  }
  return true;
}

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000ull;

/// Exhaustive search for inner operations witnessing f = g(h_1,...,h_m),
/// h_i drawn from the clone's slice at f's arity.  Returns the h_i on
/// success.  Throws when the search space exceeds the budget.
inline std::optional<std::vector<FiniteOp>> minor_witness(
    const Clone& clone, const FiniteOp& f, const FiniteOp& g,
    std::uint64_t budget = kDefaultSearchBudget) {
  if (f.base() != clone.base() || g.base() != clone.base())
    throw std::invalid_argument("operation base does not match the clone");
  const int k = clone.base(), n = f.arity(), m = g.arity();
  auto slice = clone.members(n);
  const std::uint64_t count = slice->size();
  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) {
    if (count != 0 && total > budget / count + 1) {
      total = budget + 1;
      break;
    }
    total *= count;
  }
  if (total > budget)
    throw ResourceLimitError("search space of " + std::to_string(count) + "^" +
                             std::to_string(m) + " inner tuples exceeds the budget of " +
                             std::to_string(budget));
  const Code cells = table_cells(k, n);
  std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
  if (count == 0) return std::nullopt;
  for (;;) {
    bool ok = true;
    for (Code a = 0; a < cells && ok; ++a) {
      Code inner = 0;
      for (int j = 0; j < m; ++j)
        inner = inner * static_cast<Code>(k) + (*slice)[pick[static_cast<std::size_t>(j)]].value(a);
      ok = g.value(inner) == f.value(a);
    }
    if (ok) {
      std::vector<FiniteOp> witness;
      witness.reserve(static_cast<std::size_t>(m));
      for (int j = 0; j < m; ++j) witness.push_back((*slice)[pick[static_cast<std::size_t>(j)]]);
      return witness;
    }
    int j = m - 1;
    for (; j >= 0; --j) {
      if (++pick[static_cast<std::size_t>(j)] < count) break;
      pick[static_cast<std::size_t>(j)] = 0;
    }
    if (j < 0) return std::nullopt;
  }
}

inline bool minor_bruteforce(const Clone& clone, const FiniteOp& f, const FiniteOp& g,
                             std::uint64_t budget = kDefaultSearchBudget) {
  return minor_witness(clone, f, g, budget).has_value();
}

/// Are f and g minors of each other?  Uses the decision procedure when the
/// clone supports it, the exhaustive search otherwise.
inline bool equivalent(const Clone& clone, const FiniteOp& f, const FiniteOp& g) {
  const bool decidable =
      clone.is_discriminator() && (clone.has_generators() || clone.name() == "O");
  if (decidable) return minor_decide(clone, f, g) && minor_decide(clone, g, f);
  return minor_bruteforce(clone, f, g) && minor_bruteforce(clone, g, f);
}

/// The poset of equivalence classes of all operations of arity up to
/// max_arity.  Over the six named Boolean clones the classes come from the
/// closed-form labels; otherwise every operation is compared against the
/// known representatives.  Representatives are the first members in
/// (arity, table) order, so they have minimal arity.
inline Poset enumerate_classes(const Clone& clone, int max_arity) {
  if (max_arity < 1) throw std::invalid_argument("max arity must be positive");
  const int k = clone.base();
  const auto id = k == 2 ? boolean_clone_from_name(clone.name()) : std::nullopt;
  if (id) {
    std::vector<PosetNode> nodes;
    std::map<std::string, std::size_t> seen;
    for (int n = 1; n <= max_arity; ++n) {
      detail::for_each_op(2, n, clone.cell_cap(), [&](FiniteOp op) {
        std::string label = class_label(*id, op).text();
        if (!seen.contains(label)) {
          seen.emplace(label, nodes.size());
          nodes.push_back({std::move(label), std::move(op)});
        }
        return true;
      });
    }
    return make_poset(std::move(nodes), [&](const PosetNode& a, const PosetNode& b) {
      return boolean_minor(*id, a.representative, b.representative);
    });
  }
  std::vector<PosetNode> nodes;
  for (int n = 1; n <= max_arity; ++n) {
    detail::for_each_op(k, n, clone.cell_cap(), [&](FiniteOp op) {
      for (const PosetNode& node : nodes)
        if (equivalent(clone, op, node.representative)) return true;
      nodes.push_back({op.to_text(), std::move(op)});
      return true;
    });
  }
  const bool decidable =
      clone.is_discriminator() && (clone.has_generators() || clone.name() == "O");
  return make_poset(std::move(nodes), [&](const PosetNode& a, const PosetNode& b) {
    return decidable ? minor_decide(clone, a.representative, b.representative)
                     : minor_bruteforce(clone, a.representative, b.representative);
  });
}

/// The induced map from classes over the smaller clone to classes over the
/// larger: a class maps to the class of any of its members.  Keyed by label.
inline std::map<std::string, std::string> nu_map(BooleanCloneId sub, BooleanCloneId sup) {
  if (!boolean_clone_leq(sub, sup))
    throw std::invalid_argument("\"" + to_string(sub) + "\" is not contained in \"" +
                                to_string(sup) + "\"");
  std::map<std::string, std::string> out;
  const Poset classes = expected_poset(sub);
  for (const PosetNode& node : classes.nodes())
    out.emplace(node.label, class_label(sup, node.representative).text());
  return out;
}

/// Generic version over explicit posets.  Verifies the clone inclusion via
/// the generating set of the smaller clone.
inline std::map<std::string, std::string> nu_map(const Clone& sub, const Clone& sup,
                                                 const Poset& classes_sub,
                                                 const Poset& classes_sup) {
  if (sub.base() != sup.base()) throw std::invalid_argument("clones live on different bases");
  if (!sub.has_generators())
    throw std::invalid_argument("cannot verify clone inclusion without a generating set");
  for (const FiniteOp& g : sub.generators())
    if (!sup.contains(g))
      throw std::invalid_argument("\"" + sub.name() + "\" is not contained in \"" + sup.name() +
                                  "\": a generator is missing from the larger clone");
  std::map<std::string, std::string> out;
  for (const PosetNode& node : classes_sub.nodes()) {
    const PosetNode* hit = nullptr;
    for (const PosetNode& cand : classes_sup.nodes())
      if (equivalent(sup, node.representative, cand.representative)) {
        hit = &cand;
        break;
      }
    if (!hit)
      throw std::invalid_argument("no class over \"" + sup.name() +
                                  "\" contains the representative of \"" + node.label + "\"");
    out.emplace(node.label, hit->label);
  }
  return out;
}

}  // namespace cminor
