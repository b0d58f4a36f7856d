#pragma once

// The six Boolean clones containing the ternary discriminator, their
// inclusion order, fast minor criteria over them, class labels, and the
// golden class posets those criteria produce.
//
// Labels.  Constant operations are "[0]" and "[1]".  Otherwise:
//   O    "N"                        (image is {0,1})
//   T0   "N^{a*}"   a = f(0,...,0)
//   T1   "N^{*b}"   b = f(1,...,1)
//   Tid  "N^{ab}"
//   S    "F{parts}"                 the antipodal-pair family
//   D    "F{parts}^{ab}"
// where the family of f collects the sets {f(a), f(complement of a)} over
// all tuples a, each of which is {0}, {1}, or {01}, written in that order.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cminor/finite_op.hpp"
#include "cminor/poset.hpp"

namespace cminor {

enum class BooleanCloneId { O, T0, T1, Tid, S, D };

inline constexpr std::array<BooleanCloneId, 6> kBooleanCloneIds = {
    BooleanCloneId::O, BooleanCloneId::T0, BooleanCloneId::T1,
    BooleanCloneId::Tid, BooleanCloneId::S, BooleanCloneId::D};

inline std::string to_string(BooleanCloneId id) {
  switch (id) {
    case BooleanCloneId::O: return "O";
    case BooleanCloneId::T0: return "T0";
    case BooleanCloneId::T1: return "T1";
    case BooleanCloneId::Tid: return "Tid";
    case BooleanCloneId::S: return "S";
    case BooleanCloneId::D: return "D";
  }
  throw std::invalid_argument("bad clone id");
}

inline std::optional<BooleanCloneId> boolean_clone_from_name(std::string_view name) {
  for (BooleanCloneId id : kBooleanCloneIds)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

/// Is sub contained in sup?  The inclusion order is generated by
/// D < Tid < T0, T1 < O and D < S < O.
inline bool boolean_clone_leq(BooleanCloneId sub, BooleanCloneId sup) {
  const auto up = [](BooleanCloneId id) -> unsigned {
    const auto bit = [](BooleanCloneId x) { return 1u << static_cast<unsigned>(x); };
    switch (id) {
      case BooleanCloneId::O: return bit(BooleanCloneId::O);
      case BooleanCloneId::T0: return bit(BooleanCloneId::T0) | bit(BooleanCloneId::O);
      case BooleanCloneId::T1: return bit(BooleanCloneId::T1) | bit(BooleanCloneId::O);
      case BooleanCloneId::Tid:
        return bit(BooleanCloneId::Tid) | bit(BooleanCloneId::T0) | bit(BooleanCloneId::T1) |
               bit(BooleanCloneId::O);
      case BooleanCloneId::S: return bit(BooleanCloneId::S) | bit(BooleanCloneId::O);
      case BooleanCloneId::D:
        return bit(BooleanCloneId::D) | bit(BooleanCloneId::Tid) | bit(BooleanCloneId::S) |
               bit(BooleanCloneId::T0) | bit(BooleanCloneId::T1) | bit(BooleanCloneId::O);
    }
    throw std::invalid_argument("bad clone id");
  };
  return (up(sub) >> static_cast<unsigned>(sup)) & 1u;
}

/// Covering pairs (sub, sup) of the inclusion order.
inline const std::vector<std::pair<BooleanCloneId, BooleanCloneId>>& boolean_clone_cover_pairs() {
  static const std::vector<std::pair<BooleanCloneId, BooleanCloneId>> pairs = {
      {BooleanCloneId::D, BooleanCloneId::Tid}, {BooleanCloneId::D, BooleanCloneId::S},
      {BooleanCloneId::Tid, BooleanCloneId::T0}, {BooleanCloneId::Tid, BooleanCloneId::T1},
      {BooleanCloneId::T0, BooleanCloneId::O},  {BooleanCloneId::T1, BooleanCloneId::O},
      {BooleanCloneId::S, BooleanCloneId::O}};
  return pairs;
}

/// Least d with every operation equivalent to one of arity <= d: 2 for the
/// two clones whose criteria look at antipodal pairs, 1 for the rest.
inline int reduction_arity(BooleanCloneId id) {
  return id == BooleanCloneId::S || id == BooleanCloneId::D ? 2 : 1;
}

// Family masks: bit 0 = the set {0}, bit 1 = {1}, bit 2 = {01}.

/// Which singletons appear as values of f.
inline std::uint8_t image_family(const FiniteOp& f) {
  if (f.base() != 2) throw std::invalid_argument("family masks are defined for base 2 only");
  std::uint8_t mask = 0;
  for (Code i = 0; i < f.table_size(); ++i) mask |= static_cast<std::uint8_t>(1u << f.value(i));
  return mask;
}

/// Which sets {f(a), f(complement of a)} appear, over all tuples a.
inline std::uint8_t antipodal_family(const FiniteOp& f) {
  if (f.base() != 2) throw std::invalid_argument("family masks are defined for base 2 only");
  const Code all = f.table_size() - 1;
  std::uint8_t mask = 0;
  for (Code i = 0; i < f.table_size(); ++i) {
    const Value x = f.value(i), y = f.value(all ^ i);
    mask |= static_cast<std::uint8_t>(x == y ? 1u << x : 1u << 2);
  }
  return mask;
}

/// The complete invariant of a class over one of the six clones.
struct ClassLabel {
  BooleanCloneId clone = BooleanCloneId::O;
  std::int8_t at_zero = -1;   // f(0,...,0), or -1 when the clone ignores it
  std::int8_t at_one = -1;    // f(1,...,1), or -1
  std::uint8_t families = 0;  // image or antipodal family mask

  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
  friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;

  std::string text() const {
    if (families == 1) return "[0]";
    if (families == 2) return "[1]";
    const auto parts = [this] {
      std::string s;
      if (families & 1) s += "0";
      if (families & 2) s += (s.empty() ? "1" : ",1");
      if (families & 4) s += (s.empty() ? "01" : ",01");
      return s;
    };
    switch (clone) {
      case BooleanCloneId::O: return "N";
      case BooleanCloneId::T0: return std::string("N^{") + char('0' + at_zero) + "*}";
      case BooleanCloneId::T1: return std::string("N^{*") + char('0' + at_one) + "}";
      case BooleanCloneId::Tid:
        return std::string("N^{") + char('0' + at_zero) + char('0' + at_one) + "}";
      case BooleanCloneId::S: return "F{" + parts() + "}";
      case BooleanCloneId::D:
        return "F{" + parts() + "}^{" + char('0' + at_zero) + char('0' + at_one) + "}";
    }
    throw std::invalid_argument("bad clone id");
  }
};

inline ClassLabel class_label(BooleanCloneId id, const FiniteOp& f) {
  if (f.base() != 2) throw std::invalid_argument("class labels are defined for base 2 only");
  ClassLabel label;
  label.clone = id;
  if (boolean_clone_leq(id, BooleanCloneId::T0))
    label.at_zero = static_cast<std::int8_t>(f.value(0));
  if (boolean_clone_leq(id, BooleanCloneId::T1))
    label.at_one = static_cast<std::int8_t>(f.value(f.table_size() - 1));
  label.families = reduction_arity(id) == 2 ? antipodal_family(f) : image_family(f);
  return label;
}

/// Is f a minor of g over the named clone?  Closed form: the endpoint values
/// must agree whenever the clone preserves them, and f's family must be
/// contained in g's.
inline bool boolean_minor(BooleanCloneId id, const FiniteOp& f, const FiniteOp& g) {
  if (f.base() != 2 || g.base() != 2)
    throw std::invalid_argument("the closed-form criterion is defined for base 2 only");
  if (boolean_clone_leq(id, BooleanCloneId::T0) && f.value(0) != g.value(0)) return false;
  if (boolean_clone_leq(id, BooleanCloneId::T1) &&
      f.value(f.table_size() - 1) != g.value(g.table_size() - 1))
    return false;
  const std::uint8_t ff =
      reduction_arity(id) == 2 ? antipodal_family(f) : image_family(f);
  const std::uint8_t fg =
      reduction_arity(id) == 2 ? antipodal_family(g) : image_family(g);
  return (ff & ~fg) == 0;
}

inline bool boolean_equivalent(BooleanCloneId id, const FiniteOp& f, const FiniteOp& g) {
  return boolean_minor(id, f, g) && boolean_minor(id, g, f);
}

/// The known class poset over each of the six clones, with hand-picked
/// minimal representatives.
inline Poset expected_poset(BooleanCloneId id) {
  struct GoldenNode {
    const char* label;
    const char* rep;
  };
  const auto build = [](std::vector<GoldenNode> nodes,
                        std::vector<std::pair<const char*, const char*>> edges) {
    std::vector<PosetNode> pn;
    pn.reserve(nodes.size());
    for (const GoldenNode& gn : nodes) pn.push_back({gn.label, FiniteOp::parse(gn.rep)});
    std::vector<std::pair<std::size_t, std::size_t>> idx_edges;
    const auto find = [&](const char* label) -> std::size_t {
      for (std::size_t i = 0; i < pn.size(); ++i)
        if (pn[i].label == label) return i;
      throw std::invalid_argument(std::string("golden edge names unknown label ") + label);
    };
    for (const auto& [lo, hi] : edges) idx_edges.emplace_back(find(lo), find(hi));
    return Poset(std::move(pn), std::move(idx_edges));
  };
  switch (id) {
    case BooleanCloneId::O:
      return build({{"[0]", "2:1:00"}, {"[1]", "2:1:11"}, {"N", "2:1:01"}},
                   {{"[0]", "N"}, {"[1]", "N"}});
    case BooleanCloneId::T0:
      return build({{"[0]", "2:1:00"},
                    {"[1]", "2:1:11"},
                    {"N^{0*}", "2:1:01"},
                    {"N^{1*}", "2:1:10"}},
                   {{"[0]", "N^{0*}"}, {"[1]", "N^{1*}"}});
    case BooleanCloneId::T1:
      return build({{"[0]", "2:1:00"},
                    {"[1]", "2:1:11"},
                    {"N^{*0}", "2:1:10"},
                    {"N^{*1}", "2:1:01"}},
                   {{"[0]", "N^{*0}"}, {"[1]", "N^{*1}"}});
    case BooleanCloneId::Tid:
      return build({{"[0]", "2:1:00"},
                    {"[1]", "2:1:11"},
                    {"N^{00}", "2:2:0110"},
                    {"N^{01}", "2:1:01"},
                    {"N^{10}", "2:1:10"},
                    {"N^{11}", "2:2:1001"}},
                   {{"[0]", "N^{00}"}, {"[1]", "N^{11}"}});
    case BooleanCloneId::S:
      return build({{"[0]", "2:1:00"},
                    {"[1]", "2:1:11"},
                    {"F{01}", "2:1:01"},
                    {"F{0,01}", "2:2:0001"},
                    {"F{1,01}", "2:2:0111"},
                    {"F{0,1}", "2:2:1001"},
                    {"F{0,1,01}", "2:3:01000110"}},
                   {{"[0]", "F{0,01}"},
                    {"[0]", "F{0,1}"},
                    {"[1]", "F{0,1}"},
                    {"[1]", "F{1,01}"},
                    {"F{01}", "F{0,01}"},
                    {"F{01}", "F{1,01}"},
                    {"F{0,01}", "F{0,1,01}"},
                    {"F{0,1}", "F{0,1,01}"},
                    {"F{1,01}", "F{0,1,01}"}});
    case BooleanCloneId::D:
      return build({{"[0]", "2:1:00"},
                    {"F{0,1}^{00}", "2:2:0110"},
                    {"F{0,01}^{00}", "2:2:0010"},
                    {"F{0,1,01}^{00}", "2:3:01000110"},
                    {"[1]", "2:1:11"},
                    {"F{0,1}^{11}", "2:2:1001"},
                    {"F{1,01}^{11}", "2:2:1011"},
                    {"F{0,1,01}^{11}", "2:3:10000101"},
                    {"F{01}^{01}", "2:1:01"},
                    {"F{0,01}^{01}", "2:2:0001"},
                    {"F{1,01}^{01}", "2:2:0111"},
                    {"F{0,1,01}^{01}", "2:3:00100101"},
                    {"F{01}^{10}", "2:1:10"},
                    {"F{0,01}^{10}", "2:2:1000"},
                    {"F{1,01}^{10}", "2:2:1110"},
                    {"F{0,1,01}^{10}", "2:3:10100100"}},
                   {{"[0]", "F{0,1}^{00}"},
                    {"[0]", "F{0,01}^{00}"},
                    {"F{0,1}^{00}", "F{0,1,01}^{00}"},
                    {"F{0,01}^{00}", "F{0,1,01}^{00}"},
                    {"[1]", "F{0,1}^{11}"},
                    {"[1]", "F{1,01}^{11}"},
                    {"F{0,1}^{11}", "F{0,1,01}^{11}"},
                    {"F{1,01}^{11}", "F{0,1,01}^{11}"},
                    {"F{01}^{01}", "F{0,01}^{01}"},
                    {"F{01}^{01}", "F{1,01}^{01}"},
                    {"F{0,01}^{01}", "F{0,1,01}^{01}"},
                    {"F{1,01}^{01}", "F{0,1,01}^{01}"},
                    {"F{01}^{10}", "F{0,01}^{10}"},
                    {"F{01}^{10}", "F{1,01}^{10}"},
                    {"F{0,01}^{10}", "F{0,1,01}^{10}"},
                    {"F{1,01}^{10}", "F{0,1,01}^{10}"}});
  }
  throw std::invalid_argument("bad clone id");
}

}  // namespace cminor
