#pragma once

// Reducing arity over the clone generated by the discriminator.  A tuple's
// pattern is its entries relabeled by first occurrence (a restricted growth
// string); its breadth is the number of distinct entries.  Restricting an
// operation to the tuples of one breadth-r pattern and reparametrizing by
// the injective part yields a value table over the injective r-tuples; the
// set of such tables up to coordinate permutation, taken over all patterns,
// is a complete invariant family: two operations sharing these sets for
// every r are minors of each other.  Because at most count_canonical_tables
// (k, r) tables exist while an arity-d operation has stirling(d, r)
// breadth-r patterns to carry them, every operation is equivalent to one of
// arity d once stirling(d, r) >= count_canonical_tables(k, r) for all r,
// which holds at d = k^k - k^(k-1) + 1.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "cminor/clone.hpp"
#include "cminor/finite_op.hpp"
#include "cminor/minor.hpp"

namespace cminor {

using BigInt = boost::multiprecision::cpp_int;

inline int breadth(std::span<const Value> tuple) {
  std::uint32_t mask = 0;
  for (Value v : tuple) mask |= 1u << v;
  return std::popcount(mask);
}

/// Entries relabeled by first occurrence: (3,0,3,2) becomes (0,1,0,2).
inline std::vector<Value> tuple_pattern(std::span<const Value> tuple) {
  std::vector<Value> pattern(tuple.size());
  std::vector<Value> seen;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const auto it = std::find(seen.begin(), seen.end(), tuple[i]);
    if (it == seen.end()) {
      pattern[i] = static_cast<Value>(seen.size());
      seen.push_back(tuple[i]);
    } else {
      pattern[i] = static_cast<Value>(it - seen.begin());
    }
  }
  return pattern;
}

/// The distinct entries in first-occurrence order, so that
/// tuple[i] == distinct_in_order(tuple)[tuple_pattern(tuple)[i]].
inline std::vector<Value> distinct_in_order(std::span<const Value> tuple) {
  std::vector<Value> seen;
  for (Value v : tuple)
    if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
  return seen;
}

/// All injective r-tuples over {0,...,k-1} in lexicographic order.
inline std::vector<std::vector<Value>> injective_tuples(int k, int r) {
  if (r < 1 || r > k) throw std::invalid_argument("need 1 <= r <= k");
  std::vector<std::vector<Value>> out;
  std::vector<Value> cur;
  std::uint32_t used = 0;
  const auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v < k; ++v) {
      if (used & (1u << v)) continue;
      used |= 1u << v;
      cur.push_back(static_cast<Value>(v));
      self(self);
      cur.pop_back();
      used &= ~(1u << v);
    }
  };
  rec(rec);
  return out;
}

namespace detail {

/// Lookup tables for one (k, r): the injective tuples, their positions, and
/// for each coordinate permutation the induced index permutation.
struct TableSpace {
  int k = 0, r = 0;
  std::vector<std::vector<Value>> tuples;              // injective, lex order
  std::map<Code, std::size_t> position;                // encoded tuple -> index
  std::vector<std::vector<std::size_t>> perm_actions;  // per sigma: i -> pos of tuple[i] o sigma

  TableSpace(int k_, int r_) : k(k_), r(r_), tuples(injective_tuples(k_, r_)) {
    for (std::size_t i = 0; i < tuples.size(); ++i)
      position.emplace(encode_tuple(tuples[i], k), i);
    std::vector<int> sigma(static_cast<std::size_t>(r));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<Value> composed(static_cast<std::size_t>(r));
    do {
      std::vector<std::size_t> action(tuples.size());
      for (std::size_t i = 0; i < tuples.size(); ++i) {
        for (int j = 0; j < r; ++j)
          composed[static_cast<std::size_t>(j)] =
              tuples[i][static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])];
        action[i] = position.at(encode_tuple(composed, k));
      }
      perm_actions.push_back(std::move(action));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
};

/// Invokes fn on each length-n restricted growth string with exactly r
/// distinct values, in lexicographic order; fn may return false to stop.
template <typename Fn>
void for_each_pattern(int n, int r, Fn&& fn) {
  std::vector<Value> pattern(static_cast<std::size_t>(n), 0);
  const auto rec = [&](auto&& self, int pos, int used) -> bool {
    if (pos == n) return used == r ? fn(pattern) : true;
    if (used + (n - pos) < r) return true;  // cannot reach r classes
    const int hi = std::min(used, r - 1);
    for (int c = 0; c <= hi; ++c) {
      pattern[static_cast<std::size_t>(pos)] = static_cast<Value>(c);
      if (!self(self, pos + 1, std::max(used, c + 1))) return false;
    }
    return true;
  };
  rec(rec, 0, 0);
}

}  // namespace detail

/// The least table over the injective r-tuples obtainable from the given one
/// by permuting the r coordinates.
inline std::vector<Value> canonical_value_table(int k, int r, std::span<const Value> table) {
  const detail::TableSpace space(k, r);
  if (table.size() != space.tuples.size())
    throw std::invalid_argument("value table has the wrong length");
  std::vector<Value> best(table.begin(), table.end());
  std::vector<Value> candidate(table.size());
  for (const auto& action : space.perm_actions) {
    for (std::size_t i = 0; i < table.size(); ++i) candidate[i] = table[action[i]];
    if (candidate < best) best = candidate;
  }
  return best;
}

/// The canonical value tables of f at breadth r, over all breadth-r patterns
/// of f's arity.  Empty when r exceeds the arity or the base size.
struct BreadthSignature {
  int r = 0;
  std::set<std::vector<Value>> tables;

  friend bool operator==(const BreadthSignature&, const BreadthSignature&) = default;
};

inline BreadthSignature breadth_signature(const FiniteOp& f, int r) {
  BreadthSignature sig;
  sig.r = r;
  const int k = f.base(), n = f.arity();
  if (r < 1 || r > k || r > n) return sig;
  const detail::TableSpace space(k, r);
  std::vector<Value> table(space.tuples.size());
  std::vector<Value> tuple(static_cast<std::size_t>(n));
  detail::for_each_pattern(n, r, [&](const std::vector<Value>& pattern) {
    for (std::size_t i = 0; i < space.tuples.size(); ++i) {
      for (int j = 0; j < n; ++j)
        tuple[static_cast<std::size_t>(j)] = space.tuples[i][pattern[static_cast<std::size_t>(j)]];
      table[i] = f.value(encode_tuple(tuple, k));
    }
    std::vector<Value> best(table);
    std::vector<Value> candidate(table.size());
    for (const auto& action : space.perm_actions) {
      for (std::size_t i = 0; i < table.size(); ++i) candidate[i] = table[action[i]];
      if (candidate < best) best = candidate;
    }
    sig.tables.insert(std::move(best));
    return true;
  });
  return sig;
}

/// Sufficient test for the minor relation over the clone generated by the
/// discriminator: containment of the signatures at every breadth.  (The
/// relation can also hold through lower-breadth targets, which this test
/// does not see, so a negative answer is not conclusive.)
inline bool minor_via_breadth_signatures(const FiniteOp& f, const FiniteOp& g) {
  if (f.base() != g.base()) throw std::invalid_argument("operations have different bases");
  for (int r = 1; r <= f.base(); ++r) {
    const BreadthSignature sf = breadth_signature(f, r), sg = breadth_signature(g, r);
    if (!std::includes(sg.tables.begin(), sg.tables.end(), sf.tables.begin(), sf.tables.end()))
      return false;
  }
  return true;
}

/// Stirling number of the second kind: partitions of an n-set into r blocks.
inline BigInt stirling(int n, int r) {
  if (n < 0 || r < 0) throw std::invalid_argument("stirling needs nonnegative arguments");
  if (r > n) return 0;
  std::vector<BigInt> row(static_cast<std::size_t>(r) + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, r); j >= 1; --j) row[static_cast<std::size_t>(j)] =
        BigInt(j) * row[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(j) - 1];
    row[0] = 0;  // S(i, 0) for i >= 1
  }
  return row[static_cast<std::size_t>(r)];
}

/// Number of canonical value tables at breadth r over base k: maps from the
/// injective r-tuples to the base, counted up to coordinate permutation
/// (orbit count via the usual fixed-point average).  r = 1 counts the k
/// possible diagonal values pointwise, by convention.
inline std::uint64_t count_canonical_tables(int k, int r) {
  if (r < 1 || r > k) throw std::invalid_argument("need 1 <= r <= k");
  if (r == 1) return static_cast<std::uint64_t>(k);
  const detail::TableSpace space(k, r);
  BigInt total = 0;
  for (const auto& action : space.perm_actions) {
    std::vector<bool> seen(action.size(), false);
    int cycles = 0;
    for (std::size_t i = 0; i < action.size(); ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (std::size_t j = i; !seen[j]; j = action[j]) seen[j] = true;
    }
    BigInt imagewise = 1;
    for (int c = 0; c < cycles; ++c) imagewise *= k;
    total += imagewise;
  }
  total /= static_cast<std::uint64_t>(space.perm_actions.size());
  if (total > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("table count exceeds 64 bits");
  return static_cast<std::uint64_t>(total);
}

/// The arity every operation over a k-element set can be reduced to.
inline int reduction_target_arity(int k) {
  if (k < 2) throw std::invalid_argument("base size must be at least 2");
  std::int64_t kk1 = 1;  // k^(k-1)
  for (int i = 0; i + 1 < k; ++i) kk1 *= k;
  return static_cast<int>(kk1 * k - kk1 + 1);
}

struct BoundRow {
  int r = 0;
  std::uint64_t required = 0;  // canonical tables that must fit
  BigInt available;            // breadth-r patterns of a d-ary operation
  bool ok = false;
};

struct BoundReport {
  int k = 0;
  int d = 0;
  std::vector<BoundRow> rows;
  bool all_ok = false;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["k"] = k;
    j["d"] = d;
    j["rows"] = nlohmann::json::array();
    for (const BoundRow& row : rows)
      j["rows"].push_back({{"r", row.r},
                           {"required", std::to_string(row.required)},
                           {"available", row.available.str()},
                           {"ok", row.ok}});
    j["all_ok"] = all_ok;
    return j;
  }
};

/// Checks that d = k^k - k^(k-1) + 1 leaves room at every breadth:
/// stirling(d, r) >= count_canonical_tables(k, r) for r = 2,...,k.
inline BoundReport check_bound(int k) {
  if (k < 2 || k > 4)
    throw std::invalid_argument("the bound check covers base sizes 2 through 4");
  BoundReport report;
  report.k = k;
  report.d = reduction_target_arity(k);
  report.all_ok = true;
  for (int r = 2; r <= k; ++r) {
    BoundRow row;
    row.r = r;
    row.required = count_canonical_tables(k, r);
    row.available = stirling(report.d, r);
    row.ok = BigInt(row.required) <= row.available;
    report.all_ok = report.all_ok && row.ok;
    report.rows.push_back(std::move(row));
  }
  return report;
}

/// Produces an operation of arity exactly d equivalent to f over the clone
/// generated by the discriminator.  For f of arity <= d this pads with
/// dummy coordinates.  Otherwise d must satisfy the breadth capacity check,
/// and the result realizes each of f's canonical tables on an early pattern
/// while every remaining pattern repeats the first table; the signatures at
/// every breadth, and the diagonal, then match f's.
inline FiniteOp reduce_to_d_ary(const FiniteOp& f, int d) {
  if (d < 1) throw std::invalid_argument("target arity must be positive");
  const int k = f.base(), n = f.arity();
  if (n <= d) return pad_arity(f, d);
  for (int r = 2; r <= k; ++r) {
    const std::uint64_t required = count_canonical_tables(k, r);
    const BigInt available = stirling(d, r);
    if (available < BigInt(required))
      throw std::invalid_argument("target arity " + std::to_string(d) + " admits only " +
                                  available.str() + " patterns at breadth " + std::to_string(r) +
                                  " but " + std::to_string(required) + " tables are needed");
  }
  const Code cells = table_cells(k, d);
  if (cells > (Code{1} << 20))
    throw ResourceLimitError("a table with " + std::to_string(cells) +
                             " cells is above the materialization cap");
  // For each breadth, the sorted canonical tables of f and the assignment of
  // the first few patterns (in lexicographic order) to them.
  std::vector<std::map<std::vector<Value>, const std::vector<Value>*>> assignment(
      static_cast<std::size_t>(k) + 1);
  std::vector<std::vector<std::vector<Value>>> transversal(static_cast<std::size_t>(k) + 1);
  for (int r = 2; r <= std::min(k, d); ++r) {
    const BreadthSignature sig = breadth_signature(f, r);
    transversal[static_cast<std::size_t>(r)].assign(sig.tables.begin(), sig.tables.end());
    const auto& tables = transversal[static_cast<std::size_t>(r)];
    std::size_t next = 0;
    detail::for_each_pattern(d, r, [&](const std::vector<Value>& pattern) {
      assignment[static_cast<std::size_t>(r)].emplace(pattern, &tables[next]);
      return ++next < tables.size();
    });
  }
  std::vector<detail::TableSpace> spaces;
  for (int r = 0; r <= k; ++r)
    spaces.emplace_back(k, std::max(r, 1));  // index r used for r >= 2 only
  std::vector<Value> table(static_cast<std::size_t>(cells));
  std::vector<Value> tuple(static_cast<std::size_t>(d));
  std::vector<Value> diag(static_cast<std::size_t>(n));
  for (Code b = 0; b < cells; ++b) {
    decode_tuple(b, k, d, tuple);
    const int r = breadth(tuple);
    if (r == 1) {
      std::fill(diag.begin(), diag.end(), tuple[0]);
      table[static_cast<std::size_t>(b)] = f.value(encode_tuple(diag, k));
      continue;
    }
    const std::vector<Value> pattern = tuple_pattern(tuple);
    const std::vector<Value> part = distinct_in_order(tuple);
    const auto& assigned = assignment[static_cast<std::size_t>(r)];
    const auto it = assigned.find(pattern);
    const std::vector<Value>& value_table =
        it != assigned.end() ? *it->second : transversal[static_cast<std::size_t>(r)].front();
    const detail::TableSpace& space = spaces[static_cast<std::size_t>(r)];
    table[static_cast<std::size_t>(b)] = value_table[space.position.at(encode_tuple(part, k))];
  }
  FiniteOp g(k, d, table);
  for (int r = 1; r <= k; ++r)
    if (!(breadth_signature(f, r) == breadth_signature(g, r)))
      throw std::logic_error("arity reduction failed to preserve the breadth signatures");
  try {
    const Clone dclone = named_clone("D", k);
    if (!minor_decide(dclone, f, g) || !minor_decide(dclone, g, f))
      throw std::logic_error("arity reduction produced an inequivalent operation");
  } catch (const ResourceLimitError&) {
    // The independent check is skipped when the orbit machinery would
    // exceed its caps; the signature equality above still holds.
  }
  return g;
}

}  // namespace cminor
