// Acceptance checks for the classification and decision machinery.  Each
// criterion prints one PASS/FAIL line; the exit status is zero exactly when
// every selected criterion passes.  An optional argument (1-9) runs a single
// criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cminor/arity_bound.hpp"
#include "cminor/boolean_catalog.hpp"
#include "cminor/clone.hpp"
#include "cminor/finite_op.hpp"
#include "cminor/minor.hpp"
#include "cminor/poset.hpp"

using namespace cminor;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_seconds(double s, double limit) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s (limit %.0f s)", s, limit);
  return buf;
}

const std::vector<FiniteOp>& boolean_ops_up_to(int max_arity) {
  static std::map<int, std::vector<FiniteOp>> cache;
  auto& ops = cache[max_arity];
  if (ops.empty())
    for (int n = 1; n <= max_arity; ++n)
      detail::for_each_op(2, n, 32, [&](FiniteOp op) {
        ops.push_back(std::move(op));
        return true;
      });
  return ops;
}

FiniteOp random_boolean_op(int n, std::mt19937& rng) {
  std::vector<Value> table(static_cast<std::size_t>(table_cells(2, n)));
  for (Value& v : table) v = static_cast<Value>(rng() & 1u);
  return FiniteOp(2, n, table);
}

// 1. Classifying every operation of arity at most 4 yields exactly the
// expected label sets: 3, 4, 4, 6, 7, 16 classes, within 10 seconds.
bool criterion1(std::string& detail) {
  const auto start = Clock::now();
  const auto& ops = boolean_ops_up_to(4);
  if (ops.size() != 65812) {
    detail = "expected 65812 operations, found " + std::to_string(ops.size());
    return false;
  }
  for (BooleanCloneId id : kBooleanCloneIds) {
    const Poset golden = expected_poset(id);
    std::set<std::string> expected;
    for (const PosetNode& node : golden.nodes()) expected.insert(node.label);
    std::set<std::string> labels;
    for (const FiniteOp& f : ops) labels.insert(class_label(id, f).text());
    if (labels != expected) {
      detail = "label set over " + to_string(id) + " has " + std::to_string(labels.size()) +
               " classes, expected " + std::to_string(expected.size());
      return false;
    }
  }
  const double s = seconds_since(start);
  detail = "65812 operations x 6 clones in " + format_seconds(s, 10);
  return s < 10.0;
}

// 2. The enumerated class posets at arity 4 match the golden posets.
bool criterion2(std::string& detail) {
  for (BooleanCloneId id : kBooleanCloneIds) {
    const Poset got = enumerate_classes(named_clone(to_string(id)), 4);
    if (!same_labeled_poset(got, expected_poset(id))) {
      detail = "poset over " + to_string(id) + " differs from the golden one";
      return false;
    }
  }
  detail = "six posets, 40 classes, 33 covering edges";
  return true;
}

// 3. On every ordered pair of operations of arity at most 2, the decision
// procedure, the exhaustive search, and the closed-form criterion agree,
// for each of the six clones, within 60 seconds.
bool criterion3(std::string& detail) {
  const auto start = Clock::now();
  const auto& ops = boolean_ops_up_to(2);
  int decisions = 0;
  for (BooleanCloneId id : kBooleanCloneIds) {
    const Clone clone = named_clone(to_string(id));
    for (const FiniteOp& f : ops)
      for (const FiniteOp& g : ops) {
        const bool decided = minor_decide(clone, f, g);
        if (decided != minor_bruteforce(clone, f, g) || decided != boolean_minor(id, f, g)) {
          detail = "disagreement over " + to_string(id) + " at " + f.to_text() + " vs " +
                   g.to_text();
          return false;
        }
        ++decisions;
      }
  }
  const double s = seconds_since(start);
  detail = std::to_string(decisions) + " decisions cross-checked in " + format_seconds(s, 60);
  return s < 60.0;
}

// 4. Over the clone of all operations the image-containment shortcut agrees
// with the exhaustive search on the same pairs.
bool criterion4(std::string& detail) {
  const auto& ops = boolean_ops_up_to(2);
  const Clone o = named_clone("O");
  for (const FiniteOp& f : ops)
    for (const FiniteOp& g : ops) {
      const bool shortcut = minor_over_all_ops(f, g);
      if (minor_decide(o, f, g) != shortcut || minor_bruteforce(o, f, g) != shortcut) {
        detail = "disagreement at " + f.to_text() + " vs " + g.to_text();
        return false;
      }
    }
  detail = "400 pairs";
  return true;
}

// 5. Every operation of arity at most 4, and 200 random operations of arity
// 5, reduce to a ternary operation equivalent over the smallest clone.
bool criterion5(std::string& detail) {
  const auto start = Clock::now();
  const Clone d_clone = named_clone("D");
  const auto check = [&](const FiniteOp& f) {
    const FiniteOp g = reduce_to_d_ary(f, 3);
    return g.arity() == 3 && equivalent(d_clone, f, g);
  };
  for (const FiniteOp& f : boolean_ops_up_to(4))
    if (!check(f)) {
      detail = "reduction failed for " + f.to_text();
      return false;
    }
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    const FiniteOp f = random_boolean_op(5, rng);
    if (!check(f)) {
      detail = "reduction failed for " + f.to_text();
      return false;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "66012 reductions verified in %.2f s", seconds_since(start));
  detail = buf;
  return true;
}

// 6. The counting bound holds for base sizes 2, 3, 4, and is tight at base
// 2: exactly as many breadth-2 patterns as tables.
bool criterion6(std::string& detail) {
  for (int k = 2; k <= 4; ++k)
    if (!check_bound(k).all_ok) {
      detail = "bound fails at base " + std::to_string(k);
      return false;
    }
  const BoundReport two = check_bound(2);
  if (two.d != 3 || two.rows.size() != 1 || two.rows[0].required != 3 ||
      two.rows[0].available != 3) {
    detail = "base 2 should need exactly 3 tables for its 3 patterns";
    return false;
  }
  detail = "targets 3, 19, 193; base 2 tight at 3 = 3";
  return true;
}

// 7. Addition chains order by length under the monotone clone and under the
// rho0 clone: chain m is a minor of chain n exactly when m <= n, by
// exhaustive search, within 60 seconds.
bool criterion7(std::string& detail) {
  const auto start = Clock::now();
  for (const char* name : {"M", "R0"}) {
    const Clone clone = named_clone(name);
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n) {
        const bool got = minor_bruteforce(clone, xor_chain(m), xor_chain(n));
        if (got != (m <= n)) {
          detail = std::string("chain ") + std::to_string(m) + " vs " + std::to_string(n) +
                   " over " + name + ": got " + (got ? "true" : "false");
          return false;
        }
      }
  }
  const double s = seconds_since(start);
  detail = "18 searches in " + format_seconds(s, 60);
  return s < 60.0;
}

// 8. Along every covering pair of clones the induced map on classes is
// total, surjective, and order-preserving; along chains it composes.
bool criterion8(std::string& detail) {
  for (const auto& [sub, sup] : boolean_clone_cover_pairs()) {
    const auto nu = nu_map(sub, sup);
    const Poset below = expected_poset(sub), above = expected_poset(sup);
    if (nu.size() != below.size()) {
      detail = "map out of " + to_string(sub) + " is not total";
      return false;
    }
    std::set<std::string> hit;
    for (const auto& [from, to] : nu) hit.insert(to);
    if (hit.size() != above.size()) {
      detail = "map " + to_string(sub) + " -> " + to_string(sup) + " is not onto";
      return false;
    }
    for (std::size_t i = 0; i < below.size(); ++i)
      for (std::size_t j = 0; j < below.size(); ++j)
        if (below.leq(i, j) &&
            !above.leq(nu.at(below.nodes()[i].label), nu.at(below.nodes()[j].label))) {
          detail = "map " + to_string(sub) + " -> " + to_string(sup) + " breaks the order at " +
                   below.nodes()[i].label + " <= " + below.nodes()[j].label;
          return false;
        }
  }
  using Id = BooleanCloneId;
  const std::array<std::array<Id, 3>, 5> chains{{{Id::D, Id::Tid, Id::T0},
                                                 {Id::D, Id::Tid, Id::T1},
                                                 {Id::Tid, Id::T0, Id::O},
                                                 {Id::Tid, Id::T1, Id::O},
                                                 {Id::D, Id::S, Id::O}}};
  for (const auto& [a, b, c] : chains) {
    const auto ab = nu_map(a, b), bc = nu_map(b, c), ac = nu_map(a, c);
    for (const auto& [label, mid] : ab)
      if (ac.at(label) != bc.at(mid)) {
        detail = "composition " + to_string(a) + " -> " + to_string(b) + " -> " + to_string(c) +
                 " differs from the direct map at " + label;
        return false;
      }
  }
  detail = "7 covering maps, 5 compositions";
  return true;
}

// 9. The minor relation is a quasiorder and grows with the clone:
// reflexivity on all operations of arity at most 3, transitivity on random
// decided triples, and monotonicity across all 11 proper inclusions.
bool criterion9(std::string& detail) {
  std::vector<std::pair<BooleanCloneId, Clone>> clones;
  for (BooleanCloneId id : kBooleanCloneIds) clones.emplace_back(id, named_clone(to_string(id)));
  for (const auto& [id, clone] : clones)
    for (const FiniteOp& f : boolean_ops_up_to(3))
      if (!minor_decide(clone, f, f)) {
        detail = "not reflexive over " + to_string(id) + " at " + f.to_text();
        return false;
      }
  std::mt19937 rng(99);
  const auto& pool = boolean_ops_up_to(3);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_clone(0, clones.size() - 1);
  int chained = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto& [id, clone] = clones[pick_clone(rng)];
    const FiniteOp &f = pool[pick(rng)], &g = pool[pick(rng)], &h = pool[pick(rng)];
    if (!minor_decide(clone, f, g) || !minor_decide(clone, g, h)) continue;
    ++chained;
    if (!minor_decide(clone, f, h)) {
      detail = "not transitive over " + to_string(id) + " at " + f.to_text() + ", " +
               g.to_text() + ", " + h.to_text();
      return false;
    }
  }
  int inclusions = 0;
  for (const auto& [small_id, small] : clones)
    for (const auto& [big_id, big] : clones) {
      if (small_id == big_id || !boolean_clone_leq(small_id, big_id)) continue;
      ++inclusions;
      for (const FiniteOp& f : boolean_ops_up_to(2))
        for (const FiniteOp& g : boolean_ops_up_to(2))
          if (minor_decide(small, f, g) && !minor_decide(big, f, g)) {
            detail = "minor over " + to_string(small_id) + " lost over " + to_string(big_id) +
                     " at " + f.to_text() + " vs " + g.to_text();
            return false;
          }
    }
  if (inclusions != 11) {
    detail = "expected 11 proper inclusions, found " + std::to_string(inclusions);
    return false;
  }
  detail = "1656 reflexive checks, " + std::to_string(chained) +
           " transitive triples, 11 inclusions";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    bool (*run)(std::string&);
    const char* summary;
  };
  const std::array<Criterion, 9> criteria{{
      {criterion1, "labels of all 65812 operations form exactly the expected classes"},
      {criterion2, "enumerated class posets match the golden posets for all six clones"},
      {criterion3, "decision procedure agrees with search and closed form on 2400 decisions"},
      {criterion4, "image containment settles the minor relation over the full clone"},
      {criterion5, "every operation of arity <= 4 (and sampled arity 5) reduces to ternary"},
      {criterion6, "counting bound holds for base sizes 2-4 and is tight at base 2"},
      {criterion7, "addition chains order by length under the monotone and rho0 clones"},
      {criterion8, "induced class maps are total, surjective, order-preserving, composable"},
      {criterion9, "minor relation is reflexive, transitive, and monotone in the clone"},
  }};
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [criterion 1-%zu]\n", argv[0], criteria.size());
      return 2;
    }
  }
  bool all_ok = true;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (only != 0 && i != only) continue;
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[static_cast<std::size_t>(i - 1)].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  %d  %s%s%s%s\n", ok ? "PASS" : "FAIL", i,
                criteria[static_cast<std::size_t>(i - 1)].summary, detail.empty() ? "" : " (",
                detail.c_str(), detail.empty() ? "" : ")");
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
