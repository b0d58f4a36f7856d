// The six Boolean clones containing the ternary switch: inclusion order,
// class labels, closed-form minor criteria, and the golden posets.

#include <catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cminor/boolean_catalog.hpp"
#include "cminor/clone.hpp"
#include "cminor/finite_op.hpp"
#include "cminor/poset.hpp"

using namespace cminor;

TEST_CASE("inclusion order among the six clones") {
  using Id = BooleanCloneId;
  // Reflexive.
  for (Id a : kBooleanCloneIds) REQUIRE(boolean_clone_leq(a, a));
  // The bottom clone sits under everything, the full clone above everything.
  for (Id a : kBooleanCloneIds) {
    REQUIRE(boolean_clone_leq(Id::D, a));
    REQUIRE(boolean_clone_leq(a, Id::O));
  }
  REQUIRE(boolean_clone_leq(Id::Tid, Id::T0));
  REQUIRE(boolean_clone_leq(Id::Tid, Id::T1));
  REQUIRE(!boolean_clone_leq(Id::T0, Id::T1));
  REQUIRE(!boolean_clone_leq(Id::T1, Id::T0));
  REQUIRE(!boolean_clone_leq(Id::S, Id::T0));
  REQUIRE(!boolean_clone_leq(Id::S, Id::Tid));
  REQUIRE(!boolean_clone_leq(Id::Tid, Id::S));
  REQUIRE(!boolean_clone_leq(Id::O, Id::T0));
  REQUIRE(boolean_clone_cover_pairs().size() == 7);
  // The inclusion order also holds at the level of clone membership: every
  // member of the smaller clone lies in the larger (checked at arity 2).
  for (const auto& [sub, sup] : boolean_clone_cover_pairs()) {
    const Clone small = named_clone(to_string(sub)), big = named_clone(to_string(sup));
    for (const FiniteOp& f : *small.members(2)) REQUIRE(big.contains(f));
  }
}

TEST_CASE("family masks") {
  const FiniteOp conj = FiniteOp::parse("2:2:0001");
  REQUIRE(image_family(conj) == 0b011);
  REQUIRE(image_family(constant_op(2, 1)) == 0b010);
  REQUIRE(antipodal_family(conj) == 0b101);             // {0} and {01}
  REQUIRE(antipodal_family(xor_chain(2)) == 0b011);     // {0} and {1}
  REQUIRE(antipodal_family(projection(2, 1, 1)) == 0b100);
  REQUIRE(antipodal_family(constant_op(2, 0)) == 0b001);
}

TEST_CASE("labels spell out the invariants") {
  using Id = BooleanCloneId;
  const FiniteOp conj = FiniteOp::parse("2:2:0001");
  REQUIRE(class_label(Id::O, conj).text() == "N");
  REQUIRE(class_label(Id::T0, conj).text() == "N^{0*}");
  REQUIRE(class_label(Id::T1, conj).text() == "N^{*1}");
  REQUIRE(class_label(Id::Tid, conj).text() == "N^{01}");
  REQUIRE(class_label(Id::S, conj).text() == "F{0,01}");
  REQUIRE(class_label(Id::D, conj).text() == "F{0,01}^{01}");
  REQUIRE(class_label(Id::D, xor_chain(2)).text() == "F{0,1}^{00}");
  REQUIRE(class_label(Id::D, xor_chain(4)).text() == "F{0,1}^{00}");
  REQUIRE(class_label(Id::S, constant_op(2, 0)).text() == "[0]");
  REQUIRE(class_label(Id::D, constant_op(2, 1)).text() == "[1]");
  REQUIRE(class_label(Id::O, constant_op(2, 1)).text() == "[1]");
  REQUIRE(class_label(Id::Tid, FiniteOp::parse("2:1:10")).text() == "N^{10}");
}

TEST_CASE("golden representatives carry their node's label") {
  for (BooleanCloneId id : kBooleanCloneIds) {
    const Poset expected = expected_poset(id);
    for (const PosetNode& node : expected.nodes()) {
      INFO(to_string(id) << " node " << node.label);
      REQUIRE(class_label(id, node.representative).text() == node.label);
    }
  }
}

TEST_CASE("golden poset shapes") {
  using Id = BooleanCloneId;
  const auto shape = [](Id id) {
    const Poset p = expected_poset(id);
    return std::pair{p.size(), p.cover_edges().size()};
  };
  REQUIRE(shape(Id::O) == std::pair<std::size_t, std::size_t>{3, 2});
  REQUIRE(shape(Id::T0) == std::pair<std::size_t, std::size_t>{4, 2});
  REQUIRE(shape(Id::T1) == std::pair<std::size_t, std::size_t>{4, 2});
  REQUIRE(shape(Id::Tid) == std::pair<std::size_t, std::size_t>{6, 2});
  REQUIRE(shape(Id::S) == std::pair<std::size_t, std::size_t>{7, 9});
  REQUIRE(shape(Id::D) == std::pair<std::size_t, std::size_t>{16, 16});
}

TEST_CASE("the closed-form criterion on handpicked pairs") {
  using Id = BooleanCloneId;
  const FiniteOp conj = FiniteOp::parse("2:2:0001");
  const FiniteOp disj = FiniteOp::parse("2:2:0111");
  const FiniteOp add = xor_chain(2);
  const FiniteOp add3 = xor_chain(3);
  const FiniteOp mixed = FiniteOp::parse("2:3:01010110");  // conj plus a third argument
  // Conjunction and disjunction identify each other's classes over the
  // idempotent clone.
  REQUIRE(boolean_minor(Id::Tid, conj, disj));
  REQUIRE(boolean_minor(Id::Tid, disj, conj));
  REQUIRE(boolean_equivalent(Id::Tid, conj, disj));
  // ...but not over the self-dual clone, whose pair families differ.
  REQUIRE(!boolean_minor(Id::S, conj, disj));
  REQUIRE(!boolean_minor(Id::S, disj, conj));
  // Two-variable addition sits below conjunction-plus-argument over the
  // bottom clone but is no minor of three-variable addition there: the
  // values at the two constant tuples disagree.
  REQUIRE(boolean_minor(Id::D, add, mixed));
  REQUIRE(!boolean_minor(Id::D, mixed, add));
  REQUIRE(!boolean_minor(Id::D, add, add3));
  REQUIRE(boolean_minor(Id::O, add, add3));
  REQUIRE(boolean_equivalent(Id::D, add, xor_chain(4)));
  // Padding never changes a class.
  for (Id id : kBooleanCloneIds) REQUIRE(boolean_equivalent(id, conj, pad_arity(conj, 4)));
}

TEST_CASE("poset construction reduces to covering edges and checks order axioms") {
  // Divisibility on {1,2,3,4,6,12}: covers are exactly the prime steps.
  std::vector<PosetNode> nodes;
  for (int v : {1, 2, 3, 4, 6, 12})
    nodes.push_back({std::to_string(v), constant_op(2, 0)});
  const Poset p = make_poset(nodes, [](const PosetNode& a, const PosetNode& b) {
    return std::stoi(b.label) % std::stoi(a.label) == 0;
  });
  REQUIRE(p.size() == 6);
  const std::set<std::pair<std::string, std::string>> expected_edges = {
      {"1", "2"}, {"1", "3"}, {"2", "4"}, {"2", "6"}, {"3", "6"}, {"4", "12"}, {"6", "12"}};
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& [lo, hi] : p.cover_edges())
    got.emplace(p.nodes()[lo].label, p.nodes()[hi].label);
  REQUIRE(got == expected_edges);
  REQUIRE(p.leq("1", "12"));
  REQUIRE(p.leq("2", "12"));
  REQUIRE(p.leq("3", "3"));
  REQUIRE(!p.leq("4", "6"));
  REQUIRE(!p.leq("12", "1"));
  REQUIRE_THROWS_AS(p.index_of("5"), std::invalid_argument);
}

TEST_CASE("poset construction rejects non-orders and duplicate labels") {
  std::vector<PosetNode> same{{"a", constant_op(2, 0)}, {"b", constant_op(2, 1)}};
  REQUIRE_THROWS_AS(
      make_poset(same, [](const PosetNode&, const PosetNode&) { return true; }),
      std::invalid_argument);
  std::vector<PosetNode> dup{{"a", constant_op(2, 0)}, {"a", constant_op(2, 1)}};
  REQUIRE_THROWS_AS(
      make_poset(dup, [](const PosetNode& x, const PosetNode& y) { return x.label == y.label; }),
      std::invalid_argument);
  // The constructor itself also refuses duplicate labels and stray edges.
  REQUIRE_THROWS_AS(Poset(dup, {}), std::invalid_argument);
  std::vector<PosetNode> ok{{"a", constant_op(2, 0)}, {"b", constant_op(2, 1)}};
  REQUIRE_THROWS_AS(Poset(ok, {{0, 5}}), std::invalid_argument);
}

TEST_CASE("poset serialization") {
  const Poset p = expected_poset(BooleanCloneId::O);
  const nlohmann::json j = p.to_json();
  REQUIRE(j["nodes"].size() == 3);
  REQUIRE(j["edges"].size() == 2);
  REQUIRE(j["nodes"][0]["label"] == "N");  // labels are sorted
  const std::string dot = p.to_dot("O");
  REQUIRE(dot.find("rankdir=BT") != std::string::npos);
  REQUIRE(dot.find("\"[0]\" -> \"N\"") != std::string::npos);
  REQUIRE(dot.find("\"[1]\" -> \"N\"") != std::string::npos);
}

TEST_CASE("labeled poset comparison sees labels and edges, not representatives") {
  const Poset a = expected_poset(BooleanCloneId::T0);
  Poset b = expected_poset(BooleanCloneId::T0);
  REQUIRE(same_labeled_poset(a, b));
  REQUIRE(!same_labeled_poset(a, expected_poset(BooleanCloneId::T1)));
  REQUIRE(!same_labeled_poset(a, expected_poset(BooleanCloneId::Tid)));
}
