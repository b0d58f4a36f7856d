#pragma once

// Finite labeled posets presented by their covering relation (Hasse
// diagram).  Used for the ordered sets of equivalence classes; nodes carry a
// class label and a representative operation.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cminor/finite_op.hpp"

namespace cminor {

struct PosetNode {
  std::string label;
  FiniteOp representative;
};

class Poset {
 public:
  Poset(std::vector<PosetNode> nodes, std::vector<std::pair<std::size_t, std::size_t>> cover_edges)
      : nodes_(std::move(nodes)), edges_(std::move(cover_edges)) {
    std::vector<std::size_t> order(nodes_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return nodes_[a].label < nodes_[b].label;
    });
    std::vector<std::size_t> rank(nodes_.size());
    std::vector<PosetNode> sorted;
    sorted.reserve(nodes_.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      rank[order[pos]] = pos;
      sorted.push_back(std::move(nodes_[order[pos]]));
    }
    nodes_ = std::move(sorted);
    for (auto& [lo, hi] : edges_) {
      if (lo >= nodes_.size() || hi >= nodes_.size())
        throw std::invalid_argument("edge endpoint out of range");
      lo = rank[lo];
      hi = rank[hi];
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (i > 0 && nodes_[i].label == nodes_[i - 1].label)
        throw std::invalid_argument("duplicate node label \"" + nodes_[i].label + "\"");
      index_.emplace(nodes_[i].label, i);
    }
  }

  const std::vector<PosetNode>& nodes() const { return nodes_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& cover_edges() const { return edges_; }

  std::size_t size() const { return nodes_.size(); }

  std::size_t index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw std::invalid_argument("no node labeled \"" + label + "\"");
    return it->second;
  }

  /// Is node lo below node hi (reflexively) in the order generated by the
  /// covering edges?
  bool leq(std::size_t lo, std::size_t hi) const {
    if (lo == hi) return true;
    std::vector<std::size_t> stack{lo};
    std::vector<bool> seen(nodes_.size(), false);
    seen[lo] = true;
    while (!stack.empty()) {
      const std::size_t at = stack.back();
      stack.pop_back();
      for (const auto& [a, b] : edges_) {
        if (a != at || seen[b]) continue;
        if (b == hi) return true;
        seen[b] = true;
        stack.push_back(b);
      }
    }
    return false;
  }

  bool leq(const std::string& lo, const std::string& hi) const {
    return leq(index_of(lo), index_of(hi));
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (const PosetNode& node : nodes_)
      j["nodes"].push_back({{"label", node.label}, {"representative", node.representative.to_text()}});
    j["edges"] = nlohmann::json::array();
    for (const auto& [lo, hi] : edges_)
      j["edges"].push_back({nodes_[lo].label, nodes_[hi].label});
    return j;
  }

  /// Graphviz rendering of the Hasse diagram, lesser classes at the bottom.
  std::string to_dot(const std::string& title = "classes") const {
    std::string out = "digraph \"" + title + "\" {\n  rankdir=BT;\n  node [shape=box];\n";
    for (const PosetNode& node : nodes_)
      out += "  \"" + node.label + "\" [tooltip=\"" + node.representative.to_text() + "\"];\n";
    for (const auto& [lo, hi] : edges_)
      out += "  \"" + nodes_[lo].label + "\" -> \"" + nodes_[hi].label + "\";\n";
    out += "}\n";
    return out;
  }

 private:
  std::vector<PosetNode> nodes_;                            // sorted by label
  std::vector<std::pair<std::size_t, std::size_t>> edges_;  // lo covered by hi
  std::map<std::string, std::size_t> index_;
};

/// Builds a poset from nodes and a comparison oracle; verifies antisymmetry
/// and keeps only the covering edges (transitive reduction).
template <typename LeqFn>
Poset make_poset(std::vector<PosetNode> nodes, LeqFn&& leq) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      below[i][j] = leq(nodes[i], nodes[j]);
  for (std::size_t i = 0; i < n; ++i) {
    if (!below[i][i]) throw std::invalid_argument("comparison is not reflexive");
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && below[i][j] && below[j][i])
        throw std::invalid_argument("distinct nodes \"" + nodes[i].label + "\" and \"" +
                                    nodes[j].label + "\" compare equal");
  }
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !below[i][j]) continue;
      bool direct = true;
      for (std::size_t mid = 0; mid < n && direct; ++mid)
        if (mid != i && mid != j && below[i][mid] && below[mid][j]) direct = false;
      if (direct) covers.emplace_back(i, j);
    }
  return Poset(std::move(nodes), std::move(covers));
}

/// Same labels and same covering relation on those labels; representatives
/// may differ.
inline bool same_labeled_poset(const Poset& a, const Poset& b) {
  if (a.size() != b.size() || a.cover_edges().size() != b.cover_edges().size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.nodes()[i].label != b.nodes()[i].label) return false;
  for (std::size_t e = 0; e < a.cover_edges().size(); ++e)
    if (a.cover_edges()[e] != b.cover_edges()[e]) return false;
  return true;
}

}  // namespace cminor
