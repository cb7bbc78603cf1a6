#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <utility>
#include <vector>

namespace hiergame {

/// Unweighted directed graph on nodes [0, node_count). Self-loops and
/// duplicate edges are rejected at insertion.
class DirectedGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  explicit DirectedGraph(std::size_t node_count);
  DirectedGraph(std::size_t node_count, const std::vector<Edge>& edges);

  void add_edge(std::size_t from, std::size_t to);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& successors(std::size_t node) const;

 private:
  std::size_t node_count_;
  std::set<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Two-layer hierarchy: `top_count` leaders over `group_size - top_count`
/// followers.
class TwoLevelStructure {
 public:
  TwoLevelStructure(int group_size, int top_count);

  int group_size() const { return group_size_; }
  int top_count() const { return top_count_; }

 private:
  int group_size_;
  int top_count_;
};

/// Fraction of the other nodes reachable from `node` along directed paths.
double local_reaching_centrality(const DirectedGraph& g, std::size_t node);

/// Mean shortfall of every node's local reaching centrality from the
/// graph maximum, normalized by (node_count - 1). 1 for an out-star,
/// 0 when every node reaches the same number of others.
double general_reaching_centrality(const DirectedGraph& g);

/// Closed-form hierarchicalness of a two-level structure:
/// ((n - x) / (n - 1))^2 for x >= 1, and 0 when nobody is at the top.
double h_nx(const TwoLevelStructure& s);
double h_nx(int group_size, int top_count);

/// Each top node gets an out-edge to every bottom node. Top nodes are
/// indices [0, x). Requires x >= 1.
DirectedGraph build_two_level_graph(const TwoLevelStructure& s);

/// Reads `nodes <N>` followed by one zero-based `from to` pair per line.
/// Blank lines and `#` comments are ignored.
DirectedGraph read_edge_list(std::istream& in);

}  // namespace hiergame
