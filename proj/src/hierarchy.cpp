#include "hiergame/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hiergame {

DirectedGraph::DirectedGraph(std::size_t node_count)
    : node_count_(node_count), adjacency_(node_count) {
  if (node_count == 0) throw std::invalid_argument("graph needs at least one node");
}

DirectedGraph::DirectedGraph(std::size_t node_count, const std::vector<Edge>& edges)
    : DirectedGraph(node_count) {
  for (const auto& [from, to] : edges) add_edge(from, to);
}

void DirectedGraph::add_edge(std::size_t from, std::size_t to) {
  if (from >= node_count_ || to >= node_count_) {
    throw std::out_of_range("edge (" + std::to_string(from) + ", " + std::to_string(to) +
                            ") outside graph of " + std::to_string(node_count_) + " nodes");
  }
  if (from == to) throw std::invalid_argument("self-loop on node " + std::to_string(from));
  if (!edges_.emplace(from, to).second) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(from) + ", " +
                                std::to_string(to) + ")");
  }
  adjacency_[from].push_back(to);
}

const std::vector<std::size_t>& DirectedGraph::successors(std::size_t node) const {
  if (node >= node_count_) throw std::out_of_range("node id " + std::to_string(node));
  return adjacency_[node];
}

TwoLevelStructure::TwoLevelStructure(int group_size, int top_count)
    : group_size_(group_size), top_count_(top_count) {
  if (group_size < 2) throw std::invalid_argument("two-level structure needs group_size >= 2");
  if (top_count < 0 || top_count > group_size) {
    throw std::invalid_argument("top_count must lie in [0, group_size]");
  }
}

namespace {

std::size_t reachable_count(const DirectedGraph& g, std::size_t source) {
  std::vector<char> seen(g.node_count(), 0);
  std::deque<std::size_t> frontier{source};
  seen[source] = 1;
  std::size_t count = 0;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop_front();
    for (std::size_t v : g.successors(u)) {
      if (seen[v]) continue;
      seen[v] = 1;
      ++count;
      frontier.push_back(v);
    }
  }
  return count;
}

void require_two_nodes(const DirectedGraph& g) {
  if (g.node_count() < 2) throw std::invalid_argument("reaching centrality needs >= 2 nodes");
}

}  // namespace

double local_reaching_centrality(const DirectedGraph& g, std::size_t node) {
  require_two_nodes(g);
  if (node >= g.node_count()) throw std::out_of_range("node id " + std::to_string(node));
  return static_cast<double>(reachable_count(g, node)) /
         static_cast<double>(g.node_count() - 1);
}

double general_reaching_centrality(const DirectedGraph& g) {
  require_two_nodes(g);
  std::vector<double> local(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) local[i] = local_reaching_centrality(g, i);
  const double peak = *std::max_element(local.begin(), local.end());
  double total = 0.0;
  for (double v : local) total += peak - v;
  return total / static_cast<double>(g.node_count() - 1);
}

double h_nx(const TwoLevelStructure& s) {
  if (s.top_count() == 0) return 0.0;
  const double ratio = static_cast<double>(s.group_size() - s.top_count()) /
                       static_cast<double>(s.group_size() - 1);
  return ratio * ratio;
}

double h_nx(int group_size, int top_count) { return h_nx(TwoLevelStructure(group_size, top_count)); }

DirectedGraph build_two_level_graph(const TwoLevelStructure& s) {
  if (s.top_count() == 0) {
    throw std::invalid_argument("an all-bottom structure has no canonical graph");
  }
  const auto n = static_cast<std::size_t>(s.group_size());
  const auto x = static_cast<std::size_t>(s.top_count());
  DirectedGraph g(n);
  for (std::size_t top = 0; top < x; ++top)
    for (std::size_t bottom = x; bottom < n; ++bottom) g.add_edge(top, bottom);
  return g;
}

DirectedGraph read_edge_list(std::istream& in) {
  std::string line;
  std::optional<DirectedGraph> graph;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    const auto where = "edge list line " + std::to_string(line_no);
    if (!graph) {
      long long nodes = 0;
      if (first != "nodes" || !(fields >> nodes) || nodes < 1) {
        throw std::invalid_argument(where + ": expected 'nodes <N>' header");
      }
      graph.emplace(static_cast<std::size_t>(nodes));
      continue;
    }
    long long from = 0;
    long long to = 0;
    std::istringstream pair(line);
    std::string extra;
    if (!(pair >> from >> to) || (pair >> extra) || from < 0 || to < 0) {
      throw std::invalid_argument(where + ": expected 'from to'");
    }
    graph->add_edge(static_cast<std::size_t>(from), static_cast<std::size_t>(to));
  }
  if (!graph) throw std::invalid_argument("edge list is missing its 'nodes <N>' header");
  return std::move(*graph);
}

}  // namespace hiergame
