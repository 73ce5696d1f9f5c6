#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "orgprof/normalize.hpp"

namespace orgprof {

/// Weighted undirected co-occurrence graph over canonical units.
///
/// Nodes are kept sorted by name and addressed by index. An edge weight is
/// the number of publications naming both endpoints.
class OrgNetwork {
 public:
  struct Node {
    std::string name;
    UnitType type = UnitType::other;
    std::size_t publications = 0;
    double betweenness = 0.0;

    bool operator==(const Node&) const = default;
  };
  using EdgeKey = std::pair<std::size_t, std::size_t>;  // first < second

  OrgNetwork() = default;
  /// Builds from explicit parts; `nodes` need not be sorted. Throws
  /// std::invalid_argument on unknown endpoints, self-loops, duplicate
  /// names or non-positive weights.
  OrgNetwork(std::vector<Node> nodes,
             const std::vector<std::tuple<std::string, std::string, std::size_t>>& edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(std::size_t i) const { return nodes_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// 0 when the units never co-occur.
  std::size_t weight(std::string_view a, std::string_view b) const;
  const std::map<EdgeKey, std::size_t>& edges() const { return edges_; }

  /// Neighbour indices of each node, ascending.
  std::vector<std::vector<std::size_t>> adjacency() const;
  std::size_t degree(std::size_t i) const;

  void set_betweenness(const std::vector<double>& values);

  bool operator==(const OrgNetwork&) const = default;

 private:
  friend OrgNetwork build_network(const std::vector<std::vector<CanonicalUnit>>&);
  friend OrgNetwork apply_threshold(const OrgNetwork&, std::size_t, bool, bool);

  std::vector<Node> nodes_;
  std::map<EdgeKey, std::size_t> edges_;
};

/// Every unordered pair of distinct units in a record adds 1 to that edge;
/// node P counts the records naming the unit. Unit sets must be deduped.
OrgNetwork build_network(const std::vector<std::vector<CanonicalUnit>>& unit_sets);

/// With `strict` an edge survives only if weight > min_weight (the ">5"
/// reading); otherwise weight >= min_weight. Node attributes, including
/// betweenness, are carried over unchanged.
OrgNetwork apply_threshold(const OrgNetwork& net, std::size_t min_weight, bool drop_isolated,
                           bool strict = true);

/// Maximal connected node sets (names), largest first, ties by smallest
/// member name. Members are sorted.
std::vector<std::vector<std::string>> connected_components(const OrgNetwork& net);

enum class PathMetric {
  hop_count,       // unweighted skeleton; the conformance setting
  inverse_weight,  // distance 1/w, for exploration only
};

/// Unnormalized shortest-path betweenness summed over unordered pairs
/// (Brandes accumulation halved). Indexed like net.nodes().
std::vector<double> betweenness(const OrgNetwork& net, PathMetric metric = PathMetric::hop_count);

enum class GraphFormat { graphml, dot, edge_csv };

std::optional<GraphFormat> parse_graph_format(std::string_view name);
std::string_view file_extension(GraphFormat format);

void write_graph(const OrgNetwork& net, GraphFormat format, std::ostream& out);
/// `name,type,P,betweenness`
void write_node_table(const OrgNetwork& net, std::ostream& out);

/// Throws std::runtime_error when the path cannot be written.
void export_graph(const OrgNetwork& net, GraphFormat format, const std::filesystem::path& path);

/// Reads back a GraphML document produced by write_graph.
OrgNetwork read_graphml(std::istream& in);
/// Reads a node table plus a `source,target,weight` edge list.
OrgNetwork read_csv_graph(std::istream& node_table, std::istream& edge_list);

/// Fixed 6-decimal rendering used by every graph export.
std::string format_attribute(double value);

}  // namespace orgprof
