#include "orgprof/orgnet.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <queue>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "orgprof/csv.hpp"

namespace orgprof {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string xml_unescape(std::string_view s) {
  static const std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    bool replaced = false;
    if (s[i] == '&') {
      for (const auto& [entity, ch] : kEntities) {
        if (s.substr(i, entity.size()) == entity) {
          out.push_back(ch);
          i += entity.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(s[i++]);
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " value '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " value '" + s + "'");
  }
  return v;
}

UnitType parse_type_or_throw(const std::string& s) {
  auto t = parse_unit_type(s);
  if (!t) throw std::invalid_argument("unknown unit type '" + s + "'");
  return *t;
}

void single_source_hops(const std::vector<std::vector<std::size_t>>& adj, std::size_t s,
                        std::vector<std::size_t>& order, std::vector<std::vector<std::size_t>>& preds,
                        std::vector<double>& sigma) {
  const std::size_t n = adj.size();
  std::vector<long> dist(n, -1);
  sigma[s] = 1.0;
  dist[s] = 0;
  std::deque<std::size_t> queue{s};
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (auto w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
      if (dist[w] == dist[v] + 1) {
        sigma[w] += sigma[v];
        preds[w].push_back(v);
      }
    }
  }
}

void single_source_weighted(const std::vector<std::vector<std::pair<std::size_t, double>>>& adj,
                            std::size_t s, std::vector<std::size_t>& order,
                            std::vector<std::vector<std::size_t>>& preds,
                            std::vector<double>& sigma) {
  constexpr double kTie = 1e-12;
  const std::size_t n = adj.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<bool> done(n, false);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[s] = 0.0;
  sigma[s] = 1.0;
  heap.push({0.0, s});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = true;
    order.push_back(v);
    for (auto [w, len] : adj[v]) {
      double alt = d + len;
      if (alt < dist[w] - kTie) {
        dist[w] = alt;
        sigma[w] = sigma[v];
        preds[w].assign(1, v);
        heap.push({alt, w});
      } else if (std::abs(alt - dist[w]) <= kTie && !done[w]) {
        sigma[w] += sigma[v];
        preds[w].push_back(v);
      }
    }
  }
}

}  // namespace

OrgNetwork::OrgNetwork(std::vector<Node> nodes,
                       const std::vector<std::tuple<std::string, std::string, std::size_t>>& edges)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const Node& a, const Node& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i].name == nodes_[i - 1].name) {
      throw std::invalid_argument("duplicate node '" + nodes_[i].name + "'");
    }
  }
  for (const auto& [a, b, w] : edges) {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (!ia || !ib) throw std::invalid_argument("edge endpoint not in node list: " + a + " -- " + b);
    if (*ia == *ib) throw std::invalid_argument("self-loop on '" + a + "'");
    if (w == 0) throw std::invalid_argument("edge weight must be positive");
    auto key = std::minmax(*ia, *ib);
    if (!edges_.emplace(EdgeKey{key.first, key.second}, w).second) {
      throw std::invalid_argument("duplicate edge " + a + " -- " + b);
    }
  }
}

std::optional<std::size_t> OrgNetwork::index_of(std::string_view name) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), name,
                             [](const Node& n, std::string_view key) { return n.name < key; });
  if (it == nodes_.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t OrgNetwork::weight(std::string_view a, std::string_view b) const {
  auto ia = index_of(a);
  auto ib = index_of(b);
  if (!ia || !ib || *ia == *ib) return 0;
  auto key = std::minmax(*ia, *ib);
  auto it = edges_.find({key.first, key.second});
  return it == edges_.end() ? 0 : it->second;
}

std::vector<std::vector<std::size_t>> OrgNetwork::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes_.size());
  for (const auto& [key, w] : edges_) {
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::size_t OrgNetwork::degree(std::size_t i) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [i](const auto& e) {
    return e.first.first == i || e.first.second == i;
  }));
}

void OrgNetwork::set_betweenness(const std::vector<double>& values) {
  if (values.size() != nodes_.size()) throw std::invalid_argument("betweenness size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) nodes_[i].betweenness = values[i];
}

OrgNetwork build_network(const std::vector<std::vector<CanonicalUnit>>& unit_sets) {
  std::map<std::string, OrgNetwork::Node> by_name;
  for (const auto& units : unit_sets) {
    for (const auto& u : units) {
      auto& node = by_name[u.name];
      node.name = u.name;
      node.type = u.type;
      ++node.publications;
    }
  }

  OrgNetwork net;
  for (auto& [_, node] : by_name) net.nodes_.push_back(std::move(node));

  for (const auto& units : unit_sets) {
    std::vector<std::size_t> idx;
    for (const auto& u : units) idx.push_back(*net.index_of(u.name));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) ++net.edges_[{idx[i], idx[j]}];
    }
  }
  return net;
}

OrgNetwork apply_threshold(const OrgNetwork& net, std::size_t min_weight, bool drop_isolated,
                           bool strict) {
  std::map<OrgNetwork::EdgeKey, std::size_t> kept;
  for (const auto& [key, w] : net.edges_) {
    if (strict ? w > min_weight : w >= min_weight) kept.emplace(key, w);
  }

  std::vector<bool> keep_node(net.nodes_.size(), !drop_isolated);
  for (const auto& [key, _] : kept) {
    keep_node[key.first] = true;
    keep_node[key.second] = true;
  }

  OrgNetwork out;
  std::vector<std::size_t> remap(net.nodes_.size(), 0);
  for (std::size_t i = 0; i < net.nodes_.size(); ++i) {
    if (!keep_node[i]) continue;
    remap[i] = out.nodes_.size();
    out.nodes_.push_back(net.nodes_[i]);
  }
  for (const auto& [key, w] : kept) out.edges_.emplace(OrgNetwork::EdgeKey{remap[key.first], remap[key.second]}, w);
  return out;
}

std::vector<std::vector<std::string>> connected_components(const OrgNetwork& net) {
  auto adj = net.adjacency();
  std::vector<bool> seen(net.node_count(), false);
  std::vector<std::vector<std::string>> out;
  for (std::size_t start = 0; start < net.node_count(); ++start) {
    if (seen[start]) continue;
    std::vector<std::string> members;
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      members.push_back(net.node(v).name);
      for (auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return out;
}

std::vector<double> betweenness(const OrgNetwork& net, PathMetric metric) {
  const std::size_t n = net.node_count();
  std::vector<double> centrality(n, 0.0);

  auto adj = net.adjacency();
  std::vector<std::vector<std::pair<std::size_t, double>>> weighted(n);
  if (metric == PathMetric::inverse_weight) {
    for (const auto& [key, w] : net.edges()) {
      double len = 1.0 / static_cast<double>(w);
      weighted[key.first].emplace_back(key.second, len);
      weighted[key.second].emplace_back(key.first, len);
    }
  }

  std::vector<std::size_t> order;
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  for (std::size_t s = 0; s < n; ++s) {
    order.clear();
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);

    if (metric == PathMetric::hop_count) {
      single_source_hops(adj, s, order, preds, sigma);
    } else {
      single_source_weighted(weighted, s, order, preds, sigma);
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto w = *it;
      for (auto v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) centrality[w] += delta[w];
    }
  }
  // Each unordered pair was accumulated from both endpoints.
  for (auto& c : centrality) c /= 2.0;
  return centrality;
}

std::optional<GraphFormat> parse_graph_format(std::string_view name) {
  auto n = text::to_upper(text::trim(name));
  if (n == "GRAPHML") return GraphFormat::graphml;
  if (n == "DOT") return GraphFormat::dot;
  if (n == "EDGE_CSV" || n == "CSV") return GraphFormat::edge_csv;
  return std::nullopt;
}

std::string_view file_extension(GraphFormat format) {
  switch (format) {
    case GraphFormat::graphml: return ".graphml";
    case GraphFormat::dot: return ".dot";
    case GraphFormat::edge_csv: return ".csv";
  }
  return "";
}

std::string format_attribute(double value) { return fmt::format("{:.6f}", value); }

void write_graph(const OrgNetwork& net, GraphFormat format, std::ostream& out) {
  const auto& nodes = net.nodes();
  switch (format) {
    case GraphFormat::graphml: {
      out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
          << "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
          << "  <key id=\"type\" for=\"node\" attr.name=\"type\" attr.type=\"string\"/>\n"
          << "  <key id=\"color_class\" for=\"node\" attr.name=\"color_class\" attr.type=\"string\"/>\n"
          << "  <key id=\"P\" for=\"node\" attr.name=\"P\" attr.type=\"int\"/>\n"
          << "  <key id=\"betweenness\" for=\"node\" attr.name=\"betweenness\" attr.type=\"double\"/>\n"
          << "  <key id=\"size\" for=\"node\" attr.name=\"size\" attr.type=\"double\"/>\n"
          << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n"
          << "  <graph id=\"orgnet\" edgedefault=\"undirected\">\n";
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        auto b = format_attribute(n.betweenness);
        out << "    <node id=\"n" << i << "\">\n"
            << "      <data key=\"name\">" << xml_escape(n.name) << "</data>\n"
            << "      <data key=\"type\">" << to_string(n.type) << "</data>\n"
            << "      <data key=\"color_class\">" << to_string(n.type) << "</data>\n"
            << "      <data key=\"P\">" << n.publications << "</data>\n"
            << "      <data key=\"betweenness\">" << b << "</data>\n"
            << "      <data key=\"size\">" << b << "</data>\n"
            << "    </node>\n";
      }
      std::size_t e = 0;
      for (const auto& [key, w] : net.edges()) {
        out << "    <edge id=\"e" << e++ << "\" source=\"n" << key.first << "\" target=\"n"
            << key.second << "\">\n"
            << "      <data key=\"weight\">" << w << "</data>\n"
            << "    </edge>\n";
      }
      out << "  </graph>\n</graphml>\n";
      break;
    }
    case GraphFormat::dot: {
      out << "graph orgnet {\n";
      for (const auto& n : nodes) {
        auto b = format_attribute(n.betweenness);
        out << "  " << dot_quote(n.name) << " [type=\"" << to_string(n.type) << "\", colorclass=\""
            << to_string(n.type) << "\", P=" << n.publications << ", betweenness=\"" << b
            << "\", size=\"" << b << "\"];\n";
      }
      for (const auto& [key, w] : net.edges()) {
        out << "  " << dot_quote(nodes[key.first].name) << " -- " << dot_quote(nodes[key.second].name)
            << " [weight=" << w << "];\n";
      }
      out << "}\n";
      break;
    }
    case GraphFormat::edge_csv: {
      out << "source,target,weight\n";
      for (const auto& [key, w] : net.edges()) {
        out << csv::escape(nodes[key.first].name) << ',' << csv::escape(nodes[key.second].name) << ','
            << w << '\n';
      }
      break;
    }
  }
}

void write_node_table(const OrgNetwork& net, std::ostream& out) {
  out << "name,type,P,betweenness\n";
  for (const auto& n : net.nodes()) {
    out << csv::escape(n.name) << ',' << to_string(n.type) << ',' << n.publications << ','
        << format_attribute(n.betweenness) << '\n';
  }
}

void export_graph(const OrgNetwork& net, GraphFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write graph file " + path.string());
  write_graph(net, format, out);
  out.flush();
  if (!out) throw std::runtime_error("error while writing graph file " + path.string());
}

OrgNetwork read_graphml(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string doc = buffer.str();

  static const std::regex node_re(R"re(<node id="([^"]*)">([\s\S]*?)</node>)re");
  static const std::regex edge_re(
      R"re(<edge(?: id="[^"]*")? source="([^"]*)" target="([^"]*)">([\s\S]*?)</edge>)re");
  static const std::regex data_re(R"re(<data key="([^"]*)">([^<]*)</data>)re");

  auto data_of = [](const std::string& body) {
    std::map<std::string, std::string> out;
    for (std::sregex_iterator it(body.begin(), body.end(), data_re), end; it != end; ++it) {
      out[(*it)[1]] = xml_unescape((*it)[2].str());
    }
    return out;
  };

  std::map<std::string, std::string> id_to_name;
  std::vector<OrgNetwork::Node> nodes;
  for (std::sregex_iterator it(doc.begin(), doc.end(), node_re), end; it != end; ++it) {
    auto data = data_of((*it)[2]);
    OrgNetwork::Node n;
    n.name = data["name"];
    n.type = parse_type_or_throw(data["type"]);
    n.publications = parse_count(data["P"], "P");
    n.betweenness = parse_real(data["betweenness"], "betweenness");
    id_to_name[(*it)[1]] = n.name;
    nodes.push_back(std::move(n));
  }

  std::vector<std::tuple<std::string, std::string, std::size_t>> edges;
  for (std::sregex_iterator it(doc.begin(), doc.end(), edge_re), end; it != end; ++it) {
    auto data = data_of((*it)[3]);
    auto src = id_to_name.find((*it)[1]);
    auto dst = id_to_name.find((*it)[2]);
    if (src == id_to_name.end() || dst == id_to_name.end()) {
      throw std::invalid_argument("GraphML edge references an unknown node id");
    }
    edges.emplace_back(src->second, dst->second, parse_count(data["weight"], "weight"));
  }
  return OrgNetwork(std::move(nodes), edges);
}

OrgNetwork read_csv_graph(std::istream& node_table, std::istream& edge_list) {
  std::vector<OrgNetwork::Node> nodes;
  auto node_rows = csv::read_rows(node_table);
  for (std::size_t i = 1; i < node_rows.size(); ++i) {
    const auto& f = node_rows[i].fields;
    if (node_rows[i].error || f.size() != 4) {
      throw std::invalid_argument("bad node table row at line " + std::to_string(node_rows[i].line));
    }
    nodes.push_back({f[0], parse_type_or_throw(f[1]), parse_count(f[2], "P"),
                     parse_real(f[3], "betweenness")});
  }
  std::vector<std::tuple<std::string, std::string, std::size_t>> edges;
  auto edge_rows = csv::read_rows(edge_list);
  for (std::size_t i = 1; i < edge_rows.size(); ++i) {
    const auto& f = edge_rows[i].fields;
    if (edge_rows[i].error || f.size() != 3) {
      throw std::invalid_argument("bad edge row at line " + std::to_string(edge_rows[i].line));
    }
    edges.emplace_back(f[0], f[1], parse_count(f[2], "weight"));
  }
  return OrgNetwork(std::move(nodes), edges);
}

}  // namespace orgprof
