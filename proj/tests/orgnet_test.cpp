#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "orgprof/orgnet.hpp"

using namespace orgprof;

namespace {

std::vector<CanonicalUnit> set_of(std::initializer_list<const char*> names) {
  std::vector<CanonicalUnit> out;
  for (const auto* n : names) out.push_back({n, UnitType::department});
  std::sort(out.begin(), out.end());
  return out;
}

OrgNetwork graph_of(std::size_t n, const oracle::Edges& edges) {
  std::vector<OrgNetwork::Node> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({"n" + std::to_string(i), UnitType::other, 1, 0.0});
  std::vector<std::tuple<std::string, std::string, std::size_t>> e;
  for (auto [a, b] : edges) e.emplace_back("n" + std::to_string(a), "n" + std::to_string(b), 1);
  return OrgNetwork(std::move(nodes), e);
}

double b_of(const OrgNetwork& net, const std::vector<double>& b, const char* name) {
  return b[*net.index_of(name)];
}

}  // namespace

TEST_CASE("build_network") {
  SUBCASE("edge weights and node P") {
    auto net = build_network({set_of({"A", "B"}), set_of({"A", "B"}), set_of({"A"})});
    CHECK(net.weight("A", "B") == 2);
    CHECK(net.weight("B", "A") == 2);
    CHECK(net.node(*net.index_of("A")).publications == 3);
    CHECK(net.node(*net.index_of("B")).publications == 2);
    CHECK(net.edge_count() == 1);
  }
  SUBCASE("singletons give no edges") {
    auto net = build_network({set_of({"A"}), set_of({"B"}), set_of({"C"})});
    CHECK(net.node_count() == 3);
    CHECK(net.edge_count() == 0);
  }
  SUBCASE("one record with three units is a triangle") {
    auto net = build_network({set_of({"A", "B", "C"})});
    CHECK(net.edge_count() == 3);
    CHECK(net.weight("A", "B") == 1);
    CHECK(net.weight("A", "C") == 1);
    CHECK(net.weight("B", "C") == 1);
    CHECK(net.weight("A", "A") == 0);
  }
  SUBCASE("weight sum equals sum of C(k,2), weight <= min P") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> size(0, 5);
    std::uniform_int_distribution<int> pick(0, 7);
    std::vector<std::vector<CanonicalUnit>> sets;
    std::size_t pairs = 0;
    for (int r = 0; r < 200; ++r) {
      std::set<std::string> names;
      for (int k = size(rng); k > 0; --k) names.insert(std::string(1, static_cast<char>('A' + pick(rng))));
      std::vector<CanonicalUnit> s;
      for (const auto& n : names) s.push_back({n, UnitType::other});
      pairs += s.size() * (s.size() - (s.empty() ? 0 : 1)) / 2;
      sets.push_back(std::move(s));
    }
    auto net = build_network(sets);
    std::size_t total = 0;
    for (const auto& [key, w] : net.edges()) {
      total += w;
      CHECK(key.first < key.second);
      CHECK(w > 0);
      CHECK(w <= std::min(net.node(key.first).publications, net.node(key.second).publications));
    }
    CHECK(total == pairs);
  }
}

TEST_CASE("apply_threshold") {
  auto net = build_network({set_of({"A", "B"}), set_of({"A", "B"}), set_of({"A", "B"}),
                            set_of({"A", "B"}), set_of({"A", "B"}), set_of({"B", "C"}),
                            set_of({"B", "C"}), set_of({"B", "C"}), set_of({"B", "C"}),
                            set_of({"B", "C"}), set_of({"B", "C"}), set_of({"D"})});
  REQUIRE(net.weight("A", "B") == 5);
  REQUIRE(net.weight("B", "C") == 6);

  SUBCASE("strict > 5 keeps the weight-6 edge only") {
    auto t = apply_threshold(net, 5, true);
    CHECK(t.edge_count() == 1);
    CHECK(t.weight("B", "C") == 6);
    CHECK(t.node_count() == 2);
    CHECK_FALSE(t.index_of("A"));
  }
  SUBCASE("inclusive reading keeps both") {
    CHECK(apply_threshold(net, 5, true, false).edge_count() == 2);
  }
  SUBCASE("zero threshold is the identity") {
    CHECK(apply_threshold(net, 0, false) == net);
  }
  SUBCASE("isolated nodes only go when asked") {
    CHECK(apply_threshold(net, 0, true).node_count() == 3);
    CHECK(apply_threshold(net, 5, false).node_count() == 4);
  }
  SUBCASE("betweenness survives thresholding") {
    auto full = net;
    full.set_betweenness(betweenness(full));
    auto t = apply_threshold(full, 5, true);
    CHECK(t.node(*t.index_of("B")).betweenness == doctest::Approx(1.0));
  }
  SUBCASE("monotone in min_weight") {
    std::size_t prev_nodes = net.node_count() + 1;
    std::size_t prev_edges = net.edge_count() + 1;
    for (std::size_t w = 0; w < 8; ++w) {
      auto t = apply_threshold(net, w, true);
      CHECK(t.node_count() <= prev_nodes);
      CHECK(t.edge_count() <= prev_edges);
      prev_nodes = t.node_count();
      prev_edges = t.edge_count();
    }
  }
}

TEST_CASE("connected_components") {
  CHECK(connected_components(graph_of(3, {})).size() == 3);

  auto path = build_network({set_of({"A", "B"}), set_of({"B", "C"}), set_of({"D"})});
  auto comps = connected_components(path);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<std::string>{"A", "B", "C"});
  CHECK(comps[1] == std::vector<std::string>{"D"});

  // Four components: sizes by hand 3, 2, 2, 1; equal sizes ordered by first member.
  auto four = build_network({set_of({"M1", "M2"}), set_of({"M2", "M3"}), set_of({"X1", "X2"}),
                             set_of({"B1", "B2"}), set_of({"Z"})});
  auto c4 = connected_components(four);
  REQUIRE(c4.size() == 4);
  CHECK(c4[0].size() == 3);
  CHECK(c4[1] == std::vector<std::string>{"B1", "B2"});
  CHECK(c4[2] == std::vector<std::string>{"X1", "X2"});
  CHECK(c4[3] == std::vector<std::string>{"Z"});
}

TEST_CASE("betweenness closed forms") {
  SUBCASE("path") {
    auto net = graph_of(3, {{0, 1}, {1, 2}});
    auto b = betweenness(net);
    CHECK(b_of(net, b, "n1") == 1.0);
    CHECK(b_of(net, b, "n0") == 0.0);
    CHECK(b_of(net, b, "n2") == 0.0);
  }
  SUBCASE("star with three leaves") {
    auto net = graph_of(4, {{0, 1}, {0, 2}, {0, 3}});
    auto b = betweenness(net);
    CHECK(b[0] == 3.0);
    CHECK(b[1] == 0.0);
  }
  SUBCASE("4-cycle") {
    auto b = betweenness(graph_of(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    for (auto v : b) CHECK(v == 0.5);
  }
  SUBCASE("complete graph is all zero") {
    oracle::Edges k5;
    for (std::size_t a = 0; a < 5; ++a) {
      for (std::size_t c = a + 1; c < 5; ++c) k5.emplace_back(a, c);
    }
    for (auto v : betweenness(graph_of(5, k5))) CHECK(v == 0.0);
  }
  SUBCASE("tree leaves are zero") {
    auto b = betweenness(graph_of(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {5, 6}}));
    for (auto leaf : {3, 4, 6}) CHECK(b[static_cast<std::size_t>(leaf)] == 0.0);
  }
  SUBCASE("disconnected pairs contribute nothing") {
    auto b = betweenness(graph_of(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}}));
    CHECK(b[1] == 1.0);
    CHECK(b[4] == 1.0);
  }
  SUBCASE("edge weights are ignored by default") {
    auto heavy = build_network({set_of({"A", "B"}), set_of({"A", "B"}), set_of({"A", "B"}),
                                set_of({"B", "C"}), set_of({"A", "C"})});
    auto b = betweenness(heavy);
    for (auto v : b) CHECK(v == 0.0);
    // Inverse weights: A-C direct (1) still beats A-B-C (1/3 + 1).
    auto bw = betweenness(heavy, PathMetric::inverse_weight);
    CHECK(bw[*heavy.index_of("B")] == 0.0);
  }
}

TEST_CASE("betweenness matches path enumeration on small random graphs") {
  std::mt19937_64 rng(1997);
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 2 + static_cast<std::size_t>(i % 7);
    auto edges = oracle::random_graph(n, 0.4, rng);
    auto expected = oracle::enumerated_betweenness(n, edges);
    auto got = betweenness(graph_of(n, edges));
    for (std::size_t v = 0; v < n; ++v) CHECK(got[v] == doctest::Approx(expected[v]).epsilon(1e-12));
  }
}

TEST_CASE("inverse-weight metric prefers heavy links") {
  // A-B heavy (w=4), B-C heavy (w=4), A-C light (w=1): A..C via B costs 0.5 < 1.
  std::vector<OrgNetwork::Node> nodes{{"A", UnitType::other, 1, 0}, {"B", UnitType::other, 1, 0},
                                      {"C", UnitType::other, 1, 0}};
  OrgNetwork net(nodes, {{"A", "B", 4}, {"B", "C", 4}, {"A", "C", 1}});
  CHECK(betweenness(net)[1] == 0.0);
  CHECK(betweenness(net, PathMetric::inverse_weight)[1] == doctest::Approx(1.0));
}

TEST_CASE("graph export") {
  auto net = build_network({set_of({"DEPT A & B", "FAC \"X\""}), set_of({"DEPT A & B"})});
  net.set_betweenness(betweenness(net));

  SUBCASE("empty network") {
    OrgNetwork empty;
    for (auto f : {GraphFormat::graphml, GraphFormat::dot, GraphFormat::edge_csv}) {
      std::ostringstream out;
      write_graph(empty, f, out);
      CHECK_FALSE(out.str().empty());
    }
    std::ostringstream g;
    write_graph(empty, GraphFormat::graphml, g);
    std::istringstream in(g.str());
    CHECK(read_graphml(in).node_count() == 0);
  }

  SUBCASE("graphml round trip") {
    std::ostringstream out;
    write_graph(net, GraphFormat::graphml, out);
    CHECK(out.str().find("DEPT A &amp; B") != std::string::npos);
    std::istringstream in(out.str());
    CHECK(read_graphml(in) == net);
  }

  SUBCASE("csv round trip and row count") {
    std::ostringstream nodes;
    std::ostringstream edges;
    write_node_table(net, nodes);
    write_graph(net, GraphFormat::edge_csv, edges);
    auto text = edges.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(net.edge_count() + 1));
    std::istringstream n_in(nodes.str());
    std::istringstream e_in(text);
    CHECK(read_csv_graph(n_in, e_in) == net);
  }

  SUBCASE("dot carries type and size") {
    std::ostringstream out;
    write_graph(net, GraphFormat::dot, out);
    auto s = out.str();
    CHECK(s.find("\"FAC \\\"X\\\"\"") != std::string::npos);
    CHECK(s.find("colorclass=\"department\"") != std::string::npos);
    CHECK(s.find("size=\"0.000000\"") != std::string::npos);
    CHECK(s.find("[weight=1]") != std::string::npos);
  }

  SUBCASE("unwritable path") {
    CHECK_THROWS_AS(export_graph(net, GraphFormat::dot, "/nonexistent/dir/g.dot"), std::runtime_error);
  }

  SUBCASE("file export") {
    auto path = std::filesystem::temp_directory_path() / "orgprof_export_test.graphml";
    export_graph(net, GraphFormat::graphml, path);
    std::ifstream in(path);
    CHECK(read_graphml(in) == net);
    std::filesystem::remove(path);
  }
}

TEST_CASE("OrgNetwork rejects bad parts") {
  std::vector<OrgNetwork::Node> nodes{{"A", UnitType::other, 1, 0}, {"B", UnitType::other, 1, 0}};
  CHECK_THROWS_AS(OrgNetwork(nodes, {{"A", "A", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(OrgNetwork(nodes, {{"A", "C", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(OrgNetwork(nodes, {{"A", "B", 0}}), std::invalid_argument);
  CHECK_THROWS_AS(OrgNetwork(nodes, {{"A", "B", 1}, {"B", "A", 2}}), std::invalid_argument);
}
