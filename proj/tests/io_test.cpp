#include <gtest/gtest.h>

#include "cifly/error.hpp"
#include "cifly/io.hpp"

namespace cifly::io {
namespace {

TEST(Io, ReadGraph) {
  auto lg = read_graph(R"({"p":3,"edges":{"-->":[[0,1]],"<->":[[1,2]]}})",
                       admg_signature());
  EXPECT_EQ(lg.graph.num_nodes(), 3u);
  EXPECT_EQ(lg.graph.edges("-->"), (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(lg.graph.edges("<->"), (std::vector<Edge>{{1, 2}}));
  EXPECT_TRUE(lg.labels.empty());
}

TEST(Io, LabeledGraphAndSets) {
  auto lg = read_graph(
      R"({"p":2,"nodes":["a","b"],"edges":{"-->":[["a","b"]]}})",
      dag_signature());
  EXPECT_EQ(lg.labels, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(lg.graph.edges("-->"), (std::vector<Edge>{{0, 1}}));
  auto sets = read_sets(R"({"X":["b"],"Z":0})", lg.labels);
  EXPECT_EQ(sets.at("X"), NodeSet{1});
  EXPECT_EQ(sets.at("Z"), NodeSet{0});
}

TEST(Io, SetsAreNormalized) {
  auto sets = read_sets(R"({"X":[3,1,3],"Y":[]})");
  EXPECT_EQ(sets.at("X"), (NodeSet{1, 3}));
  EXPECT_TRUE(sets.at("Y").empty());
}

TEST(Io, GraphRoundTrip) {
  Graph g = make_cpdag(3, {{0, 1}}, {{1, 2}});
  Graph h = read_graph(write_graph(g), cpdag_signature()).graph;
  EXPECT_EQ(h.input().edges, g.input().edges);
  EXPECT_EQ(h.num_nodes(), 3u);
}

TEST(Io, MatrixRoundTrip) {
  BooleanMatrix m = BooleanMatrix::from_rows({{1, 0, 1}, {0, 1, 0}});
  EXPECT_EQ(read_matrix(write_matrix(m)), m);
}

TEST(Io, Errors) {
  EXPECT_THROW(read_graph(R"({"p":2,"edges":{"<->":[[0,1]]}})",
                          dag_signature()),
               Error);
  EXPECT_THROW(read_graph(R"({"p":2,"edges":{"-->":[[0,2]]}})",
                          dag_signature()),
               Error);
  EXPECT_THROW(read_graph(R"({"edges":{}})", dag_signature()), Error);
  EXPECT_THROW(read_sets(R"({"X":["q"]})", {"a"}), Error);
  EXPECT_THROW(read_matrix(R"({"rows":2,"cols":1,"data":[[1]]})"), Error);
  EXPECT_THROW(read_file("/nonexistent/file.json"), Error);
}

}  // namespace
}  // namespace cifly::io
