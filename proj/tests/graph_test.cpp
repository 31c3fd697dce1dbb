#include <gtest/gtest.h>

#include "cifly/error.hpp"
#include "cifly/graph.hpp"
#include "cifly/ruletable.hpp"

namespace cifly {
namespace {

NodeSet as_set(std::span<const NodeId> s) {
  return make_node_set({s.begin(), s.end()});
}

ErrorCode build_code(EdgeInput in, const EdgeSignature& sig) {
  try {
    build_graph(std::move(in), sig);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "graph accepted";
  return ErrorCode::kInvalidInput;
}

TEST(NodeSets, Operations) {
  EXPECT_EQ(make_node_set({3, 1, 3, 0}), (NodeSet{0, 1, 3}));
  EXPECT_EQ(set_union(NodeSet{0, 2}, NodeSet{1, 2}), (NodeSet{0, 1, 2}));
  EXPECT_EQ(set_intersection(NodeSet{0, 2, 4}, NodeSet{2, 3, 4}),
            (NodeSet{2, 4}));
  EXPECT_EQ(set_difference(NodeSet{0, 2, 4}, NodeSet{2}), (NodeSet{0, 4}));
  EXPECT_TRUE(intersects(NodeSet{1, 5}, NodeSet{5}));
  EXPECT_FALSE(intersects(NodeSet{1, 5}, NodeSet{}));
  EXPECT_EQ(complement(NodeSet{1}, 3), (NodeSet{0, 2}));
  EXPECT_EQ(all_nodes(3), (NodeSet{0, 1, 2}));
}

TEST(Graph, ArrivalTypes) {
  // 0 --> 1 <-> 2
  Graph g = make_admg(3, {{0, 1}}, {{1, 2}});
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(as_set(g.neighbors(0, "-->")), NodeSet{1});
  EXPECT_EQ(as_set(g.neighbors(1, "<--")), NodeSet{0});
  EXPECT_TRUE(g.neighbors(1, "-->").empty());
  EXPECT_EQ(as_set(g.neighbors(1, "<->")), NodeSet{2});
  EXPECT_EQ(as_set(g.neighbors(2, "<->")), NodeSet{1});
  EXPECT_EQ(as_set(g.neighbors(0, std::size_t{0})), NodeSet{1});
}

TEST(Graph, CpdagUndirectedIsSymmetric) {
  Graph g = make_cpdag(3, {{0, 1}}, {{1, 2}});
  EXPECT_EQ(as_set(g.neighbors(1, "---")), NodeSet{2});
  EXPECT_EQ(as_set(g.neighbors(2, "---")), NodeSet{1});
  EXPECT_EQ(g.edges("---"), (std::vector<Edge>{{1, 2}}));
}

TEST(Graph, DuplicatesAndSelfLoopsKept) {
  Graph g = make_dag(2, {{0, 1}, {0, 1}, {1, 1}});
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.neighbors(0, "-->").size(), 2u);
  EXPECT_EQ(as_set(g.neighbors(1, "-->")), NodeSet{1});
}

TEST(Graph, MissingKeysAreEmpty) {
  Graph g = make_dag(2, {});
  EXPECT_TRUE(g.edges("-->").empty());
  Graph a = make_admg(2, {{0, 1}});
  EXPECT_TRUE(a.edges("<->").empty());
}

TEST(Graph, RejectsBadInput) {
  EdgeInput out_of_range{2, {{"-->", {{0, 2}}}}};
  EXPECT_EQ(build_code(out_of_range, dag_signature()),
            ErrorCode::kNodeOutOfRange);
  EdgeInput unknown{2, {{"<->", {{0, 1}}}}};
  EXPECT_EQ(build_code(unknown, dag_signature()), ErrorCode::kUnknownEdgeType);
  EdgeInput backward{2, {{"<--", {{0, 1}}}}};
  EXPECT_EQ(build_code(backward, dag_signature()),
            ErrorCode::kUnknownEdgeType);
}

TEST(Graph, RemoveDirectedEdges) {
  Graph g = make_admg(3, {{0, 1}, {0, 2}, {1, 2}}, {{0, 2}});
  std::vector<Edge> cut{{0, 1}};
  Graph h = remove_directed_edges(g, cut, "-->");
  EXPECT_EQ(h.edges("-->"), (std::vector<Edge>{{0, 2}, {1, 2}}));
  EXPECT_EQ(h.edges("<->"), (std::vector<Edge>{{0, 2}}));
  EXPECT_TRUE(h.neighbors(1, "<--").empty());
  EXPECT_EQ(g.edges("-->").size(), 3u);
}

TEST(Graph, WithSignatureWidens) {
  Graph dag = make_dag(3, {{0, 1}, {1, 2}});
  Graph g = with_signature(dag, admg_signature());
  EXPECT_EQ(g.signature(), admg_signature());
  EXPECT_EQ(g.edges("-->"), dag.edges("-->"));
  EXPECT_TRUE(g.neighbors(1, "<->").empty());
  Graph bad = make_cpdag(2, {}, {{0, 1}});
  EXPECT_THROW(with_signature(bad, admg_signature()), Error);
}

TEST(SetAssignment, MasksFollowDeclarationOrder) {
  RuleTable t = parse_rule_table(
      "EDGES --> <--\nSETS X, Z\nSTART ... AT X\nOUTPUT ...\n");
  SetAssignment s(t, 4, {{"Z", {1, 2}}, {"X", {2, 0, 0}}});
  EXPECT_EQ(s.members(0), (NodeSet{0, 2}));
  EXPECT_EQ(s.mask(0), 0b01u);
  EXPECT_EQ(s.mask(1), 0b10u);
  EXPECT_EQ(s.mask(2), 0b11u);
  EXPECT_EQ(s.mask(3), 0u);
}

TEST(SetAssignment, EverySymbolMustBeBound) {
  RuleTable t = parse_rule_table(
      "EDGES --> <--\nSETS X, Z\nSTART ... AT X\nOUTPUT ...\n");
  EXPECT_THROW(SetAssignment(t, 2, {{"X", {0}}}), Error);
  SetAssignment s(t, 2, {{"X", {0}}, {"Z", {}}});
  EXPECT_TRUE(s.members(1).empty());
}

TEST(SetAssignment, Errors) {
  RuleTable t = parse_rule_table(
      "EDGES --> <--\nSETS X\nSTART ... AT X\nOUTPUT ...\n");
  try {
    SetAssignment(t, 2, {{"Y", {0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSetMismatch);
  }
  try {
    SetAssignment(t, 2, {{"X", {2}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNodeOutOfRange);
  }
}

}  // namespace
}  // namespace cifly
