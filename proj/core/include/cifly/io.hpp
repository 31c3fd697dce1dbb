#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cifly/graph.hpp"
#include "cifly/reductions.hpp"
#include "cifly/ruletable.hpp"

namespace cifly::io {

struct LabeledGraph {
  Graph graph;
  // Empty unless the document carries a "nodes" array.
  std::vector<std::string> labels;
};

// {"p": n, "edges": {"-->": [[u, v], ...], ...}, "nodes": [...]}
LabeledGraph read_graph(std::string_view json, const EdgeSignature& signature);
std::string write_graph(const Graph& g,
                        const std::vector<std::string>& labels = {});

// {"X": [0, 3], "Z": 4}; entries may be node names when labels are given.
std::map<std::string, NodeSet> read_sets(
    std::string_view json, const std::vector<std::string>& labels = {});

// {"rows": r, "cols": c, "data": [[0, 1, ...], ...]}
BooleanMatrix read_matrix(std::string_view json);
std::string write_matrix(const BooleanMatrix& m);

std::string read_file(const std::string& path);

}  // namespace cifly::io
