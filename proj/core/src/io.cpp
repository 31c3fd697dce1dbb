#include "cifly/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cifly/error.hpp"

namespace cifly::io {

namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidInput,
                std::string("malformed JSON: ") + e.what());
  }
}

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorCode::kInvalidInput, msg);
}

NodeId node_of(const json& v, const std::vector<std::string>& labels) {
  if (v.is_number_integer()) {
    auto i = v.get<long long>();
    if (i < 0) {
      throw Error(ErrorCode::kNodeOutOfRange,
                  "negative node index " + std::to_string(i));
    }
    return static_cast<NodeId>(i);
  }
  if (v.is_string()) {
    const auto& name = v.get_ref<const std::string&>();
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == name) return static_cast<NodeId>(i);
    throw Error(ErrorCode::kNodeOutOfRange, "unknown node name '" + name + "'");
  }
  invalid("node must be an integer index or a node name");
}

}  // namespace

LabeledGraph read_graph(std::string_view text, const EdgeSignature& signature) {
  json doc = parse(text);
  if (!doc.is_object() || !doc.contains("p") ||
      !doc["p"].is_number_integer() || doc["p"].get<long long>() < 0) {
    invalid("graph JSON needs a nonnegative integer field \"p\"");
  }
  EdgeInput in;
  in.p = doc["p"].get<std::size_t>();
  LabeledGraph out;
  if (doc.contains("nodes")) {
    const json& nodes = doc["nodes"];
    if (!nodes.is_array() || nodes.size() != in.p) {
      invalid("\"nodes\" must be an array of length p");
    }
    for (const json& n : nodes) {
      if (!n.is_string()) invalid("node names must be strings");
      out.labels.push_back(n.get<std::string>());
    }
  }
  if (doc.contains("edges")) {
    const json& edges = doc["edges"];
    if (!edges.is_object()) invalid("\"edges\" must be an object");
    for (const auto& [key, list] : edges.items()) {
      if (!list.is_array()) invalid("edge list for '" + key + "' must be an array");
      auto& pairs = in.edges[key];
      for (const json& pr : list) {
        if (!pr.is_array() || pr.size() != 2) {
          invalid("edges must be [u, v] pairs");
        }
        pairs.emplace_back(node_of(pr[0], out.labels),
                           node_of(pr[1], out.labels));
      }
    }
  }
  out.graph = build_graph(std::move(in), signature);
  return out;
}

std::string write_graph(const Graph& g, const std::vector<std::string>& labels) {
  json doc;
  doc["p"] = g.num_nodes();
  json edges = json::object();
  for (const auto& [key, pairs] : g.input().edges) {
    json list = json::array();
    for (const Edge& e : pairs) list.push_back({e.first, e.second});
    edges[key] = std::move(list);
  }
  doc["edges"] = std::move(edges);
  if (!labels.empty()) doc["nodes"] = labels;
  return doc.dump();
}

std::map<std::string, NodeSet> read_sets(std::string_view text,
                                         const std::vector<std::string>& labels) {
  json doc = parse(text);
  if (!doc.is_object()) invalid("sets JSON must be an object");
  std::map<std::string, NodeSet> out;
  for (const auto& [name, value] : doc.items()) {
    std::vector<NodeId> nodes;
    if (value.is_array()) {
      for (const json& v : value) nodes.push_back(node_of(v, labels));
    } else {
      nodes.push_back(node_of(value, labels));
    }
    out[name] = make_node_set(std::move(nodes));
  }
  return out;
}

BooleanMatrix read_matrix(std::string_view text) {
  json doc = parse(text);
  if (!doc.is_object() || !doc.contains("data") || !doc["data"].is_array()) {
    invalid("matrix JSON needs a \"data\" array");
  }
  std::vector<std::vector<int>> rows;
  for (const json& row : doc["data"]) {
    if (!row.is_array()) invalid("matrix rows must be arrays");
    std::vector<int> r;
    for (const json& v : row) {
      if (!v.is_number_integer() && !v.is_boolean()) {
        invalid("matrix entries must be 0/1");
      }
      r.push_back(v.is_boolean() ? v.get<bool>() : v.get<int>() != 0);
    }
    rows.push_back(std::move(r));
  }
  BooleanMatrix m = BooleanMatrix::from_rows(rows);
  std::size_t want_rows = doc.value("rows", m.rows());
  std::size_t want_cols = doc.value("cols", m.cols());
  if (rows.empty()) m = BooleanMatrix(want_rows, want_cols);
  if (m.rows() != want_rows || m.cols() != want_cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "declared shape does not match \"data\"");
  }
  return m;
}

std::string write_matrix(const BooleanMatrix& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.get(i, j) ? 1 : 0);
    data.push_back(std::move(row));
  }
  json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  doc["data"] = std::move(data);
  return doc.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) invalid("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cifly::io
