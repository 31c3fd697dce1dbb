#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bench.hpp"
#include "cifly/catalog.hpp"
#include "cifly/causal.hpp"
#include "cifly/engine.hpp"
#include "cifly/error.hpp"
#include "cifly/io.hpp"
#include "cifly/reductions.hpp"
#include "cifly/ruletable.hpp"

namespace cifly::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct Options {
  bool pretty = false;
  std::string report;
  std::string graph;
  std::string sets;
  std::string table;
  std::string true_graph;
  std::string guess_graph;
  std::string x_matrix;
  std::string y_matrix;
  bool states = false;
  bool all = false;
  bool naive = false;
  bool via_projection = false;
  BenchOptions bench;
};

// Files read while running a command, with their digests.
struct Inputs {
  std::map<std::string, std::string> digests;

  std::string read(const std::string& path) {
    std::string text = io::read_file(path);
    std::ostringstream hex;
    hex << std::hex << fnv1a(text);
    digests[path] = hex.str();
    return text;
  }
};

std::string find_table_text(const std::string& spec, Inputs& inputs) {
  if (fs::is_regular_file(spec)) return inputs.read(spec);
  if (const char* root = std::getenv("CIFLY_TABLE_PATH")) {
    const fs::path base(root);
    std::vector<fs::path> candidates{base / spec, base / (spec + ".txt")};
    std::error_code ec;
    for (const auto& dir : fs::directory_iterator(base, ec)) {
      if (dir.is_directory()) candidates.push_back(dir.path() / (spec + ".txt"));
    }
    for (const fs::path& c : candidates)
      if (fs::is_regular_file(c)) return inputs.read(c.string());
  }
  for (const catalog::Entry& e : catalog::entries())
    if (e.name == spec) return std::string(e.text);
  throw Error(ErrorCode::kInvalidInput, "cannot find table '" + spec + "'");
}

json node_list(const NodeSet& s, const std::vector<std::string>& labels) {
  json out = json::array();
  for (NodeId v : s) {
    if (labels.empty()) {
      out.push_back(v);
    } else {
      out.push_back(labels[v]);
    }
  }
  return out;
}

const NodeSet& need_set(const std::map<std::string, NodeSet>& sets,
                        const std::string& name) {
  auto it = sets.find(name);
  if (it == sets.end()) {
    throw Error(ErrorCode::kSetMismatch, "sets file lacks '" + name + "'");
  }
  return it->second;
}

NodeSet optional_set(const std::map<std::string, NodeSet>& sets,
                     const std::string& name) {
  auto it = sets.find(name);
  return it == sets.end() ? NodeSet{} : it->second;
}

NodeId need_node(const std::map<std::string, NodeSet>& sets,
                 const std::string& name) {
  const NodeSet& s = need_set(sets, name);
  if (s.size() != 1) {
    throw Error(ErrorCode::kInvalidInput, "'" + name + "' must be one node");
  }
  return s.front();
}

json graph_json(const Graph& g, const std::vector<std::string>& labels) {
  return json::parse(io::write_graph(g, labels));
}

json iv_result(const IvResult& r, const std::vector<std::string>& labels) {
  return {{"Z", node_list(r.z, labels)},
          {"W", node_list(r.w, labels)},
          {"optimal", r.optimal}};
}

std::string kind_name(Diagnostic::Kind k) {
  switch (k) {
    case Diagnostic::Kind::kShadowedRule: return "shadowed-rule";
    case Diagnostic::Kind::kUnproducibleColor: return "unproducible-color";
    case Diagnostic::Kind::kUnreachableOutput: return "unreachable-output";
  }
  return "unknown";
}

struct Loaded {
  io::LabeledGraph g;
  std::map<std::string, NodeSet> sets;
};

Loaded load(const Options& o, Inputs& in, const EdgeSignature& sig,
            bool with_sets = true) {
  Loaded l{io::read_graph(in.read(o.graph), sig), {}};
  if (with_sets) l.sets = io::read_sets(in.read(o.sets), l.g.labels);
  return l;
}

}  // namespace

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Rule-table driven reachability and causal graph algorithms",
               "cifly"};
  app.require_subcommand(1);
  app.add_flag("--pretty", o.pretty, "Indent JSON output");
  app.add_option("--report", o.report, "Write a run report to FILE");

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "Graph JSON file")->required();
  };
  auto add_sets = [&](CLI::App* sub) {
    sub->add_option("--sets", o.sets, "Sets JSON file")->required();
  };

  std::function<json(Inputs&)> action;

  auto* reach_cmd = app.add_subcommand("reach", "Run a rule table");
  add_graph(reach_cmd);
  add_sets(reach_cmd);
  reach_cmd->add_option("--table", o.table, "Rule table file or name")
      ->required();
  reach_cmd->add_flag("--states", o.states, "Also print visited states");
  reach_cmd->callback([&] {
    action = [&](Inputs& in) {
      RuleTable table = parse_rule_table(find_table_text(o.table, in));
      Loaded l = load(o, in, table.signature);
      CompiledTable ct(table);
      SetAssignment sa(ct.table(), l.g.graph.num_nodes(), l.sets);
      json doc;
      doc["result"] = node_list(reach(l.g.graph, sa, ct), l.g.labels);
      if (o.states) {
        json states = json::array();
        for (const State& s : reach_states(l.g.graph, sa, ct)) {
          json color = table.has_colors() ? json(table.colors[s.color]) : json();
          json node = l.g.labels.empty() ? json(s.node) : json(l.g.labels[s.node]);
          states.push_back({node, table.signature.neighbor_types()[s.neighbor_type], color});
        }
        doc["states"] = std::move(states);
      }
      return doc;
    };
  });

  auto* dsep_cmd = app.add_subcommand("dsep", "Test d-separation of X and Y given Z");
  add_graph(dsep_cmd);
  add_sets(dsep_cmd);
  dsep_cmd->callback([&] {
    action = [&](Inputs& in) {
      Loaded l = load(o, in, admg_signature());
      bool r = test_dsep(l.g.graph, need_set(l.sets, "X"), need_set(l.sets, "Y"),
                         optional_set(l.sets, "Z"));
      return json{{"result", r}};
    };
  });

  auto* adjust_cmd = app.add_subcommand("adjust", "Check an adjustment set in a CPDAG");
  add_graph(adjust_cmd);
  add_sets(adjust_cmd);
  adjust_cmd->callback([&] {
    action = [&](Inputs& in) {
      Loaded l = load(o, in, cpdag_signature());
      bool r = adjustment_check_cpdag(l.g.graph, need_set(l.sets, "X"),
                                      need_set(l.sets, "Y"),
                                      optional_set(l.sets, "W"));
      return json{{"result", r}};
    };
  });

  auto* aid_cmd = app.add_subcommand("parent-aid", "Parent adjustment distance");
  aid_cmd->add_option("--true", o.true_graph, "True CPDAG file")->required();
  aid_cmd->add_option("--guess", o.guess_graph, "Guessed CPDAG file")->required();
  aid_cmd->add_option("--threads", o.bench.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  aid_cmd->callback([&] {
    action = [&](Inputs& in) {
      Graph t = io::read_graph(in.read(o.true_graph), cpdag_signature()).graph;
      Graph g = io::read_graph(in.read(o.guess_graph), cpdag_signature()).graph;
      return json{{"result", parent_aid(t, g, o.bench.threads)}};
    };
  });

  auto* verify_cmd = app.add_subcommand("iv-verify", "Outcomes for which (Z, W) is a valid instrument");
  add_graph(verify_cmd);
  add_sets(verify_cmd);
  verify_cmd->callback([&] {
    action = [&](Inputs& in) {
      Loaded l = load(o, in, admg_signature());
      NodeSet r = iv_verify_all(l.g.graph, need_node(l.sets, "x"),
                                need_set(l.sets, "Z"), optional_set(l.sets, "W"));
      return json{{"result", node_list(r, l.g.labels)}};
    };
  });

  auto* optimal_cmd = app.add_subcommand("iv-optimal", "Optimal conditional instrument");
  add_graph(optimal_cmd);
  add_sets(optimal_cmd);
  optimal_cmd->callback([&] {
    action = [&](Inputs& in) {
      Loaded l = load(o, in, admg_signature());
      auto r = iv_optimal(l.g.graph, need_node(l.sets, "x"), need_node(l.sets, "y"));
      return r ? iv_result(*r, l.g.labels) : json{{"result", nullptr}};
    };
  });

  auto* find_cmd = app.add_subcommand("iv-find", "Find conditional instruments");
  add_graph(find_cmd);
  add_sets(find_cmd);
  find_cmd->add_flag("--all", o.all, "Report every instrument z");
  find_cmd->callback([&] {
    action = [&](Inputs& in) {
      Loaded l = load(o, in, admg_signature());
      json list = json::array();
      for (const IvPair& pr : iv_find(l.g.graph, need_node(l.sets, "x"),
                                      need_node(l.sets, "y"), o.all)) {
        list.push_back({{"Z", node_list({pr.z}, l.g.labels)},
                        {"W", node_list(pr.w, l.g.labels)}});
      }
      return json{{"result", list}};
    };
  });

  auto* moral_cmd = app.add_subcommand("moralize", "Moral graph of a DAG");
  add_graph(moral_cmd);
  moral_cmd->callback([&] {
    action = [&](Inputs& in) {
      Loaded l = load(o, in, dag_signature(), false);
      return json{{"result", graph_json(moralize(l.g.graph), l.g.labels)}};
    };
  });

  auto* tc_cmd = app.add_subcommand("tc", "Transitive closure of a DAG");
  add_graph(tc_cmd);
  tc_cmd->add_flag("--via-projection", o.via_projection,
                   "Compute through a latent projection");
  tc_cmd->callback([&] {
    action = [&](Inputs& in) {
      Loaded l = load(o, in, dag_signature(), false);
      Graph r = o.via_projection ? tc_via_latent_projection(l.g.graph)
                                 : transitive_closure(l.g.graph);
      return json{{"result", graph_json(r, l.g.labels)}};
    };
  });

  auto* project_cmd = app.add_subcommand("project", "Latent projection over L");
  add_graph(project_cmd);
  add_sets(project_cmd);
  project_cmd->callback([&] {
    action = [&](Inputs& in) {
      Loaded l = load(o, in, dag_signature());
      Graph r = latent_projection(l.g.graph, need_set(l.sets, "L"));
      return json{{"result", graph_json(r, l.g.labels)}};
    };
  });

  auto* bmm_cmd = app.add_subcommand("bmm", "Boolean matrix product");
  bmm_cmd->add_option("--x", o.x_matrix, "Left matrix file")->required();
  bmm_cmd->add_option("--y", o.y_matrix, "Right matrix file")->required();
  bmm_cmd->add_flag("--naive", o.naive, "Use the cubic product");
  bmm_cmd->callback([&] {
    action = [&](Inputs& in) {
      BooleanMatrix x = io::read_matrix(in.read(o.x_matrix));
      BooleanMatrix y = io::read_matrix(in.read(o.y_matrix));
      BooleanMatrix z = o.naive ? bmm_naive(x, y) : bmm_via_moralize(x, y);
      return json{{"result", json::parse(io::write_matrix(z))}};
    };
  });

  auto* validate_cmd = app.add_subcommand("validate", "Lint a rule table");
  validate_cmd->add_option("--table", o.table, "Rule table file or name")->required();
  validate_cmd->callback([&] {
    action = [&](Inputs& in) {
      RuleTable table = parse_rule_table(find_table_text(o.table, in));
      json list = json::array();
      for (const Diagnostic& d : validate_rule_table(table)) {
        list.push_back({{"kind", kind_name(d.kind)},
                        {"index", d.index},
                        {"message", d.message}});
      }
      return json{{"result", list}};
    };
  });

  std::string formatted;
  auto* format_cmd = app.add_subcommand("format", "Print a rule table in canonical form");
  format_cmd->add_option("--table", o.table, "Rule table file or name")->required();
  format_cmd->callback([&] {
    action = [&](Inputs& in) {
      formatted = format_rule_table(parse_rule_table(find_table_text(o.table, in)));
      return json{{"result", formatted}};
    };
  });

  auto* bench_cmd = app.add_subcommand("bench", "Time an algorithm on random graphs");
  bench_cmd->add_option("--algo", o.bench.algo, "Algorithm name")->required();
  bench_cmd->add_option("--p", o.bench.p, "Number of nodes")->required();
  bench_cmd->add_option("--deg", o.bench.degree, "Expected degree")->required();
  bench_cmd->add_option("--reps", o.bench.reps, "Repetitions")
      ->required()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", o.bench.seed, "Random seed")->required();
  bench_cmd->add_option("--threads", o.bench.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  bench_cmd->callback([&] {
    action = [&](Inputs&) { return run_bench(o.bench); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  Inputs inputs;
  json result;
  const auto start = std::chrono::steady_clock::now();
  try {
    result = action(inputs);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const json::exception& e) {
    err << "error: InvalidInput: " << e.what() << '\n';
    return kInputError;
  }
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();

  if (format_cmd->parsed()) {
    out << formatted;
  } else {
    out << (o.pretty ? result.dump(2) : result.dump()) << '\n';
  }

  if (!o.report.empty()) {
    json report{{"command", args},
                {"inputs", inputs.digests},
                {"result", result},
                {"wall_us", micros}};
    std::ofstream file(o.report);
    if (!file) {
      err << "error: cannot write report '" << o.report << "'\n";
      return kInputError;
    }
    file << report.dump(2) << '\n';
  }
  return kOk;
}

}  // namespace cifly::cli
