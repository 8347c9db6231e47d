#pragma once

// indsets command line. run() is separate from main so tests can drive it
// in-process with string streams.
//
// Exit codes: 0 ok or expectation met, 1 verification failure, 2 usage or
// input error, 3 budget exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "indsets/canonical.hpp"
#include "indsets/constructions.hpp"
#include "indsets/counting.hpp"
#include "indsets/criticality.hpp"
#include "indsets/enumeration.hpp"
#include "indsets/graph6.hpp"
#include "indsets/report_io.hpp"
#include "indsets/suite.hpp"
#include "indsets/verifier.hpp"

namespace indsets::cli {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

/// n=7 becomes --n 7, so both spellings work everywhere.
inline std::vector<std::string> translate_key_values(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    const auto eq = a.find('=');
    const bool plain_key = eq != std::string::npos && eq > 0 && a[0] != '-' &&
                           a.find_first_not_of("abcdefghijklmnopqrstuvwxyz_-0123456789") >= eq;
    if (plain_key) {
      std::string key = a.substr(0, eq);
      for (auto& c : key)
        if (c == '_') c = '-';
      out.push_back("--" + key);
      out.push_back(a.substr(eq + 1));
    } else {
      out.push_back(a);
    }
  }
  return out;
}

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Decoded graph6 lines; blank lines are skipped, errors carry the line.
inline std::vector<std::pair<int, Graph>> read_graphs(std::istream& in) {
  std::vector<std::pair<int, Graph>> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.emplace_back(number, graph6::decode(line));
    } catch (const std::exception& e) {
      throw InputError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

/// "0-1,0-2" as edges.
inline std::vector<Edge> parse_edge_list(const std::string& text) {
  std::vector<Edge> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("edge '" + item + "' needs the form u-v");
    out.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
  }
  return out;
}

struct Options {
  std::string input = "-";
  std::string output = "-";

  // count
  std::optional<int> t;
  bool all = false;
  std::string format = "text";

  // construct
  std::string family;
  std::optional<int> n, a, b, k, delta;
  std::string parts, inside, of;

  // critical
  bool decompose = false;
  bool patterns = false;

  // enumerate
  bool exact = false, connected = false, critical = false, vertex_critical = false;
  std::optional<int> max_edges;
  int shard_index = 0;
  int shard_count = 1;
  bool count_only = false;

  // budgets, verify, suite
  std::optional<std::uint64_t> max_classes;
  std::optional<double> timeout_seconds;
  bool allow_n10 = false;
  std::string check;
  std::string expect = "holds";
  int jobs = 1;
  std::string config;
  std::string csv;
  bool no_runtime = false;
};

class Runner {
public:
  Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  int run(const std::vector<std::string>& raw) {
    CLI::App app{"Independent-set counting and extremal verification for graphs of given minimum degree",
                 "indsets"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto* count = app.add_subcommand("count", "count independent sets of graph6 lines");
    count->add_option("--t", o_.t, "set size");
    count->add_flag("--all", o_.all, "full count vector and total (default)");
    count->add_option("--format", o_.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    add_io(count);

    auto* construct = app.add_subcommand("construct", "emit a named graph as graph6");
    construct->add_option("--family", o_.family, "family name")
        ->required()
        ->check(CLI::IsMember({"complete_bipartite", "extremal_plus", "k_prime", "windmill", "path", "cycle",
                               "empty", "complete", "multipartite", "conjecture_multipartite",
                               "disjoint_union"}));
    construct->add_option("--n", o_.n);
    construct->add_option("--a", o_.a);
    construct->add_option("--b", o_.b);
    construct->add_option("--k", o_.k);
    construct->add_option("--delta", o_.delta);
    construct->add_option("--parts", o_.parts, "comma-separated part sizes");
    construct->add_option("--inside", o_.inside, "inside edges as 0-1,0-2");
    construct->add_option("--of", o_.of, "comma-separated graph6 operands");
    construct->add_option("--output", o_.output);

    auto* critical = app.add_subcommand("critical", "criticality report per graph6 line");
    critical->add_option("--delta", o_.delta)->required();
    critical->add_flag("--decompose", o_.decompose, "add the delta=2 path split");
    critical->add_flag("--patterns", o_.patterns, "add the delta=3 triangle-pair patterns");
    add_io(critical);

    auto* enumerate_cmd = app.add_subcommand("enumerate", "one graph6 line per isomorphism class");
    enumerate_cmd->add_option("--n", o_.n)->required();
    enumerate_cmd->add_option("--delta", o_.delta);
    enumerate_cmd->add_flag("--exact", o_.exact, "minimum degree exactly delta");
    enumerate_cmd->add_flag("--connected", o_.connected);
    enumerate_cmd->add_flag("--critical", o_.critical);
    enumerate_cmd->add_flag("--vertex-critical", o_.vertex_critical);
    enumerate_cmd->add_option("--max-edges", o_.max_edges);
    enumerate_cmd->add_option("--shard-index", o_.shard_index);
    enumerate_cmd->add_option("--shard-count", o_.shard_count);
    enumerate_cmd->add_flag("--count", o_.count_only, "print only the class count");
    add_budget(enumerate_cmd);
    enumerate_cmd->add_option("--output", o_.output);

    auto* verify = app.add_subcommand("verify", "run one verifier check, JSON report");
    verify->add_option("--check", o_.check)->required()->check(CLI::IsMember(check_names()));
    verify->add_option("--n", o_.n)->required();
    verify->add_option("--delta", o_.delta);
    verify->add_option("--t", o_.t);
    verify->add_option("--expect", o_.expect)->check(CLI::IsMember({"holds", "violated", "explore"}));
    verify->add_option("--jobs", o_.jobs)->check(CLI::PositiveNumber);
    verify->add_option("--format", o_.format, "json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    verify->add_flag("--no-runtime", o_.no_runtime, "omit timings for byte-stable output");
    add_budget(verify);
    verify->add_option("--output", o_.output);

    auto* suite = app.add_subcommand("suite", "run a JSON config of checks");
    suite->add_option("--config", o_.config, "config path, - for stdin")->required();
    suite->add_option("--jobs", o_.jobs)->check(CLI::PositiveNumber);
    suite->add_option("--csv", o_.csv, "also write a CSV summary here");
    suite->add_flag("--no-runtime", o_.no_runtime);
    suite->add_option("--output", o_.output);

    std::vector<std::string> args = translate_key_values(raw);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "indsets: " << e.what() << "\n";
      return kUsage;
    }

    try {
      if (count->parsed()) return cmd_count();
      if (construct->parsed()) return cmd_construct();
      if (critical->parsed()) return cmd_critical();
      if (enumerate_cmd->parsed()) return cmd_enumerate();
      if (verify->parsed()) return cmd_verify();
      if (suite->parsed()) return cmd_suite();
    } catch (const BudgetExceeded& e) {
      err_ << "indsets: budget exceeded: " << e.what() << "\n";
      return kBudget;
    } catch (const OverflowError& e) {
      err_ << "indsets: overflow: " << e.what() << "\n";
      return kUsage;
    } catch (const std::exception& e) {
      err_ << "indsets: " << e.what() << "\n";
      return kUsage;
    }
    return kUsage;
  }

private:
  static std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& [name, kind] : detail::check_kinds()) names.push_back(name);
    return names;
  }

  void add_io(CLI::App* cmd) {
    cmd->add_option("--input", o_.input, "graph6 file, - for stdin");
    cmd->add_option("--output", o_.output);
  }

  void add_budget(CLI::App* cmd) {
    cmd->add_option("--max-classes", o_.max_classes);
    cmd->add_option("--timeout-seconds", o_.timeout_seconds);
    cmd->add_flag("--allow-n10", o_.allow_n10);
  }

  Budget budget() const {
    Budget b;
    b.max_classes = o_.max_classes;
    b.timeout_seconds = o_.timeout_seconds;
    b.allow_n10 = o_.allow_n10;
    return b;
  }

  // Output goes through a buffer and is flushed once the command succeeds.
  template <typename F>
  int with_input(F&& f) {
    if (o_.input == "-") return f(in_);
    std::ifstream file(o_.input);
    if (!file) throw InputError("cannot open " + o_.input);
    return f(file);
  }

  int emit(const std::string& text) {
    if (o_.output == "-") {
      out_ << text;
      out_.flush();
      return kOk;
    }
    std::ofstream file(o_.output);
    if (!file) throw InputError("cannot write " + o_.output);
    file << text;
    return kOk;
  }

  int need(const std::optional<int>& v, const char* name) const {
    if (!v) throw std::invalid_argument(std::string("family '") + o_.family + "' needs --" + name);
    return *v;
  }

  int cmd_count() {
    return with_input([&](std::istream& in) {
      std::ostringstream buf;
      for (const auto& [line, g] : read_graphs(in)) {
        if (o_.t && !o_.all) {
          if (*o_.t < 0) throw std::invalid_argument("t must be >= 0");
          const Count c = count_independent_sets_of_size(g, *o_.t);
          if (o_.format == "json") {
            buf << nlohmann::ordered_json{{"line", line}, {"graph6", graph6::encode(g)}, {"t", *o_.t}, {"count", c}}.dump()
                << "\n";
          } else {
            buf << c << "\n";
          }
          continue;
        }
        const auto vec = independence_vector(g);
        if (o_.format == "json") {
          nlohmann::ordered_json j{{"line", line}, {"graph6", graph6::encode(g)}};
          j["counts"] = std::vector<Count>(vec.counts().begin(), vec.counts().end());
          j["total"] = vec.total();
          buf << j.dump() << "\n";
        } else {
          for (std::size_t i = 0; i < vec.size(); ++i) buf << (i ? "," : "") << vec.counts()[i];
          buf << " total=" << vec.total() << "\n";
        }
      }
      return emit(buf.str());
    });
  }

  int cmd_construct() {
    const auto& f = o_.family;
    Graph g(1);
    if (f == "complete_bipartite") {
      g = complete_bipartite(need(o_.a, "a"), need(o_.b, "b"));
    } else if (f == "extremal_plus") {
      const auto edges = parse_edge_list(o_.inside);
      g = extremal_plus_inside_edges(need(o_.delta, "delta"), need(o_.n, "n"), edges);
    } else if (f == "k_prime") {
      g = k_prime_2(need(o_.n, "n"));
    } else if (f == "windmill") {
      g = windmill(need(o_.n, "n"));
    } else if (f == "path") {
      g = path(o_.k ? *o_.k : need(o_.n, "k"));
    } else if (f == "cycle") {
      g = cycle(o_.k ? *o_.k : need(o_.n, "k"));
    } else if (f == "empty") {
      const int k = o_.k ? *o_.k : need(o_.n, "k");
      if (k < 1) throw std::invalid_argument("graph6 output needs at least one vertex");
      g = empty_graph(k);
    } else if (f == "complete") {
      g = complete_graph(o_.k ? *o_.k : need(o_.n, "k"));
    } else if (f == "multipartite") {
      g = complete_multipartite({parse_int_list(o_.parts)});
    } else if (f == "conjecture_multipartite") {
      g = conjecture_multipartite(need(o_.n, "n"), need(o_.delta, "delta"));
    } else if (f == "disjoint_union") {
      std::stringstream ss(o_.of);
      std::string item;
      std::optional<Graph> acc;
      while (std::getline(ss, item, ',')) {
        const Graph h = graph6::decode(item);
        acc = acc ? disjoint_union(*acc, h) : h;
      }
      if (!acc) throw std::invalid_argument("disjoint_union needs --of g6,g6,...");
      g = *acc;
    }
    return emit(graph6::encode(g) + "\n");
  }

  int cmd_critical() {
    const int delta = *o_.delta;
    return with_input([&](std::istream& in) {
      std::ostringstream buf;
      for (const auto& [line, g] : read_graphs(in)) {
        if (g.min_degree() != delta) {
          throw InputError("line " + std::to_string(line) + ": minimum degree is " +
                           std::to_string(g.min_degree()) + ", not " + std::to_string(delta));
        }
        const auto r = criticality(g, delta);
        nlohmann::ordered_json j;
        j["schema"] = "indsets.critical/1";
        j["line"] = line;
        j["graph6"] = graph6::encode(g);
        j["delta"] = delta;
        j["edge_critical"] = r.edge_critical;
        j["vertex_critical"] = r.vertex_critical;
        j["edge_witness"] = r.edge_witness ? nlohmann::ordered_json::array({r.edge_witness->first, r.edge_witness->second})
                                           : nlohmann::ordered_json();
        j["vertex_witness"] = r.vertex_witness ? nlohmann::ordered_json(*r.vertex_witness) : nlohmann::ordered_json();
        const auto part = degree_partition(g, delta);
        j["low_count"] = part.low_count();
        j["high_count"] = part.high_count();
        if (o_.decompose) j["decomposition"] = decomposition_json(g, delta);
        if (o_.patterns) j["patterns"] = patterns_json(g, delta);
        buf << j.dump() << "\n";
      }
      return emit(buf.str());
    });
  }

  static nlohmann::ordered_json decomposition_json(const Graph& g, int delta) {
    nlohmann::ordered_json d;
    if (delta != 2) {
      d["error"] = "decomposition needs delta = 2";
      return d;
    }
    try {
      const auto dec = decompose_critical_2(g);
      if (dec.kind == DecompositionKind::Cycle) {
        d["kind"] = "Cycle";
      } else {
        d["kind"] = "PathSplit";
        d["y1"] = dec.y1;
        d["y2"] = mask_to_vertices(dec.y2);
        d["v1"] = dec.v1;
        d["v2"] = dec.v2;
      }
    } catch (const PreconditionError& e) {
      d["error"] = e.what();
    }
    return d;
  }

  static nlohmann::ordered_json patterns_json(const Graph& g, int delta) {
    if (delta != 3) return nlohmann::ordered_json{{"error", "patterns need delta = 3"}};
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& p : find_triangle_pair_patterns(g)) {
      list.push_back({{"w1", p.w1}, {"v", p.v}, {"x", p.x}, {"w2", p.w2}, {"w3", p.w3}, {"y2", p.y2}, {"y3", p.y3}});
    }
    return list;
  }

  int cmd_enumerate() {
    EnumSpec spec;
    spec.n = *o_.n;
    spec.min_degree = o_.delta.value_or(0);
    spec.exact_min_degree = o_.exact;
    spec.connected_only = o_.connected;
    spec.critical_only = o_.critical;
    spec.vertex_critical_only = o_.vertex_critical;
    spec.max_edges = o_.max_edges;
    const Enumerator en(spec, budget());
    const Shard shard{o_.shard_index, o_.shard_count};
    if (o_.count_only) return emit(std::to_string(en.count(shard)) + "\n");
    std::ostringstream buf;
    for (const auto& g : en.enumerate(shard)) buf << graph6::encode(g) << "\n";
    return emit(buf.str());
  }

  int cmd_verify() {
    std::map<std::string, int> p{{"n", *o_.n}};
    if (o_.delta) p["delta"] = *o_.delta;
    if (o_.t) p["t"] = *o_.t;
    nlohmann::json entry(p);
    entry["check"] = o_.check;
    entry["expect"] = o_.expect;
    if (o_.max_classes) entry["max_classes"] = *o_.max_classes;
    if (o_.timeout_seconds) entry["timeout_seconds"] = *o_.timeout_seconds;
    entry["allow_n10"] = o_.allow_n10;
    nlohmann::json config{{"jobs", o_.jobs}, {"checks", nlohmann::json::array({entry})}};
    const auto result = run_suite(config);
    const auto& e = result.entries.at(0);
    if (e.outcome == Outcome::Error) throw std::invalid_argument(e.message);
    if (e.outcome == Outcome::Budget) throw BudgetExceeded(e.message);
    if (o_.format == "csv") {
      emit(csv_header() + "\n" + csv_row(*e.report) + "\n");
    } else {
      auto j = to_json(*e.report, !o_.no_runtime);
      j["expect"] = e.expect;
      j["outcome"] = to_string(e.outcome);
      if (!e.message.empty()) j["message"] = e.message;
      emit(j.dump(2) + "\n");
    }
    return result.exit_code();
  }

  int cmd_suite() {
    nlohmann::json config;
    try {
      if (o_.config == "-") {
        config = nlohmann::json::parse(in_);
      } else {
        std::ifstream file(o_.config);
        if (!file) throw InputError("cannot open " + o_.config);
        config = nlohmann::json::parse(file);
      }
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    const auto result = run_suite(config, o_.jobs > 1 ? o_.jobs : 0);
    if (!o_.csv.empty()) {
      std::ofstream csv(o_.csv);
      if (!csv) throw InputError("cannot write " + o_.csv);
      csv << csv_header() << ",outcome\n";
      for (const auto& e : result.entries)
        if (e.report) csv << csv_row(*e.report) << ',' << to_string(e.outcome) << "\n";
    }
    emit(to_json(result, !o_.no_runtime).dump(2) + "\n");
    for (const auto& e : result.entries) {
      if (e.outcome == Outcome::Finding) {
        err_ << "indsets: FINDING: " << e.check << " violated where only explored";
        for (const auto& [k, v] : e.params) err_ << ' ' << k << '=' << v;
        err_ << "\n";
      }
    }
    return result.exit_code();
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  Options o_;
};

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  return Runner(in, out, err).run(args);
}

}  // namespace indsets::cli
