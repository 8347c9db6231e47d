#pragma once

// Config-driven batches of verifier checks with expected verdicts.
//
// {
//   "jobs": 2,
//   "checks": [
//     {"check": "size_t", "n": {"from": 5, "to": 9}, "delta": 2,
//      "t": {"from": 3, "to": "n-2"}, "expect": "holds"},
//     {"check": "size_t", "n": 6, "delta": 2, "t": 2, "expect": "violated"}
//   ]
// }
//
// Grid values are an integer, a list of integers, or {"from", "to"}; bounds
// may be expressions over previously fixed parameters such as "n-2" or
// "2*delta+1". expect is holds, violated or explore; an explore entry never
// fails, and a violation there is reported as a finding.

#include <cctype>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "indsets/report_io.hpp"
#include "indsets/verifier.hpp"

namespace indsets {

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Outcome { Met, Failed, Finding, Budget, Error };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Met: return "met";
    case Outcome::Failed: return "failed";
    case Outcome::Finding: return "finding";
    case Outcome::Budget: return "budget_exceeded";
    case Outcome::Error: return "error";
  }
  return "error";
}

struct SuiteEntry {
  std::string check;
  std::map<std::string, int> params;
  std::string expect;
  Outcome outcome = Outcome::Met;
  std::optional<VerificationReport> report;
  std::string message;
};

struct SuiteResult {
  std::vector<SuiteEntry> entries;

  int exit_code() const {
    bool budget = false;
    for (const auto& e : entries) {
      if (e.outcome == Outcome::Failed || e.outcome == Outcome::Error) return 1;
      if (e.outcome == Outcome::Budget) budget = true;
    }
    return budget ? 3 : 0;
  }
};

namespace detail {

/// Sum of terms like 3, n, 2*delta, joined by + and -.
inline int eval_bound(const std::string& text, const std::map<std::string, int>& env) {
  int total = 0;
  int sign = 1;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  bool expect_term = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    const char c = text[i];
    if (!expect_term) {
      if (c != '+' && c != '-') throw ConfigError("bad expression '" + text + "'");
      sign = c == '+' ? 1 : -1;
      ++i;
      expect_term = true;
      continue;
    }
    int factor = 1;
    bool have_number = false;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t used = 0;
      factor = std::stoi(text.substr(i), &used);
      i += used;
      have_number = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
        have_number = false;
      }
    }
    if (!have_number) {
      std::size_t j = i;
      while (j < text.size() && (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      const auto name = text.substr(i, j - i);
      const auto it = env.find(name);
      if (name.empty() || it == env.end()) throw ConfigError("unknown name in '" + text + "'");
      factor *= it->second;
      i = j;
    }
    total += sign * factor;
    expect_term = false;
  }
  if (expect_term) throw ConfigError("incomplete expression '" + text + "'");
  return total;
}

inline int bound_value(const nlohmann::json& v, const std::map<std::string, int>& env) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) return eval_bound(v.get<std::string>(), env);
  throw ConfigError("range bound must be an integer or expression");
}

inline std::vector<int> grid_values(const nlohmann::json& v, const std::map<std::string, int>& env) {
  if (v.is_number_integer()) return {v.get<int>()};
  if (v.is_string()) return {eval_bound(v.get<std::string>(), env)};
  if (v.is_array()) {
    std::vector<int> out;
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw ConfigError("grid lists must hold integers");
      out.push_back(x.get<int>());
    }
    return out;
  }
  if (v.is_object()) {
    if (!v.contains("from") || !v.contains("to")) throw ConfigError("range needs from and to");
    std::vector<int> out;
    const int lo = bound_value(v["from"], env);
    const int hi = bound_value(v["to"], env);
    for (int x = lo; x <= hi; ++x) out.push_back(x);
    return out;
  }
  throw ConfigError("unsupported grid value");
}

struct CheckKind {
  std::vector<std::string> params;
  std::function<VerificationReport(const std::map<std::string, int>&, const ScanOptions&)> run;
};

inline const std::map<std::string, CheckKind>& check_kinds() {
  static const std::map<std::string, CheckKind> kinds{
      {"size_t", {{"n", "delta", "t"}, [](const auto& p, const auto& o) {
         return check_size_t(p.at("n"), p.at("delta"), p.at("t"), o);
       }}},
      {"equality_class", {{"n", "delta", "t"}, [](const auto& p, const auto& o) {
         return check_equality_class(p.at("n"), p.at("delta"), p.at("t"), o);
       }}},
      {"vertex_critical_strict", {{"n", "delta", "t"}, [](const auto& p, const auto& o) {
         return check_vertex_critical_strict(p.at("n"), p.at("delta"), p.at("t"), o);
       }}},
      {"no_high_degree_equality", {{"n"}, [](const auto& p, const auto& o) {
         return check_no_high_degree_equality(p.at("n"), o);
       }}},
      {"total_count", {{"n", "delta"}, [](const auto& p, const auto& o) {
         return check_total_count(p.at("n"), p.at("delta"), o);
       }}},
      {"monotone_step", {{"n", "delta"}, [](const auto& p, const auto& o) {
         return check_monotone_step(p.at("n"), p.at("delta"), o);
       }}},
      {"deletion_identity", {{"n", "delta"}, [](const auto& p, const auto& o) {
         return check_deletion_identity(p.at("n"), p.at("delta"), o);
       }}},
      {"rewiring", {{"n"}, [](const auto& p, const auto& o) { return check_rewiring(p.at("n"), o); }}},
      {"decomposition", {{"n"}, [](const auto& p, const auto& o) {
         return check_decomposition(p.at("n"), o);
       }}},
  };
  return kinds;
}

inline void expand(const nlohmann::json& item, const std::vector<std::string>& names, std::size_t at,
                   std::map<std::string, int>& env, std::vector<std::map<std::string, int>>& out) {
  if (at == names.size()) {
    out.push_back(env);
    return;
  }
  const auto& name = names[at];
  if (!item.contains(name)) {
    if (name == "delta" && item.value("check", "") == "deletion_identity") {
      env[name] = 0;
      expand(item, names, at + 1, env, out);
      env.erase(name);
      return;
    }
    throw ConfigError("check '" + item.value("check", "") + "' needs parameter '" + name + "'");
  }
  for (int v : grid_values(item[name], env)) {
    env[name] = v;
    expand(item, names, at + 1, env, out);
  }
  env.erase(name);
}

}  // namespace detail

/// Expected outcome per entry decides success; equality_class entries with
/// a prediction also require the achiever set to match it.
inline SuiteResult run_suite(const nlohmann::json& config, int jobs_override = 0) {
  SuiteResult result;
  if (config.is_null()) return result;
  if (!config.is_object()) throw ConfigError("suite config must be a JSON object");
  const int jobs = jobs_override > 0 ? jobs_override : config.value("jobs", 1);
  if (!config.contains("checks")) return result;
  if (!config["checks"].is_array()) throw ConfigError("'checks' must be a list");

  for (const auto& item : config["checks"]) {
    if (!item.is_object() || !item.contains("check")) throw ConfigError("each check needs a 'check' name");
    const auto name = item["check"].get<std::string>();
    const auto& kinds = detail::check_kinds();
    const auto kind = kinds.find(name);
    if (kind == kinds.end()) throw ConfigError("unknown check '" + name + "'");
    const auto expect = item.value("expect", std::string("holds"));
    if (expect != "holds" && expect != "violated" && expect != "explore") {
      throw ConfigError("expect must be holds, violated or explore");
    }

    ScanOptions opt;
    opt.jobs = jobs;
    if (item.contains("max_classes")) opt.budget.max_classes = item["max_classes"].get<std::uint64_t>();
    if (item.contains("timeout_seconds")) opt.budget.timeout_seconds = item["timeout_seconds"].get<double>();
    opt.budget.allow_n10 = item.value("allow_n10", false);

    std::vector<std::map<std::string, int>> points;
    std::map<std::string, int> env;
    detail::expand(item, kind->second.params, 0, env, points);

    for (const auto& p : points) {
      SuiteEntry e;
      e.check = name;
      e.params = p;
      e.expect = expect;
      try {
        e.report = kind->second.run(p, opt);
        const auto& r = *e.report;
        bool met = expect == "explore" || (expect == "holds") == r.holds();
        if (r.equality && r.equality->predicted && !r.equality->match && expect != "explore") met = false;
        if (auto bad = recheck_achievers(r)) {
          met = false;
          e.message = *bad;
        }
        if (!met) {
          e.outcome = Outcome::Failed;
        } else if (expect == "explore" && !r.holds()) {
          e.outcome = Outcome::Finding;
        }
      } catch (const BudgetExceeded& ex) {
        e.outcome = Outcome::Budget;
        e.message = ex.what();
      } catch (const std::invalid_argument& ex) {
        e.outcome = Outcome::Error;
        e.message = ex.what();
      }
      result.entries.push_back(std::move(e));
    }
  }
  return result;
}

inline nlohmann::ordered_json to_json(const SuiteResult& s, bool include_runtime = true) {
  nlohmann::ordered_json j;
  j["schema"] = "indsets.suite/1";
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  std::map<std::string, int> tally;
  for (const auto& e : s.entries) {
    nlohmann::ordered_json x;
    x["check"] = e.check;
    x["params"] = e.params;
    x["expect"] = e.expect;
    x["outcome"] = to_string(e.outcome);
    if (!e.message.empty()) x["message"] = e.message;
    if (e.report) x["report"] = to_json(*e.report, include_runtime);
    entries.push_back(std::move(x));
    ++tally[to_string(e.outcome)];
  }
  j["entries"] = std::move(entries);
  j["summary"] = tally;
  j["exit_code"] = s.exit_code();
  return j;
}

}  // namespace indsets
