#pragma once

// JSON and CSV rendering of verification reports. Needs nlohmann/json.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "indsets/verifier.hpp"

namespace indsets {

inline constexpr const char* kReportSchema = "indsets.report/1";

/// With include_runtime = false the output is a pure function of the spec,
/// so serial and sharded runs compare byte for byte.
inline nlohmann::ordered_json to_json(const VerificationReport& r, bool include_runtime = true) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["check"] = r.check;
  j["spec"] = {{"n", r.n}, {"delta", r.delta}};
  j["spec"]["t"] = r.t ? nlohmann::ordered_json(*r.t) : nlohmann::ordered_json("total");
  j["verdict"] = to_string(r.verdict);
  j["extremal_value"] = r.extremal_value;
  j["observed_max"] = r.observed_max;
  j["achievers"] = r.achievers;
  j["achiever_count"] = r.achiever_count;
  j["counterexamples"] = r.counterexamples;
  j["counterexample_count"] = r.counterexample_count;
  j["classes_scanned"] = r.classes_scanned;
  j["classes_considered"] = r.classes_considered;
  if (!r.stats.empty()) {
    nlohmann::ordered_json stats = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.stats) stats[k] = v;
    j["stats"] = stats;
  }
  if (r.equality) {
    const auto& e = *r.equality;
    j["equality"] = {{"predicted", e.predicted}, {"regime", e.regime}};
    if (e.predicted) {
      j["equality"]["match"] = e.match;
      j["equality"]["predicted_family"] = e.predicted_family;
      j["equality"]["missing"] = e.missing;
      j["equality"]["unexpected"] = e.unexpected;
    }
  }
  if (!r.note.empty()) j["note"] = r.note;
  if (include_runtime) j["runtime_seconds"] = r.runtime_seconds;
  return j;
}

inline std::string csv_header() {
  return "check,n,delta,t,verdict,extremal_value,observed_max,achiever_count,counterexample_count,"
         "classes_scanned,runtime_seconds";
}

inline std::string csv_row(const VerificationReport& r) {
  std::ostringstream out;
  out << r.check << ',' << r.n << ',' << r.delta << ',' << (r.t ? std::to_string(*r.t) : "total")
      << ',' << to_string(r.verdict) << ',' << r.extremal_value << ',' << r.observed_max << ','
      << r.achiever_count << ',' << r.counterexample_count << ',' << r.classes_scanned << ','
      << r.runtime_seconds;
  return out.str();
}

}  // namespace indsets
