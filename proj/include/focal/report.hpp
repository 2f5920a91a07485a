#pragma once

// Table, JSON array and JSON-lines output of run records.

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "focal/errors.hpp"
#include "focal/experiments.hpp"

namespace focal {

enum class ReportFormat { Table, Json, JsonLines };

inline std::string bounds_summary(const RunRecord& r) {
  int pass = 0, fail = 0, skip = 0;
  for (auto& [_, v] : r.bound_verdicts) {
    if (v == "pass") ++pass;
    else if (v == "fail") ++fail;
    else ++skip;
  }
  std::ostringstream os;
  os << pass << "P/" << fail << "F/" << skip << "S";
  return os.str();
}

inline void write_table(std::ostream& os, const std::vector<RunRecord>& records) {
  const std::vector<std::pair<std::string, int>> cols = {
      {"experiment", 16}, {"m", 3},       {"prime", 20},  {"trial", 5}, {"N", 4},
      {"dim X", 5},       {"r", 4},       {"k", 4},       {"c", 4},     {"mu", 4},
      {"red.deg", 7},     {"rank q", 6},  {"contain", 8}, {"bounds", 9}};
  for (auto& [name, w] : cols) os << std::left << std::setw(w) << name << ' ';
  os << '\n';
  auto opt = [](const auto& v) { return v ? std::to_string(*v) : std::string("-"); };
  for (auto& r : records) {
    std::vector<std::string> cells = {r.experiment,
                                      opt(r.m),
                                      std::to_string(r.prime),
                                      std::to_string(r.trial_index),
                                      std::to_string(r.n),
                                      std::to_string(r.dim_x),
                                      std::to_string(r.r),
                                      std::to_string(r.k),
                                      opt(r.c),
                                      std::to_string(r.mu),
                                      std::to_string(r.reduced_degree),
                                      opt(r.quadric_rank),
                                      r.sing_containment,
                                      bounds_summary(r)};
    for (std::size_t i = 0; i < cols.size(); ++i) os << std::left << std::setw(cols[i].second) << cells[i] << ' ';
    os << '\n';
    if (r.error) os << "  error: " << *r.error << '\n';
  }
}

inline std::string records_to_json(const std::vector<RunRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& r : records) arr.push_back(r);
  return arr.dump(2);
}

inline std::vector<RunRecord> records_from_json(const std::string& text) {
  std::vector<RunRecord> out;
  for (auto& j : nlohmann::ordered_json::parse(text)) out.push_back(j.get<RunRecord>());
  return out;
}

inline void append_jsonl(const std::string& path, const std::vector<RunRecord>& records) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path + " for appending");
  for (auto& r : records) out << nlohmann::ordered_json(r).dump() << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write to " + path + " failed");
}

inline void emit_report(std::ostream& os, const std::vector<RunRecord>& records, ReportFormat format,
                        const std::string& jsonl_path = "") {
  switch (format) {
    case ReportFormat::Table: write_table(os, records); break;
    case ReportFormat::Json: os << records_to_json(records) << '\n'; break;
    case ReportFormat::JsonLines: append_jsonl(jsonl_path, records); break;
  }
}

}  // namespace focal
