#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatrange/kippenhahn.hpp"
#include "flatrange/numrange.hpp"
#include "json.hpp"

namespace flatrange::cli {

struct ReportFlat {
  double theta = 0.0;
  double d = 0.0;
  Complex z1;
  Complex z2;
  double length = 0.0;
  friend bool operator==(const ReportFlat&, const ReportFlat&) = default;
};

struct ReportExceptional {
  double theta = 0.0;
  double min_eigenvalue = 0.0;
  double gap = 0.0;
  int multiplicity = 0;
  friend bool operator==(const ReportExceptional&, const ReportExceptional&) = default;
};

struct ReportCoefficients {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0, c6 = 0.0;
  friend bool operator==(const ReportCoefficients&, const ReportCoefficients&) = default;
};

struct ReportSingular {
  double u = 0.0;
  double v = 0.0;
  double residual = 0.0;
  friend bool operator==(const ReportSingular&, const ReportSingular&) = default;
};

struct AnalysisReport {
  std::string input_hash;
  int dimension = 0;
  bool degenerate = false;
  std::vector<ReportFlat> flat_portions;
  std::vector<ReportExceptional> exceptional_angles;
  std::optional<ReportCoefficients> kippenhahn;
  std::vector<ReportSingular> singular_points;
  std::vector<std::string> classification;
  Tolerances tolerances;
  std::string tool_version;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const AnalysisReport& x, const AnalysisReport& y);
};

nlohmann::json to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::json& doc);

/// Stable text form: key-sorted, two-space indent, trailing newline.
std::string dump_report(const AnalysisReport& r);

}  // namespace flatrange::cli
