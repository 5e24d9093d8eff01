#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "flatrange/cmat.hpp"
#include "flatrange/numrange.hpp"
#include "flatrange_cli/report.hpp"

namespace flatrange::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kUnsupported = 3 };

const char* tool_version();

/// Full analysis of one matrix. `only_flats` skips the Kippenhahn part.
AnalysisReport analyze_matrix(const CMat& a, const Tolerances& tol, bool only_flats = false);

struct VerifyFamily {
  std::string name;
  int bound = 0;
};

/// Known families and their flat-portion bounds.
const std::vector<VerifyFamily>& verify_families();

/// The matrix used for trial `index` of family `name`.
CMat verify_draw(const std::string& name, std::uint64_t seed, std::uint64_t index);

struct VerifySummary {
  std::string family;
  int bound = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::map<int, std::uint64_t> histogram;  ///< flat-portion count -> draws
  std::uint64_t degenerate = 0;
  std::vector<std::uint64_t> violations;   ///< indices exceeding the bound
  std::vector<std::uint64_t> failures;     ///< indices where the oracle threw
  int max_count = 0;
};

/// Runs the seeded sweep on min(hardware threads, NR_THREADS) workers.
/// Results do not depend on the number of workers.
VerifySummary run_verify(const std::string& family, std::uint64_t trials, std::uint64_t seed,
                         const Tolerances& tol);

/// Command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flatrange::cli
