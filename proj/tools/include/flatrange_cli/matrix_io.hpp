#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "flatrange/cmat.hpp"
#include "json.hpp"

namespace flatrange::cli {

/// Malformed input or invalid arguments (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input the tool does not handle, such as n > 8 (exit code 3).
class UnsupportedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal with 17 significant digits, as printed by "%.17g".
std::string format_double(double x);

/// Matrix document {"n": int, "entries": [[{"re": x, "im": y}, ...], ...]}.
/// Numbers may be JSON numbers or decimal strings; "im" defaults to 0.
CMat matrix_from_json(const nlohmann::json& doc);
CMat parse_matrix(const std::string& text);
CMat read_matrix_file(const std::string& path);

/// Entries written as 17-digit decimal strings.
nlohmann::json matrix_to_json(const CMat& a);

/// 64-bit FNV-1a of the canonical matrix serialization, as "fnv1a64:<hex>".
std::string matrix_hash(const CMat& a);
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace flatrange::cli
