#include "flatrange_cli/matrix_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace flatrange::cli {

using nlohmann::json;

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

double read_number(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.empty()) throw UsageError(std::string("empty number string in ") + what);
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) {
      throw UsageError("cannot parse '" + s + "' as a decimal in " + what);
    }
    return x;
  }
  throw UsageError(std::string("expected a number or decimal string in ") + what);
}

}  // namespace

CMat matrix_from_json(const json& doc) {
  if (!doc.is_object()) throw UsageError("matrix document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw UsageError("missing integer field n");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw UsageError("missing array field entries");
  const auto n = doc["n"].get<long long>();
  if (n < 1) throw UsageError("n must be positive");
  if (n > static_cast<long long>(kMaxDim)) {
    throw UnsupportedInput("dimension " + std::to_string(n) + " exceeds " + std::to_string(kMaxDim));
  }
  const auto& rows = doc["entries"];
  const auto un = static_cast<std::size_t>(n);
  if (rows.size() != un) throw UsageError("entries must have n rows");
  CMat a(un);
  for (std::size_t i = 0; i < un; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != un) throw UsageError("each row must have n entries");
    for (std::size_t j = 0; j < un; ++j) {
      const auto& e = row[j];
      if (!e.is_object() || !e.contains("re")) throw UsageError("entry must be an object with re");
      const double re = read_number(e["re"], "re");
      const double im = e.contains("im") ? read_number(e["im"], "im") : 0.0;
      if (!std::isfinite(re) || !std::isfinite(im)) throw UsageError("non-finite entry");
      a(i, j) = Complex{re, im};
    }
  }
  return a;
}

CMat parse_matrix(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(doc);
}

CMat read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

json matrix_to_json(const CMat& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.size(); ++j) {
      row.push_back({{"re", format_double(a(i, j).real())}, {"im", format_double(a(i, j).imag())}});
    }
    rows.push_back(std::move(row));
  }
  return {{"n", a.size()}, {"entries", std::move(rows)}};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string matrix_hash(const CMat& a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(matrix_to_json(a).dump())));
  return std::string("fnv1a64:") + buf;
}

}  // namespace flatrange::cli
