#include "flatrange_cli/app.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "flatrange/errors.hpp"
#include "flatrange/kippenhahn.hpp"
#include "flatrange/nilpotent_families.hpp"
#include "flatrange/random_matrices.hpp"
#include "flatrange/reducible5.hpp"
#include "flatrange/triangularize.hpp"
#include "flatrange_cli/matrix_io.hpp"
#include "flatrange_cli/plot.hpp"

#ifndef FLATRANGE_VERSION
#define FLATRANGE_VERSION "0.0.0"
#endif

namespace flatrange::cli {

using nlohmann::json;

const char* tool_version() { return FLATRANGE_VERSION; }

AnalysisReport analyze_matrix(const CMat& a, const Tolerances& tol, bool only_flats) {
  AnalysisReport r;
  r.input_hash = matrix_hash(a);
  r.dimension = static_cast<int>(a.size());
  r.tolerances = tol;
  r.tool_version = tool_version();

  const bool nilpotent = is_nilpotent(a);
  const std::string dim = std::to_string(a.size()) + "x" + std::to_string(a.size());
  if (nilpotent) r.classification.push_back("nilpotent " + dim);

  if (is_degenerate_range(a)) {
    r.degenerate = true;
    const auto pts = sample_boundary(a, 64);
    const bool point = std::all_of(pts.begin(), pts.end(), [&](Complex z) {
      return std::abs(z - pts.front()) <= 1e-10 * (1.0 + a.frobenius_norm());
    });
    if (point) {
      r.classification.push_back("degenerate range: the point " + format_double(pts.front().real()) +
                                 (pts.front().imag() < 0 ? "-" : "+") +
                                 format_double(std::abs(pts.front().imag())) + "i");
    } else {
      r.classification.push_back("degenerate range: a line segment");
    }
  } else {
    const RangeAnalysis ra = analyze_range(a, tol);
    for (const auto& f : ra.flats) r.flat_portions.push_back({f.line.theta, f.line.d, f.z1, f.z2, f.length});
    if (!only_flats) {
      for (const auto& e : ra.exceptional) {
        r.exceptional_angles.push_back(
            {e.theta, e.min_eigenvalue, e.gap, static_cast<int>(e.basis.size())});
      }
    }
    r.classification.push_back(std::to_string(ra.flats.size()) + " flat portion(s)");
    if (ra.flats.size() == 2 && a.size() == 4 && nilpotent &&
        angle_distance(ra.flats[0].line.theta, ra.flats[1].line.theta + std::numbers::pi) <= 1e-6) {
      const double direction = ra.flats[0].line.theta + std::numbers::pi / 2;
      if (const auto m = match_parallel_canonical(a, direction)) {
        r.classification.push_back("parallel canonical form a1=" + format_double(m->a1) +
                                   " a2=" + format_double(m->a2) + " a3=" + format_double(m->a3));
      }
    }
  }

  if (const auto fam = detect_reducible5(a)) {
    r.classification.push_back("reducible 5x5 family, predicted flat portions " +
                               std::to_string(flat_count_5x5(*fam)));
  }

  if (!only_flats && nilpotent && a.size() == 4) {
    const KippenhahnQuartic q = coeffs_nilpotent4(a);
    r.kippenhahn = ReportCoefficients{q.c1, q.c2, q.c3, q.c4, q.c5, q.c6};
    for (const auto& s : singular_points(q, default_search_radius(a))) {
      r.singular_points.push_back({s.u, s.v, s.residual});
    }
  }
  return r;
}

const std::vector<VerifyFamily>& verify_families() {
  static const std::vector<VerifyFamily> families{
      {"nilpotent4", 2}, {"general4", 4}, {"reducible4", 1}, {"reducible5", 2}};
  return families;
}

CMat verify_draw(const std::string& name, std::uint64_t seed, std::uint64_t index) {
  Rng rng(trial_seed(seed, index));
  if (name == "nilpotent4") return random_nilpotent(4, rng);
  if (name == "general4") return random_general(4, rng);
  if (name == "reducible4") return random_reducible_nilpotent4(rng);
  if (name == "reducible5") {
    const Reducible5Params p = random_reducible5(rng);
    return conjugate(assemble_5x5(p), haar_unitary(5, rng));
  }
  throw UsageError("unknown family '" + name + "'");
}

namespace {

unsigned worker_count(std::uint64_t trials) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NR_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(trials, 1)));
}

constexpr int kDegenerate = -1;
constexpr int kFailed = -2;

}  // namespace

VerifySummary run_verify(const std::string& family, std::uint64_t trials, std::uint64_t seed,
                         const Tolerances& tol) {
  const auto& fams = verify_families();
  const auto it = std::find_if(fams.begin(), fams.end(), [&](const auto& f) { return f.name == family; });
  if (it == fams.end()) throw UsageError("unknown family '" + family + "'");
  if (trials < 1) throw UsageError("--trials must be at least 1");

  std::vector<int> counts(trials, 0);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t i = next++; i < trials; i = next++) {
      try {
        counts[i] = static_cast<int>(flat_portions(verify_draw(family, seed, i), tol).size());
      } catch (const DegenerateRange&) {
        counts[i] = kDegenerate;
      } catch (const Error&) {
        counts[i] = kFailed;
      }
    }
  };
  const unsigned workers = worker_count(trials);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  VerifySummary s;
  s.family = family;
  s.bound = it->bound;
  s.trials = trials;
  s.seed = seed;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const int c = counts[i];
    if (c == kDegenerate) {
      ++s.degenerate;
    } else if (c == kFailed) {
      s.failures.push_back(i);
    } else {
      ++s.histogram[c];
      s.max_count = std::max(s.max_count, c);
      if (c > s.bound) s.violations.push_back(i);
    }
  }
  return s;
}

namespace {

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  auto num = [&](const std::string& s) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x)) {
      throw UsageError("cannot parse '" + text + "' as a number or 're,im' pair");
    }
    return x;
  };
  if (comma == std::string::npos) return {num(text), 0.0};
  return {num(text.substr(0, comma)), num(text.substr(comma + 1))};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

std::string kippenhahn_document(const CMat& a, double radius, int grid) {
  json doc;
  doc["input_hash"] = matrix_hash(a);
  doc["tool_version"] = tool_version();
  if (a.size() == 4 && is_nilpotent(a)) {
    const KippenhahnQuartic q = coeffs_nilpotent4(a);
    const double r = radius > 0.0 ? radius : default_search_radius(a);
    json pts = json::array();
    for (const auto& s : singular_points(q, r, grid)) pts.push_back({{"u", s.u}, {"v", s.v}, {"residual", s.residual}});
    doc["nilpotent4"] = true;
    doc["coefficients"] = {{"c1", q.c1}, {"c2", q.c2}, {"c3", q.c3}, {"c4", q.c4}, {"c5", q.c5}, {"c6", q.c6}};
    doc["max_imaginary_part"] = q.max_imag();
    doc["search_radius"] = r;
    doc["singular_points"] = std::move(pts);
  } else {
    const HomogeneousPoly p = kippenhahn_polynomial(a);
    json terms = json::array();
    for (int i = p.degree(); i >= 0; --i)
      for (int j = p.degree() - i; j >= 0; --j)
        if (p.coeff(i, j) != 0.0)
          terms.push_back({{"u", i}, {"v", j}, {"w", p.degree() - i - j}, {"coeff", p.coeff(i, j)}});
    doc["nilpotent4"] = false;
    doc["degree"] = p.degree();
    doc["terms"] = std::move(terms);
  }
  return doc.dump(2) + "\n";
}

std::string verify_text(const VerifySummary& s) {
  std::string t;
  t += "family: " + s.family + "\n";
  t += "trials: " + std::to_string(s.trials) + "\n";
  t += "seed: " + std::to_string(s.seed) + "\n";
  t += "bound: " + std::to_string(s.bound) + "\n";
  t += "histogram:\n";
  for (const auto& [count, n] : s.histogram) t += "  " + std::to_string(count) + ": " + std::to_string(n) + "\n";
  t += "degenerate: " + std::to_string(s.degenerate) + "\n";
  t += "oracle errors: " + std::to_string(s.failures.size()) + "\n";
  t += "max: " + std::to_string(s.max_count) + "\n";
  t += std::string("status: ") + (s.violations.empty() && s.failures.empty() ? "ok" : "violation") + "\n";
  return t;
}

json reproducers(const VerifySummary& s, const Tolerances& tol) {
  json list = json::array();
  auto add = [&](std::uint64_t i, const std::string& kind) {
    const CMat a = verify_draw(s.family, s.seed, i);
    json item{{"family", s.family}, {"seed", s.seed}, {"index", i},
              {"trial_seed", trial_seed(s.seed, i)}, {"kind", kind}, {"matrix", matrix_to_json(a)}};
    if (kind == "bound") item["flat_portions"] = flat_portions(a, tol).size();
    list.push_back(std::move(item));
  };
  for (auto i : s.violations) add(i, "bound");
  for (auto i : s.failures) add(i, "oracle-error");
  return list;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical ranges of small complex matrices: flat portions, Kippenhahn curves and "
               "the 4x4 nilpotent families.",
               "flatrange"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Tolerances tol;
  app.add_option("--tol-mult", tol.mult, "relative eigenvalue-coincidence tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-flat", tol.flat, "relative minimum flat-portion length")
      ->check(CLI::PositiveNumber);
  app.add_option("--scan", tol.scan, "angles in the exceptional-angle scan")->check(CLI::Range(16, 1 << 20));

  std::string matrix_file;
  std::string output;

  auto* analyze = app.add_subcommand("analyze", "full analysis report as JSON");
  bool only_flats = false;
  analyze->add_option("matrix", matrix_file, "matrix JSON file")->required();
  analyze->add_flag("--only-flats", only_flats, "report flat portions only");
  analyze->add_option("-o,--output", output, "write to file instead of stdout");

  auto* flats = app.add_subcommand("flat-portions", "alias of analyze --only-flats");
  flats->add_option("matrix", matrix_file, "matrix JSON file")->required();
  flats->add_option("-o,--output", output, "write to file instead of stdout");

  auto* boundary = app.add_subcommand("boundary", "sampled boundary as CSV or SVG");
  int samples = 512;
  std::string format = "csv";
  bool support_lines = false;
  boundary->add_option("matrix", matrix_file, "matrix JSON file")->required();
  boundary->add_option("--samples", samples, "number of boundary samples (>= 16)");
  boundary->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  boundary->add_flag("--support-lines", support_lines, "draw the support lines of flat portions");
  boundary->add_option("-o,--output", output, "write to file instead of stdout");

  auto* kipp = app.add_subcommand("kippenhahn", "Kippenhahn coefficients and singular points");
  double radius = 0.0;
  int grid = 400;
  kipp->add_option("matrix", matrix_file, "matrix JSON file")->required();
  kipp->add_option("--radius", radius, "singular-point search radius (default 4/d_min)");
  kipp->add_option("--grid", grid, "seed grid per axis")->check(CLI::Range(3, 4000));
  kipp->add_option("-o,--output", output, "write to file instead of stdout");

  auto* construct = app.add_subcommand("construct", "write a matrix from one of the families");
  construct->require_subcommand(1);
  std::string alpha = "1", a1 = "0", a2 = "0", a3 = "0";
  double theta1 = 0.0, theta2 = 0.0;
  double ra1 = 0.0, ra2 = 0.0, ra3 = 0.0;
  double r = 0.0, r1 = 0.0, r2 = 0.0, r3 = 0.0;
  auto* c_exc = construct->add_subcommand("exceptional", "alpha * [0 a1 a2 a3; ...] with an exceptional line");
  c_exc->add_option("--alpha", alpha, "complex scale, 're' or 're,im'");
  c_exc->add_option("--a1", a1, "complex, |a1| <= 1");
  c_exc->add_option("--a2", a2, "complex, |a2| <= 1");
  c_exc->add_option("--a3", a3, "complex, |a3| <= 1");
  c_exc->add_option("--theta1", theta1, "radians");
  c_exc->add_option("--theta2", theta2, "radians");
  c_exc->add_option("-o,--output", output, "write to file instead of stdout");
  auto* c_par = construct->add_subcommand("parallel", "canonical form with two parallel flat portions");
  c_par->add_option("--a1", ra1, "a1 > 0")->required();
  c_par->add_option("--a2", ra2, "real")->required();
  c_par->add_option("--a3", ra3, "a3 > 0")->required();
  c_par->add_option("--alpha", alpha, "complex scale, 're' or 're,im'");
  c_par->add_option("-o,--output", output, "write to file instead of stdout");
  auto* c_real = construct->add_subcommand("real-family", "[0 a1 a2 a3; 0 0 a3 a2; 0 0 0 a1; 0]");
  c_real->add_option("--a1", ra1, "a1 != 0")->required();
  c_real->add_option("--a2", ra2, "real")->required();
  c_real->add_option("--a3", ra3, "real")->required();
  c_real->add_option("-o,--output", output, "write to file instead of stdout");
  auto* c_red = construct->add_subcommand("reducible5", "[0 r; 0 0] (+) [0 r1 r2; 0 0 r3; 0 0 0]");
  c_red->add_option("--r", r, "r > 0")->required();
  c_red->add_option("--r1", r1, "r1 > 0")->required();
  c_red->add_option("--r2", r2, "r2 >= 0")->required();
  c_red->add_option("--r3", r3, "r3 > 0")->required();
  c_red->add_option("-o,--output", output, "write to file instead of stdout");

  auto* verify = app.add_subcommand("verify", "seeded random certification of flat-portion bounds");
  std::string family;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::string dump;
  std::vector<std::string> names;
  for (const auto& f : verify_families()) names.push_back(f.name);
  verify->add_option("--family", family, "nilpotent4, general4, reducible4 or reducible5")
      ->required()
      ->check(CLI::IsMember(names));
  verify->add_option("--trials", trials, "number of draws")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "base seed; trial i uses seed + i");
  verify->add_option("--dump", dump, "write reproducers of violating draws to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (analyze->parsed() || flats->parsed()) {
      const CMat a = read_matrix_file(matrix_file);
      emit(dump_report(analyze_matrix(a, tol, only_flats || flats->parsed())), output, out);
      return kOk;
    }
    if (boundary->parsed()) {
      if (samples < 16) throw UsageError("--samples must be at least 16");
      const CMat a = read_matrix_file(matrix_file);
      const std::string text = format == "svg" ? boundary_svg(a, samples, {support_lines, tol})
                                               : boundary_csv(a, samples);
      emit(text, output, out);
      return kOk;
    }
    if (kipp->parsed()) {
      const CMat a = read_matrix_file(matrix_file);
      emit(kippenhahn_document(a, radius, grid), output, out);
      return kOk;
    }
    if (construct->parsed()) {
      CMat a;
      if (c_exc->parsed()) {
        ExceptionalParams p;
        p.alpha = parse_complex(alpha);
        p.a1 = parse_complex(a1);
        p.a2 = parse_complex(a2);
        p.a3 = parse_complex(a3);
        p.theta1 = theta1;
        p.theta2 = theta2;
        a = construct_exceptional(p);
      } else if (c_par->parsed()) {
        a = parallel_canonical(ra1, ra2, ra3, parse_complex(alpha));
      } else if (c_real->parsed()) {
        if (ra1 == 0.0) throw ZeroA1("the real family needs a1 != 0");
        a = real_family(ra1, ra2, ra3);
      } else {
        a = assemble_5x5({r, r1, r2, r3});
      }
      emit(matrix_to_json(a).dump(2) + "\n", output, out);
      return kOk;
    }
    if (verify->parsed()) {
      const VerifySummary s = run_verify(family, trials, seed, tol);
      out << verify_text(s);
      if (s.violations.empty() && s.failures.empty()) return kOk;
      const std::string repro = reproducers(s, tol).dump(2) + "\n";
      err << repro;
      if (!dump.empty()) emit(repro, dump, out);
      return kViolation;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedInput& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const DimensionError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace flatrange::cli
