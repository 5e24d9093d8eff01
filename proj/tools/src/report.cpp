#include "flatrange_cli/report.hpp"

namespace flatrange::cli {

using nlohmann::json;

bool operator==(const AnalysisReport& x, const AnalysisReport& y) {
  return x.input_hash == y.input_hash && x.dimension == y.dimension &&
         x.degenerate == y.degenerate && x.flat_portions == y.flat_portions &&
         x.exceptional_angles == y.exceptional_angles && x.kippenhahn == y.kippenhahn &&
         x.singular_points == y.singular_points && x.classification == y.classification &&
         x.tolerances.mult == y.tolerances.mult && x.tolerances.flat == y.tolerances.flat &&
         x.tolerances.scan == y.tolerances.scan && x.tool_version == y.tool_version &&
         x.seed == y.seed;
}

namespace {

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }
Complex complex_from(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

}  // namespace

json to_json(const AnalysisReport& r) {
  json flats = json::array();
  for (const auto& f : r.flat_portions) {
    flats.push_back({{"theta", f.theta},
                     {"d", f.d},
                     {"z1", complex_json(f.z1)},
                     {"z2", complex_json(f.z2)},
                     {"length", f.length}});
  }
  json exc = json::array();
  for (const auto& e : r.exceptional_angles) {
    exc.push_back({{"theta", e.theta},
                   {"min_eigenvalue", e.min_eigenvalue},
                   {"gap", e.gap},
                   {"multiplicity", e.multiplicity}});
  }
  json sing = json::array();
  for (const auto& s : r.singular_points) sing.push_back({{"u", s.u}, {"v", s.v}, {"residual", s.residual}});
  json kip = nullptr;
  if (r.kippenhahn) {
    const auto& c = *r.kippenhahn;
    kip = {{"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}, {"c4", c.c4}, {"c5", c.c5}, {"c6", c.c6}};
  }
  json seed = nullptr;
  if (r.seed) seed = *r.seed;
  return {{"input_hash", r.input_hash},
          {"dimension", r.dimension},
          {"degenerate", r.degenerate},
          {"flat_portions", std::move(flats)},
          {"exceptional_angles", std::move(exc)},
          {"kippenhahn", std::move(kip)},
          {"singular_points", std::move(sing)},
          {"classification", r.classification},
          {"tolerances", {{"mult", r.tolerances.mult}, {"flat", r.tolerances.flat}, {"scan", r.tolerances.scan}}},
          {"tool_version", r.tool_version},
          {"seed", std::move(seed)}};
}

AnalysisReport report_from_json(const json& doc) {
  AnalysisReport r;
  r.input_hash = doc.at("input_hash").get<std::string>();
  r.dimension = doc.at("dimension").get<int>();
  r.degenerate = doc.at("degenerate").get<bool>();
  for (const auto& f : doc.at("flat_portions")) {
    r.flat_portions.push_back({f.at("theta").get<double>(), f.at("d").get<double>(),
                               complex_from(f.at("z1")), complex_from(f.at("z2")),
                               f.at("length").get<double>()});
  }
  for (const auto& e : doc.at("exceptional_angles")) {
    r.exceptional_angles.push_back({e.at("theta").get<double>(), e.at("min_eigenvalue").get<double>(),
                                    e.at("gap").get<double>(), e.at("multiplicity").get<int>()});
  }
  if (const auto& k = doc.at("kippenhahn"); !k.is_null()) {
    r.kippenhahn = ReportCoefficients{k.at("c1").get<double>(), k.at("c2").get<double>(),
                                      k.at("c3").get<double>(), k.at("c4").get<double>(),
                                      k.at("c5").get<double>(), k.at("c6").get<double>()};
  }
  for (const auto& s : doc.at("singular_points")) {
    r.singular_points.push_back(
        {s.at("u").get<double>(), s.at("v").get<double>(), s.at("residual").get<double>()});
  }
  r.classification = doc.at("classification").get<std::vector<std::string>>();
  const auto& t = doc.at("tolerances");
  r.tolerances.mult = t.at("mult").get<double>();
  r.tolerances.flat = t.at("flat").get<double>();
  r.tolerances.scan = t.at("scan").get<int>();
  r.tool_version = doc.at("tool_version").get<std::string>();
  if (const auto& s = doc.at("seed"); !s.is_null()) r.seed = s.get<std::uint64_t>();
  return r;
}

std::string dump_report(const AnalysisReport& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace flatrange::cli
