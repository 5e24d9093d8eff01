#include "flatrange_cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

#include "flatrange/errors.hpp"
#include "flatrange_cli/matrix_io.hpp"

namespace flatrange::cli {

std::optional<Reducible5Params> detect_reducible5(const CMat& a) {
  if (a.size() != 5) return std::nullopt;
  auto real_nonneg = [&](std::size_t i, std::size_t j) {
    return a(i, j).imag() == 0.0 && a(i, j).real() >= 0.0;
  };
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      const bool slot = (i == 0 && j == 1) || (i == 2 && j == 3) || (i == 2 && j == 4) || (i == 3 && j == 4);
      if (!slot && a(i, j) != Complex{}) return std::nullopt;
      if (slot && !real_nonneg(i, j)) return std::nullopt;
    }
  }
  Reducible5Params p{a(0, 1).real(), a(2, 3).real(), a(2, 4).real(), a(3, 4).real()};
  try {
    p.validate();
  } catch (const Error&) {
    return std::nullopt;
  }
  return p;
}

std::string boundary_csv(const CMat& a, int samples) {
  if (samples < 16) throw UsageError("--samples must be at least 16");
  const auto pts = sample_boundary(a, samples);
  std::string out = "theta,x,y\n";
  for (int k = 0; k < samples; ++k) {
    const double theta = kTwoPi * k / samples;
    const auto& z = pts[static_cast<std::size_t>(k)];
    out += format_double(theta) + "," + format_double(z.real()) + "," + format_double(z.imag()) + "\n";
  }
  return out;
}

namespace {

constexpr double kSize = 800.0;
constexpr double kMargin = 0.05;

struct View {
  double cx = 0.0, cy = 0.0, scale = 1.0;
  double px(double x) const { return kSize / 2 + (x - cx) * scale; }
  double py(double y) const { return kSize / 2 - (y - cy) * scale; }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string points_attr(const View& v, const std::vector<Complex>& pts) {
  std::string s;
  for (const auto& z : pts) {
    if (!s.empty()) s += ' ';
    s += fmt(v.px(z.real())) + "," + fmt(v.py(z.imag()));
  }
  return s;
}

std::string line(const View& v, Complex a, Complex b, const std::string& style) {
  return "  <line x1=\"" + fmt(v.px(a.real())) + "\" y1=\"" + fmt(v.py(a.imag())) + "\" x2=\"" +
         fmt(v.px(b.real())) + "\" y2=\"" + fmt(v.py(b.imag())) + "\" style=\"" + style + "\"/>\n";
}

}  // namespace

std::string boundary_svg(const CMat& a, int samples, const SvgOptions& opt) {
  if (samples < 16) throw UsageError("--samples must be at least 16");
  const auto pts = sample_boundary(a, samples);
  std::vector<FlatPortion> flats;
  try {
    flats = flat_portions(a, opt.tol);
  } catch (const DegenerateRange&) {
  }

  std::vector<std::vector<Complex>> overlays;
  if (const auto fam = detect_reducible5(a)) {
    std::vector<Complex> circle;
    std::vector<Complex> cardioid;
    const bool equal = fam->r2 == fam->r1 && fam->r3 == fam->r1;
    for (int k = 0; k <= 360; ++k) {
      const double t = kTwoPi * k / 360;
      circle.push_back(std::polar(fam->r / 2, t));
      if (equal) cardioid.push_back(cardioid_point(t) * (fam->r1 / 3.0));
    }
    overlays.push_back(std::move(circle));
    if (equal) overlays.push_back(std::move(cardioid));
  }

  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool first = true;
  auto extend = [&](Complex z) {
    if (first) {
      xmin = xmax = z.real();
      ymin = ymax = z.imag();
      first = false;
      return;
    }
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  };
  for (const auto& z : pts) extend(z);
  for (const auto& o : overlays)
    for (const auto& z : o) extend(z);

  View view;
  view.cx = 0.5 * (xmin + xmax);
  view.cy = 0.5 * (ymin + ymax);
  double span = std::max(xmax - xmin, ymax - ymin);
  if (!(span > 0.0)) span = 1.0;
  view.scale = (1.0 - 2.0 * kMargin) * kSize / span;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  svg << "  <defs><clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"800\" height=\"800\"/></clipPath></defs>\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" style=\"fill:#ffffff\"/>\n";
  svg << "  <g clip-path=\"url(#frame)\">\n";
  const double far = 2.0 * span / (1.0 - 2.0 * kMargin);
  svg << line(view, {view.cx - far, 0.0}, {view.cx + far, 0.0}, "stroke:#bbbbbb;stroke-width:1");
  svg << line(view, {0.0, view.cy - far}, {0.0, view.cy + far}, "stroke:#bbbbbb;stroke-width:1");
  for (const auto& o : overlays) {
    svg << "  <polyline points=\"" << points_attr(view, o)
        << "\" style=\"fill:none;stroke:#7f7f7f;stroke-width:1;stroke-dasharray:6,4\"/>\n";
  }
  svg << "  <polygon points=\"" << points_attr(view, pts)
      << "\" style=\"fill:#dde8f5;stroke:#1f4e99;stroke-width:2\"/>\n";
  for (const auto& f : flats) {
    if (opt.support_lines) {
      const Complex dir = std::polar(1.0, f.line.theta + std::numbers::pi / 2);
      const Complex foot = std::polar(f.line.d, f.line.theta);
      svg << line(view, foot - far * dir, foot + far * dir,
                  "stroke:#999999;stroke-width:1;stroke-dasharray:4,4");
    }
    svg << line(view, f.z1, f.z2, "stroke:#d62728;stroke-width:5;stroke-linecap:round");
  }
  svg << "  </g>\n</svg>\n";
  return svg.str();
}

}  // namespace flatrange::cli
