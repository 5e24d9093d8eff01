#include "flatrange/numrange.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "flatrange/errors.hpp"
#include "flatrange/hermitian_eig.hpp"

namespace flatrange {
namespace {

// Re(e^{-i theta} A) = cos(theta) H + sin(theta) K for H = Re A, K = Im A.
struct Pencil {
  CMat h;
  CMat k;

  explicit Pencil(const CMat& a) : h(re_part(a)), k(im_part(a)) {}

  CMat re_at(double theta) const { return std::cos(theta) * h + std::sin(theta) * k; }
  CMat im_at(double theta) const { return std::cos(theta) * k - std::sin(theta) * h; }

  double gap(double theta) const {
    const std::vector<double> ev = hermitian_eigenvalues(re_at(theta));
    return ev[1] - ev[0];
  }
};

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt 5 - 1) / 2

// Golden-section minimisation of f on [lo, hi] down to width tol.
template <class F>
double golden_min(const F& f, double lo, double hi, double tol) {
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

// Spread of the compression of Im(e^{-i theta} A) onto the eigenspace of the
// minimal eigenvalue of Re(e^{-i theta} A).
double im_spread(const Pencil& pencil, double theta, double eps) {
  const HermEig eig = hermitian_eig(pencil.re_at(theta));
  std::vector<CVec> basis;
  for (std::size_t j = 0; j < eig.values.size() && eig.values[j] <= eig.values[0] + eps; ++j) {
    basis.push_back(eig.vector(j));
  }
  if (basis.size() < 2) return 0.0;
  const std::vector<double> mu = hermitian_eigenvalues(compress(pencil.im_at(theta), basis));
  return mu.back() - mu.front();
}

// When two eigenvalue branches touch without crossing, the gap is quadratic
// in theta and golden-section search stalls near sqrt(machine epsilon).
// Interpolate the gap on five angles around `theta` and return the
// stationary point of the quartic interpolant, or `theta` if it is not a
// clear minimum within the stencil.
double polish_tangent(const Pencil& pencil, double theta) {
  constexpr double h = 1e-3;
  std::array<double, 5> g{};
  for (int k = 0; k < 5; ++k) g[static_cast<std::size_t>(k)] = pencil.gap(theta + (k - 2) * h);
  // Coefficients of P(x) = sum c_j x^j through (x_k, g_k), x_k = -2..2.
  const double c1 = (g[0] - 8 * g[1] + 8 * g[3] - g[4]) / 12.0;
  const double c2 = (-g[0] + 16 * g[1] - 30 * g[2] + 16 * g[3] - g[4]) / 24.0;
  const double c3 = (-g[0] + 2 * g[1] - 2 * g[3] + g[4]) / 12.0;
  const double c4 = (g[0] - 4 * g[1] + 6 * g[2] - 4 * g[3] + g[4]) / 24.0;
  if (!(c2 > 0.0)) return theta;
  double x = 0.0;
  for (int it = 0; it < 50; ++it) {
    const double d1 = c1 + 2 * c2 * x + 3 * c3 * x * x + 4 * c4 * x * x * x;
    const double d2 = 2 * c2 + 6 * c3 * x + 12 * c4 * x * x;
    if (!(d2 > 0.0)) return theta;
    const double dx = d1 / d2;
    x -= dx;
    if (std::abs(dx) < 1e-15) break;
  }
  if (!(std::abs(x) <= 0.5)) return theta;
  return theta + x * h;
}

}  // namespace

double canonical_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double angle_distance(double a, double b) {
  const double d = canonical_angle(a - b);
  return std::min(d, kTwoPi - d);
}

std::pair<double, double> SupportLine::line_coordinates() const {
  if (d == 0.0) throw BadParams("support line through the origin has no affine line coordinates");
  return {-std::cos(theta) / d, -std::sin(theta) / d};
}

double support_value(const CMat& a, double theta) {
  return hermitian_eigenvalues(rotated_re_part(a, theta)).front();
}

Complex boundary_point(const CMat& a, double theta) {
  const HermEig eig = hermitian_eig(rotated_re_part(a, theta));
  const CVec x = eig.vector(0);
  return inner(a * x, x);
}

std::vector<Complex> sample_boundary(const CMat& a, int n_samples) {
  if (n_samples < 16) throw BadParams("sample_boundary needs at least 16 samples");
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    pts.push_back(boundary_point(a, kTwoPi * k / n_samples));
  }
  return pts;
}

bool is_degenerate_range(const CMat& a, int n_samples) {
  if (a.size() == 1) return true;
  const std::vector<Complex> pts = sample_boundary(a, std::max(n_samples, 16));
  Complex mean = 0.0;
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    const Complex d = p - mean;
    sxx += d.real() * d.real();
    syy += d.imag() * d.imag();
    sxy += d.real() * d.imag();
  }
  // Principal direction of the 2x2 scatter matrix.
  const double phi = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const Complex normal = std::polar(1.0, phi + std::numbers::pi / 2);
  double width = 0.0;
  for (const auto& p : pts) {
    const Complex d = p - mean;
    width = std::max(width, std::abs(d.real() * normal.real() + d.imag() * normal.imag()));
  }
  return width <= 1e-10 * (1.0 + a.frobenius_norm());
}

std::vector<ExceptionalSubspace> exceptional_angles(const CMat& a, const Tolerances& tol) {
  if (tol.scan < 16) throw BadParams("angle scan needs at least 16 points");
  if (is_degenerate_range(a)) throw DegenerateRange("F(A) has empty interior");

  const Pencil pencil(a);
  const double eps = tol.eps_mult(a);
  const int n = tol.scan;
  const double step = kTwoPi / n;

  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = pencil.gap(step * k);

  // Eigenvalues are 1-Lipschitz in theta with constant ||A||_F, so a grid
  // minimum further than this above eps cannot hide a zero of the gap.
  const double reach = eps + 2.2 * a.frobenius_norm() * step;

  std::vector<ExceptionalSubspace> found;
  auto gap_at = [&](double t) { return pencil.gap(t); };
  for (int k = 0; k < n; ++k) {
    const double gk = g[static_cast<std::size_t>(k)];
    const double prev = g[static_cast<std::size_t>((k + n - 1) % n)];
    const double next = g[static_cast<std::size_t>((k + 1) % n)];
    if (gk > prev || gk > next || gk > reach) continue;

    const double refined = golden_min(gap_at, step * (k - 1), step * (k + 1), 1e-12);
    const double g_refined = gap_at(refined);
    if (std::min(g_refined, gk) >= eps) continue;
    double best = g_refined <= gk ? refined : step * k;
    if (im_spread(pencil, best, eps) <= tol.eps_flat(a)) best = polish_tangent(pencil, best);

    const HermEig eig = hermitian_eig(pencil.re_at(best));
    ExceptionalSubspace ex;
    ex.theta = canonical_angle(best);
    ex.min_eigenvalue = eig.values[0];
    ex.gap = eig.values[1] - eig.values[0];
    for (std::size_t j = 0; j < eig.values.size() && eig.values[j] <= eig.values[0] + eps; ++j) {
      ex.basis.push_back(eig.vector(j));
    }
    if (ex.basis.size() < 2) continue;
    found.push_back(std::move(ex));
  }

  std::sort(found.begin(), found.end(),
            [](const auto& x, const auto& y) { return x.theta < y.theta; });
  std::vector<ExceptionalSubspace> merged;
  for (auto& ex : found) {
    if (!merged.empty() && angle_distance(merged.back().theta, ex.theta) < 1e-7) {
      if (ex.gap < merged.back().gap) merged.back() = std::move(ex);
      continue;
    }
    merged.push_back(std::move(ex));
  }
  if (merged.size() > 1 && angle_distance(merged.front().theta, merged.back().theta) < 1e-7) {
    if (merged.back().gap < merged.front().gap) merged.front() = std::move(merged.back());
    merged.pop_back();
  }
  return merged;
}

bool compression_is_scalar(const CMat& a, const CVec& y1, const CVec& y2) {
  const double n1 = norm2(y1);
  const double n2 = norm2(y2);
  const Complex y21 = inner(y2, y1);
  const double gram = n1 * n2 - std::norm(y21);
  if (!(n1 > 0.0 && n2 > 0.0) || gram <= 1e-12 * n1 * n2) {
    throw DependentVectors("y1, y2 are numerically dependent");
  }
  const Complex ay1y1 = inner(a * y1, y1);
  const Complex ay2y2 = inner(a * y2, y2);
  const Complex ay2y1 = inner(a * y2, y1);
  const double tol = 1e-9 * (1.0 + a.frobenius_norm()) * n1 * n2;
  const bool first = std::abs(ay1y1 * n2 - ay2y2 * n1) <= tol;
  const bool second = std::abs(ay2y1 * n1 - y21 * ay1y1) <= tol;
  return first && second;
}

FlatPortion segment_at(const CMat& a, const ExceptionalSubspace& ex) {
  const CMat k = rotated_im_part(a, ex.theta);
  const std::vector<double> mu = hermitian_eigenvalues(compress(k, ex.basis));
  const Complex rot = std::polar(1.0, ex.theta);
  FlatPortion fp;
  fp.line = SupportLine{ex.theta, ex.min_eigenvalue};
  fp.z1 = rot * Complex{ex.min_eigenvalue, mu.front()};
  fp.z2 = rot * Complex{ex.min_eigenvalue, mu.back()};
  fp.length = mu.back() - mu.front();
  return fp;
}

RangeAnalysis analyze_range(const CMat& a, const Tolerances& tol) {
  RangeAnalysis out;
  out.exceptional = exceptional_angles(a, tol);
  const double eps_flat = tol.eps_flat(a);
  for (const auto& ex : out.exceptional) {
    FlatPortion fp = segment_at(a, ex);
    if (fp.length > eps_flat) out.flats.push_back(fp);
  }
  return out;
}

std::vector<FlatPortion> flat_portions(const CMat& a, const Tolerances& tol) {
  return analyze_range(a, tol).flats;
}

}  // namespace flatrange
