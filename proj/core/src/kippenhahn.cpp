#include "flatrange/kippenhahn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flatrange/errors.hpp"
#include "flatrange/numrange.hpp"
#include "flatrange/triangularize.hpp"

namespace flatrange {
namespace {

// Homogeneous polynomial in (u, v) of degree size() - 1; entry i multiplies
// u^i v^{deg - i}.
using BiPoly = std::vector<Complex>;

BiPoly multiply(const BiPoly& x, const BiPoly& y) {
  BiPoly out(x.size() + y.size() - 1, Complex{});
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  return out;
}

double falling(int k, int d) {
  double f = 1.0;
  for (int m = 0; m < d; ++m) f *= static_cast<double>(k - m);
  return f;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int m = 0; m < k; ++m) r *= x;
  return r;
}

}  // namespace

double KippenhahnQuartic::max_imag() const {
  double m = 0.0;
  for (double x : imag) m = std::max(m, std::abs(x));
  return m;
}

double KippenhahnQuartic::eval(double u, double v, double w) const {
  return to_homogeneous(*this).eval(u, v, w);
}

std::array<double, 3> KippenhahnQuartic::gradient(double u, double v, double w) const {
  return to_homogeneous(*this).gradient(u, v, w);
}

KippenhahnQuartic coeffs_nilpotent4(const CMat& a) {
  if (a.size() != 4) throw DimensionError("the nilpotent quartic needs a 4x4 matrix");
  if (!is_nilpotent(a)) throw NotNilpotent("coeffs_nilpotent4 input is not nilpotent");
  const CMat s = a.adjoint();
  const CMat a2 = a * a;
  const CMat s2 = s * s;
  const Complex t31 = (a2 * a * s).trace();
  const Complex t13 = (s2 * s * a).trace();
  const Complex t22 = (a2 * s2).trace();
  const Complex t1111 = (s * a * s * a).trace();
  const Complex t11 = (a * s).trace();
  const Complex t21 = (a2 * s).trace();
  const Complex t12 = (s2 * a).trace();
  const Complex i{0.0, 1.0};

  const std::array<Complex, 6> c{
      -(t31 + t13 + t22 + 0.5 * t1111 - 0.5 * t11 * t11) / 16.0,
      i * (t31 - t13) / 8.0,
      (t12 + t21) / 8.0,
      (t31 + t13 - t22 - 0.5 * t1111 + 0.5 * t11 * t11) / 16.0,
      -t11 / 4.0,
      i * (t12 - t21) / 8.0,
  };
  KippenhahnQuartic q;
  q.c1 = c[0].real();
  q.c2 = c[1].real();
  q.c3 = c[2].real();
  q.c4 = c[3].real();
  q.c5 = c[4].real();
  q.c6 = c[5].real();
  for (std::size_t k = 0; k < 6; ++k) q.imag[k] = c[k].imag();
  return q;
}

Complex determinant(const CMat& m) {
  const std::size_t n = m.size();
  CMat lu = m;
  Complex det{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(lu(r, k)) > std::abs(lu(piv, k))) piv = r;
    if (lu(piv, k) == Complex{}) return Complex{};
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = lu(r, k) / lu(k, k);
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
    }
  }
  return det;
}

double eval_general(const CMat& a, double u, double v, double w) {
  const CMat m = u * re_part(a) + v * im_part(a) + w * CMat::identity(a.size());
  return determinant(m).real();
}

std::vector<Complex> newton_coefficients(const CMat& m) {
  const std::size_t n = m.size();
  std::vector<Complex> p(n + 1);
  CMat pw = m;
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = pw.trace();
    if (k < n) pw = pw * m;
  }
  std::vector<Complex> q(n + 1);
  q[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    Complex acc{};
    double sign = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
      acc += sign * q[k - i] * p[i];
      sign = -sign;
    }
    q[k] = acc / static_cast<double>(k);
  }
  return q;
}

HomogeneousPoly::HomogeneousPoly(int degree) : n_(degree) {
  if (degree < 0) throw BadParams("polynomial degree must be non-negative");
  c_.assign(static_cast<std::size_t>((n_ + 1) * (n_ + 1)), 0.0);
}

double& HomogeneousPoly::coeff(int i, int j) {
  if (i < 0 || j < 0 || i + j > n_) throw BadParams("monomial outside the degree");
  return c_[static_cast<std::size_t>(i * (n_ + 1) + j)];
}

double HomogeneousPoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > n_) throw BadParams("monomial outside the degree");
  return c_[static_cast<std::size_t>(i * (n_ + 1) + j)];
}

namespace {

double partial(const HomogeneousPoly& p, int du, int dv, int dw, double u, double v, double w) {
  const int n = p.degree();
  double acc = 0.0;
  for (int i = du; i <= n; ++i) {
    for (int j = dv; i + j <= n; ++j) {
      const int k = n - i - j;
      if (k < dw) continue;
      const double c = p.coeff(i, j);
      if (c == 0.0) continue;
      acc += c * falling(i, du) * falling(j, dv) * falling(k, dw) * ipow(u, i - du) *
             ipow(v, j - dv) * ipow(w, k - dw);
    }
  }
  return acc;
}

}  // namespace

double HomogeneousPoly::eval(double u, double v, double w) const {
  return partial(*this, 0, 0, 0, u, v, w);
}

std::array<double, 3> HomogeneousPoly::gradient(double u, double v, double w) const {
  return {partial(*this, 1, 0, 0, u, v, w), partial(*this, 0, 1, 0, u, v, w),
          partial(*this, 0, 0, 1, u, v, w)};
}

std::array<std::array<double, 2>, 3> HomogeneousPoly::gradient_jacobian(double u, double v,
                                                                        double w) const {
  const double uu = partial(*this, 2, 0, 0, u, v, w);
  const double uv = partial(*this, 1, 1, 0, u, v, w);
  const double vv = partial(*this, 0, 2, 0, u, v, w);
  const double uw = partial(*this, 1, 0, 1, u, v, w);
  const double vw = partial(*this, 0, 1, 1, u, v, w);
  return {{{uu, uv}, {uv, vv}, {uw, vw}}};
}

HomogeneousPoly kippenhahn_polynomial(const CMat& a) {
  const std::size_t n = a.size();
  const CMat h = re_part(a);
  const CMat k = im_part(a);

  // powers[i] is the coefficient matrix of u^i v^{deg-i} in (uH + vK)^deg.
  std::vector<CMat> powers{CMat::identity(n)};
  std::vector<BiPoly> sums(n + 1);
  for (std::size_t deg = 1; deg <= n; ++deg) {
    std::vector<CMat> next(deg + 1, CMat(n));
    for (std::size_t i = 0; i < deg; ++i) {
      next[i] += k * powers[i];
      next[i + 1] += h * powers[i];
    }
    powers = std::move(next);
    sums[deg].resize(deg + 1);
    for (std::size_t i = 0; i <= deg; ++i) sums[deg][i] = powers[i].trace();
  }

  std::vector<BiPoly> e(n + 1);
  e[0] = {Complex{1.0, 0.0}};
  for (std::size_t m = 1; m <= n; ++m) {
    BiPoly acc(m + 1, Complex{});
    double sign = 1.0;
    for (std::size_t i = 1; i <= m; ++i) {
      const BiPoly term = multiply(e[m - i], sums[i]);
      for (std::size_t j = 0; j <= m; ++j) acc[j] += sign * term[j];
      sign = -sign;
    }
    for (auto& x : acc) x /= static_cast<double>(m);
    e[m] = std::move(acc);
  }

  HomogeneousPoly p(static_cast<int>(n));
  for (std::size_t m = 0; m <= n; ++m)
    for (std::size_t i = 0; i <= m; ++i)
      p.coeff(static_cast<int>(i), static_cast<int>(m - i)) = e[m][i].real();
  return p;
}

HomogeneousPoly to_homogeneous(const KippenhahnQuartic& q) {
  HomogeneousPoly p(4);
  p.coeff(4, 0) = q.c1;
  p.coeff(3, 1) = q.c2;
  p.coeff(3, 0) = q.c3;
  p.coeff(2, 2) = q.c1 + q.c4;
  p.coeff(2, 0) = q.c5;
  p.coeff(2, 1) = q.c6;
  p.coeff(1, 3) = q.c2;
  p.coeff(1, 2) = q.c3;
  p.coeff(0, 4) = q.c4;
  p.coeff(0, 3) = q.c6;
  p.coeff(0, 2) = q.c5;
  p.coeff(0, 0) = 1.0;
  return p;
}

std::array<double, 3> singularity_residual(const KippenhahnQuartic& q, double u, double v) {
  const double u2 = u * u, v2 = v * v;
  const double e1 = (4 * u2 * u + 2 * u * v2) * q.c1 + (3 * u2 * v + v2 * v) * q.c2 +
                    (3 * u2 + v2) * q.c3 + 2 * u * v2 * q.c4 + 2 * u * q.c5 + 2 * u * v * q.c6;
  const double e2 = 2 * u2 * v * q.c1 + (u2 * u + 3 * u * v2) * q.c2 + 2 * u * v * q.c3 +
                    (2 * u2 * v + 4 * v2 * v) * q.c4 + 2 * v * q.c5 + (u2 + 3 * v2) * q.c6;
  const double e3 = (u2 * u + u * v2) * q.c3 + (2 * u2 + 2 * v2) * q.c5 +
                    (u2 * v + v2 * v) * q.c6 - (-4.0);
  return {e1, e2, e3};
}

namespace {

double max_abs(const std::array<double, 3>& r) {
  return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
}

double residual_target(double u, double v) {
  return 1e-10 * ipow(1.0 + std::abs(u) + std::abs(v), 4);
}

// Levenberg-Marquardt on the three gradient equations in two unknowns.
SingularPoint refine(const KippenhahnQuartic& q, const HomogeneousPoly& p, double u, double v) {
  auto sumsq = [](const std::array<double, 3>& r) {
    return r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
  };
  std::array<double, 3> r = singularity_residual(q, u, v);
  double f = sumsq(r);
  double mu = 1e-6;
  for (int it = 0; it < 200 && max_abs(r) > 0.1 * residual_target(u, v); ++it) {
    const auto j = p.gradient_jacobian(u, v, 1.0);
    double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      a11 += j[k][0] * j[k][0];
      a12 += j[k][0] * j[k][1];
      a22 += j[k][1] * j[k][1];
      b1 -= j[k][0] * r[k];
      b2 -= j[k][1] * r[k];
    }
    bool moved = false;
    for (int tries = 0; tries < 30; ++tries) {
      const double scale = mu * std::max(1.0, a11 + a22);
      const double m11 = a11 + scale, m22 = a22 + scale;
      const double det = m11 * m22 - a12 * a12;
      if (det == 0.0 || !std::isfinite(det)) {
        mu *= 10.0;
        continue;
      }
      const double du = (b1 * m22 - b2 * a12) / det;
      const double dv = (m11 * b2 - a12 * b1) / det;
      const std::array<double, 3> r_new = singularity_residual(q, u + du, v + dv);
      const double f_new = sumsq(r_new);
      if (f_new < f) {
        u += du;
        v += dv;
        r = r_new;
        f = f_new;
        mu = std::max(mu * 0.1, 1e-15);
        moved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!moved) break;
  }
  return {u, v, max_abs(r)};
}

}  // namespace

std::vector<SingularPoint> singular_points(const KippenhahnQuartic& q, double radius, int grid) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw BadParams("search radius must be positive");
  if (grid < 3) throw BadParams("singular-point grid needs at least 3 points per axis");
  const HomogeneousPoly p = to_homogeneous(q);
  const auto g = static_cast<std::size_t>(grid);
  const double step = 2.0 * radius / (grid - 1);
  auto coord = [&](std::size_t k) { return -radius + step * static_cast<double>(k); };

  std::vector<double> f(g * g);
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = 0; b < g; ++b) {
      const double u = coord(a), v = coord(b);
      const auto r = singularity_residual(q, u, v);
      const double s = ipow(1.0 + std::abs(u) + std::abs(v), 4);
      f[a * g + b] = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) / (s * s);
    }
  }

  std::vector<SingularPoint> found;
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = 0; b < g; ++b) {
      const double fc = f[a * g + b];
      bool is_min = true;
      for (int da = -1; da <= 1 && is_min; ++da) {
        for (int db = -1; db <= 1; ++db) {
          if (da == 0 && db == 0) continue;
          const auto na = static_cast<std::ptrdiff_t>(a) + da;
          const auto nb = static_cast<std::ptrdiff_t>(b) + db;
          if (na < 0 || nb < 0 || na >= grid || nb >= grid) continue;
          if (f[static_cast<std::size_t>(na) * g + static_cast<std::size_t>(nb)] < fc) {
            is_min = false;
            break;
          }
        }
      }
      if (!is_min) continue;
      const SingularPoint sp = refine(q, p, coord(a), coord(b));
      if (sp.residual > residual_target(sp.u, sp.v)) continue;
      if (sp.u * sp.u + sp.v * sp.v > radius * radius * (1.0 + 1e-9)) continue;
      found.push_back(sp);
    }
  }

  std::sort(found.begin(), found.end(), [](const SingularPoint& x, const SingularPoint& y) {
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  });
  std::vector<SingularPoint> out;
  for (const auto& sp : found) {
    auto same = std::find_if(out.begin(), out.end(), [&](const SingularPoint& o) {
      return std::hypot(o.u - sp.u, o.v - sp.v) <= 1e-6;
    });
    if (same == out.end()) {
      out.push_back(sp);
    } else if (sp.residual < same->residual) {
      *same = sp;
    }
  }
  std::sort(out.begin(), out.end(), [](const SingularPoint& x, const SingularPoint& y) {
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  });
  return out;
}

double default_search_radius(const CMat& a) {
  double d_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 256; ++k) d_min = std::min(d_min, std::abs(support_value(a, kTwoPi * k / 256)));
  if (!(d_min > 0.0)) return 1e3;
  return std::clamp(4.0 / d_min, 1.0, 1e3);
}

}  // namespace flatrange
