#include "flatrange/nilpotent_families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flatrange/errors.hpp"
#include "flatrange/hermitian_eig.hpp"
#include "flatrange/triangularize.hpp"

namespace flatrange {
namespace {

constexpr double kModulusSlack = 1e-12;
constexpr double kZeroTol = 1e-9;
constexpr double kAngleTol = 1e-9;

Complex cis(double t) { return std::polar(1.0, t); }

double sq(double x) { return x * x; }

bool is_zero(double x) { return std::abs(x) <= kZeroTol; }

}  // namespace

double ExceptionalParams::r(int j) const {
  const double m = std::abs(a(j));
  const double s = 1.0 - m * m;
  // |a_j| = 1 up to rounding leaves s ~ 1e-16, whose root is far from zero.
  return s <= 8.0 * std::numeric_limits<double>::epsilon() ? 0.0 : std::sqrt(s);
}

const Complex& ExceptionalParams::a(int j) const {
  switch (j) {
    case 1: return a1;
    case 2: return a2;
    case 3: return a3;
    default: throw BadParams("ExceptionalParams::a index must be 1, 2 or 3");
  }
}

void ExceptionalParams::validate() const {
  for (int j = 1; j <= 3; ++j) {
    if (!(std::abs(a(j)) <= 1.0 + kModulusSlack)) {
      throw BadModulus("|a" + std::to_string(j) + "| = " + std::to_string(std::abs(a(j))) +
                       " exceeds 1");
    }
  }
  if (!std::isfinite(theta1) || !std::isfinite(theta2) || !std::isfinite(alpha.real()) ||
      !std::isfinite(alpha.imag())) {
    throw BadParams("non-finite exceptional parameters");
  }
}

UpperNilpotent4 UpperNilpotent4::from_matrix(const CMat& m) {
  if (m.size() != 4) throw DimensionError("UpperNilpotent4 needs a 4x4 matrix");
  const double tol = 1e-12 * (1.0 + m.frobenius_norm());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (std::abs(m(i, j)) > tol) throw BadParams("matrix is not strictly upper triangular");
  return {m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)};
}

CMat UpperNilpotent4::to_matrix() const {
  return CMat{{0.0, a12, a13, a14}, {0.0, 0.0, a23, a24}, {0.0, 0.0, 0.0, a34}, {0.0, 0.0, 0.0, 0.0}};
}

Complex UpperNilpotent4::a(int j) const {
  switch (j) {
    case 1: return a12;
    case 2: return a13;
    case 3: return a14;
    case 4: return a23;
    case 5: return a24;
    case 6: return a34;
    default: throw BadParams("UpperNilpotent4::a index must be in 1..6");
  }
}

GramResidual gram_residual(const UpperNilpotent4& m) {
  const Complex a1 = m.a(1), a2 = m.a(2), a3 = m.a(3);
  const Complex g12 = m.a(4) - std::conj(a1) * a2;
  const Complex g13 = m.a(5) - std::conj(a1) * a3;
  const Complex g23 = m.a(6) - std::conj(a2) * a3;
  const double g11 = 1.0 - std::norm(a1);
  const double g22 = 1.0 - std::norm(a2);
  const double g33 = 1.0 - std::norm(a3);
  GramResidual out;
  out.g = CMat{{g11, g12, g13},
               {std::conj(g12), g22, g23},
               {std::conj(g13), std::conj(g23), g33}};
  out.minors = {g11 * g22 - std::norm(g12), g11 * g33 - std::norm(g13), g22 * g33 - std::norm(g23)};
  return out;
}

bool ExceptionalConditions::holds(double tol) const {
  if (!moduli_bounded) return false;
  for (double r : modulus_residuals)
    if (r > tol) return false;
  return arg_vacuous || arg_residual <= tol;
}

ExceptionalConditions exceptional_conditions(const UpperNilpotent4& m) {
  ExceptionalConditions c;
  const Complex a1 = m.a(1), a2 = m.a(2), a3 = m.a(3);
  const double n1 = std::norm(a1), n2 = std::norm(a2), n3 = std::norm(a3);
  const double bound = sq(1.0 + kModulusSlack);
  c.moduli_bounded = n1 <= bound && n2 <= bound && n3 <= bound;

  const Complex d4 = m.a(4) - std::conj(a1) * a2;
  const Complex d5 = m.a(5) - std::conj(a1) * a3;
  const Complex d6 = m.a(6) - std::conj(a2) * a3;
  c.modulus_residuals = {std::abs(std::norm(d4) - (1.0 - n1) * (1.0 - n2)),
                         std::abs(std::norm(d5) - (1.0 - n1) * (1.0 - n3)),
                         std::abs(std::norm(d6) - (1.0 - n2) * (1.0 - n3))};

  const double strict = sq(1.0 - kModulusSlack);
  c.arg_vacuous = !(n1 < strict && n2 < strict && n3 < strict);
  if (!c.arg_vacuous) {
    c.arg_residual = angle_distance(std::arg(d6), std::arg(d5) - std::arg(d4));
  }
  return c;
}

bool exceptional_criterion(const UpperNilpotent4& m, Complex alpha) {
  if (alpha == Complex{}) return true;
  const GramResidual gr = gram_residual(m);
  const std::vector<double> ev = hermitian_eigenvalues(gr.g);
  const double eps = 1e-8 * (1.0 + gr.g.frobenius_norm());
  return ev[0] >= -eps && ev[1] <= eps;
}

CMat construct_exceptional(const ExceptionalParams& p) {
  p.validate();
  const double r1 = p.r(1), r2 = p.r(2), r3 = p.r(3);
  const UpperNilpotent4 m{
      p.a1,
      p.a2,
      p.a3,
      std::conj(p.a1) * p.a2 + r1 * r2 * cis(p.theta1),
      std::conj(p.a1) * p.a3 + r1 * r3 * cis(p.theta2),
      std::conj(p.a2) * p.a3 + r2 * r3 * cis(p.theta3()),
  };
  return p.alpha * m.to_matrix();
}

namespace {

void require_nonzero_radii(const ExceptionalParams& p) {
  for (int j = 1; j <= 3; ++j) {
    if (is_zero(p.r(j))) {
      throw ZeroRadius("r" + std::to_string(j) + " = 0; use the single-zero branches");
    }
  }
}

}  // namespace

Complex tau1(const ExceptionalParams& p) {
  p.validate();
  require_nonzero_radii(p);
  const Complex a1 = p.a1, a2 = p.a2, a3 = p.a3;
  const double r1 = p.r(1), r2 = p.r(2), r3 = p.r(3);
  const double t1 = p.theta1, t2 = p.theta2;
  return r3 * (sq(r1) + sq(r2) - sq(r1) * sq(r2)) *
             (std::conj(a1) * a3 * cis(-t2) - a1 * std::conj(a3) * cis(t2)) +
         r2 * (sq(r1) + sq(r3) - sq(r1) * sq(r3)) *
             (a1 * std::conj(a2) * cis(t1) - std::conj(a1) * a2 * cis(-t1)) +
         r1 * r2 * r3 * std::norm(a1) *
             (a2 * std::conj(a3) * cis(t2 - t1) - std::conj(a2) * a3 * cis(t1 - t2));
}

Complex tau2(const ExceptionalParams& p) {
  p.validate();
  require_nonzero_radii(p);
  const Complex a1 = p.a1, a2 = p.a2, a3 = p.a3;
  const double r1 = p.r(1), r2 = p.r(2), r3 = p.r(3);
  const double t1 = p.theta1, t2 = p.theta2;
  const Complex c1 = std::conj(a1), c2 = std::conj(a2);
  return c2 * a3 * r1 * (sq(r1) + 2.0 * sq(r2) - 2.0 * sq(r1) * sq(r2)) -
         a1 * c2 * c2 * a3 * sq(r1) * r2 * cis(t1) +
         c1 * a3 * r2 * (-sq(r2) - sq(r1) + sq(r1) * sq(r2)) * cis(-t1) +
         a1 * c2 * sq(r1) * r3 * std::norm(a2) * cis(t2) +
         r1 * r2 * r3 * (1.0 - 2.0 * std::norm(a1) * std::norm(a2)) * cis(t2 - t1) +
         c1 * a2 * std::norm(a1) * sq(r2) * r3 * cis(t2 - 2.0 * t1);
}

Complex real_tau2(double a1, double a2, double a3, double theta1, double theta2) {
  for (double a : {a1, a2, a3})
    if (!(std::abs(a) <= 1.0 + kModulusSlack)) throw BadModulus("real_tau2 needs |a_j| <= 1");
  const double r1 = std::sqrt(std::max(0.0, 1.0 - a1 * a1));
  const double r2 = std::sqrt(std::max(0.0, 1.0 - a2 * a2));
  const double r3 = std::sqrt(std::max(0.0, 1.0 - a3 * a3));
  if (is_zero(r1) || is_zero(r2) || is_zero(r3)) throw ZeroRadius("real_tau2 needs r1 r2 r3 != 0");
  const double theta3 = theta2 - theta1;
  return r1 * a2 * a3 * (sq(r1) + 2.0 * sq(r2) - 2.0 * sq(r1) * sq(r2)) -
         a1 * r2 * a3 * (sq(r2) + 2.0 * sq(r1) - 2.0 * sq(r1) * sq(r2)) * cis(theta1) +
         a1 * a2 * r3 * (sq(r1) + sq(r2) - 2.0 * sq(r1) * sq(r2)) * cis(theta2) +
         r1 * r2 * r3 * (1.0 - 2.0 * sq(a1) * sq(a2)) * cis(theta3);
}

const char* to_string(FlatBranch b) {
  switch (b) {
    case FlatBranch::TauTest: return "tau-test";
    case FlatBranch::R1Zero: return "r1-zero";
    case FlatBranch::R2Zero: return "r2-zero";
    case FlatBranch::R3Zero: return "r3-zero";
    case FlatBranch::OneZeroUnequal: return "one-zero-unequal";
    case FlatBranch::TwoOrMoreZero: return "two-or-more-zero";
    case FlatBranch::NotApplicable: return "not-applicable";
    case FlatBranch::ZeroMatrix: return "zero-matrix";
  }
  return "unknown";
}

namespace {

// Oracle answer restricted to the exceptional line of the family.
bool oracle_flat_on_line(const ExceptionalParams& p, const Tolerances& tol) {
  const CMat a = construct_exceptional(p);
  std::vector<FlatPortion> flats;
  try {
    flats = flat_portions(a, tol);
  } catch (const DegenerateRange&) {
    return false;
  }
  const double dist = std::abs(p.alpha) / 2.0;
  const double dtol = 1e-8 * (1.0 + a.frobenius_norm());
  return std::any_of(flats.begin(), flats.end(), [&](const FlatPortion& f) {
    return angle_distance(f.line.theta, std::arg(p.alpha)) <= 1e-6 &&
           std::abs(f.line.d + dist) <= dtol;
  });
}

// One r_j vanishes and the other two agree: no flat portion iff
// arg(lhs) = arg(rhs_base) + shift. Undefined when an entry is zero.
FlatVerdict single_zero_branch(const ExceptionalParams& p, FlatBranch branch, const Complex& lhs,
                               const Complex& base, double shift, const Tolerances& tol) {
  if (std::abs(lhs) <= kZeroTol || std::abs(base) <= kZeroTol) {
    return {oracle_flat_on_line(p, tol), FlatBranch::NotApplicable};
  }
  const bool no_flat = angle_distance(std::arg(lhs), std::arg(base) + shift) <= kAngleTol;
  return {!no_flat, branch};
}

}  // namespace

FlatVerdict flat_on_line_verdict(const ExceptionalParams& p, const Tolerances& tol) {
  p.validate();
  if (p.alpha == Complex{}) return {false, FlatBranch::ZeroMatrix};
  const double r1 = p.r(1), r2 = p.r(2), r3 = p.r(3);
  const int zeros = int(is_zero(r1)) + int(is_zero(r2)) + int(is_zero(r3));

  if (zeros == 0) {
    const double scale = std::max({1.0, std::abs(p.a1), std::abs(p.a2), std::abs(p.a3)});
    const bool both_zero = std::abs(tau1(p)) + std::abs(tau2(p)) <= 1e-9 * scale;
    return {!both_zero, FlatBranch::TauTest};
  }
  if (zeros >= 2) return {true, FlatBranch::TwoOrMoreZero};

  constexpr double pi = std::numbers::pi;
  if (is_zero(r1)) {
    if (!is_zero(r2 - r3)) return {true, FlatBranch::OneZeroUnequal};
    return single_zero_branch(p, FlatBranch::R1Zero, p.a3, p.a2, p.theta3(), tol);
  }
  if (is_zero(r2)) {
    if (!is_zero(r1 - r3)) return {true, FlatBranch::OneZeroUnequal};
    return single_zero_branch(p, FlatBranch::R2Zero, p.a3, p.a1, p.theta2 + pi, tol);
  }
  if (!is_zero(r1 - r2)) return {true, FlatBranch::OneZeroUnequal};
  return single_zero_branch(p, FlatBranch::R3Zero, p.a2, p.a1, p.theta1, tol);
}

bool has_flat_on_line(const ExceptionalParams& p, const Tolerances& tol) {
  return flat_on_line_verdict(p, tol).has_flat;
}

CMat parallel_canonical(double a1, double a2, double a3, Complex alpha) {
  if (!(a1 > 0.0) || !(a3 > 0.0) || !std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(a3)) {
    throw BadParams("parallel canonical form needs a1, a3 > 0 and finite a2");
  }
  if (alpha == Complex{}) throw BadParams("parallel canonical form needs alpha != 0");
  const CMat m{{0.0, a1, a2, a3}, {0.0, 0.0, a3, -a2}, {0.0, 0.0, 0.0, a1}, {0.0, 0.0, 0.0, 0.0}};
  return alpha * m;
}

std::optional<ParallelMatch> match_parallel_canonical(const CMat& a, double direction, double tol) {
  if (a.size() != 4) throw DimensionError("parallel canonical matching needs a 4x4 matrix");
  const double scale = 1.0 + a.frobenius_norm();
  const double abs_tol = tol * scale;
  const CMat b = std::polar(1.0, -direction) * a;

  const std::vector<double> k = hermitian_eigenvalues(im_part(b));
  const double lambda = 0.25 * (k[2] + k[3] - k[0] - k[1]);
  double residual = std::max({std::abs(k[0] - k[1]), std::abs(k[2] - k[3]),
                              std::abs(k[0] + lambda), std::abs(k[3] - lambda)});
  if (!(lambda > abs_tol) || residual > abs_tol) return std::nullopt;

  Triangularization tri;
  try {
    tri = nilpotent_triangularize(b);
  } catch (const NotNilpotent&) {
    return std::nullopt;
  }
  const CMat n = normalize_superdiagonal(tri.t);

  ParallelMatch out;
  out.a1 = 0.5 * (n(0, 1).real() + n(2, 3).real());
  out.a3 = 0.5 * (n(1, 2).real() + n(0, 3).real());
  out.a2 = 0.5 * (n(0, 2).real() - n(1, 3).real());
  out.alpha = std::polar(1.0, direction);
  out.lambda = lambda;

  const CMat canon{{0.0, out.a1, out.a2, out.a3},
                   {0.0, 0.0, out.a3, -out.a2},
                   {0.0, 0.0, 0.0, out.a1},
                   {0.0, 0.0, 0.0, 0.0}};
  residual = std::max(residual, (n - canon).frobenius_norm());

  CMat e13_e24(4);
  e13_e24(0, 2) = 1.0;
  e13_e24(1, 3) = 1.0;
  residual = std::max(residual, (n * n - (out.a1 * out.a3) * e13_e24).frobenius_norm());
  residual = std::max(
      residual,
      std::abs(lambda - 0.5 * std::sqrt(sq(out.a1) + sq(out.a2) + sq(out.a3))));
  out.invariant_residual = residual;

  if (!(out.a1 > abs_tol) || !(out.a3 > abs_tol) || residual > abs_tol) return std::nullopt;
  return out;
}

CMat real_family(double a1, double a2, double a3) {
  return CMat{{0.0, a1, a2, a3}, {0.0, 0.0, a3, a2}, {0.0, 0.0, 0.0, a1}, {0.0, 0.0, 0.0, 0.0}};
}

std::array<double, 4> real_family_eigenvalues(double a1, double a2, double a3, double theta) {
  const double c = std::cos(theta);
  const double minus = std::sqrt(std::max(0.0, a1 * a1 + a3 * a3 - 2.0 * a1 * a3 * c));
  const double plus = std::sqrt(std::max(0.0, a1 * a1 + a3 * a3 + 2.0 * a1 * a3 * c));
  return {0.5 * (-a2 - minus), 0.5 * (a2 - plus), 0.5 * (-a2 + minus), 0.5 * (a2 + plus)};
}

bool real_family_vertical_flat(double a1, double a2, double a3) {
  if (a1 == 0.0) throw ZeroA1("the real family needs a1 != 0");
  return std::abs(a1) == std::abs(a3) && std::abs(a2) >= std::abs(a1);
}

}  // namespace flatrange
