#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatrange/errors.hpp"
#include "flatrange/kippenhahn.hpp"
#include "flatrange/numrange.hpp"
#include "support.hpp"

using namespace flatrange;
using std::numbers::pi;
using testing::uniform;

namespace {

double rel_err(double x, double ref) { return std::abs(x - ref) / std::max(1.0, std::abs(ref)); }

std::array<double, 3> cs_residual(const KippenhahnQuartic& q) {
  return {q.c3 - (-4.0 * q.c1 + 0.25), q.c6 + 2.0 * q.c2, q.c5 - (4.0 * q.c1 - 0.75)};
}

double max_abs(const std::array<double, 3>& r) {
  return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
}

bool contains_point(const std::vector<SingularPoint>& pts, double u, double v, double tol) {
  return std::any_of(pts.begin(), pts.end(),
                     [&](const SingularPoint& s) { return std::hypot(s.u - u, s.v - v) <= tol; });
}

// Nilpotent matrices with at least one flat portion.
std::vector<CMat> flat_corpus() {
  std::vector<CMat> out{testing::withflat(), parallel_canonical(1.0, 1.0, 1.0, 1.0), real_family(1.0, 2.0, -1.0)};
  Rng rng(90210);
  for (int i = 0; i < 40; ++i) out.push_back(conjugate(construct_exceptional(testing::random_exceptional(rng)), haar_unitary(4, rng)));
  for (int i = 0; i < 20; ++i) {
    const CMat p = parallel_canonical(uniform(rng, 0.2, 2), uniform(rng, -2, 2), uniform(rng, 0.2, 2),
                                      std::polar(uniform(rng, 0.5, 2), uniform(rng, 0, 2 * pi)));
    out.push_back(conjugate(p, haar_unitary(4, rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("coeffs_nilpotent4 examples") {
  const KippenhahnQuartic z = coeffs_nilpotent4(CMat(4));
  CHECK(z.c1 == 0.0);
  CHECK(z.c5 == 0.0);
  CHECK(z.eval(0.3, -0.7, 2.0) == doctest::Approx(16.0));

  const KippenhahnQuartic j = coeffs_nilpotent4(testing::jordan(4));
  CHECK(j.c1 == doctest::Approx(1.0 / 16));
  CHECK(j.c4 == doctest::Approx(1.0 / 16));
  CHECK(std::abs(j.c2) <= 1e-15);
  CHECK(std::abs(j.c3) <= 1e-15);
  CHECK(std::abs(j.c6) <= 1e-15);
  CHECK(j.c5 == doctest::Approx(-0.75));
  CHECK(j.max_imag() <= 1e-15);

  const CMat t{{0.0, {1.0, 2.0}, -0.5, 3.0}, {0.0, 0.0, {0.0, 1.0}, {1.0, -1.0}}, {0.0, 0.0, 0.0, 2.0},
               {0.0, 0.0, 0.0, 0.0}};
  const KippenhahnQuartic q = coeffs_nilpotent4(t);
  CHECK(q.c1 == doctest::Approx(113.0 / 32).epsilon(1e-13));
  CHECK(q.c2 == doctest::Approx(-1.5).epsilon(1e-13));
  CHECK(q.c3 == doctest::Approx(1.25).epsilon(1e-13));
  CHECK(q.c4 == doctest::Approx(17.0 / 32).epsilon(1e-13));
  CHECK(q.c5 == doctest::Approx(-85.0 / 16).epsilon(1e-13));
  CHECK(q.c6 == doctest::Approx(9.0 / 8).epsilon(1e-13));

  const KippenhahnQuartic w = coeffs_nilpotent4(testing::withflat());
  CHECK(max_abs(cs_residual(w)) <= 1e-12);

  CHECK_THROWS_AS(coeffs_nilpotent4(CMat::identity(4)), NotNilpotent);
  CHECK_THROWS_AS(coeffs_nilpotent4(testing::jordan(3)), DimensionError);
}

TEST_CASE("eval_general examples") {
  CHECK(eval_general(CMat(3), 0.4, 1.7, 2.0) == doctest::Approx(8.0));
  CHECK(eval_general(testing::jordan(4), 2.0, 0.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(determinant(CMat{{0.0, 1.0}, {1.0, 0.0}}) + 1.0) <= 1e-15);
  CHECK(std::abs(determinant(CMat{{1.0, 2.0}, {2.0, 4.0}})) <= 1e-15);
}

TEST_CASE("trace-formula quartic equals the determinant") {
  Rng rng(101);
  for (int i = 0; i < 100; ++i) {
    const CMat a = random_nilpotent(4, rng);
    const KippenhahnQuartic q = coeffs_nilpotent4(a);
    CHECK(q.max_imag() <= 1e-10 * std::pow(1.0 + a.frobenius_norm(), 4));
    const HomogeneousPoly h = to_homogeneous(q);
    for (int k = 0; k < 50; ++k) {
      const double u = uniform(rng, -1, 1), v = uniform(rng, -1, 1), w = uniform(rng, -1, 1);
      const double det = eval_general(a, u, v, w);
      CHECK(rel_err(q.eval(u, v, w), det) <= 1e-10);
      CHECK(rel_err(h.eval(u, v, w), det) <= 1e-10);
    }
  }
}

TEST_CASE("quartic is a unitary invariant") {
  Rng rng(102);
  for (int i = 0; i < 50; ++i) {
    const CMat a = random_nilpotent(4, rng);
    const KippenhahnQuartic p = coeffs_nilpotent4(a);
    const KippenhahnQuartic q = coeffs_nilpotent4(conjugate(a, haar_unitary(4, rng)));
    const double s = std::pow(1.0 + a.frobenius_norm(), 4);
    CHECK(std::abs(p.c1 - q.c1) <= 1e-10 * s);
    CHECK(std::abs(p.c2 - q.c2) <= 1e-10 * s);
    CHECK(std::abs(p.c3 - q.c3) <= 1e-10 * s);
    CHECK(std::abs(p.c4 - q.c4) <= 1e-10 * s);
    CHECK(std::abs(p.c5 - q.c5) <= 1e-10 * s);
    CHECK(std::abs(p.c6 - q.c6) <= 1e-10 * s);
  }
}

TEST_CASE("quartic gradient matches finite differences") {
  Rng rng(103);
  const KippenhahnQuartic q = coeffs_nilpotent4(random_nilpotent(4, rng));
  const HomogeneousPoly h = to_homogeneous(q);
  for (int k = 0; k < 20; ++k) {
    const double u = uniform(rng, -1, 1), v = uniform(rng, -1, 1), w = uniform(rng, -1, 1);
    const auto g = q.gradient(u, v, w);
    const auto gh = h.gradient(u, v, w);
    const double e = 1e-6;
    const double du = (q.eval(u + e, v, w) - q.eval(u - e, v, w)) / (2 * e);
    const double dv = (q.eval(u, v + e, w) - q.eval(u, v - e, w)) / (2 * e);
    const double dw = (q.eval(u, v, w + e) - q.eval(u, v, w - e)) / (2 * e);
    CHECK(g[0] == doctest::Approx(du).epsilon(1e-6));
    CHECK(g[1] == doctest::Approx(dv).epsilon(1e-6));
    CHECK(g[2] == doctest::Approx(dw).epsilon(1e-6));
    for (int c = 0; c < 3; ++c) CHECK(gh[c] == doctest::Approx(g[c]).epsilon(1e-12));
    // Euler: u p_u + v p_v + w p_w = 4 p.
    CHECK(u * g[0] + v * g[1] + w * g[2] == doctest::Approx(4 * q.eval(u, v, w)).epsilon(1e-12));
  }
}

TEST_CASE("newton_coefficients examples") {
  const std::array<Complex, 2> d{1.0, 2.0};
  const auto q = newton_coefficients(CMat::diagonal(d));
  REQUIRE(q.size() == 3);
  CHECK(std::abs(q[0] - 1.0) <= 1e-15);
  CHECK(std::abs(q[1] - 3.0) <= 1e-15);
  CHECK(std::abs(q[2] - 2.0) <= 1e-15);

  // M = z A* + conj(z) A with z = 1/2, i.e. the real part of J4.
  const CMat j = testing::jordan(4);
  const CMat m = 0.5 * j.adjoint() + 0.5 * j;
  const auto qj = newton_coefficients(m);
  CHECK(std::abs(qj[1]) <= 1e-15);
  CHECK(std::abs(qj[2] + 0.75) <= 1e-14);
}

TEST_CASE("newton_coefficients match the eigenvalue expansion") {
  Rng rng(104);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int i = 0; i < 10; ++i) {
      const CMat m = random_general(n, rng);
      Eigen::MatrixXcd e(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) e(r, c) = m(r, c);
      const Eigen::VectorXcd lambda = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(e).eigenvalues();
      // Elementary symmetric functions of the eigenvalues.
      std::vector<Complex> ek(n + 1, 0.0);
      ek[0] = 1.0;
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t k = t + 1; k >= 1; --k) ek[k] += lambda[static_cast<Eigen::Index>(t)] * ek[k - 1];
      const auto q = newton_coefficients(m);
      REQUIRE(q.size() == n + 1);
      const double scale = std::pow(1.0 + m.frobenius_norm(), static_cast<double>(n));
      for (std::size_t k = 0; k <= n; ++k) CHECK(std::abs(q[k] - ek[k]) <= 1e-10 * scale);
      CHECK(std::abs(q[1] - m.trace()) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("general Kippenhahn polynomial") {
  const CMat g{{1.0, 2.0, 0.0}, {Complex{0.0, 1.0}, -1.0, 1.0}, {0.0, 3.0, Complex{0.0, 2.0}}};
  const HomogeneousPoly p = kippenhahn_polynomial(g);
  REQUIRE(p.degree() == 3);
  CHECK(p.coeff(3, 0) == doctest::Approx(-4.0).epsilon(1e-13));
  CHECK(p.coeff(2, 1) == doctest::Approx(-4.5).epsilon(1e-13));
  CHECK(p.coeff(1, 2) == doctest::Approx(-5.0).epsilon(1e-13));
  CHECK(p.coeff(0, 3) == doctest::Approx(-2.5).epsilon(1e-13));
  CHECK(p.coeff(2, 0) == doctest::Approx(-6.25).epsilon(1e-13));
  CHECK(p.coeff(1, 1) == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(p.coeff(0, 2) == doctest::Approx(-2.25).epsilon(1e-13));
  CHECK(std::abs(p.coeff(1, 0)) <= 1e-13);
  CHECK(p.coeff(0, 1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(p.coeff(0, 0) == doctest::Approx(1.0).epsilon(1e-13));

  Rng rng(105);
  for (std::size_t n = 1; n <= 6; ++n) {
    const CMat a = random_general(n, rng);
    const HomogeneousPoly h = kippenhahn_polynomial(a);
    for (int k = 0; k < 20; ++k) {
      const double u = uniform(rng, -1, 1), v = uniform(rng, -1, 1), w = uniform(rng, -1, 1);
      CHECK(rel_err(h.eval(u, v, w), eval_general(a, u, v, w)) <= 1e-9);
    }
  }
}

TEST_CASE("singularity_residual examples") {
  const auto w = singularity_residual(coeffs_nilpotent4(testing::withflat()), 2.0, 0.0);
  CHECK(max_abs(w) <= 1e-9);

  const auto j = singularity_residual(coeffs_nilpotent4(testing::jordan(4)), 2.0, 0.0);
  CHECK(j[2] == doctest::Approx(-2.0));

  const KippenhahnQuartic zero = coeffs_nilpotent4(CMat(4));
  for (double u : {-3.0, 0.0, 1.5}) {
    const auto r = singularity_residual(zero, u, 0.7);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);
    CHECK(r[2] == doctest::Approx(4.0));
  }
}

TEST_CASE("singularity system is the gradient at w = 1") {
  Rng rng(106);
  for (int i = 0; i < 20; ++i) {
    const KippenhahnQuartic q = coeffs_nilpotent4(random_nilpotent(4, rng));
    const double u = uniform(rng, -3, 3), v = uniform(rng, -3, 3);
    const auto r = singularity_residual(q, u, v);
    const auto g = q.gradient(u, v, 1.0);
    const double s = std::pow(1.0 + std::abs(u) + std::abs(v), 4);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(r[c] - g[c]) <= 1e-12 * s * (1.0 + std::abs(q.c1) + std::abs(q.c5)));
  }
}

TEST_CASE("singular_points examples") {
  const KippenhahnQuartic j = coeffs_nilpotent4(testing::jordan(4));
  CHECK(singular_points(j, 10.0).empty());

  const auto w = singular_points(coeffs_nilpotent4(testing::withflat()), 10.0);
  REQUIRE(contains_point(w, 2.0, 0.0, 1e-6));
  for (const auto& s : w) {
    CHECK(s.residual <= 1e-8 * std::pow(1.0 + std::abs(s.u) + std::abs(s.v), 4));
    if (std::hypot(s.u - 2.0, s.v) <= 1e-6) CHECK(s.residual <= 1e-9);
  }

  const auto p = singular_points(coeffs_nilpotent4(parallel_canonical(1.0, 1.0, 1.0, 1.0)), 10.0);
  CHECK(contains_point(p, 0.0, 2.0 / std::sqrt(3.0), 1e-6));
  CHECK(contains_point(p, 0.0, -2.0 / std::sqrt(3.0), 1e-6));
  CHECK(std::is_sorted(p.begin(), p.end(), [](const auto& x, const auto& y) {
    return x.u < y.u || (x.u == y.u && x.v < y.v);
  }));

  CHECK(default_search_radius(testing::withflat()) >= 2.0);
  CHECK(default_search_radius(CMat(4)) == 1e3);
}

TEST_CASE("flat portions give singular points") {
  for (const CMat& a : flat_corpus()) {
    const auto flats = flat_portions(a);
    REQUIRE_FALSE(flats.empty());
    CHECK(flats.size() <= 2);
    const KippenhahnQuartic q = coeffs_nilpotent4(a);
    const auto pts = singular_points(q, default_search_radius(a));
    int matched = 0;
    for (const auto& f : flats) {
      const auto [u, v] = f.line.line_coordinates();
      CHECK(max_abs(singularity_residual(q, u, v)) <= 1e-7 * std::pow(1.0 + std::abs(u) + std::abs(v), 4));
      if (contains_point(pts, u, v, 1e-6 * (1.0 + std::hypot(u, v)))) ++matched;
    }
    CHECK(matched == static_cast<int>(flats.size()));
    CHECK(matched <= 2);
  }
}

TEST_CASE("flat portion on x = -1/2 forces the cs relations") {
  for (const CMat& a : flat_corpus()) {
    for (const auto& f : flat_portions(a)) {
      const CMat b = std::polar(1.0, -f.line.theta) * a * Complex{-0.5 / f.line.d, 0.0};
      CHECK(max_abs(cs_residual(coeffs_nilpotent4(b))) <= 1e-8);
    }
  }
}
